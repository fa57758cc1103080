#include "regvec/cli/scene.hpp"

#include <fstream>
#include <sstream>

#include "regvec/errors.hpp"

namespace regvec::cli {

pl::PLSet Scene::to_set() const {
    pl::PLSet A(dimension);
    for (const auto& s : simplices) {
        std::vector<Vec> vs;
        for (const auto& p : s) vs.push_back(Eigen::Map<const Eigen::VectorXd>(p.data(), dimension));
        A.add(pl::Simplex(std::move(vs)));
    }
    return A;
}

Scene scene_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("scene: top level must be an object");
    for (const auto& [key, _] : j.items())
        if (key != "dimension" && key != "simplices" && key != "name" && key != "metadata")
            throw ParseError("scene: unknown field '" + key + "'");
    if (!j.contains("dimension") || !j["dimension"].is_number_integer())
        throw ParseError("scene: 'dimension' must be an integer");
    Scene s;
    s.dimension = j["dimension"].get<int>();
    if (s.dimension < 1 || s.dimension > kMaxDim)
        throw ParseError("scene: dimension must be in 1.." + std::to_string(kMaxDim));
    if (!j.contains("simplices") || !j["simplices"].is_array()) throw ParseError("scene: 'simplices' must be an array");
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ParseError("scene: 'name' must be a string");
        s.name = j["name"].get<std::string>();
    }
    if (j.contains("metadata")) {
        if (!j["metadata"].is_object()) throw ParseError("scene: 'metadata' must be an object");
        s.metadata = j["metadata"];
    }
    int idx = 0;
    for (const auto& sj : j["simplices"]) {
        const std::string where = "scene: simplex " + std::to_string(idx);
        if (!sj.is_array() || sj.empty()) throw ParseError(where + " must be a non-empty array of vertices");
        if (static_cast<int>(sj.size()) > s.dimension + 1)
            throw ParseError(where + " has more than dimension + 1 vertices");
        std::vector<std::vector<double>> verts;
        for (const auto& vj : sj) {
            if (!vj.is_array() || static_cast<int>(vj.size()) != s.dimension)
                throw ParseError(where + ": every vertex needs exactly " + std::to_string(s.dimension) + " coordinates");
            std::vector<double> p;
            for (const auto& c : vj) {
                if (!c.is_number()) throw ParseError(where + ": coordinates must be numbers");
                p.push_back(c.get<double>());
            }
            verts.push_back(std::move(p));
        }
        if (static_cast<int>(verts.size()) == s.dimension + 1)
            throw ContractViolation(where + " is full-dimensional; scenes must have empty interior");
        s.simplices.push_back(std::move(verts));
        ++idx;
    }
    (void)s.to_set();  // affine independence
    return s;
}

Scene parse_scene(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scene: ") + e.what());
    }
    return scene_from_json(j);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ContractViolation("cannot write '" + path + "'");
    out << text;
    if (!out) throw ContractViolation("write failed for '" + path + "'");
}

Scene load_scene(const std::string& path) { return parse_scene(read_file(path)); }

json scene_to_json(const Scene& s) {
    json j;
    j["dimension"] = s.dimension;
    if (!s.name.empty()) j["name"] = s.name;
    if (!s.metadata.empty()) j["metadata"] = s.metadata;
    j["simplices"] = s.simplices;
    return j;
}

// nlohmann writes doubles with the shortest representation that parses back.
std::string save_scene(const Scene& s) { return scene_to_json(s).dump(2) + "\n"; }

Scene scene_from_set(const pl::PLSet& A, const std::string& name) {
    Scene s;
    s.dimension = A.ambient_dim();
    s.name = name;
    for (const auto& sx : A.simplices()) {
        std::vector<std::vector<double>> verts;
        for (const auto& v : sx.vertices()) verts.emplace_back(v.data(), v.data() + v.size());
        s.simplices.push_back(std::move(verts));
    }
    return s;
}

}  // namespace regvec::cli
