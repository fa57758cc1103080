#pragma once
#include <string>
#include <vector>

#include <json.hpp>

#include "regvec/pl/simplex.hpp"

namespace regvec::cli {

using json = nlohmann::json;

// Scene file: {"dimension": n, "simplices": [[[x..], ...], ...], "name"?, "metadata"?}.
struct Scene {
    int dimension = 0;
    std::vector<std::vector<std::vector<double>>> simplices;
    std::string name;
    json metadata = json::object();

    pl::PLSet to_set() const;
};

// ParseError on malformed structure, ContractViolation when a simplex has
// n + 1 vertices (full-dimensional), DegenerateInput for dependent vertices.
Scene scene_from_json(const json& j);
Scene parse_scene(const std::string& text);
Scene load_scene(const std::string& path);

json scene_to_json(const Scene& s);
// Shortest round-trip decimal for every coordinate.
std::string save_scene(const Scene& s);
void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

Scene scene_from_set(const pl::PLSet& A, const std::string& name = "");

}  // namespace regvec::cli
