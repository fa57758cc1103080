#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "regvec/cli/commands.hpp"
#include "regvec/cli/report.hpp"
#include "regvec/errors.hpp"

using namespace regvec;
using namespace regvec::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli_run(std::vector<std::string> args) {
    args.insert(args.begin(), "regvec");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string scene(const std::string& name) { return std::string(REGVEC_SCENES) + "/" + name + ".json"; }

fs::path tmpdir() {
    const auto p = fs::temp_directory_path() / "regvec_cli_tests";
    fs::create_directories(p);
    return p;
}

std::string tmp(const std::string& name) { return (tmpdir() / name).string(); }

}  // namespace

TEST_CASE("scene JSON round trip is bit-identical") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    Scene s;
    s.dimension = 3;
    s.name = "random";
    s.metadata = {{"k", 1}};
    for (int i = 0; i < 50; ++i) {
        std::vector<std::vector<double>> verts;
        for (int v = 0; v < 3; ++v) verts.push_back({u(rng), u(rng) * 1e-7, u(rng) / 3});
        s.simplices.push_back(verts);
    }
    const std::string text = save_scene(s);
    const Scene back = parse_scene(text);
    CHECK(back.simplices == s.simplices);
    CHECK(back.name == s.name);
    CHECK(back.metadata == s.metadata);
    CHECK(save_scene(back) == text);
}

TEST_CASE("scene parsing rules") {
    CHECK_THROWS_AS(parse_scene("{"), ParseError);
    CHECK_THROWS_AS(parse_scene(R"({"simplices": []})"), ParseError);
    CHECK_THROWS_AS(parse_scene(R"({"dimension": 2.5, "simplices": []})"), ParseError);
    CHECK_THROWS_AS(parse_scene(R"({"dimension": 2, "simplices": [[[0, 0], [1]]]})"), ParseError);
    CHECK_THROWS_AS(parse_scene(R"({"dimension": 2, "simplices": [[[0,0],[1,0],[0,1],[1,1]]]})"), ParseError);
    CHECK_THROWS_AS(parse_scene(R"({"dimension": 2, "simplices": [], "extra": 1})"), ParseError);
    CHECK_THROWS_AS(parse_scene(R"({"dimension": 2, "simplices": [[[0,0],[1,0],[0,1]]]})"), ContractViolation);
    CHECK_THROWS_AS(parse_scene(R"({"dimension": 2, "simplices": [[[0,0],[0,0]]]})"), DegenerateInput);
    CHECK(parse_scene(R"({"dimension": 2, "simplices": []})").simplices.empty());
}

TEST_CASE("analyze: examples and exit codes") {
    const auto sq = cli_run({"analyze", scene("square"), "--json"});
    REQUIRE(sq.code == kOk);
    const auto j = json::parse(sq.out);
    CHECK(j["margin"].get<double>() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
    for (const auto& c : j["lambda"]) CHECK(std::abs(c.get<double>()) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
    CHECK(j["flat_groups"] == 2);

    const auto seg = json::parse(cli_run({"analyze", scene("segment"), "--json"}).out);
    CHECK(seg["margin"].get<double>() == doctest::Approx(1));

    const auto box = cli_run({"analyze", scene("cube-face"), "--json", "--oracle"});
    REQUIRE(box.code == kOk);
    const auto b = json::parse(box.out);
    CHECK(b["margin"].get<double>() > 0);
    CHECK(std::abs(b["margin"].get<double>() - b["oracle"]["margin"].get<double>()) <= 0.05);

    CHECK(cli_run({"analyze", scene("interior")}).code == kContract);
    CHECK(cli_run({"analyze", tmp("missing.json")}).code == kParse);
    CHECK(cli_run({"analyze"}).code == kParse);
    CHECK(cli_run({"frobnicate"}).code == kParse);
}

TEST_CASE("flatten: hline is an isometry, square verifies, interior is refused") {
    const auto h = cli_run({"flatten", scene("hline"), "--report", tmp("hline.json"), "--samples", "2000"});
    REQUIRE(h.code == kOk);
    const auto hr = json::parse(read_file(tmp("hline.json")));
    CHECK(hr["certificate"]["L_fwd"].get<double>() == 1);
    CHECK(hr["certificate"]["L_inv"].get<double>() == 1);
    for (const auto& s : hr["samples"]) CHECK(s["source"] == s["image"]);

    const auto sq = cli_run({"flatten", scene("square"), "--report", tmp("square.json"), "--out", tmp("square.map.json")});
    REQUIRE(sq.code == kOk);
    const auto r = json::parse(read_file(tmp("square.json")));
    CHECK(r["verified"] == true);
    CHECK(r["alpha_reg"].get<double>() > 0);
    for (const char* key : {"version", "seed", "tolerances", "certificate", "timings", "scene", "options"})
        CHECK(r.contains(key));
    const auto m = json::parse(read_file(tmp("square.map.json")));
    CHECK(m["kind"] == "zigzag-map");
    CHECK(m["slabs"].size() == r["system"]["b"].get<size_t>() + 1);

    const auto bad = cli_run({"flatten", scene("interior")});
    CHECK(bad.code == kContract);
    CHECK(bad.err.find("empty interior") != std::string::npos);
}

TEST_CASE("verify: accepts its own report and rejects a tampered one") {
    REQUIRE(cli_run({"flatten", scene("vgraph"), "--report", tmp("v.json"), "--samples", "2000"}).code == kOk);
    const auto ok = cli_run({"verify", tmp("v.json")});
    CHECK(ok.code == kOk);
    CHECK(ok.out.find("[FAIL]") == std::string::npos);

    auto j = json::parse(read_file(tmp("v.json")));
    j["samples"][3]["image"][1] = j["samples"][3]["image"][1].get<double>() + 0.01;
    write_file(tmp("v_bad.json"), j.dump());
    const auto bad = cli_run({"verify", tmp("v_bad.json")});
    CHECK(bad.code == kVerification);
    CHECK(bad.out.find("[FAIL] stored samples reproduce") != std::string::npos);

    auto c = json::parse(read_file(tmp("v.json")));
    c["certificate"]["L_fwd"] = 0.5;
    write_file(tmp("v_cert.json"), c.dump());
    CHECK(cli_run({"verify", tmp("v_cert.json")}).code == kVerification);

    write_file(tmp("not_report.json"), R"({"dimension": 2, "simplices": []})");
    CHECK(cli_run({"verify", tmp("not_report.json")}).code == kParse);
}

TEST_CASE("render: SVG layers, OBJ counts, refusal beyond R^3") {
    REQUIRE(cli_run({"flatten", scene("square"), "--report", tmp("sq_r.json"), "--samples", "2000"}).code == kOk);
    REQUIRE(cli_run({"render", tmp("sq_r.json"), "--out", tmp("sq.svg")}).code == kOk);
    const std::string svg = read_file(tmp("sq.svg"));
    int layers = 0;
    for (size_t p = svg.find("class=\"layer\""); p != std::string::npos; p = svg.find("class=\"layer\"", p + 1)) ++layers;
    CHECK(layers == 2);
    CHECK(svg.find("id=\"A\"") != std::string::npos);
    CHECK(svg.find("id=\"hA\"") != std::string::npos);

    REQUIRE(cli_run({"render", scene("tent"), "--out", tmp("tent.obj"), "--samples", "137"}).code == kOk);
    std::istringstream obj(read_file(tmp("tent.obj")));
    std::map<std::string, int> verts;
    std::string line, group;
    while (std::getline(obj, line)) {
        if (line.rfind("g ", 0) == 0) group = line.substr(2);
        if (line.rfind("v ", 0) == 0) ++verts[group];
        CHECK((line.empty() || line[0] == '#' || line[0] == 'g' || line[0] == 'v' || line[0] == 'l'));
    }
    CHECK(verts["A"] == 137);
    CHECK(verts["hA"] == 137);

    const auto r4 = cli_run({"render", scene("segment-r4"), "--out", tmp("x.obj")});
    CHECK(r4.code == kContract);
    CHECK(r4.err.find("R^4") != std::string::npos);
    CHECK(cli_run({"render", scene("square"), "--out", tmp("x.obj")}).code == kContract);
    CHECK(cli_run({"render", scene("square"), "--out", tmp("x.png")}).code == kContract);
}
