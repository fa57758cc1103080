#include "regvec/cli/report.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <random>

#include "regvec/errors.hpp"
#include "regvec/pl/tangent.hpp"
#include "regvec/systems/validate.hpp"

#ifndef REGVEC_VERSION
#define REGVEC_VERSION "0.0.0"
#endif

namespace regvec::cli {

std::string version() { return REGVEC_VERSION; }

namespace {

json num(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

double num_of(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        if (s == "nan") return std::nan("");
    }
    throw ParseError("report: expected a number");
}

json vec(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vec vec_of(const json& j) {
    if (!j.is_array()) throw ParseError("report: expected a coordinate array");
    Vec v(static_cast<int>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = num_of(j[i]);
    return v;
}

class Stopwatch {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - t_).count();
        t_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point t_ = std::chrono::steady_clock::now();
};

json certificate_json(const flatten::Certificate& c) {
    return {{"L_fwd", num(c.L_fwd)}, {"L_inv", num(c.L_inv)}, {"L_eta", num(c.L_eta)}, {"alpha_reg", num(c.alpha_reg)}};
}

}  // namespace

json options_to_json(const PipelineOptions& o) {
    return {{"eta", o.eta},           {"alpha", o.alpha},       {"alpha_min", o.alpha_min}, {"eps_eval", o.eps_eval},
            {"samples", o.samples},   {"mesh_res", o.mesh_res}, {"seed", o.seed}};
}

PipelineOptions options_from_json(const json& j) {
    PipelineOptions o;
    try {
        o.eta = j.at("eta").get<double>();
        o.alpha = j.at("alpha").get<double>();
        o.alpha_min = j.at("alpha_min").get<double>();
        o.eps_eval = j.at("eps_eval").get<double>();
        o.samples = j.at("samples").get<int>();
        o.mesh_res = j.at("mesh_res").get<int>();
        o.seed = j.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("options: ") + e.what());
    }
    return o;
}

AnalyzeResult analyze(const pl::PLSet& A, const PipelineOptions& o, bool with_oracle) {
    AnalyzeResult r;
    const int n = A.ambient_dim();
    r.tangent = pl::tangent_set(A);
    r.best = geom::max_min_direction(n, r.tangent);
    r.flat_groups = static_cast<int>(pl::flat_partition(A, o.alpha).size());
    if (with_oracle && n <= 4) {
        const int res = n <= 2 ? 4000 : n == 3 ? 300 : 40;
        r.oracle = verify::grid_sphere_argmax(n, r.tangent, res);
    }
    return r;
}

json analyze_to_json(const AnalyzeResult& r, const PipelineOptions& o) {
    json t = json::array();
    for (const auto& P : r.tangent) {
        json basis = json::array();
        for (int c = 0; c < P.dim(); ++c) basis.push_back(vec(P.basis().col(c)));
        t.push_back({{"dim", P.dim()}, {"basis", basis}});
    }
    json j = {{"tangent", t},
              {"lambda", vec(r.best.lambda)},
              {"margin", num(r.best.margin)},
              {"alpha", o.alpha},
              {"flat_groups", r.flat_groups}};
    if (r.oracle)
        j["oracle"] = {{"lambda", vec(r.oracle->lambda)}, {"margin", num(r.oracle->margin)}, {"pitch", r.oracle->pitch}};
    return j;
}

systems::BuildOptions build_options(const PipelineOptions& o) {
    systems::BuildOptions b;
    b.eta = o.eta;
    b.alpha_min = o.alpha_min;
    return b;
}

PipelineResult run_pipeline(const Scene& scene, const PipelineOptions& o) {
    require(o.samples >= 1, "samples must be positive");
    PipelineResult r;
    Stopwatch sw;
    r.scene = scene;
    r.A = scene.to_set();
    const int n = r.A.ambient_dim();
    r.timings.emplace_back("load", sw.lap());

    r.S = systems::build_system(r.A, build_options(o), &r.stats);
    r.timings.emplace_back("build", sw.lap());

    systems::ValidationOptions vo;
    vo.samples = o.samples;
    vo.seed = o.seed;
    vo.eps_eval = o.eps_eval;
    r.validation = systems::validate(*r.S, &r.A, vo);
    r.timings.emplace_back("validate", sw.lap());
    if (!r.validation.ok()) {
        r.failures.push_back("validation: " + std::to_string(r.validation.monotonicity_total) + " monotonicity, " +
                             std::to_string(r.validation.agreement_total) + " agreement, " +
                             std::to_string(r.validation.compatibility_total) + " compatibility violations");
        return r;
    }

    flatten::FlattenOptions fo;
    fo.validate = false;  // done above, against A as well
    r.h = flatten::build_flattening(*r.S, fo);
    r.timings.emplace_back("flatten", sw.lap());

    const int per = r.A.empty() ? 0 : std::max(8, o.samples / static_cast<int>(r.A.size()));
    r.image = flatten::flatten_set(*r.h, r.A, per);
    r.cover = verify::check_graph_cover(*r.h, r.image);
    r.timings.emplace_back("cover", sw.lap());
    if (!r.cover.ok()) r.failures.push_back("graph cover: " + std::to_string(r.cover.violations.size()) + " violations");

    const auto [lo, hi] = systems::sampling_box(n, &r.A);
    r.bilipschitz = verify::estimate_bilipschitz(*r.h, lo, hi, o.samples, o.seed);
    const auto& c = r.h->certificate();
    if (!(r.bilipschitz.L_fwd <= c.L_fwd * kCertSlack)) r.failures.push_back("sampled L_fwd exceeds the certificate");
    if (!(r.bilipschitz.L_inv <= c.L_inv * kCertSlack)) r.failures.push_back("sampled L_inv exceeds the certificate");
    r.timings.emplace_back("bilipschitz", sw.lap());

    std::mt19937_64 rng(o.seed + 1);
    std::uniform_real_distribution<double> u(0, 1);
    r.round_trip_samples = o.samples;
    for (int i = 0; i < o.samples; ++i) {
        Vec q(n);
        for (int j = 0; j < n; ++j) q(j) = lo(j) + (hi(j) - lo(j)) * u(rng);
        r.round_trip = std::max(r.round_trip, (r.h->apply_inverse(r.h->apply(q)) - q).norm());
    }
    if (!(r.round_trip <= kRoundTripTol)) r.failures.push_back("round trip error above 1e-6");
    if (!(c.alpha_reg > 0)) r.failures.push_back("image regularity certificate is not positive");
    r.timings.emplace_back("round_trip", sw.lap());
    return r;
}

json make_report(const PipelineResult& r, const PipelineOptions& o) {
    json rep;
    rep["tool"] = "regvec";
    rep["version"] = version();
    rep["command"] = "flatten";
    rep["seed"] = o.seed;
    rep["options"] = options_to_json(o);
    rep["tolerances"] = {{"eps_geom", kEpsGeom},
                         {"eps_eval", o.eps_eval},
                         {"eps_mem", kEpsMem},
                         {"alpha_min", o.alpha_min},
                         {"eta", o.eta},
                         {"cover_residual", verify::CoverOptions{}.residual_tol},
                         {"cover_slope", verify::CoverOptions{}.slope_tol},
                         {"round_trip", kRoundTripTol},
                         {"certificate_slack", kCertSlack}};
    rep["scene"] = scene_to_json(r.scene);
    rep["verified"] = r.verified();
    rep["failures"] = r.failures;

    json timings = json::object();
    double total = 0;
    for (const auto& [k, v] : r.timings) timings[k] = v, total += v;
    timings["total"] = total;
    rep["timings"] = timings;

    if (r.S) {
        json dirs = json::array();
        for (int k = 0; k <= r.S->count(); ++k) dirs.push_back(vec(r.S->direction(k)));
        rep["system"] = {{"b", r.S->count()}, {"directions", dirs}, {"steps", r.stats.steps},
                         {"min_margin", num(r.stats.min_margin)}, {"log", r.stats.log}};
    }
    const auto& v = r.validation;
    rep["validation"] = {{"ok", v.ok()},
                         {"samples", v.samples_used},
                         {"monotonicity", v.monotonicity_total},
                         {"agreement", v.agreement_total},
                         {"compatibility", v.compatibility_total},
                         {"notes", v.notes}};
    if (!r.h) return rep;

    const auto& c = r.h->certificate();
    rep["certificate"] = certificate_json(c);
    rep["alpha_reg"] = num(c.alpha_reg);
    json runs = json::array();
    for (const auto& run : r.h->runs())
        runs.push_back({{"first", run.first}, {"last", run.last}, {"direction", vec(run.direction)}});
    rep["runs"] = runs;

    json viol = json::array();
    for (const auto& x : r.cover.violations)
        viol.push_back({{"sample", x.sample}, {"simplex", x.simplex}, {"what", x.what}, {"value", num(x.value)}});
    rep["cover"] = {{"ok", r.cover.ok()},
                    {"samples", r.cover.samples},
                    {"max_residual", num(r.cover.max_residual)},
                    {"max_slope", num(r.cover.max_slope)},
                    {"slope_bound", num(r.cover.slope_bound)},
                    {"sampled_margin", 1 / std::sqrt(1 + r.cover.max_slope * r.cover.max_slope)},
                    {"violations", viol}};
    const auto& b = r.bilipschitz;
    rep["bilipschitz"] = {{"L_fwd", b.L_fwd},       {"L_inv", b.L_inv},       {"pairs", b.pairs},
                          {"skipped", b.skipped},   {"fwd_pair", {vec(b.fwd_p), vec(b.fwd_q)}},
                          {"inv_pair", {vec(b.inv_p), vec(b.inv_q)}}};
    rep["round_trip"] = {{"max_error", r.round_trip}, {"samples", r.round_trip_samples}};

    json samples = json::array();
    for (const auto& s : r.image)
        samples.push_back({{"simplex", s.simplex}, {"source", vec(s.source)}, {"image", vec(s.image)}});
    rep["samples"] = samples;
    return rep;
}

json make_map(const PipelineResult& r, const PipelineOptions& o) {
    json m;
    m["tool"] = "regvec";
    m["kind"] = "zigzag-map";
    m["version"] = version();
    m["options"] = options_to_json(o);
    m["scene"] = scene_to_json(r.scene);
    if (r.S) {
        json slabs = json::array();
        for (int k = 0; k <= r.S->count(); ++k)
            slabs.push_back({{"direction", vec(r.S->direction(k))},
                             {"lower_lip", num(r.S->slab(k).lower.lip())},
                             {"upper_lip", num(r.S->slab(k).upper.lip())}});
        m["slabs"] = slabs;
    }
    if (r.h) {
        m["certificate"] = certificate_json(r.h->certificate());
        json runs = json::array();
        for (const auto& run : r.h->runs())
            runs.push_back({{"first", run.first}, {"last", run.last}, {"P", run.P}, {"R", run.R}, {"D", run.D}});
        m["runs"] = runs;
    }
    return m;
}

bool verify_report(const json& rep, std::ostream& out) {
    if (!rep.is_object() || rep.value("tool", "") != "regvec" || !rep.contains("scene") || !rep.contains("options"))
        throw ParseError("verify: not a regvec report");
    if (rep.value("version", "") != version())
        out << "note: report written by version " << rep.value("version", "?") << ", checking with " << version()
            << "\n";
    bool all = true;
    auto line = [&](bool ok, const std::string& what) {
        out << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
        all = all && ok;
    };
    line(rep.value("verified", false), "report verdict");

    const Scene scene = scene_from_json(rep["scene"]);
    const PipelineOptions o = options_from_json(rep["options"]);
    const PipelineResult r = run_pipeline(scene, o);
    line(r.verified(), "rebuilt pipeline passes its checks");
    if (!r.h) return false;

    if (!rep.contains("certificate")) throw ParseError("verify: report has no certificate");
    const auto& c = r.h->certificate();
    const json& sc = rep["certificate"];
    auto same = [](double a, double b) { return a == b || std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); };
    line(same(c.L_fwd, num_of(sc.at("L_fwd"))) && same(c.L_inv, num_of(sc.at("L_inv"))) &&
             same(c.L_eta, num_of(sc.at("L_eta"))) && same(c.alpha_reg, num_of(sc.at("alpha_reg"))),
         "certificate reproduces");

    std::vector<flatten::ImageSample> stored;
    int worst = -1;
    double err = 0;
    for (const auto& s : rep.value("samples", json::array())) {
        flatten::ImageSample x{vec_of(s.at("source")), vec_of(s.at("image")), s.at("simplex").get<int>()};
        if (x.source.size() != scene.dimension || x.image.size() != scene.dimension)
            throw ParseError("verify: sample dimension mismatch");
        const double e = (r.h->apply(x.source) - x.image).norm() / (1 + x.image.norm());
        if (e > err) err = e, worst = static_cast<int>(stored.size());
        stored.push_back(std::move(x));
    }
    line(err <= 1e-9, "stored samples reproduce (" + std::to_string(stored.size()) + " samples" +
                          (worst >= 0 ? ", worst relative error " + std::to_string(err) : "") + ")");
    const auto cover = verify::check_graph_cover(*r.h, stored);
    line(cover.ok(), "stored image lies on the floors with slopes within L_eta");
    const json& bl = rep.value("bilipschitz", json::object());
    line(bl.contains("L_fwd") && num_of(bl["L_fwd"]) <= c.L_fwd * kCertSlack &&
             num_of(bl["L_inv"]) <= c.L_inv * kCertSlack,
         "stored Lipschitz estimates within the certificate");
    return all;
}

}  // namespace regvec::cli
