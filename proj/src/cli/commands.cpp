#include "regvec/cli/commands.hpp"

#include <CLI11.hpp>
#include <iomanip>
#include <iostream>

#include "regvec/cli/render.hpp"
#include "regvec/cli/report.hpp"
#include "regvec/errors.hpp"

namespace regvec::cli {

namespace {

void add_pipeline_flags(CLI::App* c, PipelineOptions& o) {
    c->add_option("--eta", o.eta, "exclusion radius around the target direction")->check(CLI::PositiveNumber);
    c->add_option("--alpha", o.alpha, "angle for flat grouping (analyze)")->check(CLI::PositiveNumber);
    c->add_option("--alpha-min", o.alpha_min, "smallest margin the construction may rely on")
        ->check(CLI::PositiveNumber);
    c->add_option("--eps-eval", o.eps_eval, "band width of below/above tests")->check(CLI::PositiveNumber);
    c->add_option("--samples", o.samples, "samples for validation, image and Lipschitz checks")
        ->check(CLI::PositiveNumber);
    c->add_option("--mesh-res", o.mesh_res, "polyline and grid resolution for render")->check(CLI::PositiveNumber);
    c->add_option("--seed", o.seed, "seed for every sampler");
}

std::string fmt_num(double x) {
    std::ostringstream s;
    s << std::setprecision(6) << x;
    return s.str();
}

std::string fmt_vec(const Vec& v) {
    std::string s = "(";
    for (int i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt_num(v(i));
    return s + ")";
}

int cmd_analyze(const std::string& path, const PipelineOptions& o, bool as_json, bool oracle, std::ostream& out) {
    const Scene scene = load_scene(path);
    const auto A = scene.to_set();
    const auto r = analyze(A, o, oracle);
    if (as_json) {
        out << analyze_to_json(r, o).dump(2) << "\n";
        return kOk;
    }
    out << "scene: " << (scene.name.empty() ? path : scene.name) << " (n = " << scene.dimension << ", "
        << A.size() << " simplices)\n";
    out << "tangent directions: " << r.tangent.size() << "\n";
    for (const auto& P : r.tangent) {
        out << "  dim " << P.dim() << ":";
        for (int c = 0; c < P.dim(); ++c) out << " " << fmt_vec(P.basis().col(c));
        out << "\n";
    }
    out << "best regular vector: " << fmt_vec(r.best.lambda) << "\n";
    out << "margin: " << fmt_num(r.best.margin) << "\n";
    out << "flat groups at alpha " << fmt_num(o.alpha) << ": " << r.flat_groups << "\n";
    if (r.oracle)
        out << "grid oracle: margin " << fmt_num(r.oracle->margin) << " at " << fmt_vec(r.oracle->lambda)
            << " (pitch " << fmt_num(r.oracle->pitch) << ")\n";
    return kOk;
}

int cmd_flatten(const std::string& path, const std::string& map_out, const std::string& report_out,
                const PipelineOptions& o, std::ostream& out) {
    const Scene scene = load_scene(path);
    const auto r = run_pipeline(scene, o);
    if (!report_out.empty()) write_file(report_out, make_report(r, o).dump(1) + "\n");
    if (!map_out.empty()) write_file(map_out, make_map(r, o).dump(2) + "\n");

    out << "surfaces: " << (r.S ? r.S->count() : 0) << "\n";
    if (r.h) {
        const auto& c = r.h->certificate();
        out << "runs: " << r.h->runs().size() << "\n";
        out << "certificate: L_fwd " << fmt_num(c.L_fwd) << ", L_inv " << fmt_num(c.L_inv) << ", L_eta "
            << fmt_num(c.L_eta) << ", alpha_reg " << fmt_num(c.alpha_reg) << "\n";
        out << "sampled: L_fwd " << fmt_num(r.bilipschitz.L_fwd) << ", L_inv " << fmt_num(r.bilipschitz.L_inv)
            << ", cover residual " << fmt_num(r.cover.max_residual) << ", round trip " << fmt_num(r.round_trip)
            << "\n";
    }
    double total = 0;
    for (const auto& [k, v] : r.timings) total += v;
    out << "time: " << fmt_num(total) << " s\n";
    out << "verified: " << (r.verified() ? "true" : "false") << "\n";
    for (const auto& f : r.failures) out << "  " << f << "\n";
    return r.verified() ? kOk : kVerification;
}

int cmd_render(const std::string& path, const std::string& fig, PipelineOptions o, CLI::App* sub,
               std::ostream& out) {
    const std::string text = read_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("render: ") + e.what());
    }
    Scene scene;
    if (j.is_object() && j.value("tool", "") == "regvec" && j.contains("scene")) {
        // report or map: its options, unless overridden on the command line
        if (!j.contains("options")) throw ParseError("render: report has no options");
        PipelineOptions merged = options_from_json(j["options"]);
        if (sub->count("--eta")) merged.eta = o.eta;
        if (sub->count("--alpha")) merged.alpha = o.alpha;
        if (sub->count("--alpha-min")) merged.alpha_min = o.alpha_min;
        if (sub->count("--eps-eval")) merged.eps_eval = o.eps_eval;
        if (sub->count("--samples")) merged.samples = o.samples;
        if (sub->count("--mesh-res")) merged.mesh_res = o.mesh_res;
        if (sub->count("--seed")) merged.seed = o.seed;
        o = merged;
        scene = scene_from_json(j["scene"]);
    } else {
        scene = scene_from_json(j);
    }
    const int n = scene.dimension;
    if (n != 2 && n != 3)
        throw ContractViolation("render: only scenes in R^2 (SVG) and R^3 (OBJ) can be drawn; this one is in R^" +
                                std::to_string(n));
    const bool svg = fig.size() >= 4 && fig.substr(fig.size() - 4) == ".svg";
    const bool obj = fig.size() >= 4 && fig.substr(fig.size() - 4) == ".obj";
    if (!svg && !obj) throw ContractViolation("render: --out must end in .svg or .obj");
    if (svg && n != 2) throw ContractViolation("render: SVG needs n = 2; use .obj for R^3");
    if (obj && n != 3) throw ContractViolation("render: OBJ needs n = 3; use .svg for R^2");
    const auto r = run_pipeline(scene, o);
    write_file(fig, svg ? render_svg(r, o) : render_obj(r, o));
    out << "wrote " << fig << "\n";
    return kOk;
}

int cmd_verify(const std::string& path, std::ostream& out) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("verify: ") + e.what());
    }
    const bool ok = verify_report(j, out);
    out << (ok ? "verified" : "not verified") << "\n";
    return ok ? kOk : kVerification;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Regular vectors and bi-Lipschitz flattening of piecewise-linear sets"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);
    PipelineOptions o;

    std::string scene, map_out, report_out, fig;
    bool as_json = false, oracle = false;
    auto* an = app.add_subcommand("analyze", "tangent directions, best regular vector, flat groups");
    an->add_option("scene", scene, "scene JSON")->required();
    an->add_flag("--json", as_json, "print JSON");
    an->add_flag("--oracle", oracle, "also run the grid oracle (n <= 4)");
    add_pipeline_flags(an, o);

    auto* fl = app.add_subcommand("flatten", "build the system and the flattening, run every verifier");
    fl->add_option("scene", scene, "scene JSON")->required();
    fl->add_option("--out", map_out, "map JSON");
    fl->add_option("--report", report_out, "report JSON");
    add_pipeline_flags(fl, o);

    auto* re = app.add_subcommand("render", "draw A, the surfaces H_k and h(A)");
    re->add_option("input", scene, "scene or report JSON")->required();
    re->add_option("--out", fig, "fig.svg (n = 2) or fig.obj (n = 3)")->required();
    add_pipeline_flags(re, o);

    auto* ve = app.add_subcommand("verify", "rebuild from a report and re-check it");
    ve->add_option("report", scene, "report JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParse;
    }

    try {
        if (an->parsed()) return cmd_analyze(scene, o, as_json, oracle, out);
        if (fl->parsed()) return cmd_flatten(scene, map_out, report_out, o, out);
        if (re->parsed()) return cmd_render(scene, fig, o, re, out);
        if (ve->parsed()) return cmd_verify(scene, out);
    } catch (const ParseError& e) {
        err << "regvec: parse error: " << e.what() << "\n";
        return kParse;
    } catch (const ContractViolation& e) {
        err << "regvec: contract violation: " << e.what() << "\n";
        return kContract;
    } catch (const NumericFailure& e) {
        err << "regvec: numeric failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const VerificationFailure& e) {
        err << "regvec: verification failure: " << e.what() << "\n";
        return kVerification;
    } catch (const std::exception& e) {
        err << "regvec: internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace regvec::cli
