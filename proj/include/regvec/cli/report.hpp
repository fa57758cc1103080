#pragma once
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "regvec/cli/scene.hpp"
#include "regvec/flatten/zigzag.hpp"
#include "regvec/geom/direction_search.hpp"
#include "regvec/systems/builder.hpp"
#include "regvec/verify/oracles.hpp"

namespace regvec::cli {

std::string version();

struct PipelineOptions {
    double eta = 0.25;
    double alpha = 0.2;  // flat grouping in analyze
    double alpha_min = 0.005;
    double eps_eval = kEpsEval;
    int samples = 10000;
    int mesh_res = 200;
    std::uint64_t seed = 20240611;
};

json options_to_json(const PipelineOptions& o);
PipelineOptions options_from_json(const json& j);

struct AnalyzeResult {
    std::vector<geom::Subspace> tangent;
    geom::DirectionResult best;
    int flat_groups = 0;
    std::optional<verify::GridArgmax> oracle;
};

AnalyzeResult analyze(const pl::PLSet& A, const PipelineOptions& o, bool with_oracle);
json analyze_to_json(const AnalyzeResult& r, const PipelineOptions& o);

struct PipelineResult {
    Scene scene;
    pl::PLSet A{1};
    std::optional<systems::RegularSystem> S;
    systems::BuildStats stats;
    std::optional<flatten::ZigzagMap> h;
    systems::ValidationReport validation;
    std::vector<flatten::ImageSample> image;
    verify::CoverReport cover;
    verify::BilipschitzEstimate bilipschitz;
    double round_trip = 0;
    int round_trip_samples = 0;
    std::vector<std::pair<std::string, double>> timings;  // seconds, in stage order
    std::vector<std::string> failures;
    bool verified() const { return failures.empty(); }
};

constexpr double kRoundTripTol = 1e-6;
constexpr double kCertSlack = 1.01;

systems::BuildOptions build_options(const PipelineOptions& o);

// Build, validate, flatten, sample and check. Build errors propagate; failed
// checks are listed in `failures`.
PipelineResult run_pipeline(const Scene& scene, const PipelineOptions& o);

json make_report(const PipelineResult& r, const PipelineOptions& o);
// Recipe for the map: rebuilding from it reproduces h exactly.
json make_map(const PipelineResult& r, const PipelineOptions& o);

// Rebuilds the pipeline from the embedded scene and options and re-checks the
// stored certificate and samples. Prints one line per check.
bool verify_report(const json& report, std::ostream& out);

}  // namespace regvec::cli
