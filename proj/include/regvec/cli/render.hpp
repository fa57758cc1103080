#pragma once
#include <string>

#include "regvec/cli/report.hpp"

namespace regvec::cli {

// SVG 1.1 with two layers: "A" (the set and the surfaces H_k) and "hA"
// (its image and the floors F_k). n = 2 only.
std::string render_svg(const PipelineResult& r, const PipelineOptions& o);

// Wavefront OBJ, v and l only. Groups "A" and "hA" hold exactly o.samples
// vertices each; one group per H_k with a (mesh_res / 10)^2 grid. n = 3 only.
std::string render_obj(const PipelineResult& r, const PipelineOptions& o);

}  // namespace regvec::cli
