#pragma once
#include <memory>
#include <optional>

#include "regvec/geom/frame.hpp"
#include "regvec/lip/lipfn.hpp"

namespace regvec::lip {

// Implicit hypersurface {value = 0} in R^dim, value increasing "upward".
class Level {
public:
    virtual ~Level() = default;
    virtual int dim() const = 0;
    virtual double value(const Vec& q) const = 0;
    // Lower bound on the directional derivative of value along d (any length).
    virtual double rate(const Vec& d) const = 0;
    // Upper bound on |grad value|.
    virtual double grad_bound() const = 0;
    // value(q) = a.q - c exactly, when known.
    virtual std::optional<AffineForm> affine() const { return std::nullopt; }

    // Certified lower bound on <d, ν> over unit upward normals ν, d unit.
    double margin(const Vec& d) const;
};

using LevelPtr = std::shared_ptr<const Level>;

// {q : <q, λ> = ξ(π_λ q)}
LevelPtr graph_level(const Vec& lambda, const LipFn& xi);
// {q : inner(π_e q) = 0}, inner living in the coordinates of N_e.
LevelPtr cylinder_level(const Vec& e, LevelPtr inner);

// Γ^λ_ξ
class Hypersurface {
public:
    Hypersurface() = default;
    Hypersurface(Vec direction, LipFn height);

    const Vec& direction() const { return frame_.direction(); }
    const LipFn& height() const { return height_; }
    const geom::Frame& frame() const { return frame_; }
    int ambient_dim() const { return frame_.ambient_dim(); }

    // <q,λ> - ξ(π_λ q); ±inf for sentinels.
    double signed_height(const Vec& q) const;
    // The implicit form, reusing the source surface when ξ came from regraph.
    // Null for sentinels.
    const LevelPtr& level() const { return level_; }
    // Point of the graph over the shadow s.
    Vec point(const Vec& shadow) const { return frame_.embed(shadow, height_(shadow)); }

private:
    geom::Frame frame_;
    LipFn height_;
    LevelPtr level_;
};

enum class Side { Below, On, Above };

Side below(const Hypersurface& H, const Vec& q, double eps = kEpsEval);

struct RegraphOptions {
    double eps = kEpsEval;
    int max_doublings = 60;
    int max_iterations = 200;
};

// The surface as a graph over N_λ'. margin is the caller's certified
// geometric margin of λ' for the surface; omitted, it is taken from the level.
LipFn regraph(const LevelPtr& level, const Vec& lambda_prime, std::optional<double> margin = std::nullopt,
              const RegraphOptions& opts = {});
Hypersurface regraph(const Hypersurface& H, const Vec& lambda_prime, std::optional<double> margin = std::nullopt,
                     const RegraphOptions& opts = {});

}  // namespace regvec::lip
