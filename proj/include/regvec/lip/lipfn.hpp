#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "regvec/geom/types.hpp"

namespace regvec::lip {

class Level;

// f(x) = grad . x + offset
struct AffineForm {
    Vec grad;
    double offset = 0;
};

// Expression-tree node. Subclasses live wherever a construction needs them.
class Node {
public:
    Node(int dim, double lip) : dim_(dim), lip_(lip) {}
    virtual ~Node() = default;
    virtual double eval(const Vec& x) const = 0;
    virtual std::optional<AffineForm> affine() const { return std::nullopt; }
    // Set when the node is a graph representation of an implicit surface.
    virtual std::shared_ptr<const Level> source_level() const { return nullptr; }
    virtual std::string kind() const = 0;

    int dim() const { return dim_; }
    double lip() const { return lip_; }

private:
    int dim_;
    double lip_;
};

// Value handle on an immutable expression tree over R^dim, with a certified
// Lipschitz bound. Sentinels are the constants ±inf.
class LipFn {
public:
    LipFn() = default;
    explicit LipFn(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    bool valid() const { return node_ != nullptr; }
    int dim() const { return node_->dim(); }
    double lip() const { return node_->lip(); }
    double operator()(const Vec& x) const { return node_->eval(x); }
    std::optional<AffineForm> affine() const { return node_->affine(); }
    std::shared_ptr<const Level> source_level() const { return node_->source_level(); }
    std::string kind() const { return node_->kind(); }
    const std::shared_ptr<const Node>& node() const { return node_; }

    // Constant +inf / -inf.
    bool is_pos_inf() const;
    bool is_neg_inf() const;
    bool is_sentinel() const { return is_pos_inf() || is_neg_inf(); }

private:
    std::shared_ptr<const Node> node_;
};

LipFn constant(int dim, double c);
inline LipFn pos_inf(int dim) { return constant(dim, kInf); }
inline LipFn neg_inf(int dim) { return constant(dim, -kInf); }
LipFn affine(const Vec& grad, double offset);

LipFn fmin(const LipFn& f, const LipFn& g);
LipFn fmax(const LipFn& f, const LipFn& g);
// min(max(lo, f), hi)
inline LipFn clamp(const LipFn& lo, const LipFn& f, const LipFn& hi) { return fmin(fmax(lo, f), hi); }
LipFn shift(const LipFn& f, double c);

// x -> Q x + b with Q orthogonal.
struct Isometry {
    Mat Q;
    Vec b;
    Vec apply(const Vec& x) const { return Q * x + b; }
};
LipFn compose_isometry(const LipFn& f, const Isometry& phi);

// Pointwise sort: result[j](x) is the j-th smallest of f_i(x).
std::vector<LipFn> order_statistics(const std::vector<LipFn>& fns);

// Affine function on a simplex of R^dim (vertices may span a lower-dimensional face).
struct Piece {
    std::vector<Vec> vertices;
    Vec grad;
    double offset = 0;
    double value(const Vec& p) const { return grad.dot(p) + offset; }
};

struct McShaneOptions {
    bool check_lipschitz = true;
    int pair_samples_per_piece = 8;
    double tol = 1e-9;
};

// inf over the pieces' domain of f(p) + L|x - p|.
LipFn mcshane_extend(const std::vector<Piece>& pieces, double L, const McShaneOptions& opts = {});

// Minimum of f(p) + L|q - p| over the piece's simplex; exposed for testing.
double piece_cone_min(const Piece& piece, double L, const Vec& q);

}  // namespace regvec::lip
