#include <algorithm>
#include <cmath>
#include <string>

#include "regvec/errors.hpp"
#include "regvec/lip/lipfn.hpp"

namespace regvec::lip {

namespace {

// One face of a piece's simplex with what is needed to minimize the cone
// objective over its affine hull.
struct Face {
    int nverts = 0;
    Vec origin;
    Mat Q;       // orthonormal basis of the face directions (dim x f)
    Mat pinv;    // edge pseudo-inverse, f x dim
    std::vector<int> facets;  // indices of faces with one vertex fewer
};

struct PreparedPiece {
    Vec grad;
    double offset;
    std::vector<Face> faces;  // faces[0] is the whole simplex
};

PreparedPiece prepare(const Piece& p) {
    const int k = static_cast<int>(p.vertices.size());
    require(k >= 1 && k <= 4, "mcshane_extend: pieces must have 1 to 4 vertices");
    const int dim = static_cast<int>(p.grad.size());
    PreparedPiece out{p.grad, p.offset, {}};
    // enumerate subsets from largest to smallest; mask -> face index
    std::vector<int> masks;
    for (int m = (1 << k) - 1; m > 0; --m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(),
                     [](int a, int b) { return __builtin_popcount(a) > __builtin_popcount(b); });
    std::vector<int> index_of(1 << k, -1);
    for (size_t i = 0; i < masks.size(); ++i) index_of[masks[i]] = static_cast<int>(i);
    for (int m : masks) {
        Face f;
        std::vector<int> idx;
        for (int i = 0; i < k; ++i)
            if (m & (1 << i)) idx.push_back(i);
        f.nverts = static_cast<int>(idx.size());
        f.origin = p.vertices[idx[0]];
        const int e = f.nverts - 1;
        if (e > 0) {
            Mat E(dim, e);
            for (int j = 0; j < e; ++j) E.col(j) = p.vertices[idx[j + 1]] - f.origin;
            Eigen::JacobiSVD<Mat> svd(E, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const auto& sv = svd.singularValues();
            require(sv(e - 1) > kEpsGeom, "mcshane_extend: degenerate piece");
            f.Q = svd.matrixU();
            f.pinv = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
            for (int i : idx) f.facets.push_back(index_of[m & ~(1 << i)]);
        }
        out.faces.push_back(std::move(f));
    }
    return out;
}

double cone_value(const PreparedPiece& p, double L, const Vec& q, const Vec& x) {
    return p.grad.dot(x) + p.offset + L * (q - x).norm();
}

double face_min(const PreparedPiece& p, int fi, double L, const Vec& q) {
    const Face& f = p.faces[fi];
    if (f.nverts == 1) return cone_value(p, L, q, f.origin);
    const Vec rel = q - f.origin;
    const Vec along = f.Q * (f.Q.transpose() * rel);
    const double h = (rel - along).norm();
    const Vec gF = f.Q * (f.Q.transpose() * Vec(p.grad));
    const double gn = gF.norm();
    if (gn < L) {
        // stationary point of g.x + L sqrt(|x - q_par|^2 + h^2) on the hull
        Vec x = along;
        if (gn > 0) x -= gF * (h / std::sqrt(L * L - gn * gn));
        const Vec t = f.pinv * x;
        bool inside = t.sum() <= 1.0 + 1e-12;
        for (int j = 0; j < t.size() && inside; ++j) inside = t(j) >= -1e-12;
        if (inside) return cone_value(p, L, q, Vec(f.origin + x));
    }
    double best = kInf;
    for (int fj : f.facets) best = std::min(best, face_min(p, fj, L, q));
    return best;
}

class McShaneNode final : public Node {
public:
    McShaneNode(std::vector<PreparedPiece> pieces, int dim, double L)
        : Node(dim, L), pieces_(std::move(pieces)) {}
    double eval(const Vec& x) const override {
        double best = kInf;
        for (const auto& p : pieces_) best = std::min(best, face_min(p, 0, lip(), x));
        return best;
    }
    std::string kind() const override { return "mcshane"; }

private:
    std::vector<PreparedPiece> pieces_;
};

std::vector<Vec> sample_points(const Piece& p, int extra) {
    std::vector<Vec> pts = p.vertices;
    const int k = static_cast<int>(p.vertices.size());
    if (k == 1) return pts;
    Vec c = Vec::Zero(p.grad.size());
    for (const auto& v : p.vertices) c += v;
    pts.push_back(c / k);
    // edge midpoints and points pulled toward each vertex
    for (int s = 0; s < extra; ++s) {
        const int i = s % k, j = (s / k + 1 + i) % k;
        const double w = 0.25 + 0.5 * ((s * 7) % 5) / 4.0;
        pts.push_back(w * p.vertices[i] + (1 - w) * p.vertices[j]);
    }
    return pts;
}

}  // namespace

double piece_cone_min(const Piece& piece, double L, const Vec& q) {
    return face_min(prepare(piece), 0, L, q);
}

LipFn mcshane_extend(const std::vector<Piece>& pieces, double L, const McShaneOptions& opts) {
    require(!pieces.empty(), "mcshane_extend: no pieces");
    require(L >= 0 && std::isfinite(L), "mcshane_extend: L must be finite and non-negative");
    const int dim = static_cast<int>(pieces.front().grad.size());
    std::vector<PreparedPiece> prepared;
    for (size_t i = 0; i < pieces.size(); ++i) {
        const auto& p = pieces[i];
        require(static_cast<int>(p.grad.size()) == dim, "mcshane_extend: dimension mismatch");
        for (const auto& v : p.vertices) require(static_cast<int>(v.size()) == dim, "mcshane_extend: dimension mismatch");
        prepared.push_back(prepare(p));
        if (opts.check_lipschitz) {
            const Face& top = prepared.back().faces[0];
            double slope = 0;
            if (top.nverts > 1) slope = (top.Q.transpose() * Vec(p.grad)).norm();
            if (slope > L * (1 + 1e-12) + 1e-12)
                throw ContractViolation("mcshane_extend: piece " + std::to_string(i) + " has slope " +
                                        std::to_string(slope) + " > L = " + std::to_string(L));
        }
    }
    if (opts.check_lipschitz && pieces.size() > 1) {
        std::vector<std::vector<Vec>> pts;
        for (const auto& p : pieces) pts.push_back(sample_points(p, opts.pair_samples_per_piece));
        for (size_t a = 0; a < pieces.size(); ++a)
            for (size_t b = a + 1; b < pieces.size(); ++b)
                for (const auto& x : pts[a])
                    for (const auto& y : pts[b]) {
                        const double df = std::abs(pieces[a].value(x) - pieces[b].value(y));
                        if (df > L * (x - y).norm() + opts.tol)
                            throw ContractViolation("mcshane_extend: pieces " + std::to_string(a) + " and " +
                                                    std::to_string(b) + " violate the Lipschitz bound L = " +
                                                    std::to_string(L));
                    }
    }
    return LipFn(std::make_shared<McShaneNode>(std::move(prepared), dim, L));
}

}  // namespace regvec::lip
