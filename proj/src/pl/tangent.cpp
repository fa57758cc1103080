#include "regvec/pl/tangent.hpp"

#include <cmath>
#include <string>

#include "regvec/errors.hpp"
#include "regvec/geom/frame.hpp"

namespace regvec::pl {

namespace {
// Directions computed from different edge sets of one plane agree to ~1e-15.
constexpr double kDedupAngle = 1e-9;
}

std::vector<geom::Subspace> tangent_set(const PLSet& A) {
    std::vector<geom::Subspace> out;
    for (int i : A.maximal_indices()) {
        const auto& T = A.simplices()[i].direction();
        bool dup = false;
        for (const auto& U : out)
            if (U.dim() == T.dim() && geom::angle(T, U) < kDedupAngle) { dup = true; break; }
        if (!dup) out.push_back(T);
    }
    return out;
}

double regularity_margin(const Vec& lambda, const PLSet& A) {
    require(lambda.size() == A.ambient_dim(), "regularity_margin: dimension mismatch");
    return geom::dist_to_set(lambda, tangent_set(A));
}

std::vector<std::vector<int>> flat_partition_indices(const PLSet& A, double alpha) {
    if (!(alpha > 0)) throw ContractViolation("flat_partition: alpha must be positive");
    std::vector<std::vector<int>> groups;
    const int m = static_cast<int>(A.size());
    if (alpha >= 1.0) {
        if (m > 0) {
            groups.emplace_back();
            for (int i = 0; i < m; ++i) groups[0].push_back(i);
        }
        return groups;
    }
    std::vector<int> rep;
    for (int i = 0; i < m; ++i) {
        const auto& T = A.simplices()[i].direction();
        bool placed = false;
        for (size_t g = 0; g < groups.size() && !placed; ++g) {
            const auto& R = A.simplices()[rep[g]].direction();
            if (R.dim() != T.dim() || geom::angle(T, R) > alpha / 2) continue;
            // exhaustive check keeps the pairwise bound exact
            bool ok = true;
            for (int j : groups[g])
                if (geom::angle(T, A.simplices()[j].direction()) > alpha) { ok = false; break; }
            if (ok) { groups[g].push_back(i); placed = true; }
        }
        if (!placed) {
            groups.push_back({i});
            rep.push_back(i);
        }
    }
    return groups;
}

std::vector<PLSet> flat_partition(const PLSet& A, double alpha) {
    std::vector<PLSet> out;
    for (const auto& g : flat_partition_indices(A, alpha)) out.push_back(A.subset(g));
    return out;
}

double slope_bound(double alpha) {
    if (!(alpha > 0)) return kInf;
    if (alpha >= 1) return 0.0;
    return std::sqrt(1.0 - alpha * alpha) / alpha;
}

std::vector<GraphPiece> graph_decompose(const PLSet& A, const Vec& lambda, double alpha) {
    require(alpha > 0, "graph_decompose: alpha must be positive");
    require(lambda.size() == A.ambient_dim(), "graph_decompose: dimension mismatch");
    const geom::Frame F(lambda);
    std::vector<GraphPiece> out;
    for (size_t i = 0; i < A.size(); ++i) {
        const Simplex& s = A.simplices()[i];
        const double m = geom::dist_to_subspace(lambda, s.direction());
        if (m < alpha)
            throw ContractViolation("graph_decompose: direction not regular for simplex " + std::to_string(i) +
                                    " (margin " + std::to_string(m) + " < " + std::to_string(alpha) + ")");
        GraphPiece p;
        p.simplex = static_cast<int>(i);
        std::vector<double> h;
        for (const auto& v : s.vertices()) {
            p.shadow.push_back(F.shadow(v));
            h.push_back(F.height(v));
        }
        const int d = s.dim();
        const int k = A.ambient_dim() - 1;
        p.gradient = Vec::Zero(k);
        if (d > 0) {
            Eigen::MatrixXd S(k, d);
            Eigen::VectorXd dh(d);
            for (int j = 0; j < d; ++j) {
                S.col(j) = p.shadow[j + 1] - p.shadow[0];
                dh(j) = h[j + 1] - h[0];
            }
            const Eigen::VectorXd coef = (S.transpose() * S).ldlt().solve(dh);
            p.gradient = S * coef;
        }
        p.offset = h[0] - p.gradient.dot(p.shadow[0]);
        p.slope = p.gradient.norm();
        p.lip_cert = slope_bound(alpha);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace regvec::pl
