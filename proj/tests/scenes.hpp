#pragma once
#include <cmath>
#include <numbers>

#include "regvec/pl/simplex.hpp"

namespace testing_util {

using regvec::Vec;
using regvec::pl::PLSet;
using regvec::pl::Simplex;

inline Vec p2(double a, double b) { Vec v(2); v << a, b; return v; }
inline Vec p3(double a, double b, double c) { Vec v(3); v << a, b, c; return v; }

inline PLSet segment(Vec a, Vec b) {
    PLSet A(static_cast<int>(a.size()));
    A.add(Simplex({a, b}));
    return A;
}

inline PLSet square_boundary() {
    PLSet A(2);
    A.add(Simplex({p2(0, 0), p2(1, 0)}));
    A.add(Simplex({p2(1, 0), p2(1, 1)}));
    A.add(Simplex({p2(1, 1), p2(0, 1)}));
    A.add(Simplex({p2(0, 1), p2(0, 0)}));
    return A;
}

inline PLSet v_graph() {
    PLSet A(2);
    A.add(Simplex({p2(-1, 1), p2(0, 0)}));
    A.add(Simplex({p2(0, 0), p2(1, 1)}));
    return A;
}

inline PLSet polygon(int n) {
    PLSet A(2);
    for (int i = 0; i < n; ++i) {
        const double a = 2 * std::numbers::pi * i / n, b = 2 * std::numbers::pi * (i + 1) / n;
        A.add(Simplex({p2(std::cos(a), std::sin(a)), p2(std::cos(b), std::sin(b))}));
    }
    return A;
}

// Boundary of the unit cube minus the top face: five squares, two triangles each.
inline PLSet open_box() {
    PLSet A(3);
    auto quad = [&](Vec a, Vec b, Vec c, Vec d) {
        A.add(Simplex({a, b, c}));
        A.add(Simplex({a, c, d}));
    };
    quad(p3(0, 0, 0), p3(1, 0, 0), p3(1, 1, 0), p3(0, 1, 0));
    quad(p3(0, 0, 0), p3(1, 0, 0), p3(1, 0, 1), p3(0, 0, 1));
    quad(p3(0, 1, 0), p3(1, 1, 0), p3(1, 1, 1), p3(0, 1, 1));
    quad(p3(0, 0, 0), p3(0, 1, 0), p3(0, 1, 1), p3(0, 0, 1));
    quad(p3(1, 0, 0), p3(1, 1, 0), p3(1, 1, 1), p3(1, 0, 1));
    return A;
}

}  // namespace testing_util
