#include "regvec/cli/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "regvec/errors.hpp"
#include "regvec/pl/sampling.hpp"
#include "regvec/systems/validate.hpp"

namespace regvec::cli {

namespace {

struct Box {
    double x0 = kInf, y0 = kInf, x1 = -kInf, y1 = -kInf;
    void add(double x, double y) {
        if (!std::isfinite(x) || !std::isfinite(y)) return;
        x0 = std::min(x0, x), y0 = std::min(y0, y), x1 = std::max(x1, x), y1 = std::max(y1, y);
    }
    bool inside(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
    void grow(double f) {
        if (x0 > x1) x0 = y0 = -1, x1 = y1 = 1;
        const double s = std::max({x1 - x0, y1 - y0, 1e-9}) * f;
        x0 -= s, x1 += s, y0 -= s, y1 += s;
    }
};

// World box to a square-ish panel at (ox, 0), y up.
struct Panel {
    Box b;
    double ox, size;
    double px(double x) const { return ox + 20 + (x - b.x0) / (b.x1 - b.x0) * (size - 40); }
    double py(double y) const { return 20 + (b.y1 - y) / (b.y1 - b.y0) * (size - 40); }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// Polyline pieces inside the panel box.
void polyline(std::ostringstream& out, const Panel& p, const std::vector<Vec>& pts, const char* cls) {
    std::string d;
    bool open = false;
    for (const auto& q : pts) {
        if (!p.b.inside(q(0), q(1))) {
            open = false;
            continue;
        }
        d += (open ? " L" : " M") + fmt(p.px(q(0))) + " " + fmt(p.py(q(1)));
        open = true;
    }
    if (!d.empty()) out << "    <path class=\"" << cls << "\" d=\"" << d.substr(1) << "\"/>\n";
}

std::vector<Vec> along(const pl::Simplex& s, int m) {
    std::vector<Vec> pts;
    if (s.dim() == 0) return {s.vertices()[0]};
    for (int i = 0; i <= m; ++i) pts.push_back(s.point({1 - double(i) / m, double(i) / m}));
    return pts;
}

// Shadow interval of the box corners for a direction in R^2.
std::pair<double, double> shadow_range(const geom::Frame& F, const Vec& lo, const Vec& hi) {
    double a = kInf, b = -kInf;
    for (int c = 0; c < 4; ++c) {
        Vec q(2);
        q << (c & 1 ? hi(0) : lo(0)), (c & 2 ? hi(1) : lo(1));
        const double s = F.shadow(q)(0);
        a = std::min(a, s), b = std::max(b, s);
    }
    return {a, b};
}

}  // namespace

std::string render_svg(const PipelineResult& r, const PipelineOptions& o) {
    const int n = r.A.ambient_dim();
    require(n == 2, "render: SVG output needs a scene in R^2");
    const int m = std::max(2, o.mesh_res);
    const auto [lo, hi] = systems::sampling_box(2, &r.A);

    Panel left{{}, 0, 480}, right{{}, 480, 480};
    left.b.add(lo(0), lo(1));
    left.b.add(hi(0), hi(1));
    std::vector<std::vector<Vec>> images;
    if (r.h) {
        for (const auto& s : r.A.simplices()) {
            std::vector<Vec> img;
            for (const auto& q : along(s, m)) img.push_back(r.h->apply(q));
            for (const auto& p : img) right.b.add(p(0), p(1));
            images.push_back(std::move(img));
        }
        right.b.grow(0.15);
    }

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"960\" height=\"480\" "
           "viewBox=\"0 0 960 480\">\n"
        << "  <style>.A{stroke:#111;stroke-width:2;fill:none}.H{stroke:#3b7dd8;stroke-width:1;fill:none}"
           ".hA{stroke:#c0392b;stroke-width:2;fill:none}.F{stroke:#999;stroke-width:1;fill:none}"
           ".pt{fill:#111}</style>\n";
    if (!r.scene.name.empty()) out << "  <title>" << r.scene.name << "</title>\n";

    out << "  <g id=\"A\" class=\"layer\">\n";
    if (r.S) {
        out << "   <g id=\"H\">\n";
        for (int k = 1; k <= r.S->count(); ++k) {
            const auto H = r.S->lower_surface(k);
            const auto [a, b] = shadow_range(H.frame(), lo, hi);
            std::vector<Vec> pts;
            for (int i = 0; i <= m; ++i) {
                Vec s(1);
                s << a + (b - a) * i / m;
                pts.push_back(H.point(s));
            }
            polyline(out, left, pts, "H");
        }
        out << "   </g>\n";
    }
    for (const auto& s : r.A.simplices()) {
        if (s.dim() == 0)
            out << "    <circle class=\"pt\" cx=\"" << fmt(left.px(s.vertices()[0](0))) << "\" cy=\""
                << fmt(left.py(s.vertices()[0](1))) << "\" r=\"3\"/>\n";
        else
            polyline(out, left, along(s, 1), "A");
    }
    out << "  </g>\n";

    out << "  <g id=\"hA\" class=\"layer\">\n";
    if (r.h) {
        out << "   <g id=\"F\">\n";
        for (int k = 1; k <= r.S->count(); ++k) {
            std::vector<Vec> pts;
            for (int i = 0; i <= m; ++i) {
                Vec x(1);
                x << right.b.x0 + (right.b.x1 - right.b.x0) * i / m;
                Vec p(2);
                p << x(0), r.h->floor(k, x);
                pts.push_back(p);
            }
            polyline(out, right, pts, "F");
        }
        out << "   </g>\n";
        for (const auto& img : images) {
            if (img.size() == 1)
                out << "    <circle class=\"pt\" cx=\"" << fmt(right.px(img[0](0))) << "\" cy=\""
                    << fmt(right.py(img[0](1))) << "\" r=\"3\"/>\n";
            else
                polyline(out, right, img, "hA");
        }
    }
    out << "  </g>\n</svg>\n";
    return out.str();
}

std::string render_obj(const PipelineResult& r, const PipelineOptions& o) {
    const int n = r.A.ambient_dim();
    require(n == 3, "render: OBJ output needs a scene in R^3");
    require(o.samples >= 1, "render: samples must be positive");
    std::ostringstream out;
    out.precision(9);
    out << "# regvec " << version() << (r.scene.name.empty() ? "" : " " + r.scene.name) << "\n";
    int next = 1;  // OBJ indices are 1-based and global

    std::vector<Vec> src;
    std::vector<std::pair<int, int>> edges;
    const int count = static_cast<int>(r.A.size());
    for (int i = 0; i < count; ++i) {
        const int want = o.samples / count + (i < o.samples % count ? 1 : 0);
        const auto& s = r.A.simplices()[i];
        const int start = static_cast<int>(src.size());
        for (const auto& q : pl::sample_simplex(s, want)) src.push_back(q);
        if (want >= s.dim() + 1)
            for (int a = 0; a <= s.dim(); ++a)
                for (int b = a + 1; b <= s.dim(); ++b) edges.emplace_back(start + a, start + b);
    }

    out << "g A\n";
    const int base = next;
    for (const auto& q : src) out << "v " << q(0) << " " << q(1) << " " << q(2) << "\n", ++next;
    for (const auto& [a, b] : edges) out << "l " << base + a << " " << base + b << "\n";

    if (r.S) {
        const auto [lo, hi] = systems::sampling_box(3, &r.A);
        const int side = std::max(2, o.mesh_res / 10);
        for (int k = 1; k <= r.S->count(); ++k) {
            const auto H = r.S->lower_surface(k);
            Vec slo = Vec::Constant(2, kInf), shi = Vec::Constant(2, -kInf);
            for (int c = 0; c < 8; ++c) {
                Vec q(3);
                q << (c & 1 ? hi(0) : lo(0)), (c & 2 ? hi(1) : lo(1)), (c & 4 ? hi(2) : lo(2));
                const Vec s = H.frame().shadow(q);
                slo = slo.cwiseMin(s), shi = shi.cwiseMax(s);
            }
            out << "g H_" << k << "\n";
            std::vector<int> id(static_cast<size_t>(side * side), 0);
            for (int i = 0; i < side; ++i)
                for (int j = 0; j < side; ++j) {
                    Vec s(2);
                    s << slo(0) + (shi(0) - slo(0)) * i / (side - 1), slo(1) + (shi(1) - slo(1)) * j / (side - 1);
                    const Vec q = H.point(s);
                    if ((q.array() < lo.array()).any() || (q.array() > hi.array()).any()) continue;
                    out << "v " << q(0) << " " << q(1) << " " << q(2) << "\n";
                    id[i * side + j] = next++;
                }
            for (int i = 0; i < side; ++i)
                for (int j = 0; j < side; ++j) {
                    const int v = id[i * side + j];
                    if (!v) continue;
                    if (i + 1 < side && id[(i + 1) * side + j]) out << "l " << v << " " << id[(i + 1) * side + j] << "\n";
                    if (j + 1 < side && id[i * side + j + 1]) out << "l " << v << " " << id[i * side + j + 1] << "\n";
                }
        }
    }
    if (r.h) {
        out << "g hA\n";
        for (const auto& q : src) {
            const Vec p = r.h->apply(q);
            out << "v " << p(0) << " " << p(1) << " " << p(2) << "\n";
            ++next;
        }
    }
    return out.str();
}

}  // namespace regvec::cli
