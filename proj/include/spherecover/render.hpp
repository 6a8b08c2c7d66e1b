#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "errors.hpp"

namespace spherecover {

namespace detail {

// Deterministic layout noise; no platform-dependent library calls.
class Lcg {
  public:
    explicit Lcg(std::uint64_t seed) : s_(seed ^ 0x9E3779B97F4A7C15ULL) {}
    double next() {  // [0, 1)
        s_ = s_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(s_ >> 11) / 9007199254740992.0;
    }

  private:
    std::uint64_t s_;
};

inline std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

}  // namespace detail

// Renders the diagram as SVG: one panel per sphere component, curves as
// quadratic strands through their crossings, sister pairs sharing a color,
// a dot at each curve's arrow and a label at each marked point.  The output
// is byte-deterministic: layout uses only +,-,*,/ and sqrt, and coordinates
// are emitted with three decimals.
inline std::string render_svg(const Diagram& d) {
    auto pi = passage_index(d);
    if (!pi) throw_validation("PassageConflict", "cannot render a diagram with passage conflicts");

    const double box = 320.0;
    const int ncomp = static_cast<int>(d.components.size());
    const int nx = static_cast<int>(d.crossings.size());

    // initial positions: noise per crossing inside its component's panel
    std::uint64_t seed = 1469598103934665603ULL;
    for (char ch : d.name) seed = (seed ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
    detail::Lcg rng(seed);
    std::vector<double> px(nx), py(nx);
    std::vector<int> comp_of(nx);
    for (int i = 0; i < nx; ++i) {
        comp_of[i] = d.curves[d.crossings[i].curve_a].comp;
        px[i] = comp_of[i] * box + 60.0 + rng.next() * (box - 120.0);
        py[i] = 60.0 + rng.next() * (box - 120.0);
    }

    // arcs pull their endpoints together, crossings of a panel repel
    std::vector<std::pair<int, int>> springs;
    for (int cu = 0; cu < static_cast<int>(d.curves.size()); ++cu) {
        int L = d.curves[cu].len;
        for (int k = 0; k < L; ++k)
            springs.push_back({pi->at.at({cu, k}).first, pi->at.at({cu, (k + 1) % L}).first});
    }
    for (int it = 0; it < 240; ++it) {
        std::vector<double> fx(nx, 0.0), fy(nx, 0.0);
        for (auto [i, j] : springs) {
            double dx = px[j] - px[i], dy = py[j] - py[i];
            double dist = std::sqrt(dx * dx + dy * dy) + 0.000001;
            double f = (dist - 85.0) * 0.02;
            fx[i] += f * dx / dist;
            fy[i] += f * dy / dist;
            fx[j] -= f * dx / dist;
            fy[j] -= f * dy / dist;
        }
        for (int i = 0; i < nx; ++i)
            for (int j = i + 1; j < nx; ++j) {
                if (comp_of[i] != comp_of[j]) continue;
                double dx = px[j] - px[i], dy = py[j] - py[i];
                double d2 = dx * dx + dy * dy + 0.0001;
                double dist = std::sqrt(d2);
                double f = 1500.0 / d2;
                fx[i] -= f * dx / dist;
                fy[i] -= f * dy / dist;
                fx[j] += f * dx / dist;
                fy[j] += f * dy / dist;
            }
        for (int i = 0; i < nx; ++i) {
            double cx = comp_of[i] * box + box / 2.0, cy = box / 2.0;
            px[i] += fx[i] + (cx - px[i]) * 0.01;
            py[i] += fy[i] + (cy - py[i]) * 0.01;
        }
    }
    // normalize each panel into its frame
    for (int c = 0; c < ncomp; ++c) {
        double lox = 1e18, hix = -1e18, loy = 1e18, hiy = -1e18;
        int cnt = 0;
        for (int i = 0; i < nx; ++i) {
            if (comp_of[i] != c) continue;
            ++cnt;
            lox = px[i] < lox ? px[i] : lox;
            hix = px[i] > hix ? px[i] : hix;
            loy = py[i] < loy ? py[i] : loy;
            hiy = py[i] > hiy ? py[i] : hiy;
        }
        if (cnt == 0) continue;
        double sx = hix - lox, sy = hiy - loy;
        double span = sx > sy ? sx : sy;
        if (span < 1.0) span = 1.0;
        double scale = (box - 110.0) / span;
        for (int i = 0; i < nx; ++i) {
            if (comp_of[i] != c) continue;
            px[i] = c * box + 55.0 + (px[i] - lox) * scale + (span - sx) * scale / 2.0;
            py[i] = 75.0 + (py[i] - loy) * scale + (span - sy) * scale / 2.0;
        }
    }

    // one color per sister pair
    static const char* kPalette[] = {"#1f6fb4", "#c23b3b", "#2e9e4f", "#8a56c2",
                                     "#d88022", "#7a5547", "#2aa8b8", "#c75fa8"};
    std::vector<std::string> color(d.curves.size(), "#444444");
    int pair = 0;
    for (int cu = 0; cu < static_cast<int>(d.curves.size()); ++cu) {
        int sc = d.sister[cu];
        if (sc >= 0 && sc < cu) continue;
        const char* col = kPalette[pair % 8];
        ++pair;
        color[cu] = col;
        if (sc >= 0) color[sc] = col;
    }

    auto F = detail::fmt3;
    std::ostringstream os;
    double W = ncomp * box, H = box + 40.0;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << F(W) << "\" height=\"" << F(H)
       << "\" viewBox=\"0 0 " << F(W) << " " << F(H) << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << F(W) << "\" height=\"" << F(H)
       << "\" fill=\"#ffffff\"/>\n";
    os << "<text x=\"12\" y=\"22\" font-family=\"monospace\" font-size=\"14\" fill=\"#222222\">"
       << d.name << "</text>\n";
    for (int c = 0; c < ncomp; ++c) {
        os << "<rect x=\"" << F(c * box + 14.0) << "\" y=\"36\" width=\"" << F(box - 28.0)
           << "\" height=\"" << F(box - 16.0)
           << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << F(c * box + 22.0)
           << "\" y=\"54\" font-family=\"monospace\" font-size=\"12\" fill=\"#888888\">"
           << d.components[c] << "</text>\n";
    }

    // control point of the quadratic strand over arc (cu, k)
    auto arc_pts = [&](int cu, int k, double& ax, double& ay, double& bx, double& by, double& cx2,
                       double& cy2) {
        int L = d.curves[cu].len;
        int i = pi->at.at({cu, k}).first, j = pi->at.at({cu, (k + 1) % L}).first;
        ax = px[i];
        ay = py[i];
        bx = px[j];
        by = py[j];
        double dx = bx - ax, dy = by - ay;
        double dist = std::sqrt(dx * dx + dy * dy);
        double ux, uy;
        if (dist < 0.001) {
            ux = 1.0;
            uy = 0.0;
            dist = 1.0;
        } else {
            ux = -dy / dist;
            uy = dx / dist;
        }
        double side = ((cu + k) % 2 == 0) ? 1.0 : -1.0;
        double amp = (12.0 + 7.0 * ((cu + 2 * k) % 3)) * side;
        if (dist < 10.0) amp = 26.0 * side;  // keep short loops visible
        cx2 = (ax + bx) / 2.0 + ux * amp;
        cy2 = (ay + by) / 2.0 + uy * amp;
    };

    for (int cu = 0; cu < static_cast<int>(d.curves.size()); ++cu) {
        int L = d.curves[cu].len;
        std::ostringstream path;
        double ax, ay, bx, by, cx2, cy2;
        for (int k = 0; k < L; ++k) {
            arc_pts(cu, k, ax, ay, bx, by, cx2, cy2);
            if (k == 0) path << "M " << F(ax) << ' ' << F(ay);
            path << " Q " << F(cx2) << ' ' << F(cy2) << ' ' << F(bx) << ' ' << F(by);
        }
        path << " Z";
        os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << color[cu]
           << "\" stroke-width=\"2\" stroke-opacity=\"0.85\"/>\n";
        // arrow dot: on the wrap arc, just before passage 0
        arc_pts(cu, (L + L - 1) % L, ax, ay, bx, by, cx2, cy2);
        double qx = bx + (cx2 - bx) * 0.3, qy = by + (cy2 - by) * 0.3;
        os << "<circle cx=\"" << F(qx) << "\" cy=\"" << F(qy) << "\" r=\"3.5\" fill=\"" << color[cu]
           << "\"/>\n";
        os << "<text x=\"" << F(qx + 5.0) << "\" y=\"" << F(qy - 5.0)
           << "\" font-family=\"monospace\" font-size=\"10\" fill=\"" << color[cu] << "\">"
           << d.curves[cu].id << "</text>\n";
    }

    for (const auto& mk : d.marked) {
        double ax, ay, bx, by, cx2, cy2;
        arc_pts(mk.curve, mk.arc, ax, ay, bx, by, cx2, cy2);
        double mx = 0.25 * ax + 0.5 * cx2 + 0.25 * bx;
        double my = 0.25 * ay + 0.5 * cy2 + 0.25 * by;
        double dx = bx - ax, dy = by - ay;
        double dist = std::sqrt(dx * dx + dy * dy);
        double ux = 0.0, uy = -1.0;
        if (dist >= 0.001) {
            ux = -dy / dist;
            uy = dx / dist;
        }
        double lx = mx + ux * 14.0 * mk.dir, ly = my + uy * 14.0 * mk.dir;
        os << "<circle cx=\"" << F(lx) << "\" cy=\"" << F(ly)
           << "\" r=\"3\" fill=\"#111111\"/>\n";
        os << "<text x=\"" << F(lx + 5.0) << "\" y=\"" << F(ly + 4.0)
           << "\" font-family=\"monospace\" font-size=\"11\" fill=\"#111111\">" << mk.id
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace spherecover
