#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "polyform/io.hpp"
#include "polyform/regions.hpp"
#include "polyform/transform.hpp"

namespace polyform {

namespace detail {

struct BoundingBox {
    double min_x = 0.0, min_y = 0.0, max_x = 1.0, max_y = 1.0;

    void expand(const Complex& z) {
        min_x = std::min(min_x, z.real());
        max_x = std::max(max_x, z.real());
        min_y = std::min(min_y, z.imag());
        max_y = std::max(max_y, z.imag());
    }
};

inline std::string svg_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string svg_open(const BoundingBox& bb) {
    const double w = bb.max_x - bb.min_x;
    const double h = bb.max_y - bb.min_y;
    const double mx = 0.05 * std::max(w, 1e-9);
    const double my = 0.05 * std::max(h, 1e-9);
    // flip y so the complex plane reads with imaginary axis up
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    s += svg_number(bb.min_x - mx) + " " + svg_number(-(bb.max_y + my)) + " " +
         svg_number(w + 2 * mx) + " " + svg_number(h + 2 * my) + "\">\n";
    return s;
}

inline std::string polyline_points(const std::vector<Complex>& v) {
    std::string pts;
    for (const Complex& z : v) {
        pts += svg_number(z.real()) + "," + svg_number(-z.imag()) + " ";
    }
    if (!v.empty()) pts += svg_number(v[0].real()) + "," + svg_number(-v[0].imag());
    return pts;
}

} // namespace detail

/// One closed polyline per frame, opacity ramping from 0.15 to 1.0.
inline std::string trajectory_svg(const Trajectory& t) {
    detail::BoundingBox bb;
    bool first = true;
    for (const TrajectoryFrame& f : t.frames)
        for (const Complex& z : f.shape.vertices) {
            if (first) {
                bb = detail::BoundingBox{z.real(), z.imag(), z.real(), z.imag()};
                first = false;
            } else {
                bb.expand(z);
            }
        }

    std::string s = detail::svg_open(bb);
    const std::size_t count = t.frames.size();
    for (std::size_t i = 0; i < count; ++i) {
        const double opacity =
            count > 1 ? 0.15 + 0.85 * static_cast<double>(i) / (count - 1) : 1.0;
        s += "  <polyline fill=\"none\" stroke=\"#205080\" stroke-width=\"0.01\" "
             "stroke-opacity=\"" +
             detail::svg_number(opacity) + "\" points=\"" +
             detail::polyline_points(t.frames[i].shape.vertices) + "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

/// Shade each dominance region and mark sampled intersection points.
inline std::string regions_svg(const std::vector<LambdaRegion>& regions,
                               const std::vector<Complex>& intersection_samples,
                               double extent = 10.0) {
    detail::BoundingBox bb{-extent, -extent, extent, extent};
    std::string s = detail::svg_open(bb);
    for (const LambdaRegion& r : regions) {
        switch (r.kind) {
        case RegionKind::CircleExterior:
        case RegionKind::CircleInterior: {
            const Complex& c = *r.omega;
            s += "  <circle cx=\"" + detail::svg_number(c.real()) + "\" cy=\"" +
                 detail::svg_number(-c.imag()) + "\" r=\"" +
                 detail::svg_number(std::abs(c)) +
                 "\" fill=\"#4080c0\" fill-opacity=\"0.12\" stroke=\"#205080\" "
                 "stroke-width=\"0.02\"/>\n";
            break;
        }
        case RegionKind::HalfPlane: {
            // boundary line through the origin, orthogonal to the inward normal
            const Complex d = *r.direction;
            const Complex t = Complex{-d.imag(), d.real()} / std::abs(d);
            s += "  <line x1=\"" + detail::svg_number(-extent * t.real()) + "\" y1=\"" +
                 detail::svg_number(extent * t.imag()) + "\" x2=\"" +
                 detail::svg_number(extent * t.real()) + "\" y2=\"" +
                 detail::svg_number(-extent * t.imag()) +
                 "\" stroke=\"#205080\" stroke-width=\"0.02\"/>\n";
            break;
        }
        case RegionKind::Empty:
            break;
        }
    }
    for (const Complex& z : intersection_samples)
        s += "  <circle cx=\"" + detail::svg_number(z.real()) + "\" cy=\"" +
             detail::svg_number(-z.imag()) +
             "\" r=\"0.05\" fill=\"#c04020\" fill-opacity=\"0.6\"/>\n";
    s += "</svg>\n";
    return s;
}

} // namespace polyform
