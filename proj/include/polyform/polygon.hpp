#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "polyform/errors.hpp"

namespace polyform {

using Complex = std::complex<double>;

/// An n-gon encoded as a complex vector, one vertex per entry.
/// Indexing is cyclic: the successor of the last vertex is the first.
struct Polygon {
    std::vector<Complex> vertices;

    Polygon() = default;
    explicit Polygon(std::vector<Complex> v) : vertices(std::move(v)) {
        validate();
    }
    Polygon(std::initializer_list<Complex> v) : vertices(v) { validate(); }

    std::size_t size() const { return vertices.size(); }
    const Complex& operator[](std::size_t i) const { return vertices[i]; }
    Complex& operator[](std::size_t i) { return vertices[i]; }

    /// Vertex with cyclic index (i modulo n).
    const Complex& cyclic(std::size_t i) const { return vertices[i % vertices.size()]; }

    bool operator==(const Polygon&) const = default;

private:
    void validate() const {
        if (vertices.size() < 3)
            throw DegeneratePolygon("polygon needs at least 3 vertices");
        for (const Complex& z : vertices)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw DegeneratePolygon("polygon vertex is not finite");
    }
};

/// Centered, unit-norm, phase-canonical vertex vector.
/// The centered vertex of largest modulus (lowest index on ties) is
/// rotated onto the nonnegative real axis.
struct Shape {
    std::vector<Complex> vertices;

    std::size_t size() const { return vertices.size(); }
    const Complex& operator[](std::size_t i) const { return vertices[i]; }

    Polygon as_polygon() const { return Polygon{vertices}; }
};

namespace detail {

inline double vertex_norm(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const Complex& z : v) s += std::norm(z);
    return std::sqrt(s);
}

inline double diameter(const std::vector<Complex>& v) {
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            d = std::max(d, std::abs(v[i] - v[j]));
    return d;
}

// Center and scale to unit norm; throws if the vertices collapse to a point.
inline std::vector<Complex> center_unit(const Polygon& p) {
    const std::size_t n = p.size();
    Complex mean{0.0, 0.0};
    for (const Complex& z : p.vertices) mean += z;
    mean /= static_cast<double>(n);

    std::vector<Complex> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = p[i] - mean;

    const double nrm = vertex_norm(c);
    const double diam = diameter(p.vertices);
    if (nrm <= 1e-14 * diam || nrm == 0.0)
        throw DegeneratePolygon("all vertices coincide");
    for (Complex& z : c) z /= nrm;
    return c;
}

} // namespace detail

/// Arithmetic mean of the vertices.
inline Complex centroid(const Polygon& p) {
    Complex sum{0.0, 0.0};
    for (const Complex& z : p.vertices) sum += z;
    return sum / static_cast<double>(p.size());
}

/// Translation-, scale- and rotation-normalized shape of a polygon.
inline Shape normalize_shape(const Polygon& p) {
    std::vector<Complex> c = detail::center_unit(p);

    // canonical phase: largest-modulus vertex, lowest index on ties
    std::size_t anchor = 0;
    double best = std::abs(c[0]);
    for (std::size_t i = 1; i < c.size(); ++i) {
        const double m = std::abs(c[i]);
        if (m > best + 1e-12) {
            best = m;
            anchor = i;
        }
    }
    const Complex z = c[anchor];
    const double m = std::abs(z);
    if (m > 0.0) {
        const Complex phase = std::conj(z) / m;
        for (Complex& v : c) v *= phase;
    }
    return Shape{std::move(c)};
}

/// Distance between polygon shapes: minimum over unit-modulus rotations of
/// the Euclidean distance of the centered unit-norm vertex vectors.
/// Zero iff the polygons agree up to translation and nonzero complex scaling.
inline double shape_distance(const Polygon& p, const Polygon& q) {
    if (p.size() != q.size())
        throw SizeMismatch("shape_distance: polygon sizes differ");
    const std::vector<Complex> a = detail::center_unit(p);
    const std::vector<Complex> b = detail::center_unit(q);

    // optimal phase in closed form: e^{i phi} = <a, b> / |<a, b>|; evaluating
    // the residual vector directly avoids cancellation near zero distance
    Complex inner{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) inner += a[i] * std::conj(b[i]);
    const double mag = std::abs(inner);
    if (mag == 0.0) return std::sqrt(2.0);
    const Complex phase = inner / mag;
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d2 += std::norm(a[i] - phase * b[i]);
    return std::sqrt(d2);
}

/// Translate so that the first vertex is exactly zero.
inline Polygon translate_to_anchor(const Polygon& p) {
    std::vector<Complex> v = p.vertices;
    const Complex z1 = v[0];
    for (Complex& z : v) z -= z1;
    v[0] = Complex{0.0, 0.0};
    return Polygon{std::move(v)};
}

} // namespace polyform
