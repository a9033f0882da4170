#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "polyform/transform.hpp"

namespace polyform {

/// Monic characteristic polynomial of M - I, stored coefficient-low-first:
/// p(x) = prod_i (x + w_i) - prod_i w_i. The constant term cancels exactly,
/// so coefficients[0] is identically zero and x = 0 is always a root.
struct CharPoly {
    std::vector<Complex> coefficients; // degree n, size n + 1, coefficients[n] == 1

    std::size_t degree() const { return coefficients.size() - 1; }

    Complex eval(const Complex& x) const {
        Complex acc{0.0, 0.0};
        for (std::size_t i = coefficients.size(); i-- > 0;)
            acc = acc * x + coefficients[i];
        return acc;
    }

    Complex eval_derivative(const Complex& x) const {
        Complex acc{0.0, 0.0};
        for (std::size_t i = coefficients.size(); i-- > 1;)
            acc = acc * x + static_cast<double>(i) * coefficients[i];
        return acc;
    }

    double max_coefficient_magnitude() const {
        double m = 0.0;
        for (const Complex& c : coefficients) m = std::max(m, std::abs(c));
        return m;
    }
};

/// Expand prod_i (x + w_i) by convolution, then cancel the constant term.
inline CharPoly char_poly(const WeightVector& w) {
    const std::size_t n = w.size();
    std::vector<Complex> c(n + 1, Complex{0.0, 0.0});
    c[0] = Complex{1.0, 0.0};
    std::size_t deg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        // multiply by (x + w_i)
        ++deg;
        c[deg] = c[deg - 1];
        for (std::size_t j = deg - 1; j > 0; --j)
            c[j] = c[j - 1] + w[i] * c[j];
        c[0] *= w[i];
    }
    c[0] = Complex{0.0, 0.0}; // prod w_i cancels symbolically
    return CharPoly{std::move(c)};
}

/// Determinant oracle: evaluate det(xI - (M - I)) on the dense matrix by
/// Gaussian elimination with partial pivoting. Test sizes only.
inline Complex char_poly_oracle(const WeightVector& w, const Complex& x) {
    const std::size_t n = w.size();
    std::vector<std::vector<Complex>> a(n, std::vector<Complex>(n, Complex{0.0, 0.0}));
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = x + w[i];
        a[i][(i + 1) % n] = -w[i];
    }
    Complex det{1.0, 0.0};
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) == 0.0) return Complex{0.0, 0.0};
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = a[r][col] / a[col][col];
            for (std::size_t cc = col; cc < n; ++cc) a[r][cc] -= f * a[col][cc];
        }
    }
    return det;
}

} // namespace polyform
