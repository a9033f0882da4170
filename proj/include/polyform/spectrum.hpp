#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "polyform/charpoly.hpp"
#include "polyform/errors.hpp"
#include "polyform/transform.hpp"

namespace polyform {

enum class RootProvenance { ClosedForm, Numeric };

/// Multiset of eigenvalues of M, each tagged with how it was obtained.
/// Always contains 1: the all-ones vector is an eigenvector for every
/// weight choice.
struct Spectrum {
    std::vector<Complex> eigenvalues_of_M;
    std::vector<RootProvenance> provenance;
};

/// Eigenvalue of M together with its eigenvector and the relative residual
/// ||M v - mu v|| / ||v||.
struct EigenPair {
    Complex mu_of_M;
    std::vector<Complex> vector;
    double residual = 0.0;
};

namespace detail {

inline std::size_t first_zero_weight(const WeightVector& w) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] == Complex{0.0, 0.0}) return i;
    return w.size();
}

// Rotate the weight list so the first exact zero lands at index 0.
inline WeightVector rotate_zero_first(const WeightVector& w) {
    const std::size_t z = first_zero_weight(w);
    if (z == w.size())
        throw NoZeroWeight("no weight entry is exactly zero");
    std::vector<Complex> r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[i] = w[(z + i) % w.size()];
    return WeightVector{std::move(r)};
}

inline double eigen_residual(const WeightVector& w, const std::vector<Complex>& v,
                             const Complex& mu) {
    Polygon pv{v};
    Polygon mv = apply_step(pv, w);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        num += std::norm(mv[i] - mu * v[i]);
        den += std::norm(v[i]);
    }
    return std::sqrt(num) / std::sqrt(den);
}

// Aberth-Ehrlich simultaneous iteration on a monic polynomial given by
// low-first coefficients. Fixed initialization, deterministic.
inline std::vector<Complex> aberth_roots(const std::vector<Complex>& coeffs,
                                         double residual_target) {
    const std::size_t deg = coeffs.size() - 1;
    CharPoly p{coeffs}; // reuse Horner evaluators; "char poly" shape not required

    double maxc = 0.0;
    for (const Complex& c : coeffs) maxc = std::max(maxc, std::abs(c));
    const double radius = 1.0 + maxc;

    std::vector<Complex> roots(deg);
    for (std::size_t k = 0; k < deg; ++k) {
        // angular offset breaks symmetry with real-coefficient spectra
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(deg) +
                           0.4;
        roots[k] = radius * Complex{std::cos(ang), std::sin(ang)};
    }

    const int max_sweeps = 500;
    const double update_tol = 1e-12;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double max_update = 0.0;
        for (std::size_t k = 0; k < deg; ++k) {
            const Complex pk = p.eval(roots[k]);
            if (pk == Complex{0.0, 0.0}) continue;
            const Complex dk = p.eval_derivative(roots[k]);
            if (dk == Complex{0.0, 0.0}) {
                roots[k] += Complex{1e-8, 1e-8};
                max_update = std::max(max_update, 1e-8);
                continue;
            }
            const Complex newton = pk / dk;
            Complex repulse{0.0, 0.0};
            for (std::size_t j = 0; j < deg; ++j) {
                if (j == k) continue;
                const Complex diff = roots[k] - roots[j];
                if (diff != Complex{0.0, 0.0}) repulse += Complex{1.0, 0.0} / diff;
            }
            const Complex denom = Complex{1.0, 0.0} - newton * repulse;
            const Complex delta =
                (denom == Complex{0.0, 0.0}) ? newton : newton / denom;
            roots[k] -= delta;
            max_update = std::max(max_update, std::abs(delta));
        }
        if (max_update < update_tol) break;
        // clusters stall on the update criterion; accept early only well
        // below the caller's residual target
        if (sweep % 16 == 15) {
            bool all_ok = true;
            for (const Complex& r : roots)
                if (std::abs(p.eval(r)) > 1e-3 * residual_target) {
                    all_ok = false;
                    break;
                }
            if (all_ok) break;
        }
    }
    for (const Complex& r : roots)
        if (std::abs(p.eval(r)) > residual_target)
            throw ConvergenceFailure("root iteration did not reach residual target");
    return roots;
}

} // namespace detail

/// Closed-form spectrum when some weight is exactly zero: the eigenvalues
/// of M are 1 - w_i.
inline Spectrum eigenvalues_case1(const WeightVector& w) {
    WeightVector r = detail::rotate_zero_first(w);
    Spectrum s;
    s.eigenvalues_of_M.reserve(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        s.eigenvalues_of_M.push_back(Complex{1.0, 0.0} - r[i]);
        s.provenance.push_back(RootProvenance::ClosedForm);
    }
    return s;
}

/// Closed-form eigenvector for the eigenvalue 1 - w_k (k is the 1-based
/// index into the zero-rotated weight list): v_1 = 0, v_2 = 1, then
/// v_{i+1} = ((w_i - w_k)/w_i) v_i up to index k, zeros after.
inline EigenPair eigenvector_case1(const WeightVector& w, std::size_t k) {
    const std::size_t shift = detail::first_zero_weight(w);
    WeightVector r = detail::rotate_zero_first(w);
    const std::size_t n = r.size();
    if (k < 2 || k > n)
        throw SizeMismatch("eigenvector_case1: index out of range");

    const Complex wk = r[k - 1];
    const Complex mu = Complex{1.0, 0.0} - wk;

    // reject clustered eigenvalues: the formula divides by w_j - w_k
    for (std::size_t j = 0; j < n; ++j) {
        if (j == k - 1) continue;
        const Complex other = Complex{1.0, 0.0} - r[j];
        if (std::abs(other - mu) <= 1e-10 * (1.0 + std::abs(mu)))
            throw DegenerateSpectrum("eigenvalue 1 - w_k is not simple");
    }

    std::vector<Complex> v(n, Complex{0.0, 0.0});
    v[1] = Complex{1.0, 0.0};
    for (std::size_t i = 2; i < k; ++i) {
        const Complex wi = r[i - 1];
        if (wi == Complex{0.0, 0.0})
            throw ZeroDivision("eigenvector_case1: zero weight inside the product");
        v[i] = v[i - 1] * (wi - wk) / wi;
    }

    // undo the zero-first rotation so the vector pairs with the caller's w
    std::vector<Complex> v_orig(n);
    for (std::size_t i = 0; i < n; ++i) v_orig[(shift + i) % n] = v[i];

    EigenPair pair;
    pair.mu_of_M = mu;
    pair.vector = std::move(v_orig);
    pair.residual = detail::eigen_residual(w, pair.vector, mu);
    return pair;
}

/// All eigenvalues of M by polynomial root finding on the characteristic
/// polynomial of M - I. The exact root at zero is deflated symbolically
/// before iterating.
inline Spectrum eigenvalues_general(const WeightVector& w) {
    CharPoly p = char_poly(w);
    const double residual_target = 1e-10 * (1.0 + p.max_coefficient_magnitude());

    // strip exact zero roots (constant term is identically zero)
    std::vector<Complex> c = p.coefficients;
    std::size_t zero_roots = 0;
    while (c.size() > 1 && c[0] == Complex{0.0, 0.0}) {
        c.erase(c.begin());
        ++zero_roots;
    }

    std::vector<Complex> roots;
    roots.reserve(p.degree());
    for (std::size_t i = 0; i < zero_roots; ++i) roots.push_back(Complex{0.0, 0.0});
    if (c.size() > 1) {
        std::vector<Complex> rest = detail::aberth_roots(c, residual_target);
        roots.insert(roots.end(), rest.begin(), rest.end());
    }

    // p(x) = x^z q(x) exactly (the deflated factors were zero symbolically),
    // so evaluate through the factored form
    const CharPoly q{c};
    auto residual = [&](const Complex& x) {
        double r = std::abs(q.eval(x));
        for (std::size_t i = 0; i < zero_roots; ++i) r *= std::abs(x);
        return r;
    };

    Spectrum s;
    for (const Complex& root : roots) {
        if (residual(root) > residual_target)
            throw ConvergenceFailure("eigenvalue residual exceeds target");
        s.eigenvalues_of_M.push_back(root + Complex{1.0, 0.0});
        s.provenance.push_back(RootProvenance::Numeric);
    }
    return s;
}

} // namespace polyform
