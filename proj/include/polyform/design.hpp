#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "polyform/errors.hpp"
#include "polyform/polygon.hpp"
#include "polyform/regions.hpp"
#include "polyform/transform.hpp"

namespace polyform {

/// Weights built from a target polygon v so that v is an eigenvector of the
/// induced transition matrix with eigenvalue 2: w~_i = v_i / (v_{i+1} - v_i).
struct AuxWeights {
    std::vector<Complex> w_tilde;

    std::size_t size() const { return w_tilde.size(); }
    const Complex& operator[](std::size_t i) const { return w_tilde[i]; }
};

/// A chosen scaling lambda with its dominance margin
/// min_i (|1+lambda| - |1+lambda mu_i|) / |1+lambda|.
struct SpectralScaling {
    Complex lambda;
    double margin = 0.0;
};

enum class DesignStatus { Feasible, Infeasible, DegenerateTarget };

struct DesignResult {
    WeightVector weights;
    Complex lambda;
    Complex dominant;              // 1 + lambda
    std::vector<Complex> competing; // 1 + lambda mu_i
    double predicted_rate = 0.0;   // max_i |1+lambda mu_i| / |1+lambda|
    DesignStatus status = DesignStatus::Infeasible;
    std::string note;
};

inline AuxWeights aux_weights(const Polygon& v) {
    const std::size_t n = v.size();
    const double diam = detail::diameter(v.vertices);
    std::vector<Complex> wt(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Complex gap = v.cyclic(i + 1) - v[i];
        if (std::abs(gap) <= 1e-12 * diam)
            throw DuplicateConsecutiveVertices(
                "consecutive vertices coincide at index " + std::to_string(i + 1), i + 1);
        wt[i] = v[i] / gap;
    }
    if (v[0] == Complex{0.0, 0.0}) {
        // anchored target: first and last entries are exact by construction
        wt[0] = Complex{0.0, 0.0};
        wt[n - 1] = Complex{-1.0, 0.0};
    }
    return AuxWeights{std::move(wt)};
}

/// Relative residual of the eigenvalue-2 identity M~ v = 2 v.
inline double verify_target_eigen(const Polygon& v, const AuxWeights& wt) {
    if (v.size() != wt.size())
        throw SizeMismatch("verify_target_eigen: sizes differ");
    Polygon mv = apply_step(v, WeightVector{wt.w_tilde});
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        num += std::norm(mv[i] - 2.0 * v[i]);
        den += std::norm(v[i]);
    }
    return std::sqrt(num / den);
}

/// Competing eigenvalues mu_i = -w~_i (i = 2..n-1) of M~ - I for an anchored
/// target; excludes the all-ones root 0 and the target's own root 1.
inline std::vector<Complex> competing_mus(const Polygon& v_anchored) {
    if (v_anchored[0] != Complex{0.0, 0.0})
        throw SizeMismatch("competing_mus: target must be anchored (v_1 = 0)");
    AuxWeights wt = aux_weights(v_anchored);
    std::vector<Complex> mus;
    for (std::size_t i = 1; i + 1 < wt.size(); ++i) {
        const Complex mu = -wt[i];
        if (std::abs(mu - Complex{1.0, 0.0}) <= 1e-10)
            throw TargetEigenvalueCollision(
                "competing eigenvalue equals 1 at index " + std::to_string(i + 1));
        mus.push_back(mu);
    }
    return mus;
}

namespace detail {

inline double dominance_margin(const Complex& lambda, const std::vector<Complex>& mus) {
    const double dom = std::abs(Complex{1.0, 0.0} + lambda);
    if (dom <= 0.0) return -1.0;
    if (mus.empty()) return 1.0;
    double m = 1.0;
    for (const Complex& mu : mus)
        m = std::min(m, (dom - std::abs(Complex{1.0, 0.0} + lambda * mu)) / dom);
    return m;
}

// lexicographic preference: larger margin, then smaller |lambda|, then
// smaller angle
inline bool better_scaling(double margin_a, const Complex& a, double margin_b,
                           const Complex& b) {
    if (margin_a != margin_b) return margin_a > margin_b;
    const double ra = std::abs(a), rb = std::abs(b);
    if (ra != rb) return ra < rb;
    return std::arg(a) < std::arg(b);
}

} // namespace detail

/// Candidate scalings for the two-competitor case, from the closed-form case
/// table plus sign-corrected and symbol-repaired variants. Candidates are
/// unverified; callers must validate each with direct_dominance.
inline std::vector<Complex> quadrangle_case_lambda(const Complex& mu2, const Complex& mu3) {
    std::vector<Complex> out;
    auto push = [&out](const Complex& c) {
        if (std::isfinite(c.real()) && std::isfinite(c.imag())) out.push_back(c);
    };

    const double m2 = std::abs(mu2), m3 = std::abs(mu3);
    const bool unit2 = std::abs(m2 - 1.0) <= 1e-12;
    const bool unit3 = std::abs(m3 - 1.0) <= 1e-12;
    if (std::abs(mu2 - Complex{1.0, 0.0}) <= 1e-12 ||
        std::abs(mu3 - Complex{1.0, 0.0}) <= 1e-12)
        return out; // empty region upstream

    auto omega = [](const Complex& mu, double m) {
        return (Complex{1.0, 0.0} - std::conj(mu)) / (m * m - 1.0);
    };
    const std::optional<Complex> w2 =
        unit2 ? std::nullopt : std::optional<Complex>{omega(mu2, m2)};
    const std::optional<Complex> w3 =
        unit3 ? std::nullopt : std::optional<Complex>{omega(mu3, m3)};

    // half-plane directions, both sign conventions
    auto directions = [](const Complex& mu) {
        const Complex d = Complex{1.0, 0.0} - std::conj(mu);
        return std::vector<Complex>{d, -d};
    };

    // distance of point to the line through the origin orthogonal to dir
    auto line_distance = [](const Complex& point, const Complex& dir) {
        const double len = std::abs(dir);
        if (len == 0.0) return 0.0;
        return std::abs((point * std::conj(dir)).real()) / len;
    };

    // along: start + unit(step_dir) * span
    auto along = [&push](const Complex& start, const Complex& step_dir, double span) {
        const double len = std::abs(step_dir);
        if (len > 0.0) push(start + step_dir / len * span);
    };

    if (!unit2 && !unit3) {
        if (m2 < 1.0 && m3 < 1.0) {
            push(2.0 * (*w2 + *w3));
        } else if (m2 > 1.0 && m3 > 1.0) {
            const Complex d = *w3 - *w2;
            along(*w2, d, (std::abs(*w2) + std::abs(d) - std::abs(*w3)) / 2.0);
            // midpoint variant for the lens of two interior circles
            along(*w2, d, std::abs(d) / 2.0);
        } else {
            // one exterior, one interior
            const Complex d = *w3 - *w2;
            along(*w2, d, (std::abs(d) + std::abs(*w2) + std::abs(*w3)) / 2.0);
            along(*w3, -d, (std::abs(d) + std::abs(*w2) + std::abs(*w3)) / 2.0);
        }
    } else if (unit2 != unit3) {
        // one half-plane, one circle
        const Complex& unit_mu = unit2 ? mu2 : mu3;
        const Complex& other_mu = unit2 ? mu3 : mu2;
        const double other_m = unit2 ? m3 : m2;
        const Complex wc = *(unit2 ? w3 : w2);
        for (const Complex& d : directions(unit_mu)) {
            if (other_m < 1.0) {
                // exterior circle: step far out along the half-plane normal
                push(3.0 * std::abs(wc) * d / std::abs(d));
                push(3.0 * std::abs(wc) * d); // paper's unnormalized form
            } else {
                // interior circle: aim from its center into the half-plane
                const double x = line_distance(wc, d);
                along(wc, d, (x + x + std::abs(wc)) / 2.0);
                along(wc, d, std::abs(wc) / 2.0);
            }
        }
        (void)other_mu;
    } else {
        // both on the unit circle
        for (const Complex& d2 : directions(mu2))
            for (const Complex& d3 : directions(mu3)) push(d2 + d3);
    }
    return out;
}

/// Grid-plus-refinement search for a scaling in the intersection of all
/// dominance regions, maximizing the margin. Deterministic given the seed.
inline std::optional<SpectralScaling> search_lambda(
    const std::vector<Complex>& mus, unsigned seed,
    const std::vector<Complex>& extra_candidates = {}) {
    (void)seed; // fixed grid and deterministic refinement; kept for the CLI contract

    for (const Complex& mu : mus)
        if (std::abs(mu - Complex{1.0, 0.0}) <= 1e-10) return std::nullopt;

    if (mus.empty()) return SpectralScaling{Complex{1.0, 0.0}, 1.0};

    bool have_best = false;
    Complex best{0.0, 0.0};
    double best_margin = 0.0;
    auto consider = [&](const Complex& lambda) {
        const double m = detail::dominance_margin(lambda, mus);
        if (m <= 0.0) return;
        if (!have_best || detail::better_scaling(m, lambda, best_margin, best)) {
            have_best = true;
            best = lambda;
            best_margin = m;
        }
    };

    for (const Complex& c : extra_candidates) consider(c);

    constexpr int rings = 25;
    constexpr int angles = 64;
    for (int r = 0; r < rings; ++r) {
        const double rho = std::pow(10.0, -3.0 + 6.0 * r / (rings - 1));
        for (int a = 0; a < angles; ++a) {
            const double phi = 2.0 * std::numbers::pi * a / angles;
            consider(rho * Complex{std::cos(phi), std::sin(phi)});
        }
    }
    if (!have_best) return std::nullopt;

    // pattern search in (log10 rho, phi) around the best point
    double lr = std::log10(std::max(std::abs(best), 1e-12));
    double phi = std::arg(best);
    double step_r = 0.25, step_a = 2.0 * std::numbers::pi / angles;
    for (int it = 0; it < 200 && (step_r > 1e-10 || step_a > 1e-10); ++it) {
        bool improved = false;
        for (int dr = -1; dr <= 1; ++dr) {
            for (int da = -1; da <= 1; ++da) {
                if (dr == 0 && da == 0) continue;
                const double nr = lr + dr * step_r;
                const double na = phi + da * step_a;
                const Complex cand =
                    std::pow(10.0, nr) * Complex{std::cos(na), std::sin(na)};
                const double m = detail::dominance_margin(cand, mus);
                if (m > 0.0 && detail::better_scaling(m, cand, best_margin, best)) {
                    best = cand;
                    best_margin = m;
                    lr = nr;
                    phi = na;
                    improved = true;
                }
            }
        }
        if (!improved) {
            step_r *= 0.5;
            step_a *= 0.5;
        }
    }

    // re-verify with the ground-truth inequality
    for (const Complex& mu : mus)
        if (!direct_dominance(best, mu)) return std::nullopt;
    return SpectralScaling{best, best_margin};
}

/// Triangle design: one competing eigenvalue mu = sum_i w~_i w~_{i+1}, sent
/// to zero by lambda = -1/mu, so any start reaches the target in one step.
inline DesignResult design_triangle(const Polygon& v_in) {
    if (v_in.size() != 3)
        throw SizeMismatch("design_triangle: expected a triangle");
    Polygon v = translate_to_anchor(v_in);
    AuxWeights wt = aux_weights(v);

    Complex mu{0.0, 0.0};
    for (std::size_t i = 0; i < 3; ++i) mu += wt[i] * wt.w_tilde[(i + 1) % 3];
    if (std::abs(mu) <= 1e-14)
        throw ZeroCompetingEigenvalue("competing eigenvalue of M~ - I is zero");

    const Complex lambda = -Complex{1.0, 0.0} / mu;
    std::vector<Complex> w(3);
    for (std::size_t i = 0; i < 3; ++i) w[i] = lambda * wt[i];

    DesignResult r;
    r.weights = WeightVector{std::move(w)};
    r.lambda = lambda;
    r.dominant = Complex{1.0, 0.0} + lambda;
    r.competing = {Complex{0.0, 0.0}};
    r.predicted_rate = 0.0;
    r.status = DesignStatus::Feasible;
    return r;
}

/// Full inverse design: anchor the target, derive the competing spectrum in
/// closed form, pick a scaling, and return the scaled weights.
inline DesignResult design_general(const Polygon& v_in, unsigned seed = 0) {
    DesignResult r;
    try {
        Polygon v = translate_to_anchor(v_in);
        if (v.size() == 3) return design_triangle(v);

        AuxWeights wt = aux_weights(v);
        std::vector<Complex> mus = competing_mus(v);

        std::vector<Complex> candidates;
        if (v.size() == 4 && mus.size() == 2)
            candidates = quadrangle_case_lambda(mus[0], mus[1]);

        std::optional<SpectralScaling> pick = search_lambda(mus, seed, candidates);
        if (!pick) {
            r.status = DesignStatus::Infeasible;
            r.note = "no scaling found in the region intersection";
            return r;
        }

        const Complex lambda = pick->lambda;
        std::vector<Complex> w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = lambda * wt[i];
        r.weights = WeightVector{std::move(w)};
        r.lambda = lambda;
        r.dominant = Complex{1.0, 0.0} + lambda;
        double worst = 0.0;
        for (const Complex& mu : mus) {
            const Complex c = Complex{1.0, 0.0} + lambda * mu;
            r.competing.push_back(c);
            worst = std::max(worst, std::abs(c));
        }
        r.predicted_rate = worst / std::abs(r.dominant);
        r.status = DesignStatus::Feasible;
        return r;
    } catch (const DuplicateConsecutiveVertices& e) {
        r.status = DesignStatus::DegenerateTarget;
        r.note = e.what();
        return r;
    } catch (const TargetEigenvalueCollision& e) {
        r.status = DesignStatus::Infeasible;
        r.note = std::string("eigenvalue collision: ") + e.what();
        return r;
    } catch (const ZeroCompetingEigenvalue& e) {
        r.status = DesignStatus::Infeasible;
        r.note = e.what();
        return r;
    }
}

} // namespace polyform
