#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "polyform/errors.hpp"
#include "polyform/polygon.hpp"

namespace polyform {

/// One complex weight per edge, cyclic indexing.
struct WeightVector {
    std::vector<Complex> weights;

    WeightVector() = default;
    explicit WeightVector(std::vector<Complex> w) : weights(std::move(w)) {
        validate();
    }
    WeightVector(std::initializer_list<Complex> w) : weights(w) { validate(); }

    std::size_t size() const { return weights.size(); }
    const Complex& operator[](std::size_t i) const { return weights[i]; }
    const Complex& cyclic(std::size_t i) const { return weights[i % weights.size()]; }

private:
    void validate() const {
        if (weights.size() < 3)
            throw SizeMismatch("weight vector needs at least 3 entries");
        for (const Complex& w : weights)
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
                throw SizeMismatch("weight entry is not finite");
    }
};

/// Weight for the generalized lambda-theta transformation: w = lambda * e^{i theta}.
inline Complex lambda_theta_weight(double lambda_scalar, double theta) {
    return lambda_scalar * Complex{std::cos(theta), std::sin(theta)};
}

/// Sparse transition matrix: row i has 1 - w_i on the diagonal and w_i on the
/// cyclic superdiagonal. Stored implicitly through the weights; the dense
/// form exists for test oracles only.
struct TransitionMatrix {
    WeightVector weights;

    std::size_t size() const { return weights.size(); }

    std::vector<std::vector<Complex>> materialize_dense() const {
        const std::size_t n = weights.size();
        std::vector<std::vector<Complex>> m(n, std::vector<Complex>(n, Complex{0.0, 0.0}));
        for (std::size_t i = 0; i < n; ++i) {
            m[i][i] = Complex{1.0, 0.0} - weights[i];
            m[i][(i + 1) % n] = weights[i];
        }
        return m;
    }
};

inline TransitionMatrix build_transition(WeightVector w) {
    return TransitionMatrix{std::move(w)};
}

/// One transformation step: vertex i maps to z_i + w_i (z_{i+1} - z_i).
inline Polygon apply_step(const Polygon& p, const WeightVector& w) {
    const std::size_t n = p.size();
    if (n != w.size())
        throw SizeMismatch("apply_step: polygon and weight sizes differ");
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = p[i] + w[i] * (p.cyclic(i + 1) - p[i]);
    return Polygon{std::move(out)};
}

struct TrajectoryFrame {
    std::size_t step = 0;
    Shape shape;
    double log_scale = 0.0;
    std::optional<double> distance_to_target;
};

/// Normalized iteration record. Raw magnitudes are tracked only through the
/// cumulative log of the pre-normalization norms, so arbitrarily many steps
/// never overflow.
struct Trajectory {
    std::vector<TrajectoryFrame> frames;
    bool collapsed = false;
};

/// Run z^(k) = M^k z^(0) with per-step centering and renormalization.
inline Trajectory iterate(const Polygon& p0, const WeightVector& w, std::size_t steps,
                          const std::optional<Polygon>& target = std::nullopt) {
    if (p0.size() != w.size())
        throw SizeMismatch("iterate: polygon and weight sizes differ");
    if (target && target->size() != p0.size())
        throw SizeMismatch("iterate: target size differs");

    Trajectory traj;
    std::vector<Complex> cur = detail::center_unit(p0);
    double log_scale = 0.0;

    auto record = [&](std::size_t k) {
        Polygon poly{cur};
        TrajectoryFrame f;
        f.step = k;
        f.shape = normalize_shape(poly);
        f.log_scale = log_scale;
        if (target) f.distance_to_target = shape_distance(poly, *target);
        traj.frames.push_back(std::move(f));
    };

    record(0);
    for (std::size_t k = 1; k <= steps; ++k) {
        Polygon next = apply_step(Polygon{cur}, w);
        // center
        Complex mean{0.0, 0.0};
        for (const Complex& z : next.vertices) mean += z;
        mean /= static_cast<double>(next.size());
        for (Complex& z : next.vertices) z -= mean;

        const double nrm = detail::vertex_norm(next.vertices);
        if (nrm < 1e-14) { // pre-step norm is 1 after renormalization
            traj.collapsed = true;
            return traj;
        }
        log_scale += std::log(nrm);
        for (Complex& z : next.vertices) z /= nrm;
        cur = std::move(next.vertices);
        record(k);
    }
    return traj;
}

} // namespace polyform
