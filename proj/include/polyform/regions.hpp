#pragma once

#include <cmath>
#include <complex>
#include <optional>

#include "polyform/polygon.hpp"

namespace polyform {

/// Ground truth for all region geometry: the strict dominance inequality
/// |1 + lambda|^2 > |1 + lambda mu|^2.
inline bool direct_dominance(const Complex& lambda, const Complex& mu) {
    return std::norm(Complex{1.0, 0.0} + lambda) >
           std::norm(Complex{1.0, 0.0} + lambda * mu);
}

enum class RegionKind { CircleExterior, HalfPlane, CircleInterior, Empty };

/// The set of scalings lambda for which the target eigenvalue 1 + lambda
/// dominates the competitor 1 + lambda mu. Circle exterior/interior for
/// |mu| below/above one, an open half-plane on the unit circle, empty at
/// mu = 1.
struct LambdaRegion {
    RegionKind kind = RegionKind::Empty;
    std::optional<Complex> omega;     // circle center; radius is |omega|
    std::optional<Complex> direction; // half-plane inward normal, 1 - conj(mu)
    Complex mu;
};

inline LambdaRegion lambda_region(const Complex& mu) {
    LambdaRegion r;
    r.mu = mu;
    if (std::abs(mu - Complex{1.0, 0.0}) <= 1e-12) {
        r.kind = RegionKind::Empty;
        return r;
    }
    const double m = std::abs(mu);
    if (std::abs(m - 1.0) <= 1e-12) {
        r.kind = RegionKind::HalfPlane;
        // |1+l|^2 - |1+l mu|^2 = 2 Re(l (1 - mu)) on the unit circle
        r.direction = Complex{1.0, 0.0} - std::conj(mu);
        return r;
    }
    r.omega = (Complex{1.0, 0.0} - std::conj(mu)) / (m * m - 1.0);
    r.kind = (m < 1.0) ? RegionKind::CircleExterior : RegionKind::CircleInterior;
    return r;
}

inline bool region_contains(const LambdaRegion& r, const Complex& lambda) {
    switch (r.kind) {
    case RegionKind::CircleExterior:
        return std::abs(lambda - *r.omega) > std::abs(*r.omega);
    case RegionKind::CircleInterior:
        return std::abs(lambda - *r.omega) < std::abs(*r.omega);
    case RegionKind::HalfPlane:
        return (lambda * std::conj(*r.direction)).real() > 0.0;
    case RegionKind::Empty:
        return false;
    }
    return false;
}

inline const char* region_kind_name(RegionKind k) {
    switch (k) {
    case RegionKind::CircleExterior: return "CircleExterior";
    case RegionKind::HalfPlane: return "HalfPlane";
    case RegionKind::CircleInterior: return "CircleInterior";
    case RegionKind::Empty: return "Empty";
    }
    return "?";
}

} // namespace polyform
