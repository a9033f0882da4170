#pragma once

#include <stdexcept>
#include <string>

namespace polyform {

struct DegeneratePolygon : std::runtime_error {
    explicit DegeneratePolygon(const std::string& what) : std::runtime_error(what) {}
};

struct SizeMismatch : std::runtime_error {
    explicit SizeMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NoZeroWeight : std::runtime_error {
    explicit NoZeroWeight(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateSpectrum : std::runtime_error {
    explicit DegenerateSpectrum(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroDivision : std::runtime_error {
    explicit ZeroDivision(const std::string& what) : std::runtime_error(what) {}
};

struct ConvergenceFailure : std::runtime_error {
    explicit ConvergenceFailure(const std::string& what) : std::runtime_error(what) {}
};

struct DuplicateConsecutiveVertices : std::runtime_error {
    DuplicateConsecutiveVertices(const std::string& what, std::size_t index)
        : std::runtime_error(what), index(index) {}
    std::size_t index;
};

struct TargetEigenvalueCollision : std::runtime_error {
    explicit TargetEigenvalueCollision(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroCompetingEigenvalue : std::runtime_error {
    explicit ZeroCompetingEigenvalue(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateTarget : std::runtime_error {
    DegenerateTarget(const std::string& what, std::size_t index)
        : std::runtime_error(what), index(index) {}
    std::size_t index;
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace polyform
