#pragma once

#include <stdexcept>
#include <string>

namespace foboson {

// Every failure raised by the library derives from this, and carries a short
// machine-readable kind ("domain", "pole", "convergence", "shape") that the
// CLI reports verbatim in its JSON error object.
class error : public std::runtime_error {
public:
    error(std::string kind, const std::string& detail)
        : std::runtime_error(detail), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class domain_error : public error {
public:
    explicit domain_error(const std::string& detail) : error("domain", detail) {}
};

class shape_error : public error {
public:
    explicit shape_error(const std::string& detail) : error("shape", detail) {}
};

class convergence_error : public error {
public:
    explicit convergence_error(const std::string& detail) : error("convergence", detail) {}
};

// Raised when an argument lands within the pole guard of a lattice point.
class pole_error : public error {
public:
    pole_error(const std::string& detail, double distance)
        : error("pole", detail), distance_(distance) {}

    // Distance from the reduced argument to the nearest lattice point.
    double distance() const noexcept { return distance_; }

private:
    double distance_;
};

}  // namespace foboson
