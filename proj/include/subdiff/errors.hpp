#pragma once

#include <stdexcept>
#include <string>

namespace subdiff {

// Parameter outside its mathematical domain (rho, mu, x range, grid bounds).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Structurally inconsistent containers (length mismatches, wrong grid).
class ShapeError : public std::invalid_argument {
public:
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

// A denominator that must be bounded away from zero collapsed numerically.
class DegenerateError : public std::runtime_error {
public:
    explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

// Inverse data has measurable content on a degenerate mode: no solution of any
// kind exists for this right-hand side.  Carries the offending mode.
class NonOrthogonalData : public std::runtime_error {
public:
    NonOrthogonalData(int mode, double coefficient, const std::string& what)
        : std::runtime_error(what), k(mode), psi_k(coefficient) {}
    int k;
    double psi_k;
};

class EmptyCandidates : public std::invalid_argument {
public:
    explicit EmptyCandidates(const std::string& what) : std::invalid_argument(what) {}
};

class IOError : public std::runtime_error {
public:
    explicit IOError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace subdiff
