#pragma once

#include <stdexcept>
#include <string>

namespace greenlab {

// Base for all library failures. The CLI maps subclasses onto exit codes:
// usage problems -> 1, numerical failures -> 2, I/O failures -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidGridError : Error { using Error::Error; };
struct ShapeError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct InvalidPathError : Error { using Error::Error; };
struct ResolutionError : Error { using Error::Error; };

struct NumericalError : Error { using Error::Error; };

// Linear system for a sample path is singular or nearly so.
struct DegeneratePathError : NumericalError {
    double pivot;
    DegeneratePathError(const std::string& msg, double p)
        : NumericalError(msg), pivot(p) {}
};

// Wronskian numerically zero: u and v failed to be independent.
struct DependentSolutionsError : NumericalError {
    using NumericalError::NumericalError;
};

struct SolverError : NumericalError {
    double residual;
    explicit SolverError(const std::string& msg, double r = 0.0)
        : NumericalError(msg), residual(r) {}
};

// Requested eigenvalue index falls below the reporting cutoff.
struct CutoffError : NumericalError { using NumericalError::NumericalError; };

struct IoError : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

}  // namespace greenlab
