#pragma once

#include <stdexcept>
#include <string>

namespace nodalsl {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid problem definition or config file; `field` names the offending key
/// when known.
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg, std::string field_ = {})
        : Error(field_.empty() ? msg : field_ + ": " + msg), field(std::move(field_)) {}
    std::string field;
};

/// Numerical failure in the forward solver (integration drift, lost root, ...).
struct SolverError : Error {
    using Error::Error;
};

/// No sign change of the characteristic function was found near the seed,
/// even after widening the bracket.
struct NoSignChangeError : SolverError {
    NoSignChangeError(int n_, double seed_, const std::string& msg)
        : SolverError(msg), n(n_), seed(seed_) {}
    int n;
    double seed;
};

/// Two nodes mapped onto the same reference slot while indexing.
struct AmbiguousIndexingError : SolverError {
    AmbiguousIndexingError(int n_, const std::string& msg) : SolverError(msg), n(n_) {}
    int n;
};

/// The nodal dataset contains no eigenvalue index of the arithmetic form
/// required by the reconstruction subsequence (a multiple of `modulus`).
struct NoAdmissibleIndexError : Error {
    NoAdmissibleIndexError(int modulus_, const std::string& msg)
        : Error(msg), modulus(modulus_) {}
    int modulus;
};

/// Too few limit samples, or a gap too wide, to fit a limit curve.
struct InsufficientCoverageError : Error {
    using Error::Error;
};

}  // namespace nodalsl
