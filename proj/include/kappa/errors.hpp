// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef KAPPA_ERRORS_HPP
#define KAPPA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kappa {

// Base class for every recoverable error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonResidueError : Error { using Error::Error; };
struct NotAUnitError : Error { using Error::Error; };
struct PrecisionExhaustedError : Error { using Error::Error; };

struct SingularCurveError : Error { using Error::Error; };
struct NonIntegralResultError : Error { using Error::Error; };

struct NotMinimalError : Error { using Error::Error; };
struct NotMultiplicativeError : Error { using Error::Error; };
struct MissingTraceError : Error { using Error::Error; };

struct BadReductionError : Error { using Error::Error; };
struct EvenPrimeError : Error { using Error::Error; };

struct SmallPrimeError : Error { using Error::Error; };

struct PreconditionViolatedError : Error { using Error::Error; };
struct SamePrimeError : Error { using Error::Error; };
struct IncompleteLocalDataError : Error { using Error::Error; };

struct ParseError : Error { using Error::Error; };

} // namespace kappa

#endif
