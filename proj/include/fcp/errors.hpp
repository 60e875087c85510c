#pragma once

#include <stdexcept>
#include <string>

namespace fcp {

// Base class for everything thrown by this library. Messages name the
// violated invariant or the offending input.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input and structural problems (CLI exit code 2).
struct InvalidMatrix : Error { using Error::Error; };
struct InvalidDistribution : Error { using Error::Error; };
struct InvalidBarrier : Error { using Error::Error; };
struct NotIrreducible : Error { using Error::Error; };
struct NoReachableBlock : Error { using Error::Error; };
struct UnsupportedStructure : Error { using Error::Error; };
struct ExponentOrder : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

// Numerical failures (CLI exit code 3).
struct NumericalError : Error { using Error::Error; };
struct DomainError : NumericalError { using NumericalError::NumericalError; };
struct SingularSystem : NumericalError { using NumericalError::NumericalError; };
struct ContourFailure : NumericalError { using NumericalError::NumericalError; };
struct BranchError : NumericalError { using NumericalError::NumericalError; };

}  // namespace fcp
