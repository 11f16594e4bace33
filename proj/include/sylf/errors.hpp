#pragma once

#include <stdexcept>
#include <string>

namespace sylf {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct SingularPencil : Error { using Error::Error; };
struct QuadratureNotConverged : Error { using Error::Error; };
struct MissingCoefficient : Error { using Error::Error; };
struct WrongOperatorClass : Error { using Error::Error; };
struct NotTriangular : Error { using Error::Error; };
struct ResidualCheckFailed : Error { using Error::Error; };
struct SingularClosedFormMatrix : Error { using Error::Error; };
struct NotPalindromic : Error { using Error::Error; };
struct OddDimension : Error { using Error::Error; };
struct NewtonStepSingular : Error { using Error::Error; };
struct ResidualTooLarge : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

/// Raised when the vectorized coefficient map is rank deficient.
class NotUniquelySolvable : public Error {
public:
    NotUniquelySolvable(const std::string& msg, double sigma_min)
        : Error(msg), sigma_min(sigma_min) {}
    double sigma_min;
};

}  // namespace sylf
