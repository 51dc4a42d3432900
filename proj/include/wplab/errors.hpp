#pragma once

#include <stdexcept>
#include <string>

namespace wplab {

// Base for all library errors.  `input` errors are caller mistakes (bad
// arguments, out-of-range parameters), `numeric` errors are runtime
// failures of an otherwise well-posed computation.
struct Error : std::runtime_error {
    enum class Kind { input, numeric };
    Kind kind;
    Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct NotHyperbolic : Error {
    explicit NotHyperbolic(const std::string& m = "matrix is not hyperbolic")
        : Error(Kind::input, m) {}
};
struct SharedEndpoint : Error {
    explicit SharedEndpoint(const std::string& m = "geodesics share a boundary endpoint")
        : Error(Kind::input, m) {}
};
struct NonPositiveLength : Error {
    explicit NonPositiveLength(const std::string& m = "length must be positive")
        : Error(Kind::input, m) {}
};
struct StepTooLarge : Error {
    explicit StepTooLarge(const std::string& m = "finite-difference step too large for this angle")
        : Error(Kind::input, m) {}
};
struct LengthOutOfRange : Error {
    explicit LengthOutOfRange(const std::string& m = "length outside (0, 50]")
        : Error(Kind::input, m) {}
};
struct WrongSurfaceKind : Error {
    explicit WrongSurfaceKind(const std::string& m = "operation requires a different surface kind")
        : Error(Kind::input, m) {}
};
struct DepthTooLarge : Error {
    explicit DepthTooLarge(const std::string& m = "enumeration depth exceeds cap")
        : Error(Kind::input, m) {}
};
struct NotHyperbolicWord : Error {
    explicit NotHyperbolicWord(const std::string& m = "word does not represent a hyperbolic element")
        : Error(Kind::input, m) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& m = "argument outside the function domain")
        : Error(Kind::input, m) {}
};
struct StepOutOfRange : Error {
    explicit StepOutOfRange(const std::string& m = "finite-difference step outside [1e-6, 1e-2]")
        : Error(Kind::input, m) {}
};
struct GridTooCoarse : Error {
    explicit GridTooCoarse(const std::string& m = "quadrature grid below 64x64")
        : Error(Kind::input, m) {}
};
struct DegenerateTriple : Error {
    explicit DegenerateTriple(const std::string& m = "comparison triple has a degenerate side")
        : Error(Kind::input, m) {}
};
struct NonPositiveData : Error {
    explicit NonPositiveData(const std::string& m = "log-log fit requires positive data")
        : Error(Kind::input, m) {}
};
struct InvalidWord : Error {
    explicit InvalidWord(const std::string& m = "cannot parse generator word")
        : Error(Kind::input, m) {}
};
struct InvalidMatrix : Error {
    explicit InvalidMatrix(const std::string& m = "matrix has non-positive determinant")
        : Error(Kind::input, m) {}
};

struct HitSingularStratum : Error {
    explicit HitSingularStratum(const std::string& m = "geodesic reached r < r_min (terminates at the stratum)")
        : Error(Kind::numeric, m) {}
};
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& m = "iteration failed to converge")
        : Error(Kind::numeric, m) {}
};

}  // namespace wplab
