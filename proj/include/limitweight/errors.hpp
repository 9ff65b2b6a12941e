#pragma once

#include <stdexcept>
#include <string>

namespace limitweight {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NotNilpotentError : Error {
    explicit NotNilpotentError(const std::string& detail = "")
        : Error(detail.empty() ? "not nilpotent" : "not nilpotent: " + detail) {}
};

struct NotUnipotentError : Error {
    explicit NotUnipotentError(const std::string& detail = "")
        : Error(detail.empty() ? "not unipotent" : "not unipotent: " + detail) {}
};

// A family limit was requested but a negative eps-degree coefficient survives.
struct LimitError : Error {
    int degree;
    explicit LimitError(int deg, const std::string& detail = "")
        : Error("limit does not exist" + (detail.empty() ? "" : ": " + detail)), degree(deg) {}
};

// An eps-degree escaped the window that is provably sufficient for the carrier
// dimension. Signals a misconfigured computation, never silent truncation.
struct DegreeOverflowError : Error {
    int degree;
    explicit DegreeOverflowError(int deg, int bound)
        : Error("eps degree " + std::to_string(deg) + " exceeds bound " + std::to_string(bound)),
          degree(deg) {}
};

struct TangentUndefinedError : Error {
    explicit TangentUndefinedError(const std::string& detail = "")
        : Error(detail.empty() ? "tangent undefined" : "tangent undefined: " + detail) {}
};

struct FlowBlowUpError : Error {
    double x;
    explicit FlowBlowUpError(double where)
        : Error("flow blow-up at x = " + std::to_string(where)), x(where) {}
};

// Bad literals, descriptors, or structurally invalid fixture data.
struct FixtureError : Error {
    explicit FixtureError(const std::string& what) : Error(what) {}
};

}  // namespace limitweight
