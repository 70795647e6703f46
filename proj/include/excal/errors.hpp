#pragma once

#include <stdexcept>
#include <string>

namespace excal {

// Contract violations surface as typed exceptions so callers (and the CLI)
// can distinguish bad input from internal bugs.  Internal invariant failures
// use std::logic_error directly.

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct WrongRing : std::invalid_argument {
    explicit WrongRing(const std::string& what) : std::invalid_argument(what) {}
};

struct NotIdempotent : std::invalid_argument {
    explicit NotIdempotent(const std::string& what) : std::invalid_argument(what) {}
};

struct SingularMatrix : std::invalid_argument {
    explicit SingularMatrix(const std::string& what) : std::invalid_argument(what) {}
};

struct SubsetOutOfRange : std::invalid_argument {
    explicit SubsetOutOfRange(const std::string& what) : std::invalid_argument(what) {}
};

struct BudgetExceeded : std::invalid_argument {
    explicit BudgetExceeded(const std::string& what) : std::invalid_argument(what) {}
};

struct MalformedMap : std::invalid_argument {
    explicit MalformedMap(const std::string& what) : std::invalid_argument(what) {}
};

struct NotAFunctor : std::invalid_argument {
    explicit NotAFunctor(const std::string& what) : std::invalid_argument(what) {}
};

struct NotNatural : std::invalid_argument {
    explicit NotNatural(const std::string& what) : std::invalid_argument(what) {}
};

struct NonFreeCokernel : std::invalid_argument {
    explicit NonFreeCokernel(const std::string& what) : std::invalid_argument(what) {}
};

struct PreconditionViolated : std::invalid_argument {
    explicit PreconditionViolated(const std::string& what) : std::invalid_argument(what) {}
};

struct InconsistentSkeleton : std::invalid_argument {
    explicit InconsistentSkeleton(const std::string& what) : std::invalid_argument(what) {}
};

struct PrimeTooSmall : std::invalid_argument {
    explicit PrimeTooSmall(const std::string& what) : std::invalid_argument(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace excal
