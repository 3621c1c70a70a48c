#pragma once

#include <stdexcept>
#include <string>

namespace brd {

// Error conditions surfaced by the library. Each value corresponds to a
// named failure mode of some operation; the CLI maps any Error to exit 1.
enum class ErrorKind {
    Syntax,
    ArityViolation,
    EmptyChain,
    NotScattered,
    InvalidTerm,
    PrefixViolation,
    BudgetExceeded,
    NoStabilization,
    InvalidBranch,
    GermGap,
    TypeMismatch,
    NoInfiniteVertex,
    NotInM,
    SizeMismatch,
    NonInjective,
    PremiseFails,
    PairMismatch,
    EmptyHomset,
    BadCategory,
    LanguageMismatch,
    CapExceeded,
    NotChaining,
    NotMinimalDecomposition,
    ClassNotStable,
    OracleBound,
    InvalidInput,
    Io,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace brd
