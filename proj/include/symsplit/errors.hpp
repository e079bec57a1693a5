#pragma once

#include <stdexcept>
#include <string>

namespace symsplit {

enum class ErrorCode {
    InvalidArgument,
    DivisionByZero,
    NotPrime,
    NotCubeFree,
    NotCoprime,
    UnsupportedPrime,
    BudgetExceeded,
    PreconditionFailed,
    Inconsistent,
    Parse,
};

const char* error_code_name(ErrorCode c);

class MathError : public std::runtime_error {
public:
    MathError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// Raised when an enumeration or search exhausts its configured budget.
// Callers turn this into an Indeterminate result; it is never a wrong answer.
class BudgetExceeded : public MathError {
public:
    explicit BudgetExceeded(const std::string& what)
        : MathError(ErrorCode::BudgetExceeded, what) {}
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& what)
{
    throw MathError(c, what);
}

// Internal consistency check that stays on in release builds.
#define SYMSPLIT_CHECK(cond, msg)                                              \
    do {                                                                       \
        if (!(cond))                                                           \
            ::symsplit::fail(::symsplit::ErrorCode::Inconsistent,              \
                             std::string("check failed: ") + (msg));           \
    } while (0)

} // namespace symsplit
