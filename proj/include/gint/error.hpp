#pragma once
#include <stdexcept>
#include <string>
#include <vector>

namespace gint {

// Base for everything we throw on purpose. CLI maps subclasses to exit codes:
// user-level precondition failures -> 2, internal cross-check failures -> 3.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- user-level / precondition errors (CLI exit 2) ---

struct InvalidArgument : Error { using Error::Error; };

struct NotAbelian : Error { using Error::Error; };
struct NoUniqueInvolution : Error { using Error::Error; };
struct TooSmall : Error { using Error::Error; };
struct NotAutomorphism : Error { using Error::Error; };
struct ActionInconsistent : Error { using Error::Error; };
struct ClosureExceedsCap : Error { using Error::Error; };
struct NotNormal : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct AtomCapExceeded : CapExceeded { using CapExceeded::CapExceeded; };
struct AsymmetricInput : Error { using Error::Error; };
struct PinnedCollision : Error { using Error::Error; };
struct NonAbelianSubgroup : Error { using Error::Error; };
struct EvenOrderSubgroup : Error { using Error::Error; };
struct NotTwoGroup : Error { using Error::Error; };

struct UnknownName : Error {
    std::vector<std::string> suggestions;
    UnknownName(const std::string& msg, std::vector<std::string> sugg = {})
        : Error(msg), suggestions(std::move(sugg)) {}
};

// unresolvable element label/word; carries did-you-mean candidates
struct UnknownLabel : Error {
    std::vector<std::string> suggestions;
    UnknownLabel(const std::string& msg, std::vector<std::string> sugg = {})
        : Error(msg), suggestions(std::move(sugg)) {}
};

struct SyntaxError : Error {
    int line, col;
    std::string expected;
    SyntaxError(const std::string& msg, int line_, int col_, std::string expected_)
        : Error(msg), line(line_), col(col_), expected(std::move(expected_)) {}
};

// --- internal errors (CLI exit 3) ---

// A constructed table failed validation, or two independent computations of
// the same quantity disagreed. Either way the library itself is at fault.
struct InvariantViolation : Error { using Error::Error; };
struct BadTable : InvariantViolation { using InvariantViolation::InvariantViolation; };

}  // namespace gint
