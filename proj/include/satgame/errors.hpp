#ifndef SATGAME_ERRORS_HPP
#define SATGAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace satgame {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A caller violated a documented precondition (self-loop, duplicate edge, bad index...).
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

/// The legality search exceeded its node-expansion budget. Never a wrong answer:
/// callers must treat this as "unknown" and surface it.
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};

/// A strategy reached a position its invariants say cannot exist.
struct StrategyError : Error {
    explicit StrategyError(const std::string& msg) : Error(msg) {}
};

}  // namespace satgame

#endif
