#pragma once

#include <stdexcept>
#include <string>

namespace psp {

/// A caller violated an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// The requested constraint system or search has no admissible solution.
class InfeasibleError : public std::domain_error {
public:
    explicit InfeasibleError(const std::string& what) : std::domain_error(what) {}
};

/// A computation would exceed a configured work budget.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace psp
