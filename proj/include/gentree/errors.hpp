#ifndef GENTREE_ERRORS_HPP
#define GENTREE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gentree {

// Domain/validation failures map to CLI exit code 1.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Resource exhaustion (caps, attempt budgets) maps to CLI exit code 2.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// A label sequence or jump tuple that violates the succession rule.
// `index` is the first offending position (0-based).
struct ConsistencyError : DomainError {
    ConsistencyError(const std::string& msg, std::size_t index)
        : DomainError(msg + " (at index " + std::to_string(index) + ")"), index(index) {}
    std::size_t index;
};

// Permutation handed to encode() is not a member of the family.
struct MembershipError : DomainError {
    explicit MembershipError(const std::string& msg) : DomainError(msg) {}
};

// Walk length incompatible with the step law's span/endpoint constraints.
struct FeasibilityError : DomainError {
    explicit FeasibilityError(const std::string& msg) : DomainError(msg) {}
};

// S-list advance hit a forgotten position: the c(h) label precondition was broken.
struct GuardError : DomainError {
    explicit GuardError(const std::string& msg) : DomainError(msg) {}
};

} // namespace gentree

#endif
