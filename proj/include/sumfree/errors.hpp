#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sumfree {

/// Malformed textual input (group specs, element lists, certificates).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Well-formed input outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotTypeIError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Raised when a certificate does not replay consistently.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact search ran out of its node budget. Never a silent underestimate:
/// the partial count is carried for diagnostics only.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(std::uint64_t nodes, std::string partial)
      : std::runtime_error("node budget exhausted after " + std::to_string(nodes) +
                           " nodes (partial count " + partial + ")"),
        nodes_(nodes),
        partial_(std::move(partial)) {}

  std::uint64_t nodes() const noexcept { return nodes_; }
  const std::string& partial_count() const noexcept { return partial_; }

 private:
  std::uint64_t nodes_;
  std::string partial_;
};

/// A checked mathematical property failed.
class AssertionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sumfree
