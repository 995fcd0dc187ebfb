#pragma once

#include <stdexcept>
#include <string>

namespace subtable {

/// Raised when a request would exceed a configured enumeration budget.
/// Budgets never truncate silently.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed subset / table / key input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A theorem branch check failed. This indicates a bug in the library,
/// never an expected outcome.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

// Always-on internal invariant check (independent of NDEBUG).
inline void ensure(bool condition, const char* what) {
  if (!condition) throw std::logic_error(std::string("invariant violated: ") + what);
}

}  // namespace detail
}  // namespace subtable
