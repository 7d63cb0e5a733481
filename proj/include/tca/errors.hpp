#ifndef TCA_ERRORS_HPP
#define TCA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tca {

/// Malformed user input: bad subsets, arity mismatches, unresolved names.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what, int line = 0)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// A configured size limit (support width, row-table size, closure size)
/// would be exceeded.  Distinct from a failed check.
class ResourceLimitError : public std::runtime_error {
public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was called outside its stated precondition.
class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by an omit task when no member of the type family can be
/// negated while keeping the chain proper.  The chain is left unchanged.
class FamilyExhausted : public std::runtime_error {
public:
  FamilyExhausted(int family, const std::string& what)
      : std::runtime_error(what), family_(family) {}
  int family() const { return family_; }

private:
  int family_;
};

}  // namespace tca

#endif
