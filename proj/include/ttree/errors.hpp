#ifndef TTREE_ERRORS_HPP
#define TTREE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ttree {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (bad symbol, wrong length,
/// inclusion that does not hold, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A tree sequence broke its T(n+1) ⊆ₙ T(n) promise. `index` is n for the
/// first offending pair.
class PromiseViolation : public Error {
 public:
  PromiseViolation(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// The inputs leave the ultimately periodic class, so an exact decision is
/// impossible; the caller must ask for a horizon-checked answer instead.
class HorizonRequired : public Error {
 public:
  using Error::Error;
};

class NotSerializable : public Error {
 public:
  using Error::Error;
};

}  // namespace ttree

#endif  // TTREE_ERRORS_HPP
