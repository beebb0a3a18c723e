#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cellab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix or field does not satisfy the flavor predicate an operation needs
/// (hermitian, unitary, projection).
class FlavorError : public Error {
 public:
  using Error::Error;
};

/// Bad argument shape or value (cardinality mismatch, c >= d, dim mismatch).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition that depends on the data failed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Functional calculus applied outside the declared domain.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Principal logarithm requested for a spectrum touching -1.
class BranchCutError : public Error {
 public:
  explicit BranchCutError(const std::string& what, std::size_t grid_index)
      : Error(what), grid_index_(grid_index) {}
  std::size_t grid_index() const noexcept { return grid_index_; }

 private:
  std::size_t grid_index_;
};

/// Two eigenvalues on the unit circle are closer than the gap tolerance, or
/// branch matching is ambiguous.  The offending grid location is carried along.
class CollisionError : public Error {
 public:
  CollisionError(const std::string& what, std::size_t t_index, std::size_t s_index = npos)
      : Error(what), t_index_(t_index), s_index_(s_index) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t t_index() const noexcept { return t_index_; }
  std::size_t s_index() const noexcept { return s_index_; }

 private:
  std::size_t t_index_;
  std::size_t s_index_;
};

/// The input is not in CU: its determinant is not identically 1.
class CuError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant that should be impossible for valid input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Parse failure in a serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cellab
