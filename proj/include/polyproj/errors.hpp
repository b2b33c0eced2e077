#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polyproj {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments: dimensions out of range, unknown names, bad flag combinations.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numeric routine (NNLS, LP, angle estimate) failed to converge or produced garbage.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, std::uint64_t sample_index = 0)
      : Error(what), sample_index_(sample_index) {}
  std::uint64_t sample_index() const noexcept { return sample_index_; }

 private:
  std::uint64_t sample_index_;
};

/// A geometric predicate fell inside the tolerance band; the input should be resampled.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// Poisson mixture truncation could not reach the requested tail bound.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double achieved_bound)
      : Error(what), achieved_bound_(achieved_bound) {}
  double achieved_bound() const noexcept { return achieved_bound_; }

 private:
  double achieved_bound_;
};

}  // namespace polyproj
