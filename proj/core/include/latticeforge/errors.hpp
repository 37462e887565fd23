#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace latticeforge {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched or out-of-range dimensions, including the size caps.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Points that were required to be affinely independent are not, or a
/// polytope that must be full-dimensional is not.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or sumset exceeded its configured cap. `h()` carries the
/// dilation factor being processed when the error was annotated by a scan.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what,
                         std::optional<long long> h = std::nullopt)
      : Error(what), h_(h) {}

  std::optional<long long> h() const { return h_; }

 private:
  std::optional<long long> h_;
};

class NotUnimodularError : public Error {
 public:
  using Error::Error;
};

/// The point does not lie in the (dilated) polytope or simplex.
class PointOutsideError : public Error {
 public:
  using Error::Error;
};

class NonLatticeError : public Error {
 public:
  using Error::Error;
};

/// A cover that claims to be certified has no cell containing a point of
/// its target.
class NoCellError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace latticeforge
