#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace trigsum {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class UnknownFunction : public Error {
 public:
  UnknownFunction(const std::string& name, std::vector<std::string> available);

  const std::vector<std::string>& available() const noexcept { return available_; }

 private:
  std::vector<std::string> available_;
};

/// An integrand returned NaN or infinity at a quadrature node.
class NonFiniteSample : public Error {
 public:
  explicit NonFiniteSample(double t);

  double where() const noexcept { return t_; }

 private:
  double t_;
};

/// A tail integral was requested for a function with infinite support and no
/// usable decay envelope.
class EnvelopeUnavailable : public Error {
 public:
  using Error::Error;
};

/// No truncation radius certifies the requested tail tolerance.
class TruncationUnachievable : public Error {
 public:
  using Error::Error;
};

class GridTooSmall : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature stopped (panel budget or roundoff) above the requested tolerance.
class ToleranceNotMet : public Error {
 public:
  using Error::Error;
};

}  // namespace trigsum
