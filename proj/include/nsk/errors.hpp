#pragma once

#include <stdexcept>
#include <string>

namespace nsk {

/// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument below the validity floor v_min (or rho_min), or a trajectory that crossed it.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested derivative order is not provided by the potential.
class OrderError : public Error {
 public:
  using Error::Error;
};

/// Operation requires a model in the other coordinate frame.
class FrameError : public Error {
 public:
  using Error::Error;
};

/// End-state ordering contradicts the requested shock family (includes zero amplitude).
class OrderingError : public Error {
 public:
  using Error::Error;
};

/// Strict Lax inequalities fail or hold with a margin below 1e-10.
class LaxError : public Error {
 public:
  LaxError(const std::string& what, double margin_lo, double margin_hi)
      : Error(what), margin_lo_(margin_lo), margin_hi_(margin_hi) {}
  double margin_lo() const { return margin_lo_; }
  double margin_hi() const { return margin_hi_; }

 private:
  double margin_lo_;
  double margin_hi_;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

/// Shooting trajectory left the invariant region bounded by the homoclinic loop.
class EscapeError : public Error {
 public:
  using Error::Error;
};

/// Companion-matrix roots on (or numerically near) the imaginary axis.
class CenterRootError : public Error {
 public:
  using Error::Error;
};

class SmallDenominatorError : public Error {
 public:
  using Error::Error;
};

}  // namespace nsk
