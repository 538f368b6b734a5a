#pragma once

#include <stdexcept>
#include <string>

namespace harmvol {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index out of range, genus/order mismatch, malformed basis element.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Raised when a degree-3 tensor fails the K⊗H membership test.
/// `contraction` is the first nonzero coefficient of the slot-(1,2) pairing
/// contraction and `at` names the third-factor generator it belongs to.
class NotInKError : public Error {
 public:
  NotInKError(long long contraction, std::string at)
      : Error("tensor is not in K⊗H: pairing contraction = " + std::to_string(contraction) +
              " ≠ 0 (third factor " + at + ")"),
        contraction_(contraction),
        at_(std::move(at)) {}

  long long contraction() const noexcept { return contraction_; }
  const std::string& at() const noexcept { return at_; }

 private:
  long long contraction_;
  std::string at_;
};

/// Basis expansion produced a non-integral coefficient.
class NonIntegralError : public Error {
 public:
  NonIntegralError() : Error("basis not unimodular for this input") {}
};

/// Adaptive quadrature gave up before reaching its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved, double requested)
      : Error(what + ": achieved error estimate " + format(achieved) + " > requested " +
              format(requested)),
        achieved_(achieved),
        requested_(requested) {}

  double achieved() const noexcept { return achieved_; }
  double requested() const noexcept { return requested_; }

 private:
  static std::string format(double v);
  double achieved_;
  double requested_;
};

/// Malformed user input (tensor files, CLI values).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace harmvol
