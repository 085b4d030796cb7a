#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmf {

// Argument outside the mathematical domain of an operation (d = 0, k not in {2,4,6}, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A series with zero constant term was inverted.
class SingularSeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Not enough q-coefficients to determine the requested result.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& what, std::size_t required)
      : std::runtime_error(what), required_(required) {}
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}

  // Smallest precision known to be needed, or 0 if unknown.
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t required_ = 0;
};

// A series could not be written as a polynomial in E2, E4, E6 of the requested shape.
class NotQuasiModularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An identity that must hold exactly was found to fail.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Self-consistency check failed; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qmf
