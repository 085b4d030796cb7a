#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmf/wpoly.hpp"

namespace qmf {

enum class Triple { s, t };

// Ramanujan's system on the chosen variable triple (x1, x2, x3):
//   x1 -> (x1^2 - x2)/12,  x2 -> (x1 x2 - x3)/3,  x3 -> (x1 x3 - x2^2)/2,
// and zero on the other triple.
VectorField ramanujan_field(Triple triple);

// R_t + d * R_s.
VectorField combined_field(std::uint64_t d);

// a + c*b, variable by variable.
VectorField linear_combination(const VectorField& a, const Rational& c, const VectorField& b);

struct ResidualDiagnostic {
  std::string name;
  std::optional<std::size_t> first_nonzero;  // empty: vanishes to prec
  bool vanishes() const { return !first_nonzero; }
};

struct VerificationReport {
  std::size_t prec = 0;
  std::vector<ResidualDiagnostic> residuals;
  bool passed() const;
};

// Checks theta E2 = (E2^2 - E4)/12, theta E4 = (E2 E4 - E6)/3,
// theta E6 = (E2 E6 - E4^2)/2 to the given precision.
VerificationReport verify_ramanujan(std::size_t prec);

std::string to_string(const VerificationReport& r);

}  // namespace qmf
