#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmf/hecke.hpp"
#include "qmf/qseries.hpp"
#include "qmf/ramanujan.hpp"
#include "qmf/wpoly.hpp"

namespace qmf {

// Normalized solution curve: s_j -> E_{2j}(q), t_j -> d^{2j} E_{2j}(q^d).
//
// The relations live in the weighted ring with w(t_i) = w(s_j) = j. Under
// s_j = (2 pi i)^j E_{2j} and t_j = (2 pi i)^j d^{2j} E_{2j}(q^d), a
// homogeneous polynomial of degree D picks up the single factor (2 pi i)^D,
// so the rational curve satisfies exactly the same homogeneous relations.
SeriesAssignment solution_assignment(std::uint64_t d, std::size_t prec);

// A computed I_{d,i}: monic in t_i, homogeneous of degree i*psi(d).
struct ModularRelation {
  std::uint64_t d = 1;
  unsigned i = 1;
  std::uint64_t psi = 1;
  std::vector<ExponentVector> monomials;  // enumerate_monomials(d, i)
  std::vector<Rational> coeffs;           // aligned with monomials
  std::size_t verified_prec = 0;          // vanishing confirmed to this precision

  WPoly polynomial() const;
  bool is_integral() const;
  // Coefficient of t_i^k as a polynomial in s1, s2, s3.
  WPoly t_coefficient(unsigned k) const;
};

struct RelationOptions {
  std::size_t guard = 20;          // solve with at least m + guard equations
  std::size_t max_growth = 16;     // cap on precision doubling
  // Kernel computation: fraction-free elimination over Z, or word-size
  // primes with an exact check of the lifted vector. `automatic` switches
  // to the modular solver above modular_threshold unknowns.
  enum class Solver { automatic, exact, modular };
  Solver solver = Solver::automatic;
  std::size_t modular_threshold = 40;
};

// Solves for the relation as the kernel of the q-coefficient matrix of the
// monomials evaluated on the solution curve, then checks it at twice the
// solving precision.
ModularRelation compute_relation(std::uint64_t d, unsigned i, std::size_t prec, const RelationOptions& opts = {});

// p_k = d * T0_d(E_{2i}^k) at weight 2ik, k = 1..psi(d), to precision prec.
std::vector<QSeries> hecke_power_sums(std::uint64_t d, unsigned i, std::size_t prec);

// Builds the relation as prod_A (x - d f||A) via power sums and Newton's
// identities, reconstructing each elementary symmetric function as a
// polynomial in E2, E4, E6.
ModularRelation compute_relation_hecke(std::uint64_t d, unsigned i, std::size_t prec, const RelationOptions& opts = {});

// Throws InternalError unless the relation is monic, homogeneous of degree
// i*psi, and s1-free for i in {2, 3}.
void check_relation_invariants(const ModularRelation& r);

// Evaluates the relation on solution_assignment(d, prec).
QSeries evaluate_on_curve(const ModularRelation& r, std::size_t prec);

struct WronskianResult {
  std::uint64_t d = 1;
  unsigned i = 1;
  std::size_t m = 0;            // number of monomials
  unsigned degree = 0;          // m*i*psi + m(m-1)/2
  std::size_t prec = 0;
  QSeries determinant;
  std::optional<std::size_t> first_nonzero;
  std::optional<DegreeInfo> symbolic_degree;  // computed when m <= 4
  bool vanishes() const { return !first_nonzero; }
};

unsigned wronskian_degree(std::size_t m, unsigned i, std::uint64_t psi);
std::size_t default_wronskian_prec(std::uint64_t d, unsigned i, std::size_t guard = 10);

// det(R_d^r(alpha_j)) evaluated on the solution curve. Each entry is
// cross-checked against (d theta)^r applied to the evaluated monomial.
WronskianResult wronskian_series(std::uint64_t d, unsigned i, std::size_t prec);

struct TangencyResidual {
  unsigned i = 1;
  std::optional<std::size_t> first_nonzero;        // R_d(I_{d,i}) on the curve
  std::optional<std::size_t> curve_mismatch;       // against d*theta(I_{d,i}) on the curve
  std::optional<std::size_t> second_first_nonzero; // R_d^2(I_{d,i}), when requested
  bool second_checked = false;
  bool vanishes() const { return !first_nonzero && !curve_mismatch && !second_first_nonzero; }
};

struct TangencyReport {
  std::uint64_t d = 1;
  std::size_t prec = 0;
  std::vector<TangencyResidual> residuals;
  bool passed() const;
};

// Raw diagnostics; `relations` must hold I_{d,1..3} in order.
TangencyReport tangency_report(std::uint64_t d, std::size_t prec, const std::vector<ModularRelation>& relations,
                               bool second_iterate = false);
// Computes the relations itself and throws VerificationFailure naming the
// first offending (i, coefficient) if any residual is nonzero.
TangencyReport verify_tangency(std::uint64_t d, std::size_t prec, bool second_iterate = false);
TangencyReport verify_tangency(std::uint64_t d, std::size_t prec, const std::vector<ModularRelation>& relations,
                               bool second_iterate = false);

std::string to_string(const TangencyReport& r);

// Polynomial in j1, j2 over Q: exponent pair (a, b) for j1^a j2^b.
struct BivariatePoly {
  std::map<std::pair<unsigned, unsigned>, Rational> terms;
  Rational coeff(unsigned a, unsigned b) const;
  unsigned degree_j1() const;
  unsigned degree_j2() const;
  bool is_symmetric() const;
};

std::string to_string(const BivariatePoly& p);

struct ModularPolynomial {
  std::uint64_t d = 1;
  std::uint64_t psi = 1;
  BivariatePoly poly;
  std::size_t verified_prec = 0;
};

// Phi_d(j(q^d), j(q)) = 0, monic of degree psi(d) in j1. The j-series have
// a simple pole, so the relation is found and checked on
// Delta(q^d)^psi Delta(q)^psi Phi_d(j1, j2), an honest power series.
ModularPolynomial classical_modular_polynomial(std::uint64_t d, std::size_t prec, const RelationOptions& opts = {});

// Delta(q^d)^psi Delta(q)^psi Phi(j(q^d), j(q)) to the given precision.
QSeries cleared_j_relation_series(const BivariatePoly& p, std::uint64_t d, std::uint64_t psi, std::size_t prec);

}  // namespace qmf
