#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmf/qseries.hpp"
#include "qmf/wpoly.hpp"

namespace qmf {

// Upper-triangular representative [[a, b], [0, c]] of SL2(Z) \ Mat_d(2, Z).
struct CosetRep {
  std::uint64_t a = 1;
  std::uint64_t b = 0;
  std::uint64_t c = 1;
  friend bool operator==(const CosetRep&, const CosetRep&) = default;
};

// All reps with c | d, a = d/c, 0 <= b < c; ordered by c, then b. There are sigma_1(d).
std::vector<CosetRep> coset_reps(std::uint64_t d);

// Reps with cyclic cokernel, i.e. gcd(a, b, c) = 1. There are psi(d).
std::vector<CosetRep> cyclic_coset_reps(std::uint64_t d);

// Largest output precision T_d can produce from an input of precision prec.
inline std::size_t hecke_output_prec(std::size_t prec, std::uint64_t d) { return (prec - 1) / d + 1; }

// (T_d f)_n = sum_{c | (d, n)} c^{m-1} f_{nd/c^2} on a weight-m expansion.
// Output precision is hecke_output_prec(f.prec(), d), or out_prec if given;
// throws PrecisionError when out_prec needs more input than f carries.
QSeries hecke_T(const QSeries& f, unsigned weight, std::uint64_t d, std::optional<std::size_t> out_prec = {});

// Refined operator: the coset sum restricted to cyclic reps, written with
// Moebius inversion over the admissible b so that only integer powers of q
// appear:
//   (1/d) sum_{c c' = d} sum_{g | (c, c')} mu(g) c'^m (c/g) sum_k f_{k c/g} q^{k c'/g}.
QSeries hecke_T0(const QSeries& f, unsigned weight, std::uint64_t d, std::optional<std::size_t> out_prec = {});

// Element of Q[E2, E4, E6] held as a polynomial in s1, s2, s3 (s_j <-> E_{2j}).
struct QuasiModularForm {
  unsigned weight = 0;  // modular weight
  unsigned order = 0;   // bound on the E2-degree
  WPoly poly;
  QSeries series;
};

// Series assignment s_j -> E_{2j}; t-variables map to zero.
SeriesAssignment eisenstein_assignment(std::size_t prec);

// Monomials E2^a E4^b E6^c of modular weight `weight` with a <= order, as s-monomials.
std::vector<ExponentVector> quasimodular_basis(unsigned weight, unsigned order);

// Finds the polynomial in E2, E4, E6 of the given shape matching f to
// f.prec(). Throws NotQuasiModularError if none exists and PrecisionError if
// f is too short to pin it down.
QuasiModularForm reconstruct_quasimodular(const QSeries& f, unsigned weight, unsigned order, std::size_t guard = 10);

// e.g. "9*E4", "E2^2 - E4".
std::string format_eisenstein(const WPoly& p);

// Diagnostic for the decomposition T_d = sum_{d = g^2 d1} g^e T0_{d1} at
// candidate exponents e. Reports, per candidate, the first coefficient at
// which the two sides differ.
struct RefinedCandidate {
  long exponent = 0;
  std::string label;
  std::size_t prec = 0;
  std::optional<std::size_t> first_failure;
};

std::vector<RefinedCandidate> verify_refined_decomposition(const QSeries& f, unsigned weight, std::uint64_t d);

}  // namespace qmf
