#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qmf/rational.hpp"

namespace qmf {

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntegerMatrix = std::vector<std::vector<Integer>>;

// Row echelon form produced by fraction-free (Bareiss) elimination.
// Row k of `rows` has its leading entry in column pivots[k]; rows at and
// beyond rank are zero and dropped.
struct EchelonForm {
  IntegerMatrix rows;
  std::vector<std::size_t> pivots;
  std::size_t cols = 0;
  std::size_t rank() const { return pivots.size(); }
};

EchelonForm bareiss_echelon(IntegerMatrix m, std::size_t cols);

// Multiplies each row by the lcm of its denominators.
IntegerMatrix clear_denominators(const RationalMatrix& m);

// Basis of {x : M x = 0}, one vector per free column. Each vector is a
// primitive integer vector (content 1) written as rationals, with a positive
// entry at its free column.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m, std::size_t cols);

// Kernel of M in the common case where it is expected to be a line, found
// modulo word-size primes and lifted by CRT and rational reconstruction.
// A rank of cols - 1 modulo any prime bounds the true rank from below, and
// the lifted vector is checked exactly, so `line` is a proof. `larger` means
// several primes in a row saw rank below cols - 1 (the true kernel is then
// almost surely bigger); `trivial` means some prime saw full column rank.
struct ModularKernel {
  enum class Status { line, larger, trivial };
  Status status = Status::trivial;
  std::vector<Rational> x;  // primitive integer vector, positive at its free column
  std::size_t primes = 0;   // primes used
};

ModularKernel modular_kernel(const RationalMatrix& m, std::size_t cols);

struct LinearSolution {
  enum class Status { unique, underdetermined, inconsistent };
  Status status = Status::inconsistent;
  std::vector<Rational> x;  // filled when status == unique
  std::size_t rank = 0;
};

// Solves A x = b exactly.
LinearSolution solve(const RationalMatrix& a, const std::vector<Rational>& b);

}  // namespace qmf
