#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qmf/qseries.hpp"
#include "qmf/rational.hpp"

namespace qmf {

enum class Var : std::uint8_t { t1 = 0, t2, t3, s1, s2, s3 };
inline constexpr std::size_t kNumVars = 6;
inline constexpr std::array<Var, kNumVars> kAllVars{Var::t1, Var::t2, Var::t3, Var::s1, Var::s2, Var::s3};

constexpr std::size_t index(Var v) { return static_cast<std::size_t>(v); }
// Ring weight: w(t_i) = w(s_i) = i. Modular weight is twice this.
constexpr unsigned ring_weight(Var v) { return static_cast<unsigned>(index(v) % 3) + 1; }
std::string_view var_name(Var v);
Var t_var(unsigned i);  // i in {1,2,3}
Var s_var(unsigned i);

struct ExponentVector {
  std::array<unsigned, kNumVars> e{};

  unsigned& operator[](Var v) { return e[index(v)]; }
  unsigned operator[](Var v) const { return e[index(v)]; }
  unsigned degree() const;  // weighted, ring weights
  bool is_constant() const;
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  ExponentVector operator+(const ExponentVector& o) const;
};

ExponentVector unit_exponent(Var v, unsigned power = 1);

// Global term order: higher weighted degree first, ties broken
// lexicographically with t1 > t2 > t3 > s1 > s2 > s3. `before(a, b)` is true
// when a is listed ahead of b.
struct MonomialOrder {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const;
};

struct ExponentHash {
  std::size_t operator()(const ExponentVector& v) const noexcept;
};

// Polynomial over Q in t1,t2,t3,s1,s2,s3; no stored zero coefficients.
class WPoly {
 public:
  using TermMap = std::map<ExponentVector, Rational, MonomialOrder>;

  WPoly() = default;
  WPoly(const Rational& c);  // NOLINT: constants convert implicitly
  WPoly(long c) : WPoly(Rational(c)) {}  // NOLINT
  static WPoly variable(Var v);
  static WPoly term(const Rational& c, const ExponentVector& e);

  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coeff(const ExponentVector& e) const;

  WPoly& add_term(const Rational& c, const ExponentVector& e);
  WPoly operator-() const;
  WPoly& operator+=(const WPoly& o);
  WPoly& operator-=(const WPoly& o);
  WPoly& operator*=(const Rational& c);
  friend WPoly operator+(WPoly a, const WPoly& b) { return a += b; }
  friend WPoly operator-(WPoly a, const WPoly& b) { return a -= b; }
  friend WPoly operator*(const WPoly& a, const WPoly& b);
  friend WPoly operator*(WPoly a, const Rational& c) { return a *= c; }
  friend WPoly operator*(const Rational& c, WPoly a) { return a *= c; }
  friend WPoly operator*(WPoly a, long c) { return a *= Rational(c); }
  friend WPoly operator*(long c, WPoly a) { return a *= Rational(c); }
  friend bool operator==(const WPoly& a, const WPoly& b) { return a.terms_ == b.terms_; }

  WPoly partial(Var v) const;

 private:
  TermMap terms_;
};

WPoly pow(const WPoly& p, unsigned e);

struct DegreeInfo {
  unsigned degree = 0;
  bool homogeneous = true;
  friend bool operator==(const DegreeInfo&, const DegreeInfo&) = default;
};

// Weighted degree; the zero polynomial reports (0, homogeneous).
DegreeInfo weighted_degree(const WPoly& p);

// Monomials t_i^a0 s1^a1 s2^a2 s3^a3 with i*a0 + a1 + 2a2 + 3a3 = i*psi(d),
// a1 = 0 for i in {2,3}, in global term order. Throws DomainError for i outside {1,2,3}.
std::vector<ExponentVector> enumerate_monomials(std::uint64_t d, unsigned i);

// All exponent vectors of the given weighted degree using only `vars`, in term order.
std::vector<ExponentVector> monomials_of_degree(unsigned degree, const std::vector<Var>& vars);

// Canonical text: terms in term order, e.g. "t2^3 - 18 t2^2 s2 + 33 t2 s2^2".
std::string to_string(const WPoly& p);
std::string to_string(const ExponentVector& e);
// Inverse of to_string; also accepts '*' between factors. Throws DomainError.
WPoly parse_wpoly(std::string_view text);

// A derivation given by the image of each of the six variables.
struct VectorField {
  std::array<WPoly, kNumVars> images;
  std::string label;

  const WPoly& operator()(Var v) const { return images[index(v)]; }
};

// sum_v (dP/dv) * V(v)
WPoly apply_derivation(const VectorField& field, const WPoly& p);
WPoly apply_derivation(const VectorField& field, const WPoly& p, unsigned times);

// Assignment of a q-series to each variable, all of one precision.
class SeriesAssignment {
 public:
  explicit SeriesAssignment(std::array<QSeries, kNumVars> series);
  const QSeries& operator[](Var v) const { return series_[index(v)]; }
  std::size_t prec() const noexcept { return series_[0].prec(); }

 private:
  std::array<QSeries, kNumVars> series_;
};

// Evaluates polynomials under a fixed assignment, memoizing monomial values
// so that repeated evaluations share work. Not thread-safe.
class Evaluator {
 public:
  explicit Evaluator(SeriesAssignment assignment);
  const SeriesAssignment& assignment() const noexcept { return assignment_; }
  const QSeries& monomial(const ExponentVector& e);
  QSeries operator()(const WPoly& p);

 private:
  SeriesAssignment assignment_;
  std::unordered_map<ExponentVector, QSeries, ExponentHash> cache_;
};

QSeries evaluate(const WPoly& p, const SeriesAssignment& a);

using SeriesMatrix = std::vector<std::vector<QSeries>>;

// Laplace expansion along the first row; Ring needs +, -, *, and a unit.
template <class Ring>
Ring cofactor_det(const std::vector<std::vector<Ring>>& m, const Ring& one) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Ring acc = one - one;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Ring>> minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Ring> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Ring term = m[0][j] * cofactor_det(minor, one);
    if (j % 2 == 0)
      acc = acc + term;
    else
      acc = acc - term;
  }
  return acc;
}

// Determinant over Q[[q]] up to the shared precision of the entries.
QSeries qseries_det(const SeriesMatrix& m);

}  // namespace qmf
