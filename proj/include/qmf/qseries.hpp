#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmf/rational.hpp"

namespace qmf {

// Truncated power series sum_{n < prec} f_n q^n over Q. Coefficients of q^n
// for n >= prec are unknown, so every comparison is only meaningful up to
// the smaller precision of its operands.
class QSeries {
 public:
  // Zero series known to precision prec (prec >= 1).
  explicit QSeries(std::size_t prec = 1);
  // Takes the coefficients as given; prec = coeffs.size() (must be >= 1).
  explicit QSeries(std::vector<Rational> coeffs);

  static QSeries constant(const Rational& c, std::size_t prec);
  static QSeries monomial(const Rational& c, std::size_t exponent, std::size_t prec);
  static QSeries from_integers(const std::vector<Integer>& coeffs);

  std::size_t prec() const noexcept { return coeffs_.size(); }
  const Rational& operator[](std::size_t n) const { return coeffs_.at(n); }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  // Drops coefficients at and above p (p <= prec()).
  QSeries truncate(std::size_t p) const;

  bool is_zero() const;
  // Index of the first nonzero coefficient, if any.
  std::optional<std::size_t> valuation() const;
  bool is_integral() const;

  QSeries operator-() const;
  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  QSeries& operator*=(const QSeries& o);
  QSeries& operator*=(const Rational& c);

  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend QSeries operator*(QSeries a, const Rational& c) { return a *= c; }
  friend QSeries operator*(const Rational& c, QSeries a) { return a *= c; }

 private:
  std::vector<Rational> coeffs_;
};

// Result of comparing two series up to their shared precision.
struct SeriesComparison {
  bool equal = false;
  std::size_t prec = 0;                         // precision at which the comparison was made
  std::optional<std::size_t> first_mismatch;   // set when !equal
};

SeriesComparison compare(const QSeries& a, const QSeries& b);
inline bool agree(const QSeries& a, const QSeries& b) { return compare(a, b).equal; }

// q d/dq.
QSeries theta(const QSeries& f);

// f(q^c). Result precision c*(prec-1)+1. Throws DomainError for c = 0.
QSeries substitute_power(const QSeries& f, std::size_t c);

QSeries pow(const QSeries& f, unsigned long e);

// 1/f; throws SingularSeriesError when f_0 = 0.
QSeries invert(const QSeries& f);

// E_k = 1 + b * sum sigma_{k-1}(n) q^n for k in {2, 4, 6}, b = -24, 240, -504.
QSeries eisenstein_series(unsigned k, std::size_t prec);

// Text form: header "prec=N", then "n: c" for n = 0..N-1.
std::string to_text(const QSeries& f);
void write_text(std::ostream& os, const QSeries& f);
// Missing indices read as zero. Throws DomainError on malformed input.
QSeries parse_text(std::string_view text);

// Human-oriented rendering, e.g. "1 - 24*q - 72*q^2 + O(q^3)".
std::string to_display(const QSeries& f);

}  // namespace qmf
