#pragma once

// Small random generators shared by the property tests. Every suite seeds
// its own engine so failures reproduce.

#include <random>
#include <vector>

#include "qmf/qseries.hpp"
#include "qmf/wpoly.hpp"

namespace qmf::testing {

constexpr int kCases = 100;

inline Rational random_rational(std::mt19937_64& rng, long range = 20, long max_den = 6) {
  std::uniform_int_distribution<long> num(-range, range), den(1, max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline QSeries random_series(std::mt19937_64& rng, std::size_t prec, long range = 20, long max_den = 6) {
  std::vector<Rational> c(prec);
  for (auto& x : c) x = random_rational(rng, range, max_den);
  return QSeries(std::move(c));
}

inline QSeries random_integer_series(std::mt19937_64& rng, std::size_t prec, long range = 50) {
  return random_series(rng, prec, range, 1);
}

inline ExponentVector random_exponent(std::mt19937_64& rng, unsigned max_exp = 2) {
  std::uniform_int_distribution<unsigned> ex(0, max_exp);
  ExponentVector e;
  for (auto& x : e.e) x = ex(rng);
  return e;
}

inline WPoly random_wpoly(std::mt19937_64& rng, int max_terms = 4, unsigned max_exp = 2) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  WPoly p;
  for (int k = nterms(rng); k > 0; --k) p.add_term(random_rational(rng, 9, 4), random_exponent(rng, max_exp));
  return p;
}

inline SeriesAssignment random_assignment(std::mt19937_64& rng, std::size_t prec) {
  std::array<QSeries, kNumVars> s;
  for (auto& x : s) x = random_series(rng, prec, 5, 3);
  return SeriesAssignment(std::move(s));
}

}  // namespace qmf::testing
