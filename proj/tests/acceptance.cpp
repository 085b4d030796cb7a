// Acceptance sweep: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "qmf/arith.hpp"
#include "qmf/errors.hpp"
#include "qmf/hecke.hpp"
#include "qmf/modeq.hpp"
#include "qmf/ramanujan.hpp"
#include "support.hpp"

using namespace qmf;
using testing::kCases;

namespace {

constexpr double kTableSeconds = 10.0;       // per relation
constexpr double kHeckeRouteSeconds = 60.0;  // all six relations
constexpr double kScalingSeconds = 600.0;    // all d <= 10
constexpr std::size_t kWronskianPrec = 100;
constexpr std::size_t kTangencyPrec = 100;
constexpr std::size_t kRamanujanPrec = 200;
constexpr std::size_t kEigenPrec = 50;
constexpr std::size_t kJPrec = 100;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Each check appends failure reasons to `why`; an empty list is a pass.
struct Outcome {
  std::vector<std::string> why;
  std::vector<std::string> notes;
  void fail(const std::string& s) { why.push_back(s); }
  void require(bool ok, const std::string& s) {
    if (!ok) fail(s);
  }
};

std::string relation_name(std::uint64_t d, unsigned i) {
  return "I_{" + std::to_string(d) + "," + std::to_string(i) + "}";
}

// ---- 1. tables -------------------------------------------------------------

// Columns t_i^psi, ..., t_i, 1, each a polynomial in s.
const std::map<std::pair<std::uint64_t, unsigned>, std::vector<std::string>> kTables = {
    {{2, 1}, {"1", "-6 s1", "12 s1^2 - 3 s2", "-8 s1^3 + 6 s1 s2 - 2 s3"}},
    {{2, 2}, {"1", "-18 s2", "33 s2^2", "484 s2^3 - 500 s3^2"}},
    {{2, 3}, {"1", "-66 s3", "-1323 s2^3 + 1452 s3^2", "10584 s2^3 s3 - 10648 s3^3"}},
    {{3, 1}, {"1", "-12 s1", "54 s1^2 - 24 s2", "-108 s1^3 + 144 s1 s2 - 64 s3", "81 s1^4 - 216 s1^2 s2 - 48 s2^2 + 192 s1 s3"}},
    {{3, 2}, {"1", "-84 s2", "246 s2^2", "63756 s2^3 - 64000 s3^2", "576081 s2^4 - 576000 s2 s3^2"}},
    {{3, 3},
     {"1", "-732 s3", "-169344 s2^3 + 171534 s3^2", "11007360 s2^3 s3 - 11009548 s3^3",
      "-502020288 s2^6 + 939266496 s2^3 s3^2 - 437245479 s3^4"}},
};

void tables(Outcome& o) {
  for (const auto& [key, columns] : kTables) {
    auto [d, i] = key;
    auto t0 = Clock::now();
    auto r = compute_relation(d, i, 60);
    double secs = seconds_since(t0);
    o.require(secs < kTableSeconds, relation_name(d, i) + " took " + std::to_string(secs) + "s");
    o.require(r.psi + 1 == columns.size(), relation_name(d, i) + " has the wrong t-degree");
    for (std::size_t col = 0; col < columns.size(); ++col) {
      const unsigned k = static_cast<unsigned>(r.psi - col);
      WPoly want = parse_wpoly(columns[col]);
      WPoly got = r.t_coefficient(k);
      o.require(got == want, relation_name(d, i) + " coefficient of t^" + std::to_string(k) + ": got " + to_string(got) +
                                 ", expected " + to_string(want));
    }
  }
}

// ---- 2. Hecke route --------------------------------------------------------

void hecke_route(Outcome& o) {
  auto t0 = Clock::now();
  for (std::uint64_t d = 2; d <= 3; ++d)
    for (unsigned i = 1; i <= 3; ++i) {
      auto h = compute_relation_hecke(d, i, 0);
      auto r = compute_relation(d, i, 0);
      o.require(h.monomials == r.monomials && h.coeffs == r.coeffs, relation_name(d, i) + ": routes differ");
    }
  double secs = seconds_since(t0);
  o.require(secs < kHeckeRouteSeconds, "took " + std::to_string(secs) + "s");
}

// ---- 3. Wronskian degrees --------------------------------------------------

// Number of exponent tuples for I_{d,i}, counted directly.
std::size_t monomial_count(std::uint64_t d, unsigned i) {
  const unsigned deg = i * static_cast<unsigned>(dedekind_psi(d));
  std::size_t n = 0;
  for (unsigned a0 = 0; i * a0 <= deg; ++a0)
    for (unsigned a1 = 0; a1 <= (i == 1 ? deg - a0 : 0); ++a1)
      for (unsigned a2 = 0; i * a0 + a1 + 2 * a2 <= deg; ++a2)
        if ((deg - i * a0 - a1 - 2 * a2) % 3 == 0) ++n;
  return n;
}

void wronskian_degrees(Outcome& o) {
  const unsigned expected_d2[] = {42, 40, 69};
  for (unsigned i = 1; i <= 3; ++i) {
    auto w = wronskian_series(2, i, 30);
    o.require(w.degree == expected_d2[i - 1], "deg J_{2," + std::to_string(i) + "} = " + std::to_string(w.degree));
  }
  const VectorField field_cache[] = {combined_field(1), combined_field(2), combined_field(3),
                                     combined_field(4), combined_field(5), combined_field(6)};
  for (std::uint64_t d = 1; d <= 6; ++d)
    for (unsigned i = 1; i <= 3; ++i) {
      const std::uint64_t psi = dedekind_psi(d);
      const auto monos = enumerate_monomials(d, i);
      const std::size_t m = monos.size();
      o.require(m == monomial_count(d, i), "monomial count for " + relation_name(d, i));
      // Row r of the Wronskian is homogeneous of degree i psi + r, so the
      // determinant has degree sum_r (i psi + r) = m i psi + m(m-1)/2.
      const std::size_t rows = std::min<std::size_t>(m, 3);
      for (const auto& e : monos) {
        WPoly p = WPoly::term(1, e);
        for (std::size_t r = 0; r < rows; ++r) {
          auto deg = weighted_degree(p);
          if (!p.is_zero())
            o.require(deg.homogeneous && deg.degree == i * psi + r, "row " + std::to_string(r) + " entry of J for " +
                                                                       relation_name(d, i) + " is not of degree i psi + r");
          p = apply_derivation(field_cache[d - 1], p);
        }
      }
      std::uint64_t sum = 0;
      for (std::size_t r = 0; r < m; ++r) sum += i * psi + r;
      o.require(wronskian_degree(m, i, psi) == sum, "degree formula for " + relation_name(d, i));
      o.require(sum == m * i * psi + m * (m - 1) / 2, "closed form for " + relation_name(d, i));
      if (d <= 3) o.require(wronskian_series(d, i, 20).degree == sum, "reported degree for " + relation_name(d, i));
    }
}

// ---- 4. Wronskians vanish --------------------------------------------------

void wronskians_vanish(Outcome& o) {
  for (std::uint64_t d = 2; d <= 3; ++d)
    for (unsigned i = 1; i <= 3; ++i) {
      const std::size_t prec = std::max(kWronskianPrec, default_wronskian_prec(d, i));
      auto w = wronskian_series(d, i, prec);
      o.require(w.prec >= kWronskianPrec, "precision");
      o.require(w.vanishes(), "J_{" + std::to_string(d) + "," + std::to_string(i) + "} nonzero at q^" +
                                  std::to_string(w.first_nonzero.value_or(0)));
      o.notes.push_back("J_{" + std::to_string(d) + "," + std::to_string(i) + "} m=" + std::to_string(w.m) +
                        " vanishes to " + std::to_string(prec));
    }
}

// ---- 5. tangency -----------------------------------------------------------

void tangency(Outcome& o) {
  for (std::uint64_t d = 1; d <= 6; ++d) {
    const bool second = d == 2 || d == 3;
    auto rep = tangency_report(d, kTangencyPrec, {compute_relation(d, 1, 0), compute_relation(d, 2, 0), compute_relation(d, 3, 0)},
                               second);
    o.require(rep.prec == kTangencyPrec, "precision");
    for (const auto& r : rep.residuals) {
      const std::string name = "R_" + std::to_string(d) + "(" + relation_name(d, r.i) + ")";
      o.require(!r.first_nonzero, name + " nonzero");
      o.require(!r.curve_mismatch, name + " differs from d theta on the curve");
      if (second) {
        o.require(r.second_checked, name + " second iterate not checked");
        o.require(!r.second_first_nonzero, name + " second iterate nonzero");
      }
    }
  }
}

// ---- 6. Ramanujan ----------------------------------------------------------

void ramanujan(Outcome& o) {
  auto rep = verify_ramanujan(kRamanujanPrec);
  o.require(rep.prec == kRamanujanPrec && rep.residuals.size() == 3, "report shape");
  for (const auto& r : rep.residuals) o.require(r.vanishes(), r.name);
}

// ---- 7. Hecke laws ---------------------------------------------------------

QSeries delta(std::size_t prec) {
  QSeries e4 = eisenstein_series(4, prec), e6 = eisenstein_series(6, prec);
  return Rational(1, 1728) * (e4 * e4 * e4 - e6 * e6);
}

void hecke_laws(Outcome& o) {
  std::mt19937_64 rng(7001);
  for (int k = 0; k < kCases; ++k) {
    const std::uint64_t d = 1 + rng() % 20;
    const unsigned m = 2 * (1 + rng() % 6);
    QSeries f = testing::random_series(rng, d * (1 + rng() % 4) + 1);
    o.require(hecke_T(f, m, d)[0] == Rational(divisor_sigma(m - 1, d)) * f[0], "constant term, d=" + std::to_string(d));
  }
  for (unsigned k : {2u, 3u})
    for (std::uint64_t d = 1; d <= 20; ++d) {
      QSeries e = eisenstein_series(2 * k, d * (kEigenPrec - 1) + 1);
      o.require(agree(hecke_T(e, 2 * k, d, kEigenPrec), Rational(divisor_sigma(2 * k - 1, d)) * e.truncate(kEigenPrec)),
                "T_" + std::to_string(d) + " E" + std::to_string(2 * k));
    }
  const std::size_t out = 15;
  const std::pair<std::uint64_t, std::uint64_t> pairs[] = {{2, 2}, {2, 3}, {3, 3}, {2, 4}};
  for (auto [p, q] : pairs) {
    const std::size_t in = p * q * (out - 1) + 1;
    const std::pair<std::string, std::pair<QSeries, unsigned>> forms[] = {
        {"E4", {eisenstein_series(4, in), 4}},
        {"Delta", {delta(in), 12}},
        {"E2E4", {eisenstein_series(2, in) * eisenstein_series(4, in), 6}}};
    for (const auto& [name, fm] : forms) {
      const auto& [f, m] = fm;
      QSeries lhs = hecke_T(hecke_T(f, m, q), m, p, out);
      QSeries rhs(out);
      for (std::uint64_t c = 1; c <= std::min(p, q); ++c)
        if (p % c == 0 && q % c == 0)
          rhs += Rational(ipow(static_cast<long>(c), m - 1)) * hecke_T(f, m, p * q / (c * c), out);
      o.require(agree(lhs, rhs), "T_" + std::to_string(p) + " T_" + std::to_string(q) + " on " + name);
    }
  }
  QSeries e4 = eisenstein_series(4, 30 * 19 + 1);
  for (std::uint64_t d = 1; d <= 30; ++d) {
    if (!is_squarefree(d)) continue;
    QSeries f = testing::random_series(rng, d * 10 + 1);
    const unsigned m = 2 * (1 + rng() % 6);
    o.require(agree(hecke_T0(f, m, d), hecke_T(f, m, d)), "T0 = T on random f, d=" + std::to_string(d));
    o.require(agree(hecke_T0(e4, 4, d, 20), hecke_T(e4, 4, d, 20)), "T0 = T on E4, d=" + std::to_string(d));
  }
}

// ---- 8. scaling ------------------------------------------------------------

void scaling(Outcome& o) {
  auto t0 = Clock::now();
  std::ostringstream integral;
  for (std::uint64_t d = 1; d <= 10; ++d)
    for (unsigned i = 1; i <= 3; ++i) {
      ModularRelation r = compute_relation(d, i, 0);
      try {
        check_relation_invariants(r);
      } catch (const InternalError& e) {
        o.fail(relation_name(d, i) + ": " + e.what());
      }
      o.require(r.verified_prec > 0, relation_name(d, i) + " unverified");
      integral << ' ' << d << ',' << i << '=' << (r.is_integral() ? "Z" : "Q");
    }
  double secs = seconds_since(t0);
  o.require(secs < kScalingSeconds, "took " + std::to_string(secs) + "s");
  o.notes.push_back("integrality (Z integral, Q not):" + integral.str());
  o.notes.push_back("total " + std::to_string(secs) + "s");
}

// ---- 9. Phi_2 --------------------------------------------------------------

void j_polynomial(Outcome& o) {
  auto phi = classical_modular_polynomial(2, 0);
  const BivariatePoly& p = phi.poly;
  o.require(p.is_symmetric(), "not symmetric");
  o.require(p.degree_j1() == 3 && p.degree_j2() == 3, "degree");
  o.require(p.coeff(3, 0) == 1, "not monic in j1");

  // Independent check on Laurent series: J(q) = q j(q) = E4^3 / (Delta/q), so
  // q^9 Phi(j(q^2), j(q)) = sum c_ab q^{9-2a-b} J(q^2)^a J(q)^b.
  const std::size_t prec = kJPrec + 10;
  QSeries e4 = eisenstein_series(4, prec + 1);
  QSeries dq = delta(prec + 1);
  std::vector<Rational> shifted(dq.coeffs().begin() + 1, dq.coeffs().end());
  QSeries jq = e4.truncate(prec) * e4.truncate(prec) * e4.truncate(prec) * invert(QSeries(shifted));
  QSeries jq2 = substitute_power(jq, 2).truncate(prec);
  QSeries sum(prec);
  for (const auto& [ab, c] : p.terms) {
    auto [a, b] = ab;
    QSeries term = Rational(c) * pow(jq2, a) * pow(jq, b);
    sum += QSeries::monomial(1, 9 - 2 * a - b, prec) * term;
  }
  auto v = sum.valuation();
  o.require(!v, "Laurent check fails at q^" + std::to_string(v.value_or(0)));
  o.require(sum.prec() >= kJPrec, "Laurent check precision");
  o.require(cleared_j_relation_series(p, 2, 3, kJPrec).is_zero(), "cleared series nonzero");
}

// ---- 10. properties --------------------------------------------------------

void properties(Outcome& o) {
  std::mt19937_64 rng(10001);
  int ring = 0, leibniz = 0, hom = 0, curve = 0;
  for (int k = 0; k < kCases; ++k) {
    const std::size_t n = 1 + rng() % 12;
    QSeries a = testing::random_series(rng, n), b = testing::random_series(rng, n), c = testing::random_series(rng, n);
    bool ok = agree(a * b, b * a) && agree((a * b) * c, a * (b * c)) && agree(a * (b + c), a * b + a * c) &&
              agree(a + b, b + a) && (a - a).is_zero();
    WPoly p = testing::random_wpoly(rng), q = testing::random_wpoly(rng), r = testing::random_wpoly(rng);
    ok = ok && p * q == q * p && (p * q) * r == p * (q * r) && p * (q + r) == p * q + p * r;
    ring += ok;

    VectorField v;
    for (auto& img : v.images) img = testing::random_wpoly(rng, 3, 2);
    leibniz += agree(theta(a * b), theta(a) * b + a * theta(b)) &&
               apply_derivation(v, p * q) == apply_derivation(v, p) * q + p * apply_derivation(v, q);

    SeriesAssignment as = testing::random_assignment(rng, n);
    const std::size_t s = 1 + rng() % 3;
    hom += agree(evaluate(p * q, as), evaluate(p, as) * evaluate(q, as)) &&
           agree(evaluate(p + q, as), evaluate(p, as) + evaluate(q, as)) &&
           agree(substitute_power(a * b, s), substitute_power(a, s) * substitute_power(b, s));

    const std::uint64_t d = 1 + rng() % 6;
    SeriesAssignment cv = solution_assignment(d, 2 + rng() % 20);
    curve += agree(evaluate(apply_derivation(combined_field(d), p), cv),
                   Rational(static_cast<long>(d)) * theta(evaluate(p, cv)));
  }
  o.require(ring == kCases, "ring axioms: " + std::to_string(ring) + "/" + std::to_string(kCases));
  o.require(leibniz == kCases, "Leibniz: " + std::to_string(leibniz) + "/" + std::to_string(kCases));
  o.require(hom == kCases, "homomorphism: " + std::to_string(hom) + "/" + std::to_string(kCases));
  o.require(curve == kCases, "curve derivation: " + std::to_string(curve) + "/" + std::to_string(kCases));
  o.notes.push_back(std::to_string(kCases) + " cases per family; full suites in the unit tests");
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"1 table reproduction for I_{2,i}, I_{3,i}", tables},
      {"2 Hecke route equals direct route, d in {2,3}", hecke_route},
      {"3 Wronskian degrees 42/40/69 and the general formula for d <= 6", wronskian_degrees},
      {"4 J_{d,i} vanish to precision >= 100 for d in {2,3}", wronskians_vanish},
      {"5 tangency of R_d for d <= 6 at precision 100, second iterates for d in {2,3}", tangency},
      {"6 Ramanujan identities at precision 200", ramanujan},
      {"7 Hecke laws: constant term, eigenforms, composition, T0 = T", hecke_laws},
      {"8 relations for all d <= 10 under 10 minutes", scaling},
      {"9 Phi_2 symmetric, degree 3, monic, annihilates to 100", j_polynomial},
      {"10 property families, 100 cases each", properties},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      check(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(t0);
    const bool pass = o.why.empty();
    failures += !pass;
    std::printf("%s [%s] (%.1fs)\n", pass ? "PASS" : "FAIL", name, secs);
    for (const auto& w : o.why) std::printf("    %s\n", w.c_str());
    for (const auto& n : o.notes) std::printf("    note: %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
