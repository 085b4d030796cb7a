#include "qmf/hecke.hpp"

#include <numeric>
#include <sstream>

#include "qmf/arith.hpp"
#include "qmf/errors.hpp"
#include "qmf/linalg.hpp"

namespace qmf {

std::vector<CosetRep> coset_reps(std::uint64_t d) {
  if (d == 0) throw DomainError("coset_reps: d must be positive");
  std::vector<CosetRep> out;
  for (auto c : divisors(d))
    for (std::uint64_t b = 0; b < c; ++b) out.push_back({d / c, b, c});
  return out;
}

std::vector<CosetRep> cyclic_coset_reps(std::uint64_t d) {
  std::vector<CosetRep> out;
  for (const auto& r : coset_reps(d))
    if (std::gcd(std::gcd(r.a, r.b), r.c) == 1) out.push_back(r);
  return out;
}

namespace {

void check_weight(unsigned weight, const char* who) {
  if (weight == 0 || weight % 2 != 0)
    throw DomainError(std::string(who) + ": weight must be a positive even integer");
}

std::size_t resolve_out_prec(const QSeries& f, std::uint64_t d, std::optional<std::size_t> out_prec, const char* who) {
  if (d == 0) throw DomainError(std::string(who) + ": d must be positive");
  const std::size_t avail = hecke_output_prec(f.prec(), d);
  if (!out_prec) return avail;
  if (*out_prec == 0) throw DomainError(std::string(who) + ": output precision must be positive");
  if (*out_prec > avail) {
    const std::size_t required = d * (*out_prec - 1) + 1;
    throw PrecisionError(std::string(who) + ": output precision " + std::to_string(*out_prec) + " needs input precision " +
                             std::to_string(required) + ", have " + std::to_string(f.prec()),
                         required);
  }
  return *out_prec;
}

}  // namespace

QSeries hecke_T(const QSeries& f, unsigned weight, std::uint64_t d, std::optional<std::size_t> out_prec) {
  check_weight(weight, "hecke_T");
  const std::size_t n_out = resolve_out_prec(f, d, out_prec, "hecke_T");
  const auto divs = divisors(d);
  std::vector<Integer> scale;
  for (auto c : divs) scale.push_back(ipow(Integer(static_cast<unsigned long>(c)), weight - 1));

  std::vector<Rational> out(n_out, Rational(0));
  for (std::size_t n = 0; n < n_out; ++n) {
    for (std::size_t k = 0; k < divs.size(); ++k) {
      const std::uint64_t c = divs[k];
      if (n % c != 0) continue;
      const std::size_t idx = n / c * (d / c);
      if (f[idx] != 0) out[n] += f[idx] * scale[k];
    }
  }
  return QSeries(std::move(out));
}

QSeries hecke_T0(const QSeries& f, unsigned weight, std::uint64_t d, std::optional<std::size_t> out_prec) {
  check_weight(weight, "hecke_T0");
  const std::size_t n_out = resolve_out_prec(f, d, out_prec, "hecke_T0");

  struct Piece {
    std::uint64_t c, cp, g;
    Integer factor;  // mu(g) c'^m (c/g)
  };
  std::vector<Piece> pieces;
  for (auto c : divisors(d)) {
    const std::uint64_t cp = d / c;
    const Integer cpm = ipow(Integer(static_cast<unsigned long>(cp)), weight);
    for (auto g : divisors(std::gcd(c, cp))) {
      const int mu = mobius(g);
      if (mu == 0) continue;
      pieces.push_back({c, cp, g, cpm * static_cast<long>(mu) * static_cast<unsigned long>(c / g)});
    }
  }

  const Rational inv_d(1, static_cast<unsigned long>(d));
  std::vector<Rational> out(n_out, Rational(0));
  for (std::size_t n = 0; n < n_out; ++n) {
    Integer acc = 0;
    for (const auto& p : pieces) {
      // exponent k c'/g = n  =>  k = n g / c'
      if ((n * p.g) % p.cp != 0) continue;
      const std::size_t k = n * p.g / p.cp;
      const std::size_t idx = k * (p.c / p.g);
      if (f[idx] == 0) continue;
      if (is_integer(f[idx])) {
        mpz_addmul(acc.get_mpz_t(), p.factor.get_mpz_t(), f[idx].get_num_mpz_t());
      } else {
        out[n] += f[idx] * p.factor;
      }
    }
    out[n] += Rational(acc);
    out[n] *= inv_d;
  }
  return QSeries(std::move(out));
}

SeriesAssignment eisenstein_assignment(std::size_t prec) {
  return SeriesAssignment({QSeries(prec), QSeries(prec), QSeries(prec), eisenstein_series(2, prec),
                           eisenstein_series(4, prec), eisenstein_series(6, prec)});
}

std::vector<ExponentVector> quasimodular_basis(unsigned weight, unsigned order) {
  if (weight % 2 != 0) throw DomainError("quasimodular_basis: weight must be even");
  std::vector<ExponentVector> out;
  for (const auto& e : monomials_of_degree(weight / 2, {Var::s1, Var::s2, Var::s3}))
    if (e[Var::s1] <= order) out.push_back(e);
  return out;
}

QuasiModularForm reconstruct_quasimodular(const QSeries& f, unsigned weight, unsigned order, std::size_t guard) {
  const auto basis = quasimodular_basis(weight, order);
  const std::size_t required = basis.size() + guard;
  if (f.prec() < required)
    throw PrecisionError("reconstruct_quasimodular: need precision " + std::to_string(required) + ", have " +
                             std::to_string(f.prec()),
                         required);

  QuasiModularForm out;
  out.weight = weight;
  out.order = order;
  out.series = f;
  if (basis.empty()) {
    if (!f.is_zero()) throw NotQuasiModularError("reconstruct_quasimodular: no forms of weight " + std::to_string(weight));
    return out;
  }

  Evaluator ev(eisenstein_assignment(f.prec()));
  std::vector<const QSeries*> cols;
  for (const auto& e : basis) cols.push_back(&ev.monomial(e));
  RationalMatrix a(f.prec(), std::vector<Rational>(basis.size()));
  std::vector<Rational> b(f.prec());
  for (std::size_t n = 0; n < f.prec(); ++n) {
    for (std::size_t j = 0; j < basis.size(); ++j) a[n][j] = (*cols[j])[n];
    b[n] = f[n];
  }
  auto sol = solve(a, b);
  switch (sol.status) {
    case LinearSolution::Status::inconsistent:
      throw NotQuasiModularError("reconstruct_quasimodular: series is not a quasi-modular form of weight " +
                                 std::to_string(weight) + " and order <= " + std::to_string(order));
    case LinearSolution::Status::underdetermined:
      throw PrecisionError("reconstruct_quasimodular: rank deficient at precision " + std::to_string(f.prec()),
                           2 * f.prec());
    case LinearSolution::Status::unique:
      break;
  }
  for (std::size_t j = 0; j < basis.size(); ++j) out.poly.add_term(sol.x[j], basis[j]);
  return out;
}

std::string format_eisenstein(const WPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Rational mag = abs(c);
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    std::string mono;
    const std::pair<Var, const char*> names[] = {{Var::s1, "E2"}, {Var::s2, "E4"}, {Var::s3, "E6"}};
    for (auto [v, name] : names) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += name;
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    if (mono.empty())
      os << mag.get_str();
    else if (mag == 1)
      os << mono;
    else
      os << mag.get_str() << '*' << mono;
  }
  return os.str();
}

std::vector<RefinedCandidate> verify_refined_decomposition(const QSeries& f, unsigned weight, std::uint64_t d) {
  const QSeries lhs = hecke_T(f, weight, d);
  const std::size_t prec = lhs.prec();
  const long m = static_cast<long>(weight);
  const std::pair<long, const char*> candidates[] = {{m - 2, "g^(m-2)"}, {-m - 2, "g^(-m-2)"}};

  std::vector<RefinedCandidate> out;
  for (auto [exponent, label] : candidates) {
    QSeries rhs(prec);
    for (std::uint64_t g = 1; g * g <= d; ++g) {
      if (d % (g * g) != 0) continue;
      QSeries piece = hecke_T0(f, weight, d / (g * g), prec);
      rhs += rpow(Rational(static_cast<unsigned long>(g)), exponent) * piece;
    }
    out.push_back({exponent, label, prec, compare(lhs, rhs).first_mismatch});
  }
  return out;
}

}  // namespace qmf
