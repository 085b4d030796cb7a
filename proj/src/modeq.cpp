#include "qmf/modeq.hpp"

#include <algorithm>
#include <sstream>

#include "qmf/arith.hpp"
#include "qmf/errors.hpp"
#include "qmf/linalg.hpp"

namespace qmf {

SeriesAssignment solution_assignment(std::uint64_t d, std::size_t prec) {
  if (d == 0) throw DomainError("solution_assignment: d must be positive");
  if (prec < 2) throw DomainError("solution_assignment: precision must be at least 2");
  const std::size_t base_prec = (prec - 1 + d - 1) / d + 1;
  std::array<QSeries, kNumVars> s{QSeries(1), QSeries(1), QSeries(1), QSeries(1), QSeries(1), QSeries(1)};
  for (unsigned j = 1; j <= 3; ++j) {
    s[index(s_var(j))] = eisenstein_series(2 * j, prec);
    QSeries t = substitute_power(eisenstein_series(2 * j, base_prec), d).truncate(prec);
    s[index(t_var(j))] = Rational(ipow(Integer(static_cast<unsigned long>(d)), 2 * j)) * t;
  }
  return SeriesAssignment(std::move(s));
}

WPoly ModularRelation::polynomial() const {
  WPoly p;
  for (std::size_t j = 0; j < monomials.size(); ++j) p.add_term(coeffs[j], monomials[j]);
  return p;
}

bool ModularRelation::is_integral() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return is_integer(c); });
}

WPoly ModularRelation::t_coefficient(unsigned k) const {
  const Var t = t_var(i);
  WPoly p;
  for (std::size_t j = 0; j < monomials.size(); ++j) {
    if (monomials[j][t] != k) continue;
    ExponentVector e = monomials[j];
    e[t] = 0;
    p.add_term(coeffs[j], e);
  }
  return p;
}

QSeries evaluate_on_curve(const ModularRelation& r, std::size_t prec) {
  // Horner in t_i over the s-coefficients.
  const SeriesAssignment a = solution_assignment(r.d, prec);
  Evaluator ev(a);
  const QSeries& t = a[t_var(r.i)];
  QSeries acc(prec);
  for (std::uint64_t k = r.psi + 1; k-- > 0;) {
    acc = acc * t + ev(r.t_coefficient(static_cast<unsigned>(k)));
  }
  return acc;
}

void check_relation_invariants(const ModularRelation& r) {
  const Var t = t_var(r.i);
  const WPoly p = r.polynomial();
  ExponentVector lead = unit_exponent(t, static_cast<unsigned>(r.psi));
  if (p.coeff(lead) != 1) throw InternalError("relation is not monic in " + std::string(var_name(t)));
  const DegreeInfo deg = weighted_degree(p);
  if (!deg.homogeneous || deg.degree != r.i * r.psi)
    throw InternalError("relation is not homogeneous of degree " + std::to_string(r.i * r.psi));
  for (const auto& [e, c] : p.terms()) {
    for (auto v : {Var::t1, Var::t2, Var::t3})
      if (v != t && e[v] != 0) throw InternalError("relation involves a foreign t-variable");
    if (r.i != 1 && e[Var::s1] != 0) throw InternalError("relation for i = 2, 3 depends on s1");
  }
}

namespace {

void check_args(std::uint64_t d, unsigned i, const char* who) {
  if (d == 0) throw DomainError(std::string(who) + ": d must be positive");
  if (i < 1 || i > 3) throw DomainError(std::string(who) + ": i must be 1, 2 or 3");
}

void verify_on_curve(ModularRelation& rel, std::size_t verify_prec) {
  QSeries residual = evaluate_on_curve(rel, verify_prec);
  if (auto v = residual.valuation())
    throw InternalError("I_{" + std::to_string(rel.d) + "," + std::to_string(rel.i) +
                        "} fails on the solution curve at q^" + std::to_string(*v));
  rel.verified_prec = verify_prec;
}

}  // namespace

ModularRelation compute_relation(std::uint64_t d, unsigned i, std::size_t prec, const RelationOptions& opts) {
  check_args(d, i, "compute_relation");
  ModularRelation rel;
  rel.d = d;
  rel.i = i;
  rel.psi = dedekind_psi(d);
  rel.monomials = enumerate_monomials(d, i);
  const std::size_t m = rel.monomials.size();

  std::size_t solve_prec = std::max<std::size_t>({prec, m + opts.guard, 2});
  const std::size_t cap = solve_prec * opts.max_growth;
  std::vector<Rational> kernel;
  while (true) {
    Evaluator ev(solution_assignment(d, solve_prec));
    std::vector<const QSeries*> cols;
    for (const auto& e : rel.monomials) cols.push_back(&ev.monomial(e));
    RationalMatrix a(solve_prec, std::vector<Rational>(m));
    for (std::size_t n = 0; n < solve_prec; ++n)
      for (std::size_t j = 0; j < m; ++j) a[n][j] = cols[j]->coeffs()[n];
    const bool modular = opts.solver == RelationOptions::Solver::modular ||
                         (opts.solver == RelationOptions::Solver::automatic && m > opts.modular_threshold);
    std::string dimension;
    if (modular) {
      auto k = modular_kernel(a, m);
      if (k.status == ModularKernel::Status::trivial)
        throw InternalError("compute_relation: no relation among the monomials");
      if (k.status == ModularKernel::Status::line) {
        kernel = std::move(k.x);
        break;
      }
      dimension = "more than 1";
    } else {
      auto basis = nullspace(a, m);
      if (basis.empty()) throw InternalError("compute_relation: no relation among the monomials");
      if (basis.size() == 1) {
        kernel = std::move(basis.front());
        break;
      }
      dimension = std::to_string(basis.size());
    }
    if (solve_prec * 2 > cap)
      throw PrecisionError("compute_relation: kernel still has dimension " + dimension + " at precision " +
                               std::to_string(solve_prec),
                           solve_prec * 2);
    solve_prec *= 2;
  }
  if (kernel[0] == 0) throw InternalError("compute_relation: relation has no leading t-power");
  const Rational lead = kernel[0];
  for (auto& c : kernel) c /= lead;
  rel.coeffs = std::move(kernel);

  check_relation_invariants(rel);
  verify_on_curve(rel, 2 * solve_prec);
  return rel;
}

std::vector<QSeries> hecke_power_sums(std::uint64_t d, unsigned i, std::size_t prec) {
  check_args(d, i, "hecke_power_sums");
  const std::uint64_t psi = dedekind_psi(d);
  const std::size_t in_prec = d * (prec - 1) + 1;
  const QSeries f = eisenstein_series(2 * i, in_prec);
  const Rational dd(static_cast<unsigned long>(d));
  std::vector<QSeries> out;
  QSeries power = QSeries::constant(1, in_prec);
  for (std::uint64_t k = 1; k <= psi; ++k) {
    power = power * f;
    out.push_back(dd * hecke_T0(power, static_cast<unsigned>(2 * i * k), d, prec));
  }
  return out;
}

ModularRelation compute_relation_hecke(std::uint64_t d, unsigned i, std::size_t prec, const RelationOptions& opts) {
  check_args(d, i, "compute_relation_hecke");
  ModularRelation rel;
  rel.d = d;
  rel.i = i;
  rel.psi = dedekind_psi(d);
  rel.monomials = enumerate_monomials(d, i);
  const std::size_t m = rel.monomials.size();
  const unsigned psi = static_cast<unsigned>(rel.psi);
  constexpr std::size_t recon_guard = 10;

  std::size_t widest = 0;
  for (unsigned k = 1; k <= psi; ++k) widest = std::max(widest, quasimodular_basis(2 * i * k, i == 1 ? k : 0).size());
  std::size_t n = widest + recon_guard;
  const std::size_t cap = n * opts.max_growth;

  std::vector<WPoly> elementary;  // e_k as polynomials in s
  while (true) {
    try {
      auto p = hecke_power_sums(d, i, n);
      std::vector<QSeries> e{QSeries::constant(1, n)};
      elementary.assign(1, WPoly(1));
      for (unsigned k = 1; k <= psi; ++k) {
        QSeries acc(n);
        for (unsigned j = 1; j <= k; ++j) {
          QSeries term = e[k - j] * p[j - 1];
          if (j % 2 == 1)
            acc += term;
          else
            acc -= term;
        }
        e.push_back(Rational(1, k) * acc);
        elementary.push_back(reconstruct_quasimodular(e.back(), 2 * i * k, i == 1 ? k : 0, recon_guard).poly);
      }
      break;
    } catch (const PrecisionError&) {
      if (n * 2 > cap) throw;
      n *= 2;
    } catch (const NotQuasiModularError& err) {
      throw InternalError(std::string("compute_relation_hecke: ") + err.what());
    }
  }

  const Var t = t_var(i);
  WPoly poly;
  for (unsigned k = 0; k <= psi; ++k) {
    const Rational sign = k % 2 == 0 ? 1 : -1;
    for (const auto& [e, c] : elementary[k].terms()) {
      ExponentVector f = e;
      f[t] = psi - k;
      poly.add_term(sign * c, f);
    }
  }
  rel.coeffs.assign(m, Rational(0));
  std::size_t matched = 0;
  for (std::size_t j = 0; j < m; ++j) {
    rel.coeffs[j] = poly.coeff(rel.monomials[j]);
    if (rel.coeffs[j] != 0) ++matched;
  }
  if (matched != poly.size()) throw InternalError("compute_relation_hecke: product has terms outside the monomial set");

  check_relation_invariants(rel);
  verify_on_curve(rel, 2 * std::max<std::size_t>({prec, m + opts.guard, 2}));
  return rel;
}

unsigned wronskian_degree(std::size_t m, unsigned i, std::uint64_t psi) {
  return static_cast<unsigned>(m * i * psi + m * (m - 1) / 2);
}

std::size_t default_wronskian_prec(std::uint64_t d, unsigned i, std::size_t guard) {
  const std::size_t m = enumerate_monomials(d, i).size();
  return m * i * dedekind_psi(d) + m * m + guard;
}

WronskianResult wronskian_series(std::uint64_t d, unsigned i, std::size_t prec) {
  check_args(d, i, "wronskian_series");
  const auto monos = enumerate_monomials(d, i);
  WronskianResult out;
  out.d = d;
  out.i = i;
  out.m = monos.size();
  out.degree = wronskian_degree(out.m, i, dedekind_psi(d));
  out.prec = prec;

  const VectorField field = combined_field(d);
  const Rational dd(static_cast<unsigned long>(d));
  Evaluator ev(solution_assignment(d, prec));
  std::vector<std::vector<WPoly>> symbolic(out.m, std::vector<WPoly>(out.m));
  SeriesMatrix mat(out.m, std::vector<QSeries>(out.m, QSeries(prec)));
  for (std::size_t j = 0; j < out.m; ++j) {
    WPoly p = WPoly::term(1, monos[j]);
    QSeries via_theta = ev.monomial(monos[j]);
    for (std::size_t r = 0; r < out.m; ++r) {
      QSeries entry = ev(p);
      if (auto bad = compare(entry, via_theta).first_mismatch)
        throw InternalError("wronskian_series: entry (" + std::to_string(r) + "," + std::to_string(j) +
                            ") disagrees with (d theta)^r at q^" + std::to_string(*bad));
      mat[r][j] = std::move(entry);
      symbolic[r][j] = p;
      if (r + 1 < out.m) {
        p = apply_derivation(field, p);
        via_theta = dd * theta(via_theta);
      }
    }
  }
  out.determinant = qseries_det(mat);
  out.first_nonzero = out.determinant.valuation();

  if (out.m <= 4) {
    WPoly det = cofactor_det(symbolic, WPoly(1));
    DegreeInfo info = weighted_degree(det);
    if (!det.is_zero() && (!info.homogeneous || info.degree != out.degree))
      throw InternalError("wronskian_series: symbolic determinant has degree " + std::to_string(info.degree) +
                          ", expected " + std::to_string(out.degree));
    out.symbolic_degree = info;
  }
  return out;
}

bool TangencyReport::passed() const {
  return std::all_of(residuals.begin(), residuals.end(), [](const TangencyResidual& r) { return r.vanishes(); });
}

TangencyReport tangency_report(std::uint64_t d, std::size_t prec, const std::vector<ModularRelation>& relations,
                               bool second_iterate) {
  if (d == 0) throw DomainError("tangency: d must be positive");
  TangencyReport report;
  report.d = d;
  report.prec = prec;
  const VectorField field = combined_field(d);
  const Rational dd(static_cast<unsigned long>(d));
  Evaluator ev(solution_assignment(d, prec));
  for (const auto& rel : relations) {
    if (rel.d != d) throw DomainError("tangency: relation is for a different d");
    TangencyResidual res;
    res.i = rel.i;
    const WPoly p = rel.polynomial();
    const WPoly rp = apply_derivation(field, p);
    const QSeries residual = ev(rp);
    res.first_nonzero = residual.valuation();
    res.curve_mismatch = compare(residual, dd * theta(ev(p))).first_mismatch;
    if (second_iterate) {
      res.second_checked = true;
      res.second_first_nonzero = ev(apply_derivation(field, rp)).valuation();
    }
    report.residuals.push_back(res);
  }
  return report;
}

TangencyReport verify_tangency(std::uint64_t d, std::size_t prec, const std::vector<ModularRelation>& relations,
                               bool second_iterate) {
  TangencyReport report = tangency_report(d, prec, relations, second_iterate);
  for (const auto& r : report.residuals) {
    auto where = r.first_nonzero ? r.first_nonzero : r.second_first_nonzero ? r.second_first_nonzero : r.curve_mismatch;
    if (where)
      throw VerificationFailure("R_" + std::to_string(d) + " is not tangent: residual for i = " + std::to_string(r.i) +
                                " nonzero at q^" + std::to_string(*where));
  }
  return report;
}

TangencyReport verify_tangency(std::uint64_t d, std::size_t prec, bool second_iterate) {
  std::vector<ModularRelation> rels;
  for (unsigned i = 1; i <= 3; ++i) rels.push_back(compute_relation(d, i, 0));
  return verify_tangency(d, prec, rels, second_iterate);
}

std::string to_string(const TangencyReport& r) {
  std::ostringstream os;
  os << "tangency of R_" << r.d << " at precision " << r.prec << '\n';
  for (const auto& res : r.residuals) {
    os << "  i=" << res.i << ": R_d(I) ";
    if (res.first_nonzero)
      os << "nonzero at q^" << *res.first_nonzero;
    else
      os << "vanishes";
    os << "; curve identity " << (res.curve_mismatch ? "fails at q^" + std::to_string(*res.curve_mismatch) : "holds");
    if (res.second_checked)
      os << "; R_d^2(I) "
         << (res.second_first_nonzero ? "nonzero at q^" + std::to_string(*res.second_first_nonzero) : "vanishes");
    os << '\n';
  }
  os << (r.passed() ? "all residuals vanish to " + std::to_string(r.prec) : "FAILED") << '\n';
  return os.str();
}

Rational BivariatePoly::coeff(unsigned a, unsigned b) const {
  auto it = terms.find({a, b});
  return it == terms.end() ? Rational(0) : it->second;
}

unsigned BivariatePoly::degree_j1() const {
  unsigned deg = 0;
  for (const auto& [ab, c] : terms) deg = std::max(deg, ab.first);
  return deg;
}

unsigned BivariatePoly::degree_j2() const {
  unsigned deg = 0;
  for (const auto& [ab, c] : terms) deg = std::max(deg, ab.second);
  return deg;
}

bool BivariatePoly::is_symmetric() const {
  for (const auto& [ab, c] : terms)
    if (coeff(ab.second, ab.first) != c) return false;
  return true;
}

std::string to_string(const BivariatePoly& p) {
  std::vector<std::pair<std::pair<unsigned, unsigned>, Rational>> terms(p.terms.begin(), p.terms.end());
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    unsigned dx = x.first.first + x.first.second, dy = y.first.first + y.first.second;
    if (dx != dy) return dx > dy;
    return x.first.first > y.first.first;
  });
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [ab, c] : terms) {
    Rational mag = abs(c);
    s += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    first = false;
    std::string mono;
    auto var = [&](const char* name, unsigned e) {
      if (e == 0) return;
      if (!mono.empty()) mono += ' ';
      mono += name;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    var("j1", ab.first);
    var("j2", ab.second);
    if (mono.empty())
      s += mag.get_str();
    else if (mag == 1)
      s += mono;
    else
      s += mag.get_str() + " " + mono;
  }
  return s;
}

namespace {

struct JSeriesPowers {
  std::vector<QSeries> num1, den1, num2, den2;  // E4(q^d)^{3a}, Delta(q^d)^k, E4^{3b}, Delta^k
};

JSeriesPowers j_powers(std::uint64_t d, std::uint64_t psi, std::size_t prec) {
  const QSeries e4 = eisenstein_series(4, prec);
  const QSeries e6 = eisenstein_series(6, prec);
  const QSeries cube = e4 * e4 * e4;
  const QSeries delta = Rational(1, 1728) * (cube - e6 * e6);
  const QSeries cube_d = substitute_power(cube, d).truncate(prec);
  const QSeries delta_d = substitute_power(delta, d).truncate(prec);
  JSeriesPowers p;
  auto fill = [&](std::vector<QSeries>& out, const QSeries& base) {
    out.push_back(QSeries::constant(1, prec));
    for (std::uint64_t k = 1; k <= psi; ++k) out.push_back(out.back() * base);
  };
  fill(p.num1, cube_d);
  fill(p.den1, delta_d);
  fill(p.num2, cube);
  fill(p.den2, delta);
  return p;
}

}  // namespace

QSeries cleared_j_relation_series(const BivariatePoly& p, std::uint64_t d, std::uint64_t psi, std::size_t prec) {
  const auto pw = j_powers(d, psi, prec);
  QSeries acc(prec);
  for (const auto& [ab, c] : p.terms) {
    auto [a, b] = ab;
    if (a > psi || b > psi) throw DomainError("cleared_j_relation_series: bidegree exceeds psi");
    acc += c * (pw.num1[a] * pw.den1[psi - a] * pw.num2[b] * pw.den2[psi - b]);
  }
  return acc;
}

ModularPolynomial classical_modular_polynomial(std::uint64_t d, std::size_t prec, const RelationOptions& opts) {
  if (d == 0) throw DomainError("classical_modular_polynomial: d must be positive");
  ModularPolynomial out;
  out.d = d;
  out.psi = dedekind_psi(d);
  const unsigned psi = static_cast<unsigned>(out.psi);
  const std::size_t unknowns = static_cast<std::size_t>(psi + 1) * (psi + 1);

  // Columns (a, b) with a, b descending; (psi, 0) is the pinned j1^psi term.
  std::vector<std::pair<unsigned, unsigned>> cols;
  for (unsigned a = psi + 1; a-- > 0;)
    for (unsigned b = psi + 1; b-- > 0;) cols.emplace_back(a, b);
  const std::size_t pinned = psi;

  std::size_t solve_prec = std::max(prec, unknowns + opts.guard);
  const std::size_t cap = solve_prec * opts.max_growth;
  std::vector<Rational> kernel;
  while (true) {
    const auto pw = j_powers(d, psi, solve_prec);
    std::vector<QSeries> basis;
    for (auto [a, b] : cols) basis.push_back(pw.num1[a] * pw.den1[psi - a] * pw.num2[b] * pw.den2[psi - b]);
    RationalMatrix m(solve_prec, std::vector<Rational>(cols.size()));
    for (std::size_t n = 0; n < solve_prec; ++n)
      for (std::size_t j = 0; j < cols.size(); ++j) m[n][j] = basis[j][n];
    auto ns = nullspace(m, cols.size());
    if (ns.empty()) throw InternalError("classical_modular_polynomial: no relation found");
    if (ns.size() == 1) {
      kernel = std::move(ns.front());
      break;
    }
    if (solve_prec * 2 > cap)
      throw PrecisionError("classical_modular_polynomial: kernel dimension " + std::to_string(ns.size()), solve_prec * 2);
    solve_prec *= 2;
  }
  if (kernel[pinned] == 0) throw InternalError("classical_modular_polynomial: relation is not monic in j1");
  const Rational lead = kernel[pinned];
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (kernel[j] != 0) out.poly.terms[cols[j]] = kernel[j] / lead;

  if (!out.poly.is_symmetric()) throw InternalError("classical_modular_polynomial: relation is not symmetric");
  const std::size_t verify_prec = 2 * solve_prec;
  if (auto v = cleared_j_relation_series(out.poly, d, psi, verify_prec).valuation())
    throw InternalError("classical_modular_polynomial: relation fails at q^" + std::to_string(*v));
  out.verified_prec = verify_prec;
  return out;
}

}  // namespace qmf
