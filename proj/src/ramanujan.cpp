#include "qmf/ramanujan.hpp"

#include <algorithm>
#include <sstream>

#include "qmf/errors.hpp"

namespace qmf {

VectorField ramanujan_field(Triple triple) {
  const bool on_s = triple == Triple::s;
  const Var x1 = on_s ? Var::s1 : Var::t1;
  const Var x2 = on_s ? Var::s2 : Var::t2;
  const Var x3 = on_s ? Var::s3 : Var::t3;
  const WPoly p1 = WPoly::variable(x1), p2 = WPoly::variable(x2), p3 = WPoly::variable(x3);

  VectorField f;
  f.label = on_s ? "R_s" : "R_t";
  f.images[index(x1)] = Rational(1, 12) * (p1 * p1 - p2);
  f.images[index(x2)] = Rational(1, 3) * (p1 * p2 - p3);
  f.images[index(x3)] = Rational(1, 2) * (p1 * p3 - p2 * p2);
  return f;
}

VectorField linear_combination(const VectorField& a, const Rational& c, const VectorField& b) {
  VectorField out;
  for (auto v : kAllVars) out.images[index(v)] = a(v) + c * b(v);
  out.label = a.label + " + " + c.get_str() + "*" + b.label;
  return out;
}

VectorField combined_field(std::uint64_t d) {
  if (d == 0) throw DomainError("combined_field: d must be positive");
  VectorField f = linear_combination(ramanujan_field(Triple::t), Rational(static_cast<unsigned long>(d)),
                                     ramanujan_field(Triple::s));
  f.label = "R_" + std::to_string(d);
  return f;
}

bool VerificationReport::passed() const {
  return std::all_of(residuals.begin(), residuals.end(), [](const ResidualDiagnostic& r) { return r.vanishes(); });
}

VerificationReport verify_ramanujan(std::size_t prec) {
  if (prec == 0) throw DomainError("verify_ramanujan: precision must be positive");
  const QSeries e2 = eisenstein_series(2, prec);
  const QSeries e4 = eisenstein_series(4, prec);
  const QSeries e6 = eisenstein_series(6, prec);

  VerificationReport r;
  r.prec = prec;
  auto add = [&](std::string name, const QSeries& residual) {
    r.residuals.push_back({std::move(name), residual.valuation()});
  };
  add("theta E2 - (E2^2 - E4)/12", theta(e2) - Rational(1, 12) * (e2 * e2 - e4));
  add("theta E4 - (E2 E4 - E6)/3", theta(e4) - Rational(1, 3) * (e2 * e4 - e6));
  add("theta E6 - (E2 E6 - E4^2)/2", theta(e6) - Rational(1, 2) * (e2 * e6 - e4 * e4));
  return r;
}

std::string to_string(const VerificationReport& r) {
  std::ostringstream os;
  for (const auto& res : r.residuals) {
    os << res.name << ": ";
    if (res.vanishes())
      os << "vanishes to " << r.prec << '\n';
    else
      os << "first nonzero coefficient at q^" << *res.first_nonzero << '\n';
  }
  return os.str();
}

}  // namespace qmf
