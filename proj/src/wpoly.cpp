#include "qmf/wpoly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include "qmf/arith.hpp"
#include "qmf/errors.hpp"

namespace qmf {

std::string_view var_name(Var v) {
  static constexpr std::array<std::string_view, kNumVars> names{"t1", "t2", "t3", "s1", "s2", "s3"};
  return names[index(v)];
}

Var t_var(unsigned i) {
  if (i < 1 || i > 3) throw DomainError("variable index must be 1, 2 or 3");
  return static_cast<Var>(i - 1);
}

Var s_var(unsigned i) {
  if (i < 1 || i > 3) throw DomainError("variable index must be 1, 2 or 3");
  return static_cast<Var>(i + 2);
}

unsigned ExponentVector::degree() const {
  unsigned d = 0;
  for (auto v : kAllVars) d += ring_weight(v) * (*this)[v];
  return d;
}

bool ExponentVector::is_constant() const {
  return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
}

ExponentVector ExponentVector::operator+(const ExponentVector& o) const {
  ExponentVector r;
  for (std::size_t k = 0; k < kNumVars; ++k) r.e[k] = e[k] + o.e[k];
  return r;
}

ExponentVector unit_exponent(Var v, unsigned power) {
  ExponentVector r;
  r[v] = power;
  return r;
}

bool MonomialOrder::operator()(const ExponentVector& a, const ExponentVector& b) const {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a.e > b.e;
}

std::size_t ExponentHash::operator()(const ExponentVector& v) const noexcept {
  std::size_t h = 0;
  for (unsigned x : v.e) h = h * 1000003u + x;
  return h;
}

WPoly::WPoly(const Rational& c) {
  if (c != 0) terms_.emplace(ExponentVector{}, c);
}

WPoly WPoly::variable(Var v) { return term(1, unit_exponent(v)); }

WPoly WPoly::term(const Rational& c, const ExponentVector& e) {
  WPoly p;
  p.add_term(c, e);
  return p;
}

Rational WPoly::coeff(const ExponentVector& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

WPoly& WPoly::add_term(const Rational& c, const ExponentVector& e) {
  if (c == 0) return *this;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

WPoly WPoly::operator-() const {
  WPoly r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

WPoly& WPoly::operator+=(const WPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(c, e);
  return *this;
}

WPoly& WPoly::operator-=(const WPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(-c, e);
  return *this;
}

WPoly& WPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

namespace {

WPoly from_accumulator(const std::unordered_map<ExponentVector, Rational, ExponentHash>& acc) {
  WPoly p;
  for (const auto& [e, c] : acc)
    if (c != 0) p.add_term(c, e);
  return p;
}

}  // namespace

WPoly operator*(const WPoly& a, const WPoly& b) {
  std::unordered_map<ExponentVector, Rational, ExponentHash> acc;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) acc[ea + eb] += ca * cb;
  return from_accumulator(acc);
}

WPoly WPoly::partial(Var v) const {
  WPoly r;
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    ExponentVector f = e;
    f[v] -= 1;
    r.add_term(c * e[v], f);
  }
  return r;
}

WPoly pow(const WPoly& p, unsigned e) {
  WPoly result(1);
  WPoly base = p;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

DegreeInfo weighted_degree(const WPoly& p) {
  DegreeInfo info;
  if (p.is_zero()) return info;
  // Term order lists the highest degree first.
  info.degree = p.terms().begin()->first.degree();
  info.homogeneous = p.terms().rbegin()->first.degree() == info.degree;
  return info;
}

std::vector<ExponentVector> enumerate_monomials(std::uint64_t d, unsigned i) {
  if (i < 1 || i > 3) throw DomainError("enumerate_monomials: i must be 1, 2 or 3");
  const unsigned psi = static_cast<unsigned>(dedekind_psi(d));
  const Var t = t_var(i);
  std::vector<ExponentVector> out;
  for (unsigned a0 = 0; a0 <= psi; ++a0) {
    const unsigned rest = i * (psi - a0);
    for (unsigned a3 = 0; 3 * a3 <= rest; ++a3) {
      for (unsigned a2 = 0; 3 * a3 + 2 * a2 <= rest; ++a2) {
        const unsigned a1 = rest - 3 * a3 - 2 * a2;
        if (i != 1 && a1 != 0) continue;
        ExponentVector e;
        e[t] = a0;
        e[Var::s1] = a1;
        e[Var::s2] = a2;
        e[Var::s3] = a3;
        out.push_back(e);
      }
    }
  }
  std::sort(out.begin(), out.end(), MonomialOrder{});
  return out;
}

std::vector<ExponentVector> monomials_of_degree(unsigned degree, const std::vector<Var>& vars) {
  std::vector<ExponentVector> out;
  ExponentVector cur;
  auto rec = [&](auto&& self, std::size_t k, unsigned remaining) -> void {
    if (k == vars.size()) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    const unsigned w = ring_weight(vars[k]);
    for (unsigned a = 0; a * w <= remaining; ++a) {
      cur[vars[k]] = a;
      self(self, k + 1, remaining - a * w);
    }
    cur[vars[k]] = 0;
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), MonomialOrder{});
  return out;
}

std::string to_string(const ExponentVector& e) {
  std::string s;
  for (auto v : kAllVars) {
    if (e[v] == 0) continue;
    if (!s.empty()) s += ' ';
    s += var_name(v);
    if (e[v] > 1) s += '^' + std::to_string(e[v]);
  }
  return s.empty() ? "1" : s;
}

std::string to_string(const WPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Rational mag = abs(c);
    if (first)
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    first = false;
    if (e.is_constant()) {
      s += mag.get_str();
    } else {
      if (mag != 1) s += mag.get_str() + ' ';
      s += to_string(e);
    }
  }
  return s;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  WPoly parse() {
    WPoly p;
    skip_ws();
    if (pos_ == s_.size()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip_ws();
      if (pos_ == s_.size()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      parse_term(p, sign);
    }
    return p;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '*')) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw DomainError("polynomial text: " + why + " at offset " + std::to_string(pos_) + " in '" +
                      std::string(s_) + "'");
  }
  std::string digits() {
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }

  void parse_term(WPoly& p, int sign) {
    skip_ws();
    Rational coeff = 1;
    bool have_any = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string num = digits();
      if (peek() == '/') {
        ++pos_;
        std::string den = digits();
        if (den.empty()) fail("missing denominator");
        coeff = parse_rational(num + "/" + den);
      } else {
        coeff = parse_rational(num);
      }
      have_any = true;
    }
    ExponentVector e;
    while (true) {
      skip_ws();
      char c = peek();
      if (c != 't' && c != 's') break;
      ++pos_;
      std::string idx = digits();
      if (idx.size() != 1 || idx[0] < '1' || idx[0] > '3') fail("bad variable");
      Var v = c == 't' ? t_var(static_cast<unsigned>(idx[0] - '0')) : s_var(static_cast<unsigned>(idx[0] - '0'));
      unsigned power = 1;
      if (peek() == '^') {
        ++pos_;
        std::string ex = digits();
        if (ex.empty()) fail("missing exponent");
        power = static_cast<unsigned>(std::stoul(ex));
      }
      e[v] += power;
      have_any = true;
    }
    if (!have_any) fail("expected a term");
    p.add_term(coeff * sign, e);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

WPoly parse_wpoly(std::string_view text) { return Parser(text).parse(); }

WPoly apply_derivation(const VectorField& field, const WPoly& p) {
  std::unordered_map<ExponentVector, Rational, ExponentHash> acc;
  for (const auto& [e, c] : p.terms()) {
    for (auto v : kAllVars) {
      if (e[v] == 0) continue;
      const WPoly& image = field(v);
      if (image.is_zero()) continue;
      ExponentVector base = e;
      base[v] -= 1;
      Rational scale = c * e[v];
      for (const auto& [f, g] : image.terms()) acc[base + f] += scale * g;
    }
  }
  return from_accumulator(acc);
}

WPoly apply_derivation(const VectorField& field, const WPoly& p, unsigned times) {
  WPoly r = p;
  for (unsigned k = 0; k < times; ++k) r = apply_derivation(field, r);
  return r;
}

SeriesAssignment::SeriesAssignment(std::array<QSeries, kNumVars> series) : series_(std::move(series)) {
  for (const auto& s : series_)
    if (s.prec() != series_[0].prec()) throw DomainError("SeriesAssignment: all series must share one precision");
}

Evaluator::Evaluator(SeriesAssignment assignment) : assignment_(std::move(assignment)) {}

const QSeries& Evaluator::monomial(const ExponentVector& e) {
  auto it = cache_.find(e);
  if (it != cache_.end()) return it->second;
  if (e.is_constant()) return cache_.emplace(e, QSeries::constant(1, assignment_.prec())).first->second;
  // Peel one factor of the last variable present.
  Var last = Var::t1;
  for (auto v : kAllVars)
    if (e[v] > 0) last = v;
  ExponentVector rest = e;
  rest[last] -= 1;
  QSeries value = rest.is_constant() ? assignment_[last] : monomial(rest) * assignment_[last];
  return cache_.emplace(e, std::move(value)).first->second;
}

QSeries Evaluator::operator()(const WPoly& p) {
  const std::size_t prec = assignment_.prec();
  std::vector<Rational> acc(prec, Rational(0));
  for (const auto& [e, c] : p.terms()) {
    const auto& m = monomial(e).coeffs();
    for (std::size_t n = 0; n < prec; ++n)
      if (m[n] != 0) acc[n] += c * m[n];
  }
  return QSeries(std::move(acc));
}

QSeries evaluate(const WPoly& p, const SeriesAssignment& a) {
  Evaluator ev(a);
  return ev(p);
}

namespace {

// Divides by q^v, dropping the top v coefficients' worth of precision.
QSeries shift_down(const QSeries& f, std::size_t v) {
  return QSeries(std::vector<Rational>(f.coeffs().begin() + static_cast<std::ptrdiff_t>(v), f.coeffs().end()));
}

// Zero-extends f to precision n (a lift from Q[q]/q^k to Q[q]/q^n).
QSeries lift(const QSeries& f, std::size_t n) {
  std::vector<Rational> c(f.coeffs());
  c.resize(n, Rational(0));
  return QSeries(std::move(c));
}

}  // namespace

QSeries qseries_det(const SeriesMatrix& input) {
  const std::size_t n = input.size();
  std::size_t prec = std::numeric_limits<std::size_t>::max();
  for (const auto& row : input) {
    if (row.size() != n) throw DomainError("qseries_det: matrix must be square");
    for (const auto& x : row) prec = std::min(prec, x.prec());
  }
  if (n == 0) return QSeries::constant(1, 1);

  SeriesMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (const auto& x : input[r]) m[r].push_back(x.truncate(prec));
  if (n <= 4) return cofactor_det(m, QSeries::constant(1, prec));

  // Elimination in the chain ring Q[q]/(q^prec): pivot on an entry of least
  // valuation, which divides every other remaining entry. Row operations are
  // unimodular, so the determinant is the signed product of the pivots.
  bool negate = false;
  QSeries det = QSeries::constant(1, prec);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best_r = n, best_c = n, best_v = prec;
    for (std::size_t r = k; r < n && best_v > 0; ++r)
      for (std::size_t c = k; c < n; ++c) {
        auto v = m[r][c].valuation();
        if (v && *v < best_v) {
          best_v = *v;
          best_r = r;
          best_c = c;
          if (best_v == 0) break;
        }
      }
    if (best_r == n) return QSeries(prec);
    if (best_r != k) {
      std::swap(m[best_r], m[k]);
      negate = !negate;
    }
    if (best_c != k) {
      for (auto& row : m) std::swap(row[best_c], row[k]);
      negate = !negate;
    }
    const QSeries& pivot = m[k][k];
    QSeries unit_inv = invert(shift_down(pivot, best_v));
    for (std::size_t r = k + 1; r < n; ++r) {
      if (m[r][k].is_zero()) continue;
      QSeries factor = lift(shift_down(m[r][k], best_v) * unit_inv, prec);
      for (std::size_t c = k + 1; c < n; ++c) m[r][c] -= factor * m[k][c];
      m[r][k] = QSeries(prec);
    }
    det = det * pivot;
  }
  return negate ? -det : det;
}

}  // namespace qmf
