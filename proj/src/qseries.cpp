#include "qmf/qseries.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>

#include "qmf/arith.hpp"
#include "qmf/errors.hpp"

namespace qmf {

QSeries::QSeries(std::size_t prec) : coeffs_(prec, Rational(0)) {
  if (prec == 0) throw DomainError("QSeries: precision must be positive");
}

QSeries::QSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("QSeries: precision must be positive");
}

QSeries QSeries::constant(const Rational& c, std::size_t prec) {
  QSeries s(prec);
  s.coeffs_[0] = c;
  return s;
}

QSeries QSeries::monomial(const Rational& c, std::size_t exponent, std::size_t prec) {
  QSeries s(prec);
  if (exponent < prec) s.coeffs_[exponent] = c;
  return s;
}

QSeries QSeries::from_integers(const std::vector<Integer>& coeffs) {
  std::vector<Rational> r(coeffs.begin(), coeffs.end());
  return QSeries(std::move(r));
}

QSeries QSeries::truncate(std::size_t p) const {
  if (p == 0 || p > prec()) throw DomainError("QSeries::truncate: precision out of range");
  return QSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(p)));
}

bool QSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

std::optional<std::size_t> QSeries::valuation() const {
  for (std::size_t n = 0; n < coeffs_.size(); ++n)
    if (coeffs_[n] != 0) return n;
  return std::nullopt;
}

bool QSeries::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return is_integer(c); });
}

QSeries QSeries::operator-() const {
  QSeries out(*this);
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

QSeries& QSeries::operator+=(const QSeries& o) {
  coeffs_.resize(std::min(prec(), o.prec()));
  for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += o.coeffs_[n];
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
  coeffs_.resize(std::min(prec(), o.prec()));
  for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] -= o.coeffs_[n];
  return *this;
}

QSeries& QSeries::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

QSeries& QSeries::operator*=(const QSeries& o) { return *this = *this * o; }

namespace {

// Writes f = F / den with integer F over the first n coefficients.
Integer scale_to_integers(const std::vector<Rational>& f, std::size_t n, std::vector<Integer>& out) {
  Integer den = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (f[i].get_den() != 1) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), f[i].get_den_mpz_t());
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i].get_den() == 1) {
      out[i] = f[i].get_num() * den;
    } else {
      Integer factor;
      mpz_divexact(factor.get_mpz_t(), den.get_mpz_t(), f[i].get_den_mpz_t());
      out[i] = f[i].get_num() * factor;
    }
  }
  return den;
}

}  // namespace

QSeries operator*(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.prec(), b.prec());
  std::vector<Integer> A, B;
  Integer da = scale_to_integers(a.coeffs_, n, A);
  Integer db = scale_to_integers(b.coeffs_, n, B);

  std::vector<std::size_t> nz_a, nz_b;
  for (std::size_t i = 0; i < n; ++i) {
    if (A[i] != 0) nz_a.push_back(i);
    if (B[i] != 0) nz_b.push_back(i);
  }

  std::vector<Integer> C(n, 0);
  // Iterate over the sparser operand's support.
  const auto& outer = nz_a.size() <= nz_b.size() ? nz_a : nz_b;
  const auto& X = nz_a.size() <= nz_b.size() ? A : B;
  const auto& Y = nz_a.size() <= nz_b.size() ? B : A;
  const auto& inner = nz_a.size() <= nz_b.size() ? nz_b : nz_a;
  for (std::size_t i : outer) {
    for (std::size_t j : inner) {
      if (i + j >= n) break;
      mpz_addmul(C[i + j].get_mpz_t(), X[i].get_mpz_t(), Y[j].get_mpz_t());
    }
  }

  Integer den = da * db;
  std::vector<Rational> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (den == 1) {
      out[k] = Rational(C[k]);
    } else {
      out[k] = Rational(C[k], den);
      out[k].canonicalize();
    }
  }
  return QSeries(std::move(out));
}

SeriesComparison compare(const QSeries& a, const QSeries& b) {
  SeriesComparison r;
  r.prec = std::min(a.prec(), b.prec());
  for (std::size_t n = 0; n < r.prec; ++n) {
    if (a[n] != b[n]) {
      r.first_mismatch = n;
      return r;
    }
  }
  r.equal = true;
  return r;
}

QSeries theta(const QSeries& f) {
  std::vector<Rational> out(f.coeffs());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] *= static_cast<unsigned long>(n);
  return QSeries(std::move(out));
}

QSeries substitute_power(const QSeries& f, std::size_t c) {
  if (c == 0) throw DomainError("substitute_power: exponent scale must be positive");
  std::vector<Rational> out(c * (f.prec() - 1) + 1, Rational(0));
  for (std::size_t n = 0; n < f.prec(); ++n) out[c * n] = f[n];
  return QSeries(std::move(out));
}

QSeries pow(const QSeries& f, unsigned long e) {
  QSeries result = QSeries::constant(1, f.prec());
  QSeries base = f;
  while (e > 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

QSeries invert(const QSeries& f) {
  if (f[0] == 0) throw SingularSeriesError("invert: series has zero constant term");
  const std::size_t n = f.prec();
  std::vector<Rational> g(n, Rational(0));
  Rational inv0 = 1 / f[0];
  g[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= k; ++j)
      if (f[j] != 0) acc += f[j] * g[k - j];
    g[k] = -acc * inv0;
  }
  return QSeries(std::move(g));
}

QSeries eisenstein_series(unsigned k, std::size_t prec) {
  Integer b;
  switch (k) {
    case 2: b = -24; break;
    case 4: b = 240; break;
    case 6: b = -504; break;
    default: throw DomainError("eisenstein_series: weight must be 2, 4 or 6");
  }
  if (prec == 0) throw DomainError("eisenstein_series: precision must be positive");
  auto sigma = divisor_sigma_table(k - 1, prec - 1);
  std::vector<Integer> c(prec);
  c[0] = 1;
  for (std::size_t n = 1; n < prec; ++n) c[n] = b * sigma[n];
  return QSeries::from_integers(c);
}

void write_text(std::ostream& os, const QSeries& f) {
  os << "prec=" << f.prec() << '\n';
  for (std::size_t n = 0; n < f.prec(); ++n) os << n << ": " << to_string(f[n]) << '\n';
}

std::string to_text(const QSeries& f) {
  std::ostringstream os;
  write_text(os, f);
  return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::size_t parse_index(std::string_view s, std::string_view what) {
  s = trim(s);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw DomainError("series text: bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

QSeries parse_text(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = trim(text.substr(0, nl));
    if (!line.empty() && line.front() != '#') lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  if (lines.empty() || lines.front().substr(0, 5) != "prec=")
    throw DomainError("series text: missing 'prec=N' header");
  std::size_t prec = parse_index(lines.front().substr(5), "precision");
  if (prec == 0) throw DomainError("series text: precision must be positive");

  std::vector<Rational> coeffs(prec, Rational(0));
  for (std::size_t k = 1; k < lines.size(); ++k) {
    auto colon = lines[k].find(':');
    if (colon == std::string_view::npos)
      throw DomainError("series text: expected 'n: c', got '" + std::string(lines[k]) + "'");
    std::size_t n = parse_index(lines[k].substr(0, colon), "index");
    if (n >= prec) throw DomainError("series text: index " + std::to_string(n) + " beyond precision");
    coeffs[n] = parse_rational(lines[k].substr(colon + 1));
  }
  return QSeries(std::move(coeffs));
}

std::string to_display(const QSeries& f) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t n = 0; n < f.prec(); ++n) {
    const Rational& c = f[n];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (n == 0 || mag != 1) {
      os << mag.get_str();
      if (n > 0) os << '*';
    }
    if (n == 1) os << 'q';
    if (n > 1) os << "q^" << n;
  }
  if (first) os << '0';
  os << " + O(q^" << f.prec() << ')';
  return os.str();
}

}  // namespace qmf
