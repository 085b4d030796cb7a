#include "qmf/rational.hpp"

#include <cctype>

#include "qmf/errors.hpp"

namespace qmf {

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

namespace {

bool valid_integer_text(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!valid_integer_text(num, true) || !valid_integer_text(den, false))
    throw DomainError("malformed rational: '" + std::string(text) + "'");

  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  Integer p(n, 10);
  Integer q(std::string(den), 10);
  if (q == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Integer ipow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

Integer ipow(long base, unsigned long exp) { return ipow(Integer(base), exp); }

Rational rpow(const Rational& base, long exp) {
  if (exp >= 0) {
    Rational out(ipow(base.get_num(), static_cast<unsigned long>(exp)),
                 ipow(base.get_den(), static_cast<unsigned long>(exp)));
    out.canonicalize();
    return out;
  }
  if (base == 0) throw DomainError("zero raised to a negative power");
  Rational inv = 1 / base;
  return rpow(inv, -exp);
}

}  // namespace qmf
