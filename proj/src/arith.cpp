#include "qmf/arith.hpp"

#include <algorithm>

#include "qmf/errors.hpp"

namespace qmf {

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) throw DomainError("divisors: n must be positive");
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t c = 1; c * c <= n; ++c) {
    if (n % c != 0) continue;
    small.push_back(c);
    if (c != n / c) large.push_back(n / c);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

Integer divisor_sigma(unsigned k, std::uint64_t n) {
  if (n == 0) throw DomainError("divisor_sigma: n must be positive");
  Integer sum = 0;
  for (auto c : divisors(n)) sum += ipow(Integer(static_cast<unsigned long>(c)), k);
  return sum;
}

std::vector<Integer> divisor_sigma_table(unsigned k, std::size_t limit) {
  std::vector<Integer> out(limit + 1, 0);
  for (std::size_t c = 1; c <= limit; ++c) {
    Integer ck = ipow(Integer(static_cast<unsigned long>(c)), k);
    for (std::size_t n = c; n <= limit; n += c) out[n] += ck;
  }
  return out;
}

int mobius(std::uint64_t n) {
  if (n == 0) throw DomainError("mobius: n must be positive");
  int sign = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

std::uint64_t dedekind_psi(std::uint64_t d) {
  if (d == 0) throw DomainError("dedekind_psi: d must be positive");
  std::uint64_t psi = d;
  for (auto [p, e] : factorize(d)) psi = psi / p * (p + 1);
  return psi;
}

bool is_squarefree(std::uint64_t n) { return mobius(n) != 0; }

}  // namespace qmf
