#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qmf/rational.hpp"

namespace qmf {

// Positive divisors of n in ascending order. n >= 1.
std::vector<std::uint64_t> divisors(std::uint64_t n);

// Prime factorization as (p, e) pairs, p ascending. n >= 1.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

// sum_{c | n} c^k. Throws DomainError for n = 0.
Integer divisor_sigma(unsigned k, std::uint64_t n);

// sigma_k(1..limit) by sieving; entry 0 is 0.
std::vector<Integer> divisor_sigma_table(unsigned k, std::size_t limit);

// Moebius function. Throws DomainError for n = 0.
int mobius(std::uint64_t n);

// d * prod_{p | d} (1 + 1/p): the number of cyclic subgroups of order d in (Z/d)^2,
// equivalently the index of Gamma_0(d). Throws DomainError for d = 0.
std::uint64_t dedekind_psi(std::uint64_t d);

bool is_squarefree(std::uint64_t n);

}  // namespace qmf
