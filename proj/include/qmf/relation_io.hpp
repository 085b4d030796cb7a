#pragma once

#include <string>
#include <string_view>

#include "qmf/modeq.hpp"

namespace qmf {

// Canonical one-line JSON document:
//   {"d":2,"i":2,"psi":3,"weights":{"t2":2,"s1":1,"s2":2,"s3":3},
//    "monomials":[[a0,a1,a2,a3],...],"coeffs":["1","-18",...],"verified_prec":N}
// Monomials are t_i^a0 s1^a1 s2^a2 s3^a3 in the global term order.
std::string to_json(const ModularRelation& r);
// Throws DomainError on schema violations.
ModularRelation relation_from_json(std::string_view text);

// Two tab-separated rows: powers of t_i, then their coefficients in s.
std::string to_table(const ModularRelation& r);
// Rebuilds the polynomial from a table (d is needed to recover the monomial set).
ModularRelation relation_from_table(std::string_view text, std::uint64_t d, unsigned i);

}  // namespace qmf
