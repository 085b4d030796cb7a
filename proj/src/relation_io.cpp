#include "qmf/relation_io.hpp"

#include <json.hpp>
#include <sstream>

#include "qmf/arith.hpp"
#include "qmf/errors.hpp"

namespace qmf {

using ordered_json = nlohmann::ordered_json;

std::string to_json(const ModularRelation& r) {
  const Var t = t_var(r.i);
  ordered_json doc;
  doc["d"] = r.d;
  doc["i"] = r.i;
  doc["psi"] = r.psi;
  ordered_json weights;
  weights[std::string(var_name(t))] = ring_weight(t);
  for (auto v : {Var::s1, Var::s2, Var::s3}) weights[std::string(var_name(v))] = ring_weight(v);
  doc["weights"] = weights;
  ordered_json monos = ordered_json::array();
  for (const auto& e : r.monomials) monos.push_back({e[t], e[Var::s1], e[Var::s2], e[Var::s3]});
  doc["monomials"] = monos;
  ordered_json coeffs = ordered_json::array();
  for (const auto& c : r.coeffs) coeffs.push_back(to_string(c));
  doc["coeffs"] = coeffs;
  doc["verified_prec"] = r.verified_prec;
  return doc.dump();
}

ModularRelation relation_from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("relation JSON: ") + e.what());
  }
  auto need = [&](const char* key) -> const ordered_json& {
    if (!doc.is_object() || !doc.contains(key)) throw DomainError(std::string("relation JSON: missing '") + key + "'");
    return doc.at(key);
  };
  ModularRelation r;
  try {
    r.d = need("d").get<std::uint64_t>();
    r.i = need("i").get<unsigned>();
    r.psi = need("psi").get<std::uint64_t>();
    r.verified_prec = need("verified_prec").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("relation JSON: ") + e.what());
  }
  if (r.d == 0 || r.i < 1 || r.i > 3) throw DomainError("relation JSON: d or i out of range");
  if (r.psi != dedekind_psi(r.d)) throw DomainError("relation JSON: psi does not match d");

  const Var t = t_var(r.i);
  const auto& monos = need("monomials");
  const auto& coeffs = need("coeffs");
  if (!monos.is_array() || !coeffs.is_array() || monos.size() != coeffs.size())
    throw DomainError("relation JSON: monomials and coeffs must be arrays of equal length");
  for (std::size_t j = 0; j < monos.size(); ++j) {
    const auto& m = monos[j];
    if (!m.is_array() || m.size() != 4) throw DomainError("relation JSON: monomial must be [a0,a1,a2,a3]");
    ExponentVector e;
    try {
      e[t] = m[0].get<unsigned>();
      e[Var::s1] = m[1].get<unsigned>();
      e[Var::s2] = m[2].get<unsigned>();
      e[Var::s3] = m[3].get<unsigned>();
    } catch (const nlohmann::json::exception& ex) {
      throw DomainError(std::string("relation JSON: ") + ex.what());
    }
    if (!coeffs[j].is_string()) throw DomainError("relation JSON: coefficients must be strings");
    r.monomials.push_back(e);
    r.coeffs.push_back(parse_rational(coeffs[j].get<std::string>()));
  }
  if (r.monomials != enumerate_monomials(r.d, r.i))
    throw DomainError("relation JSON: monomial list differs from the canonical set for this (d, i)");
  return r;
}

std::string to_table(const ModularRelation& r) {
  const std::string t(var_name(t_var(r.i)));
  std::ostringstream head, body;
  for (std::uint64_t k = r.psi + 1; k-- > 0;) {
    const char* sep = k == r.psi ? "" : "\t";
    head << sep << (k == 0 ? "1" : k == 1 ? t : t + "^" + std::to_string(k));
    body << sep << to_string(r.t_coefficient(static_cast<unsigned>(k)));
  }
  return head.str() + '\n' + body.str() + '\n';
}

namespace {

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  while (true) {
    auto tab = line.find('\t');
    out.emplace_back(line.substr(0, tab));
    if (tab == std::string_view::npos) break;
    line.remove_prefix(tab + 1);
  }
  return out;
}

}  // namespace

ModularRelation relation_from_table(std::string_view text, std::uint64_t d, unsigned i) {
  auto nl = text.find('\n');
  if (nl == std::string_view::npos) throw DomainError("relation table: expected two rows");
  auto header = split_tabs(text.substr(0, nl));
  auto rest = text.substr(nl + 1);
  auto body = split_tabs(rest.substr(0, rest.find('\n')));
  if (header.size() != body.size()) throw DomainError("relation table: rows differ in length");

  const Var t = t_var(i);
  WPoly poly;
  for (std::size_t col = 0; col < header.size(); ++col) {
    // Header cells are pure t-powers; the coefficient row is in s.
    WPoly tpow = parse_wpoly(header[col]);
    if (tpow.size() != 1) throw DomainError("relation table: bad header cell '" + header[col] + "'");
    const auto& [e, c] = *tpow.terms().begin();
    if (c != 1 || e.degree() != e[t] * ring_weight(t)) throw DomainError("relation table: header must be powers of t");
    poly += tpow * parse_wpoly(body[col]);
  }

  ModularRelation r;
  r.d = d;
  r.i = i;
  r.psi = dedekind_psi(d);
  r.monomials = enumerate_monomials(d, i);
  std::size_t matched = 0;
  for (const auto& e : r.monomials) {
    r.coeffs.push_back(poly.coeff(e));
    if (r.coeffs.back() != 0) ++matched;
  }
  if (matched != poly.size()) throw DomainError("relation table: terms outside the monomial set");
  return r;
}

}  // namespace qmf
