#include "qmf/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qmf/arith.hpp"
#include "qmf/errors.hpp"
#include "qmf/hecke.hpp"
#include "qmf/modeq.hpp"
#include "qmf/ramanujan.hpp"
#include "qmf/relation_io.hpp"

namespace qmf::cli {

namespace fs = std::filesystem;

namespace {

std::size_t or_default(std::size_t prec, std::size_t fallback) { return prec == 0 ? fallback : prec; }

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") return read_all(std::cin);
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read '" + path + "'");
  return read_all(in);
}

fs::path cache_dir_of(const CommandConfig& c) {
  if (!c.cache_dir.empty()) return c.cache_dir;
  if (const char* env = std::getenv(kCacheEnv); env && *env) return env;
  return "qmf-cache";
}

std::string render_relation(const ModularRelation& r, const std::string& format) {
  if (format == "json") return to_json(r) + '\n';
  if (format == "table") return to_table(r);
  return to_string(r.polynomial()) + '\n';
}

int cmd_eis(const CommandConfig& c, std::ostream& out) {
  if (c.pow == 0) throw DomainError("--pow must be positive");
  QSeries e = eisenstein_series(c.k, or_default(c.prec, 20));
  write_text(out, c.pow == 1 ? e : substitute_power(e, c.pow));
  return kSuccess;
}

int cmd_ramanujan(const CommandConfig& c, std::ostream& out) {
  auto report = verify_ramanujan(or_default(c.prec, 200));
  out << to_string(report);
  return report.passed() ? kSuccess : kVerificationFailure;
}

int cmd_hecke_apply(const CommandConfig& c, std::ostream& out) {
  QSeries f = parse_text(read_input(c.input));
  std::optional<std::size_t> out_prec;
  if (c.prec != 0) out_prec = c.prec;
  write_text(out, c.refined ? hecke_T0(f, c.weight, c.d, out_prec) : hecke_T(f, c.weight, c.d, out_prec));
  return kSuccess;
}

int cmd_hecke_eigencheck(const CommandConfig& c, std::ostream& out) {
  if (c.k < 1 || c.k > 3) throw DomainError("--k must be 1, 2 or 3 (the form E_{2k})");
  if (c.d == 0) throw DomainError("--d must be positive");
  const std::size_t prec = or_default(c.prec, 50);
  const unsigned weight = 2 * c.k;
  const QSeries e = eisenstein_series(weight, c.d * (prec - 1) + 1);
  const QSeries image = hecke_T(e, weight, c.d, prec);
  const Integer eigen = divisor_sigma(weight - 1, c.d);
  const auto cmp = compare(image, Rational(eigen) * e.truncate(prec));
  out << "T_" << c.d << " E" << weight << " = " << eigen << " * E" << weight;
  if (cmp.equal) {
    out << " holds to precision " << cmp.prec << '\n';
    return kSuccess;
  }
  out << " FAILS at q^" << *cmp.first_mismatch << '\n';
  return kVerificationFailure;
}

bool cached_relation_valid(const ModularRelation& r, std::ostream& err) {
  try {
    check_relation_invariants(r);
    if (auto v = evaluate_on_curve(r, std::max<std::size_t>(r.verified_prec, 2)).valuation()) {
      err << "cached relation fails on the solution curve at q^" << *v << '\n';
      return false;
    }
  } catch (const InternalError& e) {
    err << "cached relation invalid: " << e.what() << '\n';
    return false;
  }
  return true;
}

int cmd_modeq(const CommandConfig& c, std::ostream& out, std::ostream& err) {
  if (c.method != "direct" && c.method != "hecke") throw DomainError("--method must be direct or hecke");
  if (c.format != "poly" && c.format != "table" && c.format != "json")
    throw DomainError("--format must be poly, table or json");
  if (c.d == 0) throw DomainError("--d must be positive");
  if (c.i < 1 || c.i > 3) throw DomainError("--i must be 1, 2 or 3");

  const fs::path dir = cache_dir_of(c);
  const fs::path file = dir / ("I_" + std::to_string(c.d) + "_" + std::to_string(c.i) + ".json");
  if (!c.no_cache && fs::exists(file)) {
    ModularRelation r = relation_from_json(read_input(file.string()));
    if (r.d != c.d || r.i != c.i) throw DomainError("cache file " + file.string() + " holds a different relation");
    if (r.verified_prec >= c.prec) {
      if (!c.no_verify && !cached_relation_valid(r, err)) return kVerificationFailure;
      err << "read " << file.string() << '\n';
      out << render_relation(r, c.format);
      return kSuccess;
    }
  }

  ModularRelation r = c.method == "hecke" ? compute_relation_hecke(c.d, c.i, c.prec) : compute_relation(c.d, c.i, c.prec);
  err << "I_{" << c.d << "," << c.i << "}: " << r.monomials.size() << " monomials, verified to q^" << r.verified_prec
      << (r.is_integral() ? ", integral coefficients" : ", non-integral coefficients") << '\n';
  if (!c.no_cache) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ofstream f(file);
    if (f) {
      f << to_json(r) << '\n';
      err << "wrote " << file.string() << '\n';
    } else {
      err << "warning: cannot write cache file " << file.string() << '\n';
    }
  }
  out << render_relation(r, c.format);
  return kSuccess;
}

int cmd_wronskian(const CommandConfig& c, std::ostream& out) {
  const std::size_t prec = or_default(c.prec, default_wronskian_prec(c.d, c.i));
  auto w = wronskian_series(c.d, c.i, prec);
  out << "J_{" << c.d << "," << c.i << "}: m = " << w.m << ", weighted degree " << w.degree << '\n';
  if (w.symbolic_degree)
    out << "symbolic determinant degree " << w.symbolic_degree->degree
        << (w.symbolic_degree->homogeneous ? " (homogeneous)" : " (not homogeneous)") << '\n';
  if (w.vanishes()) {
    out << "determinant vanishes to " << w.prec << '\n';
    return kSuccess;
  }
  out << "determinant nonzero at q^" << *w.first_nonzero << '\n';
  return kVerificationFailure;
}

int cmd_tangency(const CommandConfig& c, std::ostream& out) {
  std::vector<ModularRelation> rels;
  for (unsigned i = 1; i <= 3; ++i) rels.push_back(compute_relation(c.d, i, 0));
  auto report = tangency_report(c.d, or_default(c.prec, 100), rels, c.second_iterate);
  out << to_string(report);
  return report.passed() ? kSuccess : kVerificationFailure;
}

int cmd_jpoly(const CommandConfig& c, std::ostream& out) {
  auto phi = classical_modular_polynomial(c.d, c.prec);
  out << to_string(phi.poly) << '\n';
  out << "# degree " << phi.poly.degree_j1() << " in j1, " << phi.poly.degree_j2() << " in j2; "
      << (phi.poly.is_symmetric() ? "symmetric" : "not symmetric") << "; verified to " << phi.verified_prec << '\n';
  return kSuccess;
}

int cmd_verify_all(const CommandConfig& c, std::ostream& out) {
  const std::size_t prec = or_default(c.prec, 100);
  bool ok = true;
  auto line = [&](bool pass, const std::string& what) {
    out << (pass ? "PASS " : "FAIL ") << what << '\n';
    ok = ok && pass;
  };
  line(verify_ramanujan(prec).passed(), "Ramanujan identities to " + std::to_string(prec));
  for (std::uint64_t d = 1; d <= c.dmax; ++d) {
    for (unsigned k = 1; k <= 3; ++k) {
      const unsigned weight = 2 * k;
      const QSeries e = eisenstein_series(weight, d * (prec - 1) + 1);
      bool eig = agree(hecke_T(e, weight, d, prec), Rational(divisor_sigma(weight - 1, d)) * e.truncate(prec));
      line(eig, "T_" + std::to_string(d) + " E" + std::to_string(weight) + " eigenvalue");
    }
    std::vector<ModularRelation> rels;
    for (unsigned i = 1; i <= 3; ++i) {
      auto direct = compute_relation(d, i, 0);
      auto hecke = compute_relation_hecke(d, i, 0);
      line(direct.coeffs == hecke.coeffs, "I_{" + std::to_string(d) + "," + std::to_string(i) + "} direct = hecke");
      rels.push_back(std::move(direct));
    }
    line(tangency_report(d, prec, rels, d <= 3).passed(), "R_" + std::to_string(d) + " tangent to V_d to " +
                                                                std::to_string(prec));
    for (unsigned i = 1; i <= 3; ++i) {
      if (enumerate_monomials(d, i).size() > 12) continue;
      auto w = wronskian_series(d, i, prec);
      line(w.vanishes(), "J_{" + std::to_string(d) + "," + std::to_string(i) + "} vanishes to " + std::to_string(prec) +
                             " (degree " + std::to_string(w.degree) + ")");
    }
  }
  return ok ? kSuccess : kVerificationFailure;
}

int dispatch(const CommandConfig& c, std::ostream& out, std::ostream& err) {
  const std::string& s = c.subcommand;
  if (s == "eis") return cmd_eis(c, out);
  if (s == "ramanujan-check") return cmd_ramanujan(c, out);
  if (s == "hecke-apply") return cmd_hecke_apply(c, out);
  if (s == "hecke-eigencheck") return cmd_hecke_eigencheck(c, out);
  if (s == "modeq") return cmd_modeq(c, out, err);
  if (s == "wronskian") return cmd_wronskian(c, out);
  if (s == "tangency") return cmd_tangency(c, out);
  if (s == "jpoly") return cmd_jpoly(c, out);
  if (s == "verify-all") return cmd_verify_all(c, out);
  throw DomainError("unknown subcommand '" + s + "'");
}

}  // namespace

int run_command(const CommandConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!config.output.empty()) {
      std::ofstream f(config.output);
      if (!f) throw DomainError("cannot write '" + config.output + "'");
      return dispatch(config, f, err);
    }
    return dispatch(config, out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const PrecisionError& e) {
    err << "error: " << e.what() << '\n';
    return kInsufficientPrecision;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailure;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CommandConfig c;
  CLI::App app{"Hecke operators, modular relations and Ramanujan vector fields over Q", "qmf"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--cache-dir", c.cache_dir, std::string("cache directory (default $") + kCacheEnv + " or ./qmf-cache)");
  app.add_option("-o,--output", c.output, "write data to this file instead of stdout");

  auto* eis = app.add_subcommand("eis", "print E_k(q) or E_k(q^d)");
  eis->add_option("--k", c.k, "weight: 2, 4 or 6")->required();
  eis->add_option("--prec", c.prec, "precision (default 20)");
  eis->add_option("--pow", c.pow, "substitute q -> q^d");

  auto* ram = app.add_subcommand("ramanujan-check", "verify Ramanujan's identities on E2, E4, E6");
  ram->add_option("--prec", c.prec, "precision (default 200)");

  auto* hecke = app.add_subcommand("hecke", "Hecke operators on q-expansions");
  hecke->require_subcommand(1);
  auto* apply = hecke->add_subcommand("apply", "apply T_d (or T_d^0 with --refined) to a series file");
  apply->add_option("--d", c.d)->required();
  apply->add_option("--weight", c.weight, "modular weight m")->required();
  apply->add_flag("--refined", c.refined, "use the refined operator T_d^0");
  apply->add_option("--prec", c.prec, "output precision (default: as much as the input allows)");
  apply->add_option("series", c.input, "series file ('-' for stdin)")->required();
  auto* eigen = hecke->add_subcommand("eigencheck", "check T_d E_2k = sigma_{2k-1}(d) E_2k");
  eigen->add_option("--d", c.d)->required();
  eigen->add_option("--k", c.k, "1, 2 or 3 for E2, E4, E6")->required();
  eigen->add_option("--prec", c.prec, "output precision (default 50)");

  auto* modeq = app.add_subcommand("modeq", "compute the relation I_{d,i}");
  modeq->add_option("--d", c.d)->required();
  modeq->add_option("--i", c.i)->required();
  modeq->add_option("--prec", c.prec, "solving precision (raised automatically if too small)");
  modeq->add_option("--method", c.method, "direct | hecke");
  modeq->add_option("--format", c.format, "poly | table | json");
  modeq->add_flag("--no-verify", c.no_verify, "trust cache hits without re-verification");
  modeq->add_flag("--no-cache", c.no_cache, "neither read nor write the cache");

  auto* wr = app.add_subcommand("wronskian", "evaluate J_{d,i} on the solution curve");
  wr->add_option("--d", c.d)->required();
  wr->add_option("--i", c.i)->required();
  wr->add_option("--prec", c.prec);

  auto* tan = app.add_subcommand("tangency", "check that R_d is tangent to V_d");
  tan->add_option("--d", c.d)->required();
  tan->add_option("--prec", c.prec, "precision (default 100)");
  tan->add_flag("--second", c.second_iterate, "also check R_d^2(I_{d,i})");

  auto* jp = app.add_subcommand("jpoly", "classical modular polynomial Phi_d(j1, j2)");
  jp->add_option("--d", c.d)->required();
  jp->add_option("--prec", c.prec);

  auto* all = app.add_subcommand("verify-all", "run the full verification sweep");
  all->add_option("--dmax", c.dmax, "largest d (default 3)");
  all->add_option("--prec", c.prec, "precision (default 100)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  if (eis->parsed()) c.subcommand = "eis";
  else if (ram->parsed()) c.subcommand = "ramanujan-check";
  else if (apply->parsed()) c.subcommand = "hecke-apply";
  else if (eigen->parsed()) c.subcommand = "hecke-eigencheck";
  else if (modeq->parsed()) c.subcommand = "modeq";
  else if (wr->parsed()) c.subcommand = "wronskian";
  else if (tan->parsed()) c.subcommand = "tangency";
  else if (jp->parsed()) c.subcommand = "jpoly";
  else if (all->parsed()) c.subcommand = "verify-all";
  return run_command(c, out, err);
}

}  // namespace qmf::cli
