#include "qmf/linalg.hpp"

#include <algorithm>
#include <cstdint>

#include "qmf/errors.hpp"

namespace qmf {

EchelonForm bareiss_echelon(IntegerMatrix m, std::size_t cols) {
  EchelonForm out;
  out.cols = cols;
  const std::size_t nrows = m.size();
  Integer prev = 1;
  Integer tmp;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < nrows; ++col) {
    std::size_t p = r;
    while (p < nrows && m[p][col] == 0) ++p;
    if (p == nrows) continue;
    std::swap(m[r], m[p]);
    const auto& piv_row = m[r];
    const mpz_srcptr piv = piv_row[col].get_mpz_t();
    for (std::size_t i = r + 1; i < nrows; ++i) {
      auto& row = m[i];
      if (row[col] == 0) {
        // (piv * x - 0 * y) / prev
        if (prev == 1) {
          for (std::size_t j = col + 1; j < cols; ++j) mpz_mul(row[j].get_mpz_t(), row[j].get_mpz_t(), piv);
        } else {
          for (std::size_t j = col + 1; j < cols; ++j) {
            mpz_mul(tmp.get_mpz_t(), row[j].get_mpz_t(), piv);
            mpz_divexact(row[j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
          }
        }
        continue;
      }
      const mpz_srcptr lead = row[col].get_mpz_t();
      for (std::size_t j = col + 1; j < cols; ++j) {
        mpz_mul(tmp.get_mpz_t(), row[j].get_mpz_t(), piv);
        mpz_submul(tmp.get_mpz_t(), lead, piv_row[j].get_mpz_t());
        if (prev == 1)
          mpz_swap(row[j].get_mpz_t(), tmp.get_mpz_t());
        else
          mpz_divexact(row[j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      row[col] = 0;
    }
    prev = piv_row[col];
    out.pivots.push_back(col);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

IntegerMatrix clear_denominators(const RationalMatrix& m) {
  IntegerMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) {
    Integer den = 1;
    for (const auto& x : row)
      if (x.get_den() != 1) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> r;
    r.reserve(row.size());
    for (const auto& x : row) {
      Integer f;
      mpz_divexact(f.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
      r.push_back(x.get_num() * f);
    }
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

// Solves the echelon system for pivot variables given values of free ones,
// scaled so everything stays integral: returns y with y = D * x where D is
// the last pivot, falling back to rationals if a division is inexact.
std::vector<Rational> back_substitute(const EchelonForm& ef, std::vector<Integer> y, const Integer& scale) {
  const std::size_t cols = ef.cols;
  for (auto& v : y) v *= scale;
  Integer acc, rem;
  bool exact = true;
  std::vector<Rational> yr;
  for (std::size_t k = ef.rank(); k-- > 0;) {
    const auto& row = ef.rows[k];
    const std::size_t p = ef.pivots[k];
    if (exact) {
      acc = 0;
      for (std::size_t j = p + 1; j < cols; ++j)
        if (y[j] != 0 && row[j] != 0) mpz_addmul(acc.get_mpz_t(), row[j].get_mpz_t(), y[j].get_mpz_t());
      mpz_tdiv_qr(y[p].get_mpz_t(), rem.get_mpz_t(), acc.get_mpz_t(), row[p].get_mpz_t());
      y[p] = -y[p];
      if (rem == 0) continue;
      // Inexact: redo this and remaining rows with rationals.
      exact = false;
      yr.assign(y.begin(), y.end());
    }
    Rational s = 0;
    for (std::size_t j = p + 1; j < cols; ++j)
      if (yr[j] != 0 && row[j] != 0) s += Rational(row[j]) * yr[j];
    yr[p] = -s / Rational(row[p]);
  }
  if (exact) return std::vector<Rational>(y.begin(), y.end());
  return yr;
}

std::vector<Rational> make_primitive(std::vector<Rational> v, std::size_t positive_at) {
  Integer den = 1, g = 0;
  for (const auto& x : v)
    if (x.get_den() != 1) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> z;
  z.reserve(v.size());
  for (const auto& x : v) {
    Integer f;
    mpz_divexact(f.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    z.push_back(x.get_num() * f);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  if (g == 0) return v;
  if (z[positive_at] < 0) g = -g;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), z[i].get_mpz_t(), g.get_mpz_t());
    v[i] = Rational(q);
  }
  return v;
}

}  // namespace

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m, std::size_t cols) {
  for (const auto& row : m)
    if (row.size() != cols) throw DomainError("nullspace: ragged matrix");
  EchelonForm ef = bareiss_echelon(clear_denominators(m), cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : ef.pivots) is_pivot[p] = true;
  Integer scale = ef.rank() > 0 ? Integer(ef.rows.back()[ef.pivots.back()]) : Integer(1);

  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Integer> y(cols, 0);
    y[f] = 1;
    basis.push_back(make_primitive(back_substitute(ef, std::move(y), scale), f));
  }
  return basis;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  for (; e; e >>= 1, a = mulmod(a, a, p))
    if (e & 1) r = mulmod(r, a, p);
  return r;
}

struct ModKernel {
  std::size_t rank = 0;
  std::size_t free_col = 0;
  std::vector<u64> x;  // x[free_col] = 1; filled when rank == cols - 1
};

// Reduced row echelon form of m mod p, read off as the kernel line.
ModKernel kernel_mod_p(const IntegerMatrix& m, std::size_t cols, u64 p) {
  std::vector<std::vector<u64>> a(m.size(), std::vector<u64>(cols));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = mpz_fdiv_ui(m[r][c].get_mpz_t(), p);

  ModKernel out;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t piv = row;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[row], a[piv]);
    const u64 inv = powmod(a[row][c], p - 2, p);
    for (std::size_t k = c; k < cols; ++k) a[row][k] = mulmod(a[row][k], inv, p);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      const u64 f = p - a[r][c];
      for (std::size_t k = c; k < cols; ++k)
        if (a[row][k]) a[r][k] = (a[r][k] + mulmod(f, a[row][k], p)) % p;
    }
    pivots.push_back(c);
    ++row;
  }
  out.rank = pivots.size();
  if (out.rank + 1 != cols) return out;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  while (is_pivot[out.free_col]) ++out.free_col;
  out.x.assign(cols, 0);
  out.x[out.free_col] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) out.x[pivots[r]] = (p - a[r][out.free_col]) % p;
  return out;
}

// n/d with |n|, d <= sqrt(M/2) and n = d u mod M, if one exists.
std::optional<Rational> rational_reconstruct(const Integer& u, const Integer& mod) {
  Integer bound = sqrt(Integer(mod / 2));
  Integer r0 = mod, r1 = u, t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 < 0) {
    t1 = -t1;
    r1 = -r1;
  }
  if (t1 == 0 || t1 > bound) return std::nullopt;
  Integer g = gcd(r1, t1);
  if (g != 1) return std::nullopt;
  Rational out(r1, t1);
  return out;
}

bool annihilates(const IntegerMatrix& m, const std::vector<Rational>& x) {
  std::vector<Integer> z;
  for (const auto& v : x) z.push_back(v.get_num());  // x is integral here
  Integer acc;
  for (const auto& row : m) {
    acc = 0;
    for (std::size_t c = 0; c < z.size(); ++c)
      if (z[c] != 0 && row[c] != 0) mpz_addmul(acc.get_mpz_t(), row[c].get_mpz_t(), z[c].get_mpz_t());
    if (acc != 0) return false;
  }
  return true;
}

}  // namespace

ModularKernel modular_kernel(const RationalMatrix& m, std::size_t cols) {
  constexpr std::size_t kDeficientLimit = 3;
  const IntegerMatrix a = clear_denominators(m);
  ModularKernel out;
  if (cols == 0) return out;

  Integer prime = Integer(1) << 62;
  Integer modulus = 1;
  std::vector<Integer> residues(cols, 0);
  std::optional<std::size_t> free_col;
  std::size_t deficient = 0;
  while (true) {
    mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
    const u64 p = prime.get_ui();
    ++out.primes;
    ModKernel k = kernel_mod_p(a, cols, p);
    if (k.rank == cols) {
      out.status = ModularKernel::Status::trivial;
      return out;
    }
    if (k.rank + 1 < cols) {
      if (++deficient >= kDeficientLimit && !free_col) {
        out.status = ModularKernel::Status::larger;
        return out;
      }
      continue;
    }
    deficient = 0;
    // The free column is the last coordinate of the line that survives mod
    // p, so an unlucky prime shows up as a smaller one.
    if (free_col && k.free_col != *free_col) {
      if (k.free_col < *free_col) continue;
      modulus = 1;
    }
    free_col = k.free_col;

    // CRT: fold residues mod p into the running lift.
    const Integer pz(p);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), Integer(modulus % pz).get_mpz_t(), pz.get_mpz_t());
    for (std::size_t c = 0; c < cols; ++c) {
      Integer cur = modulus == 1 ? Integer(0) : residues[c];
      Integer delta = (Integer(k.x[c]) - cur % pz) % pz;
      if (delta < 0) delta += pz;
      residues[c] = cur + modulus * ((delta * inv) % pz);
    }
    modulus *= pz;

    std::vector<Rational> x;
    x.reserve(cols);
    for (const auto& r : residues) {
      auto q = rational_reconstruct(r, modulus);
      if (!q) break;
      x.push_back(*q);
    }
    if (x.size() != cols) continue;
    x = make_primitive(std::move(x), *free_col);
    if (annihilates(a, x)) {
      out.status = ModularKernel::Status::line;
      out.x = std::move(x);
      return out;
    }
  }
}

LinearSolution solve(const RationalMatrix& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw DomainError("solve: row count mismatch");
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  RationalMatrix aug(a);
  for (std::size_t i = 0; i < aug.size(); ++i) {
    if (aug[i].size() != cols) throw DomainError("solve: ragged matrix");
    aug[i].push_back(b[i]);
  }
  EchelonForm ef = bareiss_echelon(clear_denominators(aug), cols + 1);
  LinearSolution out;
  if (!ef.pivots.empty() && ef.pivots.back() == cols) {
    out.status = LinearSolution::Status::inconsistent;
    out.rank = ef.rank() - 1;
    return out;
  }
  out.rank = ef.rank();
  if (ef.rank() < cols) {
    out.status = LinearSolution::Status::underdetermined;
    return out;
  }
  // Column `cols` is the only free column; with y = -1 there, the pivot
  // variables solve A x = b.
  std::vector<Integer> y(cols + 1, 0);
  y[cols] = -1;
  Integer scale = ef.rank() > 0 ? Integer(ef.rows.back()[ef.pivots.back()]) : Integer(1);
  auto sol = back_substitute(ef, std::move(y), scale);
  Rational denom = sol[cols];  // equals -scale
  out.x.resize(cols);
  for (std::size_t j = 0; j < cols; ++j) out.x[j] = sol[j] / -denom;
  out.status = LinearSolution::Status::unique;
  return out;
}

}  // namespace qmf
