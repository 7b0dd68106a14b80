#pragma once

// Slow, independent reference computations used by the tests. Nothing here
// calls into the linear algebra or search code under test.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "expcx/bivariate.hpp"

namespace oracle {

using expcx::Residue;
using Coeffs = std::vector<std::uint64_t>;

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t inverse(std::uint64_t a, std::uint64_t p) {
  for (std::uint64_t b = 1; b < p; ++b)
    if (a * b % p == 1) return b;
  return 0;
}

// (x, y) exponents of the monomials of degree <= d, graded, x-heavy first.
inline std::vector<std::pair<unsigned, unsigned>> monomials(unsigned d) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned t = 0; t <= d; ++t)
    for (unsigned j = 0; j <= t; ++j) out.emplace_back(t - j, j);
  return out;
}

// G^j mod x^n for j = 0..jmax, schoolbook.
inline std::vector<Coeffs> powers(const std::vector<Residue>& s, std::size_t n, unsigned jmax, std::uint64_t p) {
  std::vector<Coeffs> pw(jmax + 1, Coeffs(n, 0));
  if (n > 0) pw[0][0] = 1;
  for (unsigned j = 1; j <= jmax; ++j)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; a + b < n && b < s.size(); ++b) pw[j][a + b] = (pw[j][a + b] + pw[j - 1][a] * s[b]) % p;
  return pw;
}

// h(x, G) mod x^n with h given as coefficients over monomials(d).
inline Coeffs evaluate(const std::vector<Residue>& h, unsigned d, const std::vector<Residue>& s, std::size_t n,
                       std::uint64_t p) {
  const auto mons = monomials(d);
  const auto pw = powers(s, n, d, p);
  Coeffs out(n, 0);
  for (std::size_t m = 0; m < mons.size(); ++m) {
    if (h[m] == 0) continue;
    const auto [i, j] = mons[m];
    for (std::size_t k = i; k < n; ++k) out[k] = (out[k] + h[m] * pw[j][k - i]) % p;
  }
  return out;
}

// E_N for N = 1..n_max by exhausting every h of degree <= d_max: each h
// contributes its degree to all N up to its order of vanishing.
inline std::vector<unsigned> expansion_by_enumeration(const std::vector<Residue>& s, std::size_t n_max, unsigned d_max,
                                                      std::uint64_t p) {
  const auto mons = monomials(d_max);
  const auto pw = powers(s, n_max, d_max, p);
  std::vector<unsigned> best(n_max + 1, d_max + 1);
  std::vector<Residue> h(mons.size(), 0);
  for (;;) {
    std::size_t pos = 0;
    while (pos < h.size() && ++h[pos] == p) h[pos++] = 0;
    if (pos == h.size()) break;
    unsigned deg = 0;
    for (std::size_t m = 0; m < mons.size(); ++m)
      if (h[m]) deg = std::max(deg, mons[m].first + mons[m].second);
    std::size_t order = 0;
    while (order < n_max) {
      std::uint64_t c = 0;
      for (std::size_t m = 0; m < mons.size(); ++m) {
        const auto [i, j] = mons[m];
        if (h[m] && order >= i) c += h[m] * pw[j][order - i];
      }
      if (c % p) break;
      ++order;
    }
    for (std::size_t n = 1; n <= order; ++n) best[n] = std::min(best[n], deg);
  }
  // an all-zero prefix has complexity 0 by convention
  for (std::size_t n = 1; n <= n_max && s[n - 1] == 0; ++n) best[n] = 0;
  return best;
}

// Dense coefficient vectors of all normalized polynomials of degree exactly d.
inline std::vector<std::vector<Residue>> normalized_polys(unsigned d, std::uint64_t p) {
  const std::size_t total = (d + 1) * (d + 2) / 2;
  const std::size_t top = d + 1;
  std::vector<std::vector<Residue>> out;
  std::vector<Residue> v(total, 0);
  const std::uint64_t count = ipow(p, static_cast<unsigned>(total));
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t c = code;
    for (auto& x : v) {
      x = static_cast<Residue>(c % p);
      c /= p;
    }
    std::size_t lead = total - top;
    while (lead < total && v[lead] == 0) ++lead;
    if (lead < total && v[lead] == 1) out.push_back(v);
  }
  return out;
}

// Normalized reducible polynomials of degree d as products of normalized
// nonconstant factors of degrees e and d - e.
inline std::set<std::vector<Residue>> reducible_of_degree(const expcx::PrimeField& f, unsigned d) {
  std::set<std::vector<Residue>> out;
  for (unsigned e = 1; 2 * e <= d; ++e) {
    const auto as = normalized_polys(e, f.modulus());
    const auto bs = normalized_polys(d - e, f.modulus());
    for (const auto& a : as)
      for (const auto& b : bs) {
        const auto prod = expcx::BivariatePoly::from_dense(f, a) * expcx::BivariatePoly::from_dense(f, b);
        out.insert(prod.dense(d));
      }
  }
  return out;
}

}  // namespace oracle
