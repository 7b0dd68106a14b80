#ifndef EXPCX_UNIVARIATE_HPP
#define EXPCX_UNIVARIATE_HPP

// Dense univariate polynomials over F_p, used as the coefficient ring for
// bivariate division and by the irreducibility tests. A polynomial is a
// vector of residues, lowest degree first, with no trailing zeros; the zero
// polynomial is the empty vector.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "expcx/field.hpp"

namespace expcx::uni {

using Poly = std::vector<Residue>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly add(const PrimeField& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
  trim(r);
  return r;
}

inline Poly sub(const PrimeField& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
  trim(r);
  return r;
}

inline Poly mul(const PrimeField& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

inline Poly scale(const PrimeField& f, const Poly& a, Residue c) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(a[i], c);
  trim(r);
  return r;
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<Poly, Poly> divmod(const PrimeField& f, Poly a, const Poly& b) {
  if (b.empty()) throw Error(Errc::zero_divisor, "univariate division by zero");
  trim(a);
  if (a.size() < b.size()) return {Poly{}, std::move(a)};
  const Residue lead_inv = f.inv(b.back());
  Poly q(a.size() - b.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    Residue c = f.mul(a[k + b.size() - 1], lead_inv);
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = f.sub_mul(a[k + j], c, b[j]);
  }
  trim(a);
  trim(q);
  return {std::move(q), std::move(a)};
}

inline Poly mod(const PrimeField& f, Poly a, const Poly& b) { return divmod(f, std::move(a), b).second; }

inline std::optional<Poly> exact_divide(const PrimeField& f, const Poly& a, const Poly& b) {
  auto [q, r] = divmod(f, a, b);
  if (!r.empty()) return std::nullopt;
  return q;
}

inline Poly monic(const PrimeField& f, const Poly& a) {
  if (a.empty()) return a;
  return scale(f, a, f.inv(a.back()));
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(const PrimeField& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(f, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

inline Poly mulmod(const PrimeField& f, const Poly& a, const Poly& b, const Poly& m) {
  return mod(f, mul(f, a, b), m);
}

/// x^(p^k) mod m by repeated p-th powering.
inline Poly frobenius_power(const PrimeField& f, const Poly& m, unsigned k) {
  Poly cur = mod(f, Poly{0, 1}, m);
  for (unsigned step = 0; step < k; ++step) {
    Poly base = cur;
    Poly acc{1};
    std::uint64_t e = f.modulus();
    while (e != 0) {
      if (e & 1U) acc = mulmod(f, acc, base, m);
      base = mulmod(f, base, base, m);
      e >>= 1U;
    }
    cur = std::move(acc);
  }
  return cur;
}

/// Rabin's test: deg m = n is irreducible iff x^(p^n) = x mod m and
/// gcd(x^(p^(n/r)) - x, m) = 1 for every prime r dividing n.
inline bool is_irreducible(const PrimeField& f, const Poly& m_in) {
  Poly m = m_in;
  trim(m);
  const int n = degree(m);
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly x{0, 1};
  if (sub(f, frobenius_power(f, m, static_cast<unsigned>(n)), x) != Poly{}) return false;
  int rest = n;
  for (int r = 2; r <= rest; ++r) {
    if (rest % r != 0) continue;
    while (rest % r == 0) rest /= r;
    Poly g = gcd(f, sub(f, frobenius_power(f, m, static_cast<unsigned>(n / r)), x), m);
    if (degree(g) > 0) return false;
  }
  return true;
}

inline Residue eval(const PrimeField& f, const Poly& a, Residue x) {
  Residue acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = f.add(f.mul(acc, x), a[i]);
  return acc;
}

}  // namespace expcx::uni

#endif  // EXPCX_UNIVARIATE_HPP
