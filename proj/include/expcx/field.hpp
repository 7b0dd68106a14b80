#ifndef EXPCX_FIELD_HPP
#define EXPCX_FIELD_HPP

// Prime field arithmetic. Residues are stored as std::uint32_t in [0, p) and
// products are formed in 64 bits, so p is limited to 2^31.

#include <array>
#include <cstdint>
#include <ostream>
#include <string>

#include "expcx/error.hpp"

namespace expcx {

using Residue = std::uint32_t;

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1U) result = mulmod64(result, base, m);
    base = mulmod64(base, base, m);
    e >>= 1U;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the first twelve primes as witnesses are
/// sufficient for every n < 2^64.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::array<std::uint64_t, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t w : witnesses) {
    if (n % w == 0) return n == w;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : witnesses) {
    std::uint64_t x = detail::powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

class FieldElement;

/// The field F_p. A cheap value type: copying it copies the modulus only.
class PrimeField {
 public:
  static constexpr std::uint64_t max_modulus = std::uint64_t{1} << 31U;

  /// Throws NotPrime / OutOfRange.
  explicit PrimeField(std::uint64_t p) : p_(checked(p)) {}

  Residue modulus() const noexcept { return p_; }

  Residue reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue reduce_unsigned(std::uint64_t v) const noexcept { return static_cast<Residue>(v % p_); }

  // Raw residue arithmetic for the hot loops; inputs must already be reduced.
  Residue add(Residue a, Residue b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + (p_ - b); }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }
  /// a - b*c
  Residue sub_mul(Residue a, Residue b, Residue c) const noexcept { return sub(a, mul(b, c)); }

  Residue pow(Residue a, std::uint64_t e) const noexcept {
    return static_cast<Residue>(detail::powmod64(a, e, p_));
  }

  /// Extended Euclid; throws DivisionByZero for 0.
  Residue inv(Residue a) const {
    if (a == 0) throw Error(Errc::division_by_zero, "inverse of 0 in F_" + std::to_string(p_));
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    return reduce(t);
  }

  FieldElement element(std::int64_t v) const;
  FieldElement zero() const;
  FieldElement one() const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  static Residue checked(std::uint64_t p) {
    if (p >= max_modulus) throw Error(Errc::out_of_range, "modulus " + std::to_string(p) + " >= 2^31");
    if (!is_prime(p)) throw Error(Errc::not_prime, std::to_string(p) + " is not prime");
    return static_cast<Residue>(p);
  }

  Residue p_;
};

inline PrimeField make_field(std::uint64_t p) { return PrimeField(p); }

/// A residue tagged with its field. Mixing fields throws FieldMismatch.
class FieldElement {
 public:
  FieldElement(const PrimeField& field, Residue value) : field_(field), value_(value % field.modulus()) {}

  Residue value() const noexcept { return value_; }
  const PrimeField& field() const noexcept { return field_; }
  bool is_zero() const noexcept { return value_ == 0; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.add(a.value_, b.value_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.sub(a.value_, b.value_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.mul(a.value_, b.value_)};
  }
  FieldElement operator-() const { return {field_, field_.neg(value_)}; }

  FieldElement inv() const { return {field_, field_.inv(value_)}; }
  /// 0^0 = 1.
  FieldElement pow(std::uint64_t e) const { return {field_, field_.pow(value_, e)}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << a.value_; }

 private:
  static void check_same(const FieldElement& a, const FieldElement& b) {
    if (!(a.field_ == b.field_)) {
      throw Error(Errc::field_mismatch, "F_" + std::to_string(a.field_.modulus()) + " vs F_" +
                                            std::to_string(b.field_.modulus()));
    }
  }

  PrimeField field_;
  Residue value_;
};

inline FieldElement PrimeField::element(std::int64_t v) const { return {*this, reduce(v)}; }
inline FieldElement PrimeField::zero() const { return {*this, 0}; }
inline FieldElement PrimeField::one() const { return {*this, 1 % p_}; }

inline FieldElement inv(const FieldElement& a) { return a.inv(); }
inline FieldElement pow(const FieldElement& a, std::uint64_t e) { return a.pow(e); }

}  // namespace expcx

#endif  // EXPCX_FIELD_HPP
