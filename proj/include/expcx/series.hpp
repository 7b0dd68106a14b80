#ifndef EXPCX_SERIES_HPP
#define EXPCX_SERIES_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "expcx/field.hpp"
#include "expcx/sequence.hpp"

namespace expcx {

/// A power series known modulo x^N: exactly N coefficients, x^i at index i.
class TruncatedSeries {
 public:
  TruncatedSeries(PrimeField field, std::size_t truncation) : field_(field), coeffs_(truncation, 0) {}
  TruncatedSeries(PrimeField field, std::vector<Residue> coeffs) : field_(field), coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c = field_.reduce_unsigned(c);
  }

  static TruncatedSeries constant(PrimeField field, std::size_t truncation, Residue c) {
    TruncatedSeries s(field, truncation);
    if (truncation > 0) s.coeffs_[0] = field.reduce_unsigned(c);
    return s;
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t truncation() const noexcept { return coeffs_.size(); }
  const std::vector<Residue>& coeffs() const noexcept { return coeffs_; }
  Residue operator[](std::size_t i) const { return coeffs_[i]; }
  Residue& operator[](std::size_t i) { return coeffs_[i]; }

  bool is_zero() const noexcept {
    for (Residue c : coeffs_) {
      if (c != 0) return false;
    }
    return true;
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  PrimeField field_;
  std::vector<Residue> coeffs_;
};

/// G(x) mod x^N for the prefix s_0..s_{N-1}.
inline TruncatedSeries series_from_prefix(const SequencePrefix& s) {
  return {s.field(), std::vector<Residue>(s.symbols().begin(), s.symbols().end())};
}

namespace detail {

inline void check_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (!(a.field() == b.field())) throw Error(Errc::field_mismatch, "series over different fields");
  if (a.truncation() != b.truncation()) {
    throw Error(Errc::truncation_mismatch, "mod x^" + std::to_string(a.truncation()) + " vs mod x^" +
                                               std::to_string(b.truncation()));
  }
}

}  // namespace detail

inline TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  detail::check_compatible(a, b);
  TruncatedSeries r = a;
  for (std::size_t i = 0; i < r.truncation(); ++i) r[i] = a.field().add(a[i], b[i]);
  return r;
}

inline TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  detail::check_compatible(a, b);
  TruncatedSeries r = a;
  for (std::size_t i = 0; i < r.truncation(); ++i) r[i] = a.field().sub(a[i], b[i]);
  return r;
}

/// Cauchy product truncated to N terms.
inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  detail::check_compatible(a, b);
  const PrimeField& f = a.field();
  const std::size_t n = a.truncation();
  TruncatedSeries r(f, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  return r;
}

/// x^k * a, truncated.
inline TruncatedSeries series_shift(const TruncatedSeries& a, std::size_t k) {
  TruncatedSeries r(a.field(), a.truncation());
  for (std::size_t i = 0; i + k < a.truncation(); ++i) r[i + k] = a[i];
  return r;
}

/// Multiplicative inverse; the constant term must be nonzero.
inline TruncatedSeries series_inverse(const TruncatedSeries& a) {
  const PrimeField& f = a.field();
  const std::size_t n = a.truncation();
  TruncatedSeries r(f, n);
  if (n == 0) return r;
  if (a[0] == 0) throw Error(Errc::division_by_zero, "series with zero constant term is not invertible");
  const Residue c0 = f.inv(a[0]);
  r[0] = c0;
  for (std::size_t k = 1; k < n; ++k) {
    Residue acc = 0;
    for (std::size_t i = 1; i <= k; ++i) acc = f.add(acc, f.mul(a[i], r[k - i]));
    r[k] = f.mul(f.neg(acc), c0);
  }
  return r;
}

/// Formal derivative, keeping the truncation: coefficient i of the result is
/// (i+1) a_{i+1}, and the top coefficient is unknown hence dropped to N-1 terms.
inline TruncatedSeries series_derivative(const TruncatedSeries& a) {
  const PrimeField& f = a.field();
  const std::size_t n = a.truncation() == 0 ? 0 : a.truncation() - 1;
  TruncatedSeries r(f, n);
  for (std::size_t i = 0; i < n; ++i) r[i] = f.mul(f.reduce_unsigned(i + 1), a[i + 1]);
  return r;
}

}  // namespace expcx

#endif  // EXPCX_SERIES_HPP
