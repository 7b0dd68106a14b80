#ifndef EXPCX_BIVARIATE_HPP
#define EXPCX_BIVARIATE_HPP

// Sparse bivariate polynomials h(x, y) over F_p.
//
// Monomial order. All coefficient vectors and enumerations in the library use
// the graded order in which, within total degree t, the monomials run
// x^t, x^(t-1) y, ..., y^t. The position of x^i y^j is therefore
//
//     index(i, j) = (i + j)(i + j + 1) / 2 + j
//
// and the monomials of total degree <= d occupy indices [0, (d+1)(d+2)/2).

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "expcx/field.hpp"
#include "expcx/series.hpp"
#include "expcx/univariate.hpp"

namespace expcx {

/// x^x_exp y^y_exp
struct Monomial {
  unsigned x_exp = 0;
  unsigned y_exp = 0;

  unsigned degree() const noexcept { return x_exp + y_exp; }
  std::size_t index() const noexcept {
    const std::size_t t = degree();
    return t * (t + 1) / 2 + y_exp;
  }

  static Monomial at(std::size_t index) noexcept {
    std::size_t t = 0;
    while ((t + 1) * (t + 2) / 2 <= index) ++t;
    const auto j = static_cast<unsigned>(index - t * (t + 1) / 2);
    return {static_cast<unsigned>(t) - j, j};
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b) noexcept { return a.index() < b.index(); }
};

/// #M(d): number of monomials of total degree <= d.
constexpr std::size_t monomial_count(std::size_t d) noexcept { return (d + 1) * (d + 2) / 2; }

class BivariatePoly {
 public:
  using TermMap = std::map<Monomial, Residue>;

  explicit BivariatePoly(PrimeField field) : field_(field) {}

  static BivariatePoly constant(PrimeField field, std::int64_t c) { return monomial(field, c, 0, 0); }
  static BivariatePoly x(PrimeField field) { return monomial(field, 1, 1, 0); }
  static BivariatePoly y(PrimeField field) { return monomial(field, 1, 0, 1); }
  static BivariatePoly monomial(PrimeField field, std::int64_t c, unsigned i, unsigned j) {
    BivariatePoly h(field);
    h.add_term(i, j, field.reduce(c));
    return h;
  }

  /// Builds from (c, i, j) triples; repeated monomials accumulate.
  static BivariatePoly from_terms(PrimeField field, const std::vector<std::tuple<std::int64_t, unsigned, unsigned>>& terms) {
    BivariatePoly h(field);
    for (const auto& [c, i, j] : terms) h.add_term(i, j, field.reduce(c));
    return h;
  }

  /// Coefficient vector in monomial order; entry k belongs to Monomial::at(k).
  static BivariatePoly from_dense(PrimeField field, std::span<const Residue> coeffs) {
    BivariatePoly h(field);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k] != 0) h.terms_.emplace_hint(h.terms_.end(), Monomial::at(k), field.reduce_unsigned(coeffs[k]));
    }
    return h;
  }

  const PrimeField& field() const noexcept { return field_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  /// 0 for the zero polynomial.
  unsigned total_degree() const noexcept { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }
  unsigned degree_x() const noexcept {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.x_exp);
    return d;
  }
  unsigned degree_y() const noexcept {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.y_exp);
    return d;
  }

  Residue coefficient(unsigned i, unsigned j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(unsigned i, unsigned j, Residue c) {
    c = field_.reduce_unsigned(c);
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(Monomial{i, j}, c);
    if (!inserted) {
      it->second = field_.add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Dense coefficient vector over the monomials of degree <= d.
  std::vector<Residue> dense(std::size_t d) const {
    std::vector<Residue> v(monomial_count(d), 0);
    for (const auto& [m, c] : terms_) {
      if (m.degree() <= d) v[m.index()] = c;
    }
    return v;
  }

  /// Coefficients (a_0, ..., a_t) of the degree-t homogeneous part
  /// a_0 x^t + a_1 x^(t-1) y + ... + a_t y^t.
  std::vector<Residue> homogeneous_part(unsigned t) const {
    std::vector<Residue> a(t + 1, 0);
    auto it = terms_.lower_bound(Monomial{t, 0});
    for (; it != terms_.end() && it->first.degree() == t; ++it) a[it->first.y_exp] = it->second;
    return a;
  }

  /// h as a polynomial in y whose coefficients lie in F_p[x].
  std::vector<uni::Poly> y_coefficients() const {
    std::vector<uni::Poly> out(is_zero() ? 0 : degree_y() + 1);
    for (const auto& [m, c] : terms_) {
      auto& col = out[m.y_exp];
      if (col.size() <= m.x_exp) col.resize(m.x_exp + 1, 0);
      col[m.x_exp] = c;
    }
    return out;
  }
  /// h as a polynomial in x whose coefficients lie in F_p[y].
  std::vector<uni::Poly> x_coefficients() const {
    std::vector<uni::Poly> out(is_zero() ? 0 : degree_x() + 1);
    for (const auto& [m, c] : terms_) {
      auto& col = out[m.x_exp];
      if (col.size() <= m.y_exp) col.resize(m.y_exp + 1, 0);
      col[m.y_exp] = c;
    }
    return out;
  }
  static BivariatePoly from_y_coefficients(PrimeField field, const std::vector<uni::Poly>& cols) {
    BivariatePoly h(field);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (std::size_t i = 0; i < cols[j].size(); ++i) {
        if (cols[j][i] != 0) h.terms_.emplace(Monomial{static_cast<unsigned>(i), static_cast<unsigned>(j)}, cols[j][i]);
      }
    }
    return h;
  }

  BivariatePoly scaled(Residue c) const {
    BivariatePoly r(field_);
    c = field_.reduce_unsigned(c);
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, field_.mul(v, c));
    return r;
  }

  BivariatePoly operator-() const { return scaled(field_.neg(1)); }

  friend BivariatePoly operator+(const BivariatePoly& a, const BivariatePoly& b) {
    check_same(a, b);
    BivariatePoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m.x_exp, m.y_exp, c);
    return r;
  }
  friend BivariatePoly operator-(const BivariatePoly& a, const BivariatePoly& b) {
    check_same(a, b);
    BivariatePoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m.x_exp, m.y_exp, a.field_.neg(c));
    return r;
  }
  friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
    check_same(a, b);
    BivariatePoly r(a.field_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        r.add_term(ma.x_exp + mb.x_exp, ma.y_exp + mb.y_exp, a.field_.mul(ca, cb));
      }
    }
    return r;
  }

  friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

 private:
  static void check_same(const BivariatePoly& a, const BivariatePoly& b) {
    if (!(a.field_ == b.field_)) throw Error(Errc::field_mismatch, "polynomials over different fields");
  }

  PrimeField field_;
  TermMap terms_;
};

/// h(x, G(x)) mod x^N, built from the cached powers G^0, ..., G^deg_y(h).
inline TruncatedSeries eval_poly_at_series(const BivariatePoly& h, const TruncatedSeries& g) {
  if (!(h.field() == g.field())) throw Error(Errc::field_mismatch, "polynomial and series over different fields");
  const PrimeField& f = g.field();
  const std::size_t n = g.truncation();
  TruncatedSeries result(f, n);
  if (n == 0 || h.is_zero()) return result;
  std::vector<TruncatedSeries> powers;
  powers.push_back(TruncatedSeries::constant(f, n, 1));
  const unsigned dy = h.degree_y();
  for (unsigned j = 1; j <= dy; ++j) powers.push_back(series_mul(powers.back(), g));
  for (const auto& [m, c] : h.terms()) {
    const TruncatedSeries& pw = powers[m.y_exp];
    for (std::size_t k = 0; k + m.x_exp < n; ++k) {
      result[k + m.x_exp] = f.add(result[k + m.x_exp], f.mul(c, pw[k]));
    }
  }
  return result;
}

/// Scales h so that the first nonzero entry of its leading homogeneous
/// coefficient vector (x^d, x^(d-1) y, ..., y^d order) is 1.
inline BivariatePoly normalize(const BivariatePoly& h) {
  if (h.is_zero()) throw Error(Errc::zero_polynomial, "cannot normalize the zero polynomial");
  const auto top = h.homogeneous_part(h.total_degree());
  for (Residue a : top) {
    if (a != 0) return a == 1 ? h : h.scaled(h.field().inv(a));
  }
  return h;  // unreachable: the top part of a nonzero polynomial is nonzero
}

inline bool is_normalized(const BivariatePoly& h) {
  if (h.is_zero()) return false;
  for (Residue a : h.homogeneous_part(h.total_degree())) {
    if (a != 0) return a == 1;
  }
  return false;
}

/// Exact division in F_p[x][y]; std::nullopt when g does not divide h.
/// Throws ZeroDivisor for g = 0.
inline std::optional<BivariatePoly> try_divide(const BivariatePoly& h, const BivariatePoly& g) {
  if (!(h.field() == g.field())) throw Error(Errc::field_mismatch, "polynomials over different fields");
  if (g.is_zero()) throw Error(Errc::zero_divisor, "division by the zero polynomial");
  const PrimeField& f = h.field();
  if (h.is_zero()) return BivariatePoly(f);
  auto rem = h.y_coefficients();
  const auto div = g.y_coefficients();
  const std::size_t m = div.size() - 1;
  if (rem.size() < div.size()) return std::nullopt;
  std::vector<uni::Poly> quot(rem.size() - m);
  const uni::Poly& lead = div[m];
  for (std::size_t k = rem.size(); k-- > m;) {
    if (rem[k].empty()) continue;
    auto c = uni::exact_divide(f, rem[k], lead);
    if (!c) return std::nullopt;
    for (std::size_t j = 0; j <= m; ++j) rem[k - m + j] = uni::sub(f, rem[k - m + j], uni::mul(f, *c, div[j]));
    quot[k - m] = std::move(*c);
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (!rem[k].empty()) return std::nullopt;
  }
  BivariatePoly q = BivariatePoly::from_y_coefficients(f, quot);
  if (!(q * g == h)) return std::nullopt;
  return q;
}

// ---------------------------------------------------------------------------
// Text format: a sum of terms c*x^i*y^j. The factor order is free, "^1" and a
// unit coefficient may be omitted, and '-' is accepted between terms. Output
// lists terms in monomial order joined by " + " with residue coefficients.

inline std::string to_string(const BivariatePoly& h) {
  if (h.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : h.terms()) {
    if (!first) os << " + ";
    first = false;
    bool need_star = false;
    if (c != 1 || m.degree() == 0) {
      os << c;
      need_star = true;
    }
    auto factor = [&](char var, unsigned e) {
      if (e == 0) return;
      if (need_star) os << '*';
      os << var;
      if (e != 1) os << '^' << e;
      need_star = true;
    };
    factor('x', m.x_exp);
    factor('y', m.y_exp);
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const BivariatePoly& h) { return os << to_string(h); }

namespace detail {

class PolyParser {
 public:
  PolyParser(PrimeField field, std::string_view text) : field_(field), text_(text) {}

  BivariatePoly parse() {
    BivariatePoly h(field_);
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    for (;;) {
      auto [c, i, j] = term();
      h.add_term(i, j, negative ? field_.neg(c) : c);
      skip_ws();
      if (at_end()) break;
      if (peek() == '+') {
        negative = false;
      } else if (peek() == '-') {
        negative = true;
      } else {
        fail(std::string("unexpected '") + peek() + "'");
      }
      ++pos_;
    }
    return h;
  }

 private:
  std::tuple<Residue, unsigned, unsigned> term() {
    Residue c = 1;
    unsigned i = 0;
    unsigned j = 0;
    for (;;) {
      skip_ws();
      if (at_end()) fail("expected a factor");
      const char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        c = field_.mul(c, field_.reduce_unsigned(number()));
      } else if (ch == 'x' || ch == 'y') {
        ++pos_;
        unsigned e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_ws();
          if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent");
          const std::uint64_t v = number();
          if (v > 1'000'000) fail("exponent too large");
          e = static_cast<unsigned>(v);
        }
        (ch == 'x' ? i : j) += e;
      } else {
        fail(std::string("unexpected '") + ch + "'");
      }
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
    }
    return {c, i, j};
  }

  std::uint64_t number() {
    std::uint64_t v = 0;
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      if (pos_ - start > 18) fail("number too long");
      v = v * 10 + static_cast<std::uint64_t>(peek() - '0');
      ++pos_;
    }
    return v;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::parse_error, "column " + std::to_string(pos_ + 1) + ": " + what);
  }

  PrimeField field_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Throws ParseError with a 1-based column.
inline BivariatePoly parse_poly(const PrimeField& field, std::string_view text) {
  return detail::PolyParser(field, text).parse();
}

}  // namespace expcx

#endif  // EXPCX_BIVARIATE_HPP
