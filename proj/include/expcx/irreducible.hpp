#ifndef EXPCX_IRREDUCIBLE_HPP
#define EXPCX_IRREDUCIBLE_HPP

// Irreducibility of bivariate polynomials over F_p, and enumeration and
// counting of normalized polynomials.
//
// is_irreducible first runs cheap exact certificates (univariate cases,
// content in either variable, degree one in a variable, an irreducible
// specialization h(a, y) with the leading coefficient nonvanishing at a).
// When none of them decides, it searches for a factor g1 of each total degree
// e <= d/2 directly: the top homogeneous forms satisfy top(g1) top(g2) =
// top(h), so top(g1) runs over the normalized binary forms of degree e
// dividing top(h). Once the tops A, B are fixed, comparing homogeneous
// components of degree d-1, d-2, ... gives at each step the linear system
//
//     A * V_{f-t} + U_{e-t} * B = H_{d-t} - (known products)
//
// in the next-lower components U, V of g1, g2. The search walks every
// solution of these systems, so it finds a factor whenever one exists.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "expcx/bivariate.hpp"
#include "expcx/linalg.hpp"
#include "expcx/univariate.hpp"

namespace expcx {

struct IrreducibilityConfig {
  /// Cap on leading-form candidates plus lifting branches for one polynomial.
  std::uint64_t budget = 10'000'000;
  /// Number of points tried per variable by the specialization certificate.
  std::uint32_t specialization_points = 32;
};

namespace detail {

using Form = std::vector<Residue>;  // binary form, entry j is the x^(k-j) y^j coefficient

inline Form form_mul(const PrimeField& f, const Form& a, const Form& b) {
  Form r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  return r;
}

/// B with A * B = H as binary forms, if it exists.
inline std::optional<Form> form_divide(const PrimeField& f, const Form& h, const Form& a) {
  const std::size_t dh = h.size() - 1;
  const std::size_t da = a.size() - 1;
  uni::Poly ph(h.begin(), h.end());
  uni::Poly pa(a.begin(), a.end());
  uni::trim(ph);
  uni::trim(pa);
  auto q = uni::exact_divide(f, ph, pa);
  if (!q) return std::nullopt;
  // x-multiplicities: da - deg(pa) must not exceed dh - deg(ph)
  if (da - static_cast<std::size_t>(uni::degree(pa)) > dh - static_cast<std::size_t>(uni::degree(ph))) {
    return std::nullopt;
  }
  Form b(dh - da + 1, 0);
  for (std::size_t i = 0; i < q->size(); ++i) b[i] = (*q)[i];
  return b;
}

class FactorSearch {
 public:
  FactorSearch(const BivariatePoly& h, std::uint64_t budget)
      : f_(h.field()), d_(h.total_degree()), budget_(budget) {
    for (unsigned k = 0; k <= d_; ++k) parts_.push_back(h.homogeneous_part(k));
  }

  /// A factor of total degree e (normalized), with its cofactor.
  std::optional<std::pair<BivariatePoly, BivariatePoly>> factor_of_degree(unsigned e) {
    e_ = e;
    g_ = d_ - e;
    const Form& top = parts_[d_];
    Form a(e + 1, 0);
    // normalized forms: first nonzero entry is 1
    for (std::size_t lead = 0; lead <= e; ++lead) {
      std::fill(a.begin(), a.end(), 0);
      a[lead] = 1;
      std::vector<Residue> tail(e - lead, 0);
      do {
        for (std::size_t t = 0; t < tail.size(); ++t) a[lead + 1 + t] = tail[t];
        charge();
        auto b = form_divide(f_, top, a);
        if (!b) continue;
        u_.assign(e + 1, Form{});
        v_.assign(g_ + 1, Form{});
        u_[e] = a;
        v_[g_] = *b;
        if (lift(1)) return assemble();
      } while (odometer_next(tail, f_.modulus()));
    }
    return std::nullopt;
  }

 private:
  void charge() {
    if (++used_ > budget_) {
      throw Error(Errc::budget_exceeded, "factor search exceeded " + std::to_string(budget_) + " steps");
    }
  }

  // Components U_e..U_{e-t+1} and V_g..V_{g-t+1} are fixed; solve depth t.
  bool lift(unsigned t) {
    charge();
    if (t > d_) return true;
    const unsigned k = d_ - t;
    const int ue = static_cast<int>(e_) - static_cast<int>(t);
    const int vg = static_cast<int>(g_) - static_cast<int>(t);
    Form rhs = parts_[k];
    for (unsigned a = 0; a <= e_; ++a) {
      if (a > k) break;
      const unsigned b = k - a;
      if (a == e_ || b >= g_) continue;
      if (static_cast<int>(a) <= ue || static_cast<int>(b) <= vg) continue;
      const Form prod = form_mul(f_, u_[a], v_[b]);
      for (std::size_t j = 0; j < prod.size(); ++j) rhs[j] = f_.sub(rhs[j], prod[j]);
    }
    std::vector<Vector> columns;
    if (vg >= 0) {
      for (int j = 0; j <= vg; ++j) {
        Vector col(k + 1, 0);
        for (std::size_t i = 0; i < u_[e_].size(); ++i) col[i + static_cast<std::size_t>(j)] = u_[e_][i];
        columns.push_back(std::move(col));
      }
    }
    if (ue >= 0) {
      for (int j = 0; j <= ue; ++j) {
        Vector col(k + 1, 0);
        for (std::size_t i = 0; i < v_[g_].size(); ++i) col[i + static_cast<std::size_t>(j)] = v_[g_][i];
        columns.push_back(std::move(col));
      }
    }
    if (columns.empty()) {
      for (Residue r : rhs) {
        if (r != 0) return false;
      }
      return lift(t + 1);
    }
    auto sol = solve_columns(f_, columns, rhs);
    if (!sol) return false;
    std::vector<Residue> coeffs(sol->kernel.size(), 0);
    do {
      Vector u = sol->particular;
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        for (std::size_t c = 0; c < u.size(); ++c) u[c] = f_.add(u[c], f_.mul(coeffs[i], sol->kernel[i][c]));
      }
      std::size_t pos = 0;
      if (vg >= 0) {
        v_[static_cast<std::size_t>(vg)].assign(u.begin(), u.begin() + vg + 1);
        pos = static_cast<std::size_t>(vg) + 1;
      }
      if (ue >= 0) u_[static_cast<std::size_t>(ue)].assign(u.begin() + static_cast<std::ptrdiff_t>(pos), u.end());
      if (lift(t + 1)) return true;
      if (!coeffs.empty()) charge();
    } while (odometer_next(coeffs, f_.modulus()));
    return false;
  }

  std::pair<BivariatePoly, BivariatePoly> assemble() const {
    auto build = [&](const std::vector<Form>& comps) {
      BivariatePoly p(f_);
      for (std::size_t k = 0; k < comps.size(); ++k) {
        for (std::size_t j = 0; j < comps[k].size(); ++j) {
          p.add_term(static_cast<unsigned>(k - j), static_cast<unsigned>(j), comps[k][j]);
        }
      }
      return p;
    };
    return {build(u_), build(v_)};
  }

  PrimeField f_;
  unsigned d_;
  unsigned e_ = 0;
  unsigned g_ = 0;
  std::vector<Form> parts_;
  std::vector<Form> u_;
  std::vector<Form> v_;
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
};

inline uni::Poly content(const PrimeField& f, const std::vector<uni::Poly>& coeffs) {
  uni::Poly g;
  for (const auto& c : coeffs) {
    g = uni::gcd(f, g, c);
    if (g.size() == 1) break;
  }
  return g;
}

/// True if some h(a, .) with nonvanishing leading coefficient is irreducible
/// of full degree. Only meaningful when h is primitive in that variable.
inline bool irreducible_specialization(const PrimeField& f, const std::vector<uni::Poly>& coeffs,
                                       std::uint32_t points) {
  const std::uint64_t tries = std::min<std::uint64_t>(f.modulus(), points);
  for (std::uint64_t a = 0; a < tries; ++a) {
    const auto at = static_cast<Residue>(a);
    if (uni::eval(f, coeffs.back(), at) == 0) continue;
    uni::Poly spec(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j) spec[j] = uni::eval(f, coeffs[j], at);
    if (uni::is_irreducible(f, spec)) return true;
  }
  return false;
}

}  // namespace detail

/// A nontrivial factorization h = g1 * g2 (g1 normalized, deg g1 <= deg g2),
/// or std::nullopt when h is irreducible. Constants have no factorization.
inline std::optional<std::pair<BivariatePoly, BivariatePoly>> find_factor(const BivariatePoly& h,
                                                                          const IrreducibilityConfig& cfg = {}) {
  if (h.is_zero()) throw Error(Errc::zero_polynomial, "factor search on the zero polynomial");
  detail::FactorSearch search(h, cfg.budget);
  for (unsigned e = 1; 2 * e <= h.total_degree(); ++e) {
    if (auto fac = search.factor_of_degree(e)) return fac;
  }
  return std::nullopt;
}

/// Irreducibility in F_p[x, y]; nonzero constants (units) are not irreducible.
/// Throws ZeroPolynomial, BudgetExceeded.
inline bool is_irreducible(const BivariatePoly& h, const IrreducibilityConfig& cfg = {}) {
  if (h.is_zero()) throw Error(Errc::zero_polynomial, "irreducibility of the zero polynomial");
  const PrimeField& f = h.field();
  const unsigned d = h.total_degree();
  if (d == 0) return false;
  if (d == 1) return true;
  const auto ycoef = h.y_coefficients();
  const auto xcoef = h.x_coefficients();
  if (ycoef.size() == 1) return uni::is_irreducible(f, ycoef[0]);
  if (xcoef.size() == 1) return uni::is_irreducible(f, xcoef[0]);
  if (uni::degree(detail::content(f, ycoef)) > 0) return false;
  if (uni::degree(detail::content(f, xcoef)) > 0) return false;
  // primitive of degree one in a variable, e.g. y - f(x)
  if (ycoef.size() == 2 || xcoef.size() == 2) return true;
  if (detail::irreducible_specialization(f, ycoef, cfg.specialization_points)) return true;
  if (detail::irreducible_specialization(f, xcoef, cfg.specialization_points)) return true;
  return !find_factor(h, cfg).has_value();
}

// ---------------------------------------------------------------------------
// Enumeration of normalized polynomials of total degree exactly d. The
// coefficient vector (monomial order, index 0 first) runs in increasing
// lexicographic order: the part of degree < d is an odometer with the last
// monomial fastest, and for each lower part the top form runs through the
// normalized forms in lexicographic order.

inline constexpr std::uint64_t kEnumerationCap = 100'000'000;

/// Number of normalized polynomials of total degree exactly d, or
/// std::nullopt if it exceeds `cap`.
inline std::optional<std::uint64_t> normalized_count(Residue q, unsigned d, std::uint64_t cap = kEnumerationCap) {
  boost::multiprecision::cpp_int top = 0;
  boost::multiprecision::cpp_int qq = q;
  // (q^(d+1) - 1)/(q - 1) normalized top forms
  top = (boost::multiprecision::pow(qq, d + 1) - 1) / (qq - 1);
  boost::multiprecision::cpp_int total = top * boost::multiprecision::pow(qq, static_cast<unsigned>(monomial_count(d) - d - 1));
  if (total > cap) return std::nullopt;
  return static_cast<std::uint64_t>(total);
}

class NormalizedEnumerator {
 public:
  NormalizedEnumerator(PrimeField field, unsigned d) : field_(field), d_(d) {
    if (!normalized_count(field.modulus(), d)) {
      throw Error(Errc::budget_exceeded, "more than " + std::to_string(kEnumerationCap) +
                                             " normalized polynomials of degree " + std::to_string(d));
    }
    lower_.assign(monomial_count(d) - d - 1, 0);
    top_.assign(d + 1, 0);
    top_[d] = 1;
  }

  /// Coefficient vector of the current polynomial over the monomials of degree <= d.
  Vector current() const {
    Vector v(lower_);
    v.insert(v.end(), top_.begin(), top_.end());
    return v;
  }
  BivariatePoly poly() const { return BivariatePoly::from_dense(field_, current()); }

  bool done() const noexcept { return done_; }

  void advance() {
    if (next_top()) return;
    top_.assign(d_ + 1, 0);
    top_[d_] = 1;
    if (!detail::odometer_next(lower_, field_.modulus())) done_ = true;
  }

 private:
  // next normalized top form in lexicographic order
  bool next_top() {
    const Residue q = field_.modulus();
    std::size_t lead = 0;
    while (top_[lead] == 0) ++lead;
    for (std::size_t pos = d_ + 1; pos-- > lead + 1;) {
      if (++top_[pos] < q) return true;
      top_[pos] = 0;
    }
    if (lead == 0) return false;
    top_[lead] = 0;
    top_[lead - 1] = 1;
    return true;
  }

  PrimeField field_;
  unsigned d_;
  Vector lower_;
  Vector top_;
  bool done_ = false;
};

/// Calls fn(h) for every normalized polynomial of total degree exactly d.
template <typename Fn>
void enumerate_normalized(const PrimeField& field, unsigned d, Fn&& fn) {
  for (NormalizedEnumerator it(field, d); !it.done(); it.advance()) fn(it.poly());
}

inline std::vector<BivariatePoly> list_normalized(const PrimeField& field, unsigned d) {
  std::vector<BivariatePoly> out;
  enumerate_normalized(field, d, [&](BivariatePoly h) { out.push_back(std::move(h)); });
  return out;
}

/// I_2(d): the number of normalized irreducible polynomials of total degree d.
inline std::uint64_t count_normalized_irreducible(const PrimeField& field, unsigned d,
                                                  const IrreducibilityConfig& cfg = {}) {
  std::uint64_t count = 0;
  enumerate_normalized(field, d, [&](const BivariatePoly& h) {
    if (is_irreducible(h, cfg)) ++count;
  });
  return count;
}

struct CarlitzEstimate {
  boost::multiprecision::cpp_rational main_term;  // q^C(d+2,2) / (q-1)
  boost::multiprecision::cpp_int error_scale;     // q^C(d+1,2)
};

inline CarlitzEstimate carlitz_estimate(const PrimeField& field, unsigned d) {
  const boost::multiprecision::cpp_int q = field.modulus();
  const auto big = boost::multiprecision::pow(q, static_cast<unsigned>((d + 2) * (d + 1) / 2));
  return {boost::multiprecision::cpp_rational(big, q - 1),
          boost::multiprecision::pow(q, static_cast<unsigned>((d + 1) * d / 2))};
}

}  // namespace expcx

#endif  // EXPCX_IRREDUCIBLE_HPP
