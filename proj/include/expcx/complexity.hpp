#ifndef EXPCX_COMPLEXITY_HPP
#define EXPCX_COMPLEXITY_HPP

// Expansion complexity E_N and irreducible-expansion complexity E*_N.
//
// For a degree bound d, every monomial x^i y^j of total degree <= d is
// evaluated at y = G(x) and reduced mod x^N, giving a row of length N. The
// polynomials of degree <= d with h(x, G(x)) = 0 mod x^N are exactly the left
// kernel of this #M(d) x N matrix. The matrix is built column by column (one
// column per power-series coefficient), which lets a whole profile
// N = 1..Nmax reuse one elimination per degree.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expcx/bivariate.hpp"
#include "expcx/irreducible.hpp"
#include "expcx/linalg.hpp"
#include "expcx/random.hpp"
#include "expcx/sequence.hpp"
#include "expcx/series.hpp"

namespace expcx {

enum class ComplexityKind { expansion, i_expansion };
enum class ComplexityStatus { exact, lower_bound };

inline std::string_view to_string(ComplexityKind k) {
  return k == ComplexityKind::expansion ? "ExpansionComplexity" : "IExpansionComplexity";
}
inline std::string_view to_string(ComplexityStatus s) {
  return s == ComplexityStatus::exact ? "Exact" : "LowerBound";
}

/// One E_N or E*_N value. With status lower_bound, `value` is a proven lower
/// bound, `upper_bound` the degree of the irreducible witness that was found.
struct ComplexityResult {
  std::size_t n = 0;
  unsigned value = 0;
  std::optional<BivariatePoly> witness;
  ComplexityKind kind = ComplexityKind::expansion;
  ComplexityStatus status = ComplexityStatus::exact;
  std::optional<unsigned> upper_bound;
};

struct ComplexityProfile {
  SequencePrefix sequence;
  std::vector<ComplexityResult> entries;  // entries[k] is N = k + 1
};

struct SolutionSpace {
  unsigned degree_bound = 0;
  std::size_t n = 0;
  std::vector<Vector> vectors;       // reduced row-echelon basis, monomial order
  std::vector<BivariatePoly> basis;  // the same, as polynomials
  std::size_t dimension() const noexcept { return basis.size(); }
};

struct SearchConfig {
  std::uint64_t enum_cap = 1'000'000;  // projective points enumerated exhaustively
  std::uint64_t sample_cap = 10'000;   // random elements tried above the cap
  std::uint64_t seed = 0x5EEDULL;
  IrreducibilityConfig irreducibility;
};

/// Largest d with d(d+1)/2 <= n.
inline unsigned expansion_bound(std::size_t n) {
  unsigned d = 0;
  while (static_cast<std::size_t>(d + 1) * (d + 2) / 2 <= n) ++d;
  return d;
}

/// Coefficients of x^i G(x)^j at every position, with powers of G computed
/// on demand up to the prefix length.
class MonomialEvaluator {
 public:
  explicit MonomialEvaluator(const SequencePrefix& s) : field_(s.field()), g_(series_from_prefix(s)) {
    powers_.push_back(TruncatedSeries::constant(field_, g_.truncation(), 1));
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t length() const noexcept { return g_.truncation(); }

  /// Column `pos` of the evaluation matrix for M(d).
  Vector column(unsigned d, std::size_t pos) {
    ensure_power(d);
    Vector col(monomial_count(d), 0);
    for (unsigned t = 0; t <= d; ++t) {
      for (unsigned j = 0; j <= t; ++j) {
        const unsigned i = t - j;
        if (pos >= i) col[Monomial{i, j}.index()] = powers_[j][pos - i];
      }
    }
    return col;
  }

  /// Reduced echelon form of the first n columns for degree bound d.
  RowEchelon echelon(unsigned d, std::size_t n) {
    RowEchelon ech(field_, monomial_count(d));
    for (std::size_t pos = 0; pos < n; ++pos) ech.insert(column(d, pos));
    return ech;
  }

 private:
  void ensure_power(unsigned j) {
    while (powers_.size() <= j) powers_.push_back(series_mul(powers_.back(), g_));
  }

  PrimeField field_;
  TruncatedSeries g_;
  std::vector<TruncatedSeries> powers_;
};

namespace detail {

inline void check_prefix(const SequencePrefix& s, std::size_t n) {
  if (n < 1 || n > s.size()) {
    throw Error(Errc::prefix_too_short, "N = " + std::to_string(n) + " needs 1 <= N <= prefix length " +
                                            std::to_string(s.size()));
  }
}

inline SolutionSpace space_from_echelon(const PrimeField& f, const RowEchelon& ech, unsigned d, std::size_t n) {
  SolutionSpace space;
  space.degree_bound = d;
  space.n = n;
  space.vectors = rref_basis(f, monomial_count(d), ech.orthogonal_complement());
  for (const auto& v : space.vectors) space.basis.push_back(BivariatePoly::from_dense(f, v));
  return space;
}

/// Witness rule: the first row of the reduced echelon kernel basis, normalized.
inline BivariatePoly first_witness(const SolutionSpace& space) { return normalize(space.basis.front()); }

}  // namespace detail

/// Basis of {h : deg h <= d, h(x, G(x)) = 0 mod x^n}. Throws PrefixTooShort.
inline SolutionSpace solution_space(const SequencePrefix& s, unsigned d, std::size_t n) {
  detail::check_prefix(s, n);
  MonomialEvaluator eval(s.prefix(n));
  return detail::space_from_echelon(s.field(), eval.echelon(d, n), d, n);
}

/// E_N: least total degree of a nonzero h with h(x, G(x)) = 0 mod x^N.
inline ComplexityResult expansion_complexity(const SequencePrefix& s, std::size_t n) {
  detail::check_prefix(s, n);
  ComplexityResult res;
  res.n = n;
  res.kind = ComplexityKind::expansion;
  if (s.is_zero_through(n)) return res;
  MonomialEvaluator eval(s.prefix(n));
  const unsigned bound = expansion_bound(n);
  for (unsigned d = 1; d <= bound; ++d) {
    RowEchelon ech = eval.echelon(d, n);
    if (ech.rank() == monomial_count(d)) continue;
    res.value = d;
    res.witness = detail::first_witness(detail::space_from_echelon(s.field(), ech, d, n));
    return res;
  }
  throw std::logic_error("expansion_complexity: no annihilator within the counting bound");
}

/// E_N for N = 1..n_max using one incrementally extended elimination per degree.
inline ComplexityProfile expansion_profile(const SequencePrefix& s, std::size_t n_max, bool with_witnesses = true) {
  if (n_max > s.size()) {
    throw Error(Errc::prefix_too_short, "n_max = " + std::to_string(n_max) + " exceeds prefix length " +
                                            std::to_string(s.size()));
  }
  ComplexityProfile profile{s.prefix(n_max), {}};
  MonomialEvaluator eval(profile.sequence);
  unsigned d = 1;
  std::optional<RowEchelon> ech;
  for (std::size_t n = 1; n <= n_max; ++n) {
    ComplexityResult res;
    res.n = n;
    if (profile.sequence.is_zero_through(n)) {
      profile.entries.push_back(res);
      continue;
    }
    if (!ech) {
      ech = eval.echelon(d, n);
    } else {
      ech->insert(eval.column(d, n - 1));
    }
    while (ech->rank() == monomial_count(d)) {
      ++d;
      ech = eval.echelon(d, n);
    }
    res.value = d;
    if (with_witnesses) res.witness = detail::first_witness(detail::space_from_echelon(s.field(), *ech, d, n));
    profile.entries.push_back(std::move(res));
  }
  return profile;
}

namespace detail {

struct LevelOutcome {
  std::optional<BivariatePoly> found;
  bool exhaustive = false;
};

/// Looks for an irreducible polynomial of total degree exactly d in the span
/// of `space`. `extra` is tried first when the span is sampled rather than
/// enumerated (it must lie in the span).
inline LevelOutcome search_level(const SolutionSpace& space, unsigned d, const std::optional<BivariatePoly>& extra,
                                 const SearchConfig& cfg, std::uint64_t stream) {
  LevelOutcome out;
  if (space.basis.empty()) {
    out.exhaustive = true;
    return out;
  }
  const PrimeField& f = space.basis.front().field();
  const std::size_t width = monomial_count(space.degree_bound);

  // A monomial x^a y^b dividing every basis element divides the whole span,
  // so no element of degree >= 2 is irreducible.
  if (d >= 2) {
    unsigned min_x = ~0U;
    unsigned min_y = ~0U;
    for (const auto& b : space.basis) {
      for (const auto& [m, c] : b.terms()) {
        min_x = std::min(min_x, m.x_exp);
        min_y = std::min(min_y, m.y_exp);
      }
    }
    if (min_x + min_y >= 1) {
      out.exhaustive = true;
      return out;
    }
  }

  auto accept = [&](const BivariatePoly& h) -> bool {
    if (h.is_zero() || h.total_degree() != d) return false;
    return is_irreducible(h, cfg.irreducibility);
  };

  namespace mp = boost::multiprecision;
  const mp::cpp_int q = f.modulus();
  const mp::cpp_int points = (mp::pow(q, static_cast<unsigned>(space.dimension())) - 1) / (q - 1);
  if (points <= cfg.enum_cap) {
    bool undecided = false;
    for_each_projective(f, space.vectors, width, [&](const Vector& v) {
      BivariatePoly h = BivariatePoly::from_dense(f, v);
      try {
        if (accept(h)) {
          out.found = normalize(h);
          return true;
        }
      } catch (const Error& e) {
        if (e.code() != Errc::budget_exceeded) throw;
        undecided = true;
      }
      return false;
    });
    out.exhaustive = !out.found && !undecided;
    return out;
  }

  auto try_one = [&](const BivariatePoly& h) {
    try {
      if (accept(h)) out.found = normalize(h);
    } catch (const Error& e) {
      if (e.code() != Errc::budget_exceeded) throw;
    }
    return out.found.has_value();
  };
  for (const auto& b : space.basis) {
    if (try_one(b)) return out;
  }
  if (extra && try_one(*extra)) return out;
  Rng rng(mix_seed(cfg.seed, stream));
  for (std::uint64_t trial = 0; trial < cfg.sample_cap; ++trial) {
    Vector v(width, 0);
    bool nonzero = false;
    for (const auto& b : space.vectors) {
      const auto c = static_cast<Residue>(rng.below(f.modulus()));
      if (c == 0) continue;
      nonzero = true;
      for (std::size_t k = 0; k < width; ++k) v[k] = f.add(v[k], f.mul(c, b[k]));
    }
    if (nonzero && try_one(BivariatePoly::from_dense(f, v))) return out;
  }
  return out;
}

/// y - (s_0 + s_1 x + ... + s_{n-1} x^{n-1}); always irreducible.
inline BivariatePoly prefix_annihilator(const SequencePrefix& s, std::size_t n) {
  BivariatePoly h = BivariatePoly::y(s.field());
  for (std::size_t i = 0; i < n; ++i) h.add_term(static_cast<unsigned>(i), 0, s.field().neg(s[i]));
  return h;
}

}  // namespace detail

/// E*_N: least total degree of an irreducible h with h(x, G(x)) = 0 mod x^N.
inline ComplexityResult i_expansion_complexity(const SequencePrefix& s, std::size_t n, const SearchConfig& cfg = {}) {
  detail::check_prefix(s, n);
  ComplexityResult res;
  res.n = n;
  res.kind = ComplexityKind::i_expansion;
  if (s.is_zero_through(n)) return res;

  const unsigned start = expansion_complexity(s, n).value;
  const BivariatePoly fallback = detail::prefix_annihilator(s, n);
  const unsigned fallback_degree = fallback.total_degree();
  MonomialEvaluator eval(s.prefix(n));
  bool exact = true;
  unsigned lower = start;
  for (unsigned d = start; d <= fallback_degree; ++d) {
    const SolutionSpace space = detail::space_from_echelon(s.field(), eval.echelon(d, n), d, n);
    std::optional<BivariatePoly> extra;
    if (d == fallback_degree) extra = fallback;
    detail::LevelOutcome level = detail::search_level(space, d, extra, cfg, (static_cast<std::uint64_t>(n) << 32U) | d);
    if (!level.found && d == fallback_degree) level.found = normalize(fallback);
    if (level.found) {
      res.witness = std::move(level.found);
      if (exact) {
        res.value = d;
      } else {
        res.status = ComplexityStatus::lower_bound;
        res.value = lower;
        res.upper_bound = d;
      }
      return res;
    }
    if (!level.exhaustive && exact) {
      exact = false;
      lower = d;
    }
  }
  throw std::logic_error("i_expansion_complexity: fallback witness not reached");
}

/// Irreducible h of least degree d <= d_max (with d^2 <= length) annihilating
/// the whole prefix, or std::nullopt.
inline std::optional<BivariatePoly> find_defining_poly(const SequencePrefix& s, unsigned d_max,
                                                       const SearchConfig& cfg = {}) {
  if (s.empty()) throw Error(Errc::prefix_too_short, "empty prefix");
  MonomialEvaluator eval(s);
  for (unsigned d = 1; d <= d_max && static_cast<std::size_t>(d) * d <= s.size(); ++d) {
    const SolutionSpace space = detail::space_from_echelon(s.field(), eval.echelon(d, s.size()), d, s.size());
    auto level = detail::search_level(space, d, std::nullopt, cfg, (std::uint64_t{0xD1} << 32U) | d);
    if (level.found) return level.found;
  }
  return std::nullopt;
}

enum class ExtensionStatus { complete, ambiguous, inconsistent };

inline std::string_view to_string(ExtensionStatus s) {
  switch (s) {
    case ExtensionStatus::complete: return "Complete";
    case ExtensionStatus::ambiguous: return "Ambiguous";
    case ExtensionStatus::inconsistent: return "Inconsistent";
  }
  return "?";
}

struct ExtensionResult {
  SequencePrefix sequence;
  ExtensionStatus status = ExtensionStatus::complete;
  std::size_t appended = 0;
  std::vector<Residue> candidates;  // the surviving values at the step that stopped
  std::string diagnostic;
};

/// Appends `count` symbols, each the unique v keeping h(x, G) = 0 mod x^(k+1).
/// Throws PrerequisiteViolated if h does not annihilate the given prefix.
inline ExtensionResult extend_sequence(const BivariatePoly& h, const SequencePrefix& s, std::size_t count) {
  if (h.is_zero()) throw Error(Errc::zero_polynomial, "cannot extend with the zero polynomial");
  if (!(h.field() == s.field())) throw Error(Errc::field_mismatch, "polynomial and sequence over different fields");
  if (!eval_poly_at_series(h, series_from_prefix(s)).is_zero()) {
    throw Error(Errc::prerequisite_violated, "h(x, G(x)) is not 0 mod x^" + std::to_string(s.size()));
  }
  const PrimeField& f = s.field();
  ExtensionResult out{s, ExtensionStatus::complete, 0, {}, {}};
  for (std::size_t step = 0; step < count; ++step) {
    const std::size_t k = out.sequence.size();
    std::vector<Residue> survivors;
    std::vector<Residue> trial(out.sequence.symbols().begin(), out.sequence.symbols().end());
    trial.push_back(0);
    for (Residue v = 0; v < f.modulus(); ++v) {
      trial.back() = v;
      const TruncatedSeries r = eval_poly_at_series(h, TruncatedSeries(f, trial));
      if (r[k] == 0) survivors.push_back(v);
    }
    if (survivors.size() != 1) {
      out.status = survivors.empty() ? ExtensionStatus::inconsistent : ExtensionStatus::ambiguous;
      out.candidates = std::move(survivors);
      out.diagnostic = std::string(to_string(out.status)) + " at index " + std::to_string(k) + ": " +
                       std::to_string(out.candidates.size()) + " candidate value(s)";
      return out;
    }
    out.sequence.push_back(survivors.front());
    ++out.appended;
  }
  return out;
}

}  // namespace expcx

#endif  // EXPCX_COMPLEXITY_HPP
