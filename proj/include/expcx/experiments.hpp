#ifndef EXPCX_EXPERIMENTS_HPP
#define EXPCX_EXPERIMENTS_HPP

// Desk-scale checks of the structural results on expansion complexity, each
// producing an ExperimentReport. Per-case work is independent; with
// threads > 1 cases are computed in parallel into fixed slots, so reports are
// identical to serial runs.

#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "expcx/complexity.hpp"
#include "expcx/generators.hpp"
#include "expcx/io_json.hpp"
#include "expcx/irreducible.hpp"
#include "json.hpp"

namespace expcx {

inline constexpr int kReportSchemaVersion = 1;

enum class Verdict { pass, fail, inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct ExperimentReport {
  std::string experiment;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::optional<std::uint64_t> seed;
  std::vector<nlohmann::ordered_json> cases;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  Verdict verdict = Verdict::pass;
  double elapsed_ms = 0.0;
};

inline nlohmann::ordered_json to_json(const ExperimentReport& r, bool include_timing = true) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["experiment"] = r.experiment;
  j["params"] = r.params;
  j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
  j["cases"] = r.cases;
  j["summary"] = r.summary;
  j["verdict"] = to_string(r.verdict);
  if (include_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

/// Per-case table as CSV; columns follow the keys of the first case.
/// Non-scalar cells are written as quoted JSON.
inline std::string to_csv(const ExperimentReport& r) {
  std::ostringstream os;
  if (r.cases.empty()) return {};
  std::vector<std::string> columns;
  for (const auto& [key, value] : r.cases.front().items()) columns.push_back(key);
  auto cell = [](const nlohmann::ordered_json& v) -> std::string {
    if (v.is_string()) {
      std::string s = v.get<std::string>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string quoted = "\"";
      for (char c : s) quoted += (c == '"') ? std::string("\"\"") : std::string(1, c);
      return quoted + "\"";
    }
    if (v.is_null()) return {};
    if (v.is_primitive()) return v.dump();
    std::string s = v.dump();
    std::string quoted = "\"";
    for (char c : s) quoted += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
  };
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
  os << '\n';
  for (const auto& row : r.cases) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      os << (c ? "," : "");
      if (row.contains(columns[c])) os << cell(row[columns[c]]);
    }
    os << '\n';
  }
  return os.str();
}

namespace detail {

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// out[i] = fn(i) for i < count, over `threads` workers with a strided split.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, unsigned threads, Fn fn) {
  std::vector<std::optional<T>> slots(count);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t w) {
    try {
      for (std::size_t i = w; i < count; i += workers) slots[i].emplace(fn(i));
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline PrimeField inversive_field(std::uint64_t p) {
  if (p < 3) throw Error(Errc::invalid_modulus, "the inversive generator needs p >= 3");
  try {
    return PrimeField(p);
  } catch (const Error& e) {
    throw Error(Errc::invalid_modulus, e.what());
  }
}

inline std::string rational_string(const boost::multiprecision::cpp_rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

inline double rational_double(const boost::multiprecision::cpp_rational& r) {
  return static_cast<double>(r);
}

inline std::uint64_t binom2(std::uint64_t n) { return n * (n - 1) / 2; }  // C(n, 2)

}  // namespace detail

/// E_N of the unshifted inversive sequence against the closed form
/// E_N = d for C(d+1,2) <= N < C(d+2,2), N = 2..p-1.
inline ExperimentReport verify_theorem3(std::uint64_t p) {
  detail::Stopwatch clock;
  const PrimeField field = detail::inversive_field(p);
  ExperimentReport rep;
  rep.experiment = "theorem3";
  rep.params = {{"p", p}};
  const std::size_t n_max = p - 1;
  const ComplexityProfile profile = expansion_profile(inversive_prefix(field, 0, n_max), n_max, false);
  std::size_t violations = 0;
  for (std::size_t n = 2; n <= n_max; ++n) {
    const unsigned expected = expansion_bound(n);
    const unsigned got = profile.entries[n - 1].value;
    const bool ok = expected == got;
    if (!ok) ++violations;
    rep.cases.push_back({{"N", n}, {"expected", expected}, {"E_N", got}, {"ok", ok}});
  }
  rep.summary = {{"checked", rep.cases.size()}, {"violations", violations}};
  rep.verdict = violations == 0 ? Verdict::pass : Verdict::fail;
  rep.elapsed_ms = clock.elapsed_ms();
  return rep;
}

/// Admissible (d', N) windows: d' >= 6, C(d'+1,2)+2 <= N < C(d'+2,2), N <= p-1.
inline std::vector<std::pair<unsigned, std::size_t>> star_windows(std::uint64_t p) {
  std::vector<std::pair<unsigned, std::size_t>> out;
  for (unsigned d = 6;; ++d) {
    const std::size_t lo = detail::binom2(d + 1) + 2;
    const std::size_t hi = detail::binom2(d + 2);  // exclusive
    if (lo > p - 1) break;
    for (std::size_t n = lo; n < hi && n <= p - 1; ++n) out.emplace_back(d, n);
  }
  return out;
}

/// E*_N = d' on every admissible window of the inversive sequence.
inline ExperimentReport verify_theorem_star(std::uint64_t p, const SearchConfig& cfg = {}, unsigned threads = 1) {
  detail::Stopwatch clock;
  const PrimeField field = detail::inversive_field(p);
  ExperimentReport rep;
  rep.experiment = "theorem_star";
  rep.params = {{"p", p}, {"enum_cap", cfg.enum_cap}, {"sample_cap", cfg.sample_cap}};
  rep.seed = cfg.seed;
  const auto windows = star_windows(p);
  if (windows.empty()) {
    rep.summary = {{"note", "no admissible window"}, {"vacuous", true}};
    rep.verdict = Verdict::pass;
    rep.elapsed_ms = clock.elapsed_ms();
    return rep;
  }
  const SequencePrefix s = inversive_prefix(field, 0, p - 1);
  struct Row {
    ComplexityResult e;
    ComplexityResult star;
  };
  const auto rows = detail::parallel_map<Row>(windows.size(), threads, [&](std::size_t i) {
    return Row{expansion_complexity(s, windows[i].second), i_expansion_complexity(s, windows[i].second, cfg)};
  });
  bool any_fail = false;
  bool any_inconclusive = false;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto& [d, n] = windows[i];
    const auto& row = rows[i];
    const bool exact = row.star.status == ComplexityStatus::exact;
    const bool ok = exact && row.star.value == d;
    if (!exact) {
      any_inconclusive = true;
    } else if (!ok) {
      any_fail = true;
    }
    rep.cases.push_back({{"d_prime", d},
                         {"N", n},
                         {"E_N", row.e.value},
                         {"E_star_N", row.star.value},
                         {"status", to_string(row.star.status)},
                         {"witness", row.star.witness ? to_string(*row.star.witness) : ""},
                         {"ok", ok}});
  }
  rep.summary = {{"windows", windows.size()}, {"vacuous", false}};
  rep.verdict = any_fail ? Verdict::fail : (any_inconclusive ? Verdict::inconclusive : Verdict::pass);
  rep.elapsed_ms = clock.elapsed_ms();
  return rep;
}

/// Shifts m = 1..p-1 with E_N(S') < d at N = C(d+1,2), compared against
/// (d-1)^2 C(d,2) and (d-1)^2 C(d+1,2). Only the second is asserted.
inline ExperimentReport count_exceptional_shifts(std::uint64_t p, unsigned d, unsigned threads = 1) {
  detail::Stopwatch clock;
  const PrimeField field = detail::inversive_field(p);
  if (d < 1) throw Error(Errc::out_of_range, "d must be >= 1");
  const std::size_t n = detail::binom2(d + 1);
  if (n > p - 1) {
    throw Error(Errc::out_of_range, "C(d+1,2) = " + std::to_string(n) + " exceeds p-1 = " + std::to_string(p - 1));
  }
  ExperimentReport rep;
  rep.experiment = "exceptional_shifts";
  rep.params = {{"p", p}, {"d", d}, {"N", n}};
  const auto values = detail::parallel_map<unsigned>(p - 1, threads, [&](std::size_t i) {
    return expansion_complexity(inversive_prefix(field, i + 1, n), n).value;
  });
  std::uint64_t exceptional = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool exc = values[i] < d;
    if (exc) ++exceptional;
    rep.cases.push_back({{"m", i + 1}, {"E_N", values[i]}, {"exceptional", exc}});
  }
  const std::uint64_t sq = static_cast<std::uint64_t>(d - 1) * (d - 1);
  const std::uint64_t statement_bound = sq * (d >= 2 ? detail::binom2(d) : 0);
  const std::uint64_t proof_bound = sq * detail::binom2(d + 1);
  const bool proof_holds = exceptional <= proof_bound;
  rep.summary = {{"exceptional", exceptional},
                 {"statement_bound", statement_bound},
                 {"statement_bound_holds", exceptional <= statement_bound},
                 {"proof_bound", proof_bound},
                 {"proof_bound_holds", proof_holds},
                 {"vacuous", proof_bound >= p - 1}};
  rep.verdict = proof_holds ? Verdict::pass : Verdict::fail;
  rep.elapsed_ms = clock.elapsed_ms();
  return rep;
}

/// floor((1 - epsilon) sqrt(2n)), computed exactly.
inline unsigned threshold_bn(std::size_t n, const boost::multiprecision::cpp_rational& epsilon) {
  const boost::multiprecision::cpp_rational scale = (1 - epsilon) * (1 - epsilon) * 2 * n;
  unsigned b = 0;
  while (boost::multiprecision::cpp_rational((b + 1) * (b + 1)) <= scale) ++b;
  return b;
}

/// b q^(C(b+2,2)-1) / q^n.
inline boost::multiprecision::cpp_rational counting_bound(std::uint64_t q, std::size_t n, unsigned b) {
  namespace mp = boost::multiprecision;
  const mp::cpp_int qq = q;
  const auto exponent = static_cast<unsigned>(detail::binom2(b + 2) - 1);
  return mp::cpp_rational(b * mp::pow(qq, exponent), mp::pow(qq, static_cast<unsigned>(n)));
}

struct MonteCarloParams {
  std::uint64_t q = 2;
  std::size_t n = 40;
  std::size_t trials = 200;
  boost::multiprecision::cpp_rational epsilon{1, 4};
  std::uint64_t seed = 0;
  double max_fraction = 0.05;
  double max_lower_bound_fraction = 0.10;
};

/// Fraction of random length-n sequences with E*_n <= b_n, next to the
/// analytic counting bound. LowerBound results count as possibly below.
inline ExperimentReport montecarlo_theorem2(const MonteCarloParams& mc, const SearchConfig& base = {},
                                            unsigned threads = 1) {
  detail::Stopwatch clock;
  const PrimeField field(mc.q);
  if (mc.trials < 1) throw Error(Errc::out_of_range, "trials must be >= 1");
  if (mc.epsilon <= 0 || mc.epsilon >= 1) throw Error(Errc::out_of_range, "epsilon must lie in (0, 1)");
  ExperimentReport rep;
  rep.experiment = "montecarlo_theorem2";
  rep.params = {{"q", mc.q},
                {"n", mc.n},
                {"trials", mc.trials},
                {"epsilon", detail::rational_string(mc.epsilon)},
                {"max_fraction", mc.max_fraction},
                {"enum_cap", base.enum_cap},
                {"sample_cap", base.sample_cap},
                {"prng", std::string(kPrngName)}};
  rep.seed = mc.seed;
  const unsigned b = threshold_bn(mc.n, mc.epsilon);

  struct Trial {
    std::uint64_t seed;
    unsigned e;
    ComplexityResult star;
  };
  const auto trials = detail::parallel_map<Trial>(mc.trials, threads, [&](std::size_t t) {
    const std::uint64_t trial_seed = mix_seed(mc.seed, t);
    const SequencePrefix s = random_prefix(field, mc.n, trial_seed);
    SearchConfig cfg = base;
    cfg.seed = mix_seed(trial_seed, 0xC0FFEE);
    const unsigned e = mc.n == 0 ? 0 : expansion_complexity(s, mc.n).value;
    return Trial{trial_seed, e, i_expansion_complexity(s, mc.n, cfg)};
  });

  std::size_t below = 0;
  std::size_t degraded = 0;
  for (std::size_t t = 0; t < trials.size(); ++t) {
    const auto& tr = trials[t];
    const bool lb = tr.star.status == ComplexityStatus::lower_bound;
    if (lb) ++degraded;
    const bool possibly_below = tr.star.value <= b;
    if (possibly_below) ++below;
    rep.cases.push_back({{"trial", t},
                         {"seed", tr.seed},
                         {"E_n", tr.e},
                         {"E_star_n", tr.star.value},
                         {"status", to_string(tr.star.status)},
                         {"upper_bound", tr.star.upper_bound ? nlohmann::ordered_json(*tr.star.upper_bound)
                                                             : nlohmann::ordered_json(nullptr)},
                         {"below_threshold", possibly_below}});
  }
  const double fraction = static_cast<double>(below) / static_cast<double>(mc.trials);
  const double degraded_fraction = static_cast<double>(degraded) / static_cast<double>(mc.trials);
  const auto bound = counting_bound(mc.q, mc.n, b);
  rep.summary = {{"b_n", b},
                 {"below_threshold", below},
                 {"fraction", fraction},
                 {"lower_bound_trials", degraded},
                 {"lower_bound_fraction", degraded_fraction},
                 {"analytic_bound", detail::rational_string(bound)},
                 {"analytic_bound_approx", detail::rational_double(bound)}};
  if (degraded_fraction > mc.max_lower_bound_fraction) {
    rep.verdict = Verdict::inconclusive;
  } else {
    rep.verdict = fraction <= mc.max_fraction ? Verdict::pass : Verdict::fail;
  }
  rep.elapsed_ms = clock.elapsed_ms();
  return rep;
}

/// Exact I_2(d) against q^C(d+2,2)/(q-1) with error scale q^C(d+1,2).
inline ExperimentReport compare_carlitz(std::uint64_t q, unsigned d_max, double slack = 4.0,
                                        const IrreducibilityConfig& irr = {}) {
  detail::Stopwatch clock;
  const PrimeField field(q);
  ExperimentReport rep;
  rep.experiment = "carlitz";
  rep.params = {{"q", q}, {"d_max", d_max}, {"slack", slack}};
  bool all_within = true;
  double worst = 0.0;
  for (unsigned d = 1; d <= d_max; ++d) {
    if (!normalized_count(field.modulus(), d)) {
      throw Error(Errc::budget_exceeded, "enumeration for q=" + std::to_string(q) + ", d=" + std::to_string(d));
    }
    const std::uint64_t exact = count_normalized_irreducible(field, d, irr);
    const CarlitzEstimate est = carlitz_estimate(field, d);
    const boost::multiprecision::cpp_rational diff = abs(boost::multiprecision::cpp_rational(exact) - est.main_term);
    const boost::multiprecision::cpp_rational ratio = diff / est.error_scale;
    const bool within = ratio <= boost::multiprecision::cpp_rational(slack);
    all_within = all_within && within;
    worst = std::max(worst, detail::rational_double(ratio));
    std::ostringstream scale;
    scale << est.error_scale;
    rep.cases.push_back({{"d", d},
                         {"exact", exact},
                         {"main_term", detail::rational_string(est.main_term)},
                         {"main_term_approx", detail::rational_double(est.main_term)},
                         {"error_scale", scale.str()},
                         {"ratio", detail::rational_double(ratio)},
                         {"within", within}});
  }
  rep.summary = {{"max_ratio", worst}, {"all_within", all_within}};
  rep.verdict = all_within ? Verdict::pass : Verdict::fail;
  rep.elapsed_ms = clock.elapsed_ms();
  return rep;
}

/// The derivative identity of the inversive generator as a report.
inline ExperimentReport verify_gprime(std::uint64_t p, std::size_t n_check) {
  detail::Stopwatch clock;
  const PrimeField field = detail::inversive_field(p);
  const DerivativeCheck chk = check_derivative_identity(field, n_check);
  ExperimentReport rep;
  rep.experiment = "gprime";
  rep.params = {{"p", p}, {"n", n_check}};
  for (std::size_t i = 0; i < chk.checked; ++i) {
    rep.cases.push_back({{"i", i}, {"derivative", chk.derivative[i]}, {"expected", chk.expected[i]},
                         {"ok", chk.derivative[i] == chk.expected[i]}});
  }
  rep.summary = {{"checked", chk.checked},
                 {"first_mismatch", chk.first_mismatch ? nlohmann::ordered_json(*chk.first_mismatch)
                                                       : nlohmann::ordered_json(nullptr)}};
  rep.verdict = chk.ok ? Verdict::pass : Verdict::fail;
  rep.elapsed_ms = clock.elapsed_ms();
  return rep;
}

}  // namespace expcx

#endif  // EXPCX_EXPERIMENTS_HPP
