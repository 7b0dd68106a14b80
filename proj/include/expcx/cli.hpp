#ifndef EXPCX_CLI_HPP
#define EXPCX_CLI_HPP

// Command-line front end. Exit codes: 0 success or pass, 1 usage or input
// error, 2 experiment verdict fail, 3 inconclusive (LowerBound, budget, or a
// prediction that stopped early).

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "CLI11.hpp"
#include "expcx/complexity.hpp"
#include "expcx/experiments.hpp"
#include "expcx/generators.hpp"
#include "expcx/io_json.hpp"
#include "expcx/irreducible.hpp"

namespace expcx::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kFail = 2, kInconclusive = 3 };

/// "0.25", "1/4", "3" -> exact rational.
inline boost::multiprecision::cpp_rational parse_rational(const std::string& text) {
  namespace mp = boost::multiprecision;
  auto bad = [&] { return Error(Errc::parse_error, "not a decimal or fraction: '" + text + "'"); };
  auto digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  mp::cpp_rational r;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw bad();
    const mp::cpp_int d(den);
    if (d == 0) throw bad();
    r = mp::cpp_rational(mp::cpp_int(num), d);
  } else {
    const auto dot = s.find('.');
    const std::string whole = s.substr(0, dot);
    const std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !digits(whole)) || (!frac.empty() && !digits(frac)) ||
        (dot != std::string::npos && frac.empty() && whole.empty())) {
      throw bad();
    }
    mp::cpp_int den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    r = mp::cpp_rational(mp::cpp_int(whole.empty() ? "0" : whole) * den + mp::cpp_int(frac.empty() ? "0" : frac), den);
  }
  return negative ? -r : r;
}

namespace detail {

enum class Format { text, json, csv };

struct Globals {
  bool json = false;
  bool csv = false;
  unsigned threads = 1;
  Format format() const { return json ? Format::json : (csv ? Format::csv : Format::text); }
};

inline int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::pass: return kOk;
    case Verdict::fail: return kFail;
    case Verdict::inconclusive: return kInconclusive;
  }
  return kFail;
}

inline std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline int emit_report(const ExperimentReport& rep, const Globals& g, std::ostream& out) {
  switch (g.format()) {
    case Format::json: out << to_json(rep).dump(2) << '\n'; break;
    case Format::csv: out << to_csv(rep); break;
    case Format::text:
      out << "experiment: " << rep.experiment << '\n';
      for (const auto& [k, v] : rep.params.items()) out << "  " << k << " = " << scalar_text(v) << '\n';
      if (rep.seed) out << "  seed = " << *rep.seed << '\n';
      for (const auto& [k, v] : rep.summary.items()) out << k << ": " << scalar_text(v) << '\n';
      out << "verdict: " << to_string(rep.verdict) << '\n';
      break;
  }
  return verdict_code(rep.verdict);
}

inline void result_text(const ComplexityResult& r, std::ostream& out) {
  out << (r.kind == ComplexityKind::expansion ? "E_" : "E*_") << r.n << " = " << r.value;
  if (r.status == ComplexityStatus::lower_bound) {
    out << " (LowerBound";
    if (r.upper_bound) out << ", upper bound " << *r.upper_bound;
    out << ')';
  }
  out << '\n' << "witness: " << (r.witness ? to_string(*r.witness) : std::string("none")) << '\n';
}

inline int result_code(const ComplexityResult& r) {
  return r.status == ComplexityStatus::exact ? kOk : kInconclusive;
}

inline std::string deepest_help(const CLI::App& app) {
  const CLI::App* cur = &app;
  for (;;) {
    const auto subs = cur->get_subcommands();
    if (subs.empty()) break;
    cur = subs.front();
  }
  return cur->help("", CLI::AppFormatMode::Normal);
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expansion complexity of sequences over prime fields", "expcx"};
  app.require_subcommand(1);
  detail::Globals g;
  app.add_flag("--json", g.json, "Emit JSON");
  app.add_flag("--csv", g.csv, "Emit per-case CSV (experiments and profile)");
  app.add_option("--threads", g.threads, "Worker threads for experiments")->check(CLI::PositiveNumber);

  std::string input;
  std::size_t n = 0;
  SearchConfig cfg;
  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--enum-cap", cfg.enum_cap, "Exhaustive search limit in projective points")->capture_default_str();
    sub->add_option("--sample-cap", cfg.sample_cap, "Random candidates tried past the limit")->capture_default_str();
  };

  auto* profile = app.add_subcommand("profile", "E_N (and optionally E*_N) for N = 1..K");
  profile->fallthrough();
  std::size_t nmax = 0;
  bool with_star = false;
  profile->add_option("--input", input, "Sequence file")->required();
  profile->add_option("--nmax", nmax, "Largest N")->required()->check(CLI::PositiveNumber);
  profile->add_flag("--istar", with_star, "Also compute E*_N");
  add_caps(profile);

  auto* en = app.add_subcommand("en", "Expansion complexity E_N");
  en->fallthrough();
  en->add_option("--input", input, "Sequence file")->required();
  en->add_option("--n", n, "Prefix length N")->required();

  auto* istar = app.add_subcommand("istar", "Irreducible-expansion complexity E*_N");
  istar->fallthrough();
  istar->add_option("--input", input, "Sequence file")->required();
  istar->add_option("--n", n, "Prefix length N")->required();
  add_caps(istar);
  istar->add_option("--seed", cfg.seed, "Seed for sampling past the enumeration limit")->capture_default_str();

  auto* gen = app.add_subcommand("gen", "Generate a sequence file");
  gen->fallthrough();
  gen->require_subcommand(1);
  std::string out_path;
  InversiveSpec inv;
  RandomSpec rnd;
  auto* gen_inv = gen->add_subcommand("inversive", "s_n = (n + m)^(p-2) mod p");
  gen_inv->fallthrough();
  gen_inv->add_option("--p", inv.p, "Prime modulus")->required();
  gen_inv->add_option("--shift", inv.shift, "Shift m")->capture_default_str();
  gen_inv->add_option("--len", inv.length, "Number of symbols")->required();
  gen_inv->add_option("--out", out_path, "Output file (default stdout)");
  auto* gen_rnd = gen->add_subcommand("random", "Uniform symbols from a seeded generator");
  gen_rnd->fallthrough();
  gen_rnd->add_option("--q", rnd.q, "Prime modulus")->required();
  gen_rnd->add_option("--len", rnd.length, "Number of symbols")->required();
  gen_rnd->add_option("--seed", rnd.seed, "Seed")->required();
  gen_rnd->add_option("--out", out_path, "Output file (default stdout)");

  auto* findp = app.add_subcommand("find-poly", "Least-degree irreducible annihilator of the whole prefix");
  findp->fallthrough();
  unsigned dmax = 0;
  findp->add_option("--input", input, "Sequence file")->required();
  findp->add_option("--dmax", dmax, "Largest degree tried")->required();
  add_caps(findp);

  auto* predict = app.add_subcommand("predict", "Extend a sequence with a known annihilator");
  predict->fallthrough();
  std::string poly_text;
  std::size_t extend = 0;
  predict->add_option("--poly", poly_text, "Polynomial, e.g. \"y + 4*x^5\"")->required();
  predict->add_option("--input", input, "Sequence file")->required();
  predict->add_option("--extend", extend, "Symbols to append")->required();

  auto* verify = app.add_subcommand("verify", "Check a structural result");
  verify->fallthrough();
  verify->require_subcommand(1);
  std::uint64_t p = 0;
  auto* v3 = verify->add_subcommand("theorem3", "E_N of the inversive sequence against the closed form");
  v3->fallthrough();
  v3->add_option("--p", p, "Prime")->required();
  auto* vstar = verify->add_subcommand("star", "E*_N of the inversive sequence on admissible windows");
  vstar->fallthrough();
  vstar->add_option("--p", p, "Prime")->required();
  add_caps(vstar);
  vstar->add_option("--seed", cfg.seed, "Seed for sampling past the enumeration limit")->capture_default_str();
  auto* vg = verify->add_subcommand("gprime", "Derivative identity of the inversive generating function");
  vg->fallthrough();
  vg->add_option("--p", p, "Prime")->required();
  vg->add_option("--n", n, "Coefficients checked")->required();

  auto* shifts = app.add_subcommand("shifts", "Count shifts with E_N below d at N = C(d+1,2)");
  shifts->fallthrough();
  unsigned d = 0;
  shifts->add_option("--p", p, "Prime")->required();
  shifts->add_option("--d", d, "Degree")->required();

  auto* count_irr = app.add_subcommand("count-irr", "Exact number of normalized irreducible h of degree d");
  count_irr->fallthrough();
  std::uint64_t q = 0;
  count_irr->add_option("--q", q, "Prime")->required();
  count_irr->add_option("--d", d, "Degree")->required();

  auto* carlitz = app.add_subcommand("carlitz", "Exact counts against the asymptotic estimate");
  carlitz->fallthrough();
  double slack = 4.0;
  carlitz->add_option("--q", q, "Prime")->required();
  carlitz->add_option("--dmax", dmax, "Largest degree")->required();
  carlitz->add_option("--slack", slack, "Allowed multiple of the error scale")->capture_default_str();

  auto* mc2 = app.add_subcommand("mc2", "Monte Carlo: fraction of random sequences with small E*_n");
  mc2->fallthrough();
  MonteCarloParams mc;
  std::string epsilon_text;
  mc2->add_option("--q", mc.q, "Prime")->required();
  mc2->add_option("--n", mc.n, "Sequence length")->required();
  mc2->add_option("--trials", mc.trials, "Number of trials")->required();
  mc2->add_option("--epsilon", epsilon_text, "Epsilon as a decimal or fraction")->required();
  mc2->add_option("--seed", mc.seed, "Seed")->required();
  mc2->add_option("--max-fraction", mc.max_fraction, "Pass threshold")->capture_default_str();
  add_caps(mc2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << detail::deepest_help(app);
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << detail::deepest_help(app);
    return kUsage;
  }
  if (g.json && g.csv) {
    err << "error: --json and --csv are exclusive\n";
    return kUsage;
  }

  try {
    if (*profile) {
      const SequencePrefix s = read_sequence_file(input);
      const ComplexityProfile prof = expansion_profile(s, nmax);
      std::vector<ComplexityResult> stars;
      int code = kOk;
      if (with_star) {
        stars = expcx::detail::parallel_map<ComplexityResult>(nmax, g.threads, [&](std::size_t i) {
          return i_expansion_complexity(s, i + 1, cfg);
        });
        for (const auto& r : stars) code = std::max(code, detail::result_code(r));
      }
      if (g.json) {
        Json j = profile_to_json(prof);
        if (with_star) {
          Json arr = Json::array();
          for (const auto& r : stars) arr.push_back(result_to_json(r));
          j["istar"] = arr;
        }
        out << j.dump(2) << '\n';
      } else {
        const char sep = g.csv ? ',' : ' ';
        out << "N" << sep << "E_N";
        if (with_star) out << sep << "E*_N" << sep << "status";
        out << sep << "witness\n";
        for (std::size_t i = 0; i < prof.entries.size(); ++i) {
          const auto& e = prof.entries[i];
          out << e.n << sep << e.value;
          if (with_star) out << sep << stars[i].value << sep << to_string(stars[i].status);
          std::string w = e.witness ? to_string(*e.witness) : "";
          if (with_star) w = stars[i].witness ? to_string(*stars[i].witness) : "";
          out << sep << (g.csv ? '"' + w + '"' : w) << '\n';
        }
      }
      return code;
    }
    if (*en || *istar) {
      const SequencePrefix s = read_sequence_file(input);
      const ComplexityResult r = *en ? expansion_complexity(s, n) : i_expansion_complexity(s, n, cfg);
      if (g.json) {
        out << result_to_json(r).dump(2) << '\n';
      } else {
        detail::result_text(r, out);
      }
      return detail::result_code(r);
    }
    if (*gen) {
      const SequencePrefix s = *gen_inv ? generate(inv) : generate(rnd);
      std::ostringstream body;
      if (g.json) {
        body << sequence_to_json(s).dump(2) << '\n';
      } else {
        write_sequence(body, s);
      }
      if (out_path.empty()) {
        out << body.str();
      } else {
        std::ofstream f(out_path);
        if (!(f << body.str())) throw Error(Errc::io_error, "cannot write " + out_path);
      }
      return kOk;
    }
    if (*findp) {
      const SequencePrefix s = read_sequence_file(input);
      const auto h = find_defining_poly(s, dmax, cfg);
      if (g.json) {
        out << Json{{"found", h.has_value()},
                    {"degree", h ? Json(h->total_degree()) : Json(nullptr)},
                    {"poly", h ? poly_to_json(*h) : Json(nullptr)},
                    {"text", h ? Json(to_string(*h)) : Json(nullptr)}}
                   .dump(2)
            << '\n';
      } else if (h) {
        out << to_string(*h) << '\n';
      } else {
        out << "NotFound\n";
      }
      return kOk;
    }
    if (*predict) {
      const SequencePrefix s = read_sequence_file(input);
      const BivariatePoly h = parse_poly(s.field(), poly_text);
      const ExtensionResult r = extend_sequence(h, s, extend);
      if (g.json) {
        out << Json{{"status", to_string(r.status)},
                    {"appended", r.appended},
                    {"sequence", sequence_to_json(r.sequence)},
                    {"candidates", r.candidates},
                    {"diagnostic", r.diagnostic}}
                   .dump(2)
            << '\n';
      } else {
        write_sequence(out, r.sequence);
        if (r.status != ExtensionStatus::complete) err << r.diagnostic << '\n';
      }
      return r.status == ExtensionStatus::complete ? kOk : kInconclusive;
    }
    if (*verify) {
      if (*v3) return detail::emit_report(verify_theorem3(p), g, out);
      if (*vstar) return detail::emit_report(verify_theorem_star(p, cfg, g.threads), g, out);
      return detail::emit_report(verify_gprime(p, n), g, out);
    }
    if (*shifts) return detail::emit_report(count_exceptional_shifts(p, d, g.threads), g, out);
    if (*count_irr) {
      const PrimeField field(q);
      if (!normalized_count(field.modulus(), d)) {
        throw Error(Errc::budget_exceeded, "too many polynomials to enumerate for q=" + std::to_string(q) +
                                               ", d=" + std::to_string(d));
      }
      const std::uint64_t count = count_normalized_irreducible(field, d);
      if (g.json) {
        out << Json{{"q", q}, {"d", d}, {"count", count}}.dump(2) << '\n';
      } else {
        out << "I_2(" << d << ") over F_" << q << " = " << count << '\n';
      }
      return kOk;
    }
    if (*carlitz) return detail::emit_report(compare_carlitz(q, dmax, slack), g, out);
    if (*mc2) {
      mc.epsilon = parse_rational(epsilon_text);
      return detail::emit_report(montecarlo_theorem2(mc, cfg, g.threads), g, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::budget_exceeded ? kInconclusive : kUsage;
  }
  err << "error: no subcommand\n" << app.help();
  return kUsage;
}

}  // namespace expcx::cli

#endif  // EXPCX_CLI_HPP
