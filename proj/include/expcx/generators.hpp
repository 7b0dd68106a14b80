#ifndef EXPCX_GENERATORS_HPP
#define EXPCX_GENERATORS_HPP

// Sequence sources and the sequence file format.
//
// File format: the first line is "p=<modulus>", the remaining lines hold
// whitespace-separated decimal residues in [0, p).

#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "expcx/random.hpp"
#include "expcx/sequence.hpp"
#include "expcx/series.hpp"

namespace expcx {

/// s_n = (n + m)^(p-2) mod p, i.e. the inverse of n + m with 0 -> 0.
/// Periodic with period p; len may exceed p. Throws InvalidModulus for p = 2.
inline SequencePrefix inversive_prefix(const PrimeField& field, std::uint64_t shift, std::size_t len) {
  const Residue p = field.modulus();
  if (p < 3) throw Error(Errc::invalid_modulus, "the inversive generator needs p >= 3");
  if (shift >= p) throw Error(Errc::out_of_range, "shift " + std::to_string(shift) + " not in [0, p)");
  std::vector<Residue> out(len);
  for (std::size_t n = 0; n < len; ++n) {
    const auto x = static_cast<Residue>((n + shift) % p);
    out[n] = field.pow(x, p - 2);
  }
  return {field, std::move(out)};
}

/// Deterministic given (q, len, seed); see random.hpp for the generator.
inline SequencePrefix random_prefix(const PrimeField& field, std::size_t len, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Residue> out(len);
  for (auto& v : out) v = static_cast<Residue>(rng.below(field.modulus()));
  return {field, std::move(out)};
}

inline SequencePrefix read_sequence(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::parse_error, "line 1: missing header 'p=<modulus>'");
  std::size_t col = 0;
  while (col < line.size() && std::isspace(static_cast<unsigned char>(line[col]))) ++col;
  if (line.compare(col, 2, "p=") != 0) throw Error(Errc::parse_error, "line 1, column " + std::to_string(col + 1) + ": expected 'p='");
  col += 2;
  std::uint64_t p = 0;
  const std::size_t digits_start = col;
  while (col < line.size() && std::isdigit(static_cast<unsigned char>(line[col])) && col - digits_start < 19) {
    p = p * 10 + static_cast<std::uint64_t>(line[col] - '0');
    ++col;
  }
  if (col == digits_start) throw Error(Errc::parse_error, "line 1, column " + std::to_string(col + 1) + ": expected a modulus");
  while (col < line.size() && std::isspace(static_cast<unsigned char>(line[col]))) ++col;
  if (col != line.size()) throw Error(Errc::parse_error, "line 1, column " + std::to_string(col + 1) + ": trailing characters");
  std::optional<PrimeField> field;
  try {
    field.emplace(p);
  } catch (const Error& e) {
    throw Error(e.code(), "line 1: " + std::string(e.what()));
  }

  std::vector<Residue> symbols;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      std::uint64_t v = 0;
      bool overflow = false;
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(line[i] - '0');
        if (v >= (std::uint64_t{1} << 40U)) overflow = true;
        ++i;
      }
      const std::string where = "line " + std::to_string(line_no) + ", column " + std::to_string(start + 1);
      if (i == start || (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))) {
        throw Error(Errc::parse_error, where + ": expected a decimal residue");
      }
      if (overflow || v >= field->modulus()) {
        throw Error(Errc::parse_error, where + ": symbol " + line.substr(start, i - start) + " not in [0, " +
                                           std::to_string(field->modulus()) + ")");
      }
      symbols.push_back(static_cast<Residue>(v));
    }
  }
  return {*field, std::move(symbols)};
}

inline SequencePrefix read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open " + path);
  return read_sequence(in);
}

inline void write_sequence(std::ostream& out, const SequencePrefix& s, std::size_t per_line = 32) {
  out << "p=" << s.field().modulus() << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << s[i];
    out << ((i + 1 == s.size() || (i + 1) % per_line == 0) ? '\n' : ' ');
  }
}

inline std::string format_sequence(const SequencePrefix& s) {
  std::ostringstream os;
  write_sequence(os, s);
  return os.str();
}

struct InversiveSpec {
  std::uint64_t p = 3;
  std::uint64_t shift = 0;
  std::size_t length = 0;
};
struct RandomSpec {
  std::uint64_t q = 2;
  std::size_t length = 0;
  std::uint64_t seed = 0;
};
struct FileSpec {
  std::string path;
};
struct LiteralSpec {
  std::uint64_t p = 2;
  std::vector<Residue> symbols;
};

using GeneratorSpec = std::variant<InversiveSpec, RandomSpec, FileSpec, LiteralSpec>;

inline SequencePrefix generate(const GeneratorSpec& spec) {
  struct Visitor {
    SequencePrefix operator()(const InversiveSpec& s) const {
      if (s.p == 2) throw Error(Errc::invalid_modulus, "the inversive generator needs p >= 3");
      try {
        return inversive_prefix(PrimeField(s.p), s.shift, s.length);
      } catch (const Error& e) {
        if (e.code() == Errc::not_prime) throw Error(Errc::invalid_modulus, e.what());
        throw;
      }
    }
    SequencePrefix operator()(const RandomSpec& s) const { return random_prefix(PrimeField(s.q), s.length, s.seed); }
    SequencePrefix operator()(const FileSpec& s) const { return read_sequence_file(s.path); }
    SequencePrefix operator()(const LiteralSpec& s) const { return {PrimeField(s.p), s.symbols}; }
  };
  return std::visit(Visitor{}, spec);
}

struct DerivativeCheck {
  bool ok = true;
  std::size_t checked = 0;
  std::optional<std::size_t> first_mismatch;
  std::vector<Residue> derivative;  // (i+1) s_{i+1}, i < checked
  std::vector<Residue> expected;    // coefficients of 1/(1-x) - x^(p-1)/(1-x^p)
};

/// Checks G'(x) = 1/(1-x) - x^(p-1)/(1-x^p) for the inversive generator,
/// coefficient by coefficient, for the first n_check coefficients. The right
/// side is expanded with truncated series arithmetic.
inline DerivativeCheck check_derivative_identity(const PrimeField& field, std::size_t n_check) {
  const Residue p = field.modulus();
  if (p < 3) throw Error(Errc::invalid_modulus, "the inversive generator needs p >= 3");
  const TruncatedSeries g = series_from_prefix(inversive_prefix(field, 0, n_check + 1));
  const TruncatedSeries lhs = series_derivative(g);

  TruncatedSeries one_minus_x(field, n_check);
  TruncatedSeries one_minus_xp(field, n_check);
  TruncatedSeries x_pm1(field, n_check);
  if (n_check > 0) {
    one_minus_x[0] = 1;
    one_minus_xp[0] = 1;
  }
  if (n_check > 1) one_minus_x[1] = field.neg(1);
  if (n_check > p) one_minus_xp[p] = field.neg(1);
  if (n_check > p - 1) x_pm1[p - 1] = 1;
  const TruncatedSeries rhs =
      series_sub(series_inverse(one_minus_x), series_mul(x_pm1, series_inverse(one_minus_xp)));

  DerivativeCheck out;
  out.checked = n_check;
  out.derivative = lhs.coeffs();
  out.expected = rhs.coeffs();
  for (std::size_t i = 0; i < n_check; ++i) {
    if (lhs[i] != rhs[i]) {
      out.ok = false;
      out.first_mismatch = i;
      break;
    }
  }
  return out;
}

}  // namespace expcx

#endif  // EXPCX_GENERATORS_HPP
