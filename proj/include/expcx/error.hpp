#ifndef EXPCX_ERROR_HPP
#define EXPCX_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace expcx {

enum class Errc {
  not_prime,
  out_of_range,
  field_mismatch,
  division_by_zero,
  truncation_mismatch,
  zero_polynomial,
  zero_divisor,
  budget_exceeded,
  prefix_too_short,
  prerequisite_violated,
  invalid_modulus,
  parse_error,
  io_error,
};

inline std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::not_prime: return "NotPrime";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::field_mismatch: return "FieldMismatch";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::truncation_mismatch: return "TruncationMismatch";
    case Errc::zero_polynomial: return "ZeroPolynomial";
    case Errc::zero_divisor: return "ZeroDivisor";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::prefix_too_short: return "PrefixTooShort";
    case Errc::prerequisite_violated: return "PrerequisiteViolated";
    case Errc::invalid_modulus: return "InvalidModulus";
    case Errc::parse_error: return "ParseError";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace expcx

#endif  // EXPCX_ERROR_HPP
