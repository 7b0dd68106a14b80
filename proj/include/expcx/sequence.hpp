#ifndef EXPCX_SEQUENCE_HPP
#define EXPCX_SEQUENCE_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expcx/field.hpp"

namespace expcx {

/// A finite prefix (s_0, ..., s_{N-1}) of a sequence over F_p.
class SequencePrefix {
 public:
  explicit SequencePrefix(PrimeField field) : field_(field) {}

  /// Symbols must already lie in [0, p); throws OutOfRange otherwise.
  SequencePrefix(PrimeField field, std::vector<Residue> symbols) : field_(field), symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i] >= field_.modulus()) {
        throw Error(Errc::out_of_range, "symbol " + std::to_string(symbols_[i]) + " at index " +
                                            std::to_string(i) + " not in [0, " +
                                            std::to_string(field_.modulus()) + ")");
      }
    }
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }

  std::span<const Residue> symbols() const noexcept { return symbols_; }
  Residue operator[](std::size_t i) const { return symbols_[i]; }
  FieldElement at(std::size_t i) const { return {field_, symbols_.at(i)}; }

  void push_back(Residue v) { symbols_.push_back(field_.reduce_unsigned(v)); }

  /// The first n symbols.
  SequencePrefix prefix(std::size_t n) const {
    n = std::min(n, symbols_.size());
    return {field_, std::vector<Residue>(symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(n))};
  }

  /// True if s_0 = ... = s_{n-1} = 0.
  bool is_zero_through(std::size_t n) const {
    n = std::min(n, symbols_.size());
    return std::all_of(symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(n),
                       [](Residue v) { return v == 0; });
  }

  friend bool operator==(const SequencePrefix&, const SequencePrefix&) = default;

 private:
  PrimeField field_;
  std::vector<Residue> symbols_;
};

}  // namespace expcx

#endif  // EXPCX_SEQUENCE_HPP
