#pragma once

#include "bellmark/pauli.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bellmark {

/// Index into a term family of size 2^bits. Bell operators on more than ~64
/// qubits have more than 2^64 terms, so indices are arbitrary-width bit
/// vectors (little-endian words).
class TermIndex {
public:
  TermIndex() = default;
  TermIndex(unsigned bits, std::uint64_t value);
  explicit TermIndex(unsigned bits) : bits_(bits), words_(words_for(bits), 0) {}

  [[nodiscard]] unsigned bits() const noexcept { return bits_; }
  [[nodiscard]] bool bit(unsigned k) const { return (words_[k >> 6] >> (k & 63)) & 1U; }
  void set_bit(unsigned k, bool value);
  [[nodiscard]] std::vector<Word>& words() noexcept { return words_; }
  [[nodiscard]] const std::vector<Word>& words() const noexcept { return words_; }

  /// Lowercase hexadecimal without prefix; "0" for zero.
  [[nodiscard]] std::string hex() const;
  static TermIndex from_hex(unsigned bits, std::string_view hex);

  /// Value when it fits in 64 bits; throws otherwise.
  [[nodiscard]] std::uint64_t value() const;

  friend bool operator==(const TermIndex&, const TermIndex&) = default;
  friend auto operator<=>(const TermIndex& a, const TermIndex& b) {
    return std::lexicographical_compare_three_way(a.words_.rbegin(), a.words_.rend(),
                                                  b.words_.rbegin(), b.words_.rend());
  }

private:
  unsigned bits_ = 0;
  std::vector<Word> words_;
};

} // namespace bellmark
