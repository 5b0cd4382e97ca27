#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bellmark {

using Word = std::uint64_t;

constexpr std::size_t words_for(std::size_t n_qubits) { return (n_qubits + 63) / 64; }

/// n-qubit Pauli operator  i^phase * prod_q X_q^{x_q} Z_q^{z_q}  (X before Z on
/// every qubit). With this convention the letter Y is stored as x = z = 1 plus
/// one unit of phase, since Y = i X Z.
///
/// Text form: a sign prefix followed by one letter per qubit, qubit 0 first,
/// e.g. "+ZXZ" or "-YYI". Non-Hermitian strings print as "+i..." / "-i...".
class PauliString {
public:
  PauliString() = default;
  explicit PauliString(std::size_t n_qubits);

  /// Throws Error(InvalidArgument) on malformed text. Accepts '+', '-',
  /// U+2212, and an optional 'i' after the sign.
  static PauliString parse(std::string_view text);
  static PauliString single(std::size_t n_qubits, std::size_t qubit, char letter);

  [[nodiscard]] std::string str() const;

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] unsigned phase_exp() const noexcept { return phase_; }

  [[nodiscard]] bool x(std::size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1U; }
  [[nodiscard]] bool z(std::size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1U; }
  /// 'I', 'X', 'Y' or 'Z'.
  [[nodiscard]] char letter(std::size_t q) const;

  /// Sets the letter on qubit q, keeping the sign of the operator.
  void set_letter(std::size_t q, char letter);
  void set_phase_exp(unsigned phase) noexcept { phase_ = phase & 3U; }

  [[nodiscard]] std::span<const Word> x_words() const noexcept { return x_; }
  [[nodiscard]] std::span<const Word> z_words() const noexcept { return z_; }

  [[nodiscard]] std::size_t weight() const;
  [[nodiscard]] std::size_t y_count() const;
  [[nodiscard]] bool is_identity() const;

  [[nodiscard]] bool is_hermitian() const { return ((phase_ + 4 - (y_count() & 3U)) & 1U) == 0; }
  /// +1 or -1 relative to the letter string. Throws for non-Hermitian strings.
  [[nodiscard]] int sign() const;
  [[nodiscard]] PauliString negated() const;

  PauliString& operator*=(const PauliString& rhs);

  friend bool operator==(const PauliString&, const PauliString&) = default;

private:
  friend class StabilizerTableau;

  std::size_t n_ = 0;
  unsigned phase_ = 0;
  std::vector<Word> x_;
  std::vector<Word> z_;
};

/// Operator product p * q with exact phase. Throws on size mismatch.
[[nodiscard]] PauliString multiply(const PauliString& p, const PauliString& q);
[[nodiscard]] inline PauliString operator*(const PauliString& p, const PauliString& q) {
  return multiply(p, q);
}

/// True iff the symplectic inner product vanishes. Throws on size mismatch.
[[nodiscard]] bool commutes(const PauliString& p, const PauliString& q);

namespace detail {

/// Phase picked up when moving the Z part of the left factor past the X part
/// of the right factor: 2 * |z_l & x_r| (mod 4).
inline unsigned product_phase(std::span<const Word> z_left, std::span<const Word> x_right) {
  unsigned count = 0;
  for (std::size_t w = 0; w < z_left.size(); ++w) {
    count += static_cast<unsigned>(std::popcount(z_left[w] & x_right[w]));
  }
  return (2U * count) & 3U;
}

inline bool anticommute_words(std::span<const Word> xa, std::span<const Word> za,
                              std::span<const Word> xb, std::span<const Word> zb) {
  Word acc = 0;
  for (std::size_t w = 0; w < xa.size(); ++w) {
    acc ^= (xa[w] & zb[w]) ^ (za[w] & xb[w]);
  }
  return (std::popcount(acc) & 1) != 0;
}

} // namespace detail

} // namespace bellmark
