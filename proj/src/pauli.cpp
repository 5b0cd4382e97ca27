#include "bellmark/pauli.hpp"

#include "bellmark/error.hpp"

namespace bellmark {

PauliString::PauliString(std::size_t n_qubits)
    : n_(n_qubits), x_(words_for(n_qubits), 0), z_(words_for(n_qubits), 0) {}

PauliString PauliString::parse(std::string_view text) {
  unsigned phase = 0;
  if (text.starts_with("+")) {
    text.remove_prefix(1);
  } else if (text.starts_with("-")) {
    phase = 2;
    text.remove_prefix(1);
  } else if (text.starts_with("\xE2\x88\x92")) {  // U+2212 MINUS SIGN
    phase = 2;
    text.remove_prefix(3);
  } else {
    fail(ErrorCode::InvalidArgument, "Pauli text must start with a sign: '" + std::string(text) + "'");
  }
  if (text.starts_with("i")) {
    phase += 1;
    text.remove_prefix(1);
  }
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) {
    const char c = text[q];
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      fail(ErrorCode::InvalidArgument, std::string("invalid Pauli letter '") + c + "'");
    }
    p.set_letter(q, c);
  }
  p.phase_ = (p.phase_ + phase) & 3U;
  return p;
}

PauliString PauliString::single(std::size_t n_qubits, std::size_t qubit, char letter) {
  if (qubit >= n_qubits) {
    fail(ErrorCode::InvalidArgument, "qubit index out of range");
  }
  PauliString p(n_qubits);
  p.set_letter(qubit, letter);
  return p;
}

std::string PauliString::str() const {
  const unsigned relative = (phase_ + 4 - (y_count() & 3U)) & 3U;
  static constexpr const char* kPrefix[] = {"+", "+i", "-", "-i"};
  std::string out = kPrefix[relative];
  out.reserve(out.size() + n_);
  for (std::size_t q = 0; q < n_; ++q) {
    out.push_back(letter(q));
  }
  return out;
}

char PauliString::letter(std::size_t q) const {
  static constexpr char kLetters[] = {'I', 'X', 'Z', 'Y'};
  return kLetters[(x(q) ? 1 : 0) | (z(q) ? 2 : 0)];
}

void PauliString::set_letter(std::size_t q, char letter) {
  if (q >= n_) {
    fail(ErrorCode::InvalidArgument, "qubit index out of range");
  }
  const bool old_y = x(q) && z(q);
  bool nx = false;
  bool nz = false;
  switch (letter) {
  case 'I': break;
  case 'X': nx = true; break;
  case 'Y': nx = nz = true; break;
  case 'Z': nz = true; break;
  default: fail(ErrorCode::InvalidArgument, std::string("invalid Pauli letter '") + letter + "'");
  }
  const Word bit = Word{1} << (q & 63);
  x_[q >> 6] = nx ? (x_[q >> 6] | bit) : (x_[q >> 6] & ~bit);
  z_[q >> 6] = nz ? (z_[q >> 6] | bit) : (z_[q >> 6] & ~bit);
  const bool new_y = nx && nz;
  // Keep the sign relative to the letters fixed: each Y carries one i.
  phase_ = (phase_ + (new_y ? 1U : 0U) + 4U - (old_y ? 1U : 0U)) & 3U;
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t k = 0; k < x_.size(); ++k) {
    w += static_cast<std::size_t>(std::popcount(x_[k] | z_[k]));
  }
  return w;
}

std::size_t PauliString::y_count() const {
  std::size_t c = 0;
  for (std::size_t k = 0; k < x_.size(); ++k) {
    c += static_cast<std::size_t>(std::popcount(x_[k] & z_[k]));
  }
  return c;
}

bool PauliString::is_identity() const {
  for (std::size_t k = 0; k < x_.size(); ++k) {
    if ((x_[k] | z_[k]) != 0) {
      return false;
    }
  }
  return true;
}

int PauliString::sign() const {
  const unsigned relative = (phase_ + 4 - (y_count() & 3U)) & 3U;
  if (relative == 0) {
    return 1;
  }
  if (relative == 2) {
    return -1;
  }
  fail(ErrorCode::InvalidArgument, "Pauli string " + str() + " is not Hermitian");
}

PauliString PauliString::negated() const {
  PauliString out = *this;
  out.phase_ = (phase_ + 2) & 3U;
  return out;
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
  if (rhs.n_ != n_) {
    fail(ErrorCode::InvalidArgument, "Pauli size mismatch: " + std::to_string(n_) + " vs " +
                                         std::to_string(rhs.n_));
  }
  phase_ = (phase_ + rhs.phase_ + detail::product_phase(z_, rhs.x_)) & 3U;
  for (std::size_t k = 0; k < x_.size(); ++k) {
    x_[k] ^= rhs.x_[k];
    z_[k] ^= rhs.z_[k];
  }
  return *this;
}

PauliString multiply(const PauliString& p, const PauliString& q) {
  PauliString out = p;
  out *= q;
  return out;
}

bool commutes(const PauliString& p, const PauliString& q) {
  if (p.size() != q.size()) {
    fail(ErrorCode::InvalidArgument, "Pauli size mismatch");
  }
  return !detail::anticommute_words(p.x_words(), p.z_words(), q.x_words(), q.z_words());
}

} // namespace bellmark
