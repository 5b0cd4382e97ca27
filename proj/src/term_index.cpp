#include "bellmark/term_index.hpp"

#include "bellmark/error.hpp"

namespace bellmark {

TermIndex::TermIndex(unsigned bits, std::uint64_t value) : TermIndex(bits) {
  if (bits < 64 && (value >> bits) != 0) {
    fail(ErrorCode::InvalidArgument, "term index " + std::to_string(value) + " exceeds 2^" +
                                         std::to_string(bits));
  }
  if (!words_.empty()) {
    words_[0] = value;
  } else if (value != 0) {
    fail(ErrorCode::InvalidArgument, "term index out of range for a single-term family");
  }
}

void TermIndex::set_bit(unsigned k, bool value) {
  if (k >= bits_) {
    fail(ErrorCode::InvalidArgument, "term index bit out of range");
  }
  const Word mask = Word{1} << (k & 63);
  words_[k >> 6] = value ? (words_[k >> 6] | mask) : (words_[k >> 6] & ~mask);
}

std::string TermIndex::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t w = words_.size(); w-- > 0;) {
    for (int nibble = 15; nibble >= 0; --nibble) {
      const auto d = static_cast<unsigned>((words_[w] >> (4 * nibble)) & 0xF);
      if (out.empty() && d == 0) {
        continue;
      }
      out.push_back(kDigits[d]);
    }
  }
  return out.empty() ? "0" : out;
}

TermIndex TermIndex::from_hex(unsigned bits, std::string_view hex) {
  TermIndex out(bits);
  if (hex.empty()) {
    fail(ErrorCode::InvalidArgument, "empty hex term index");
  }
  unsigned position = 0;
  for (std::size_t k = hex.size(); k-- > 0; position += 4) {
    const char c = hex[k];
    unsigned d = 0;
    if (c >= '0' && c <= '9') {
      d = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      d = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      d = static_cast<unsigned>(c - 'A' + 10);
    } else {
      fail(ErrorCode::InvalidArgument, "invalid hex digit in term index");
    }
    for (unsigned b = 0; b < 4; ++b) {
      if ((d >> b) & 1U) {
        if (position + b >= bits) {
          fail(ErrorCode::InvalidArgument, "hex term index exceeds 2^" + std::to_string(bits));
        }
        out.set_bit(position + b, true);
      }
    }
  }
  return out;
}

std::uint64_t TermIndex::value() const {
  for (std::size_t w = 1; w < words_.size(); ++w) {
    if (words_[w] != 0) {
      fail(ErrorCode::InvalidArgument, "term index does not fit in 64 bits");
    }
  }
  return words_.empty() ? 0 : words_[0];
}

} // namespace bellmark
