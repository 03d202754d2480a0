#include "zeckit/numeration.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>

namespace zeckit {
namespace {

constexpr std::array<Natural, kMaxFibIndex + 1> make_fib_table() {
  std::array<Natural, kMaxFibIndex + 1> t{};
  t[0] = 0;
  t[1] = 1;
  for (unsigned i = 2; i <= kMaxFibIndex; ++i) t[i] = t[i - 1] + t[i - 2];
  return t;
}

constexpr std::array<Natural, kMaxLucasIndex + 1> make_lucas_table() {
  std::array<Natural, kMaxLucasIndex + 1> t{};
  t[0] = 2;
  t[1] = 1;
  for (unsigned i = 2; i <= kMaxLucasIndex; ++i) t[i] = t[i - 1] + t[i - 2];
  return t;
}

constexpr auto kFib = make_fib_table();
constexpr auto kLucas = make_lucas_table();

}  // namespace

Natural fib(unsigned i) {
  if (i > kMaxFibIndex) {
    throw OverflowError("fib(" + std::to_string(i) + ") exceeds 64 bits");
  }
  return kFib[i];
}

Natural lucas(unsigned i) {
  if (i > kMaxLucasIndex) {
    throw OverflowError("lucas(" + std::to_string(i) + ") exceeds 64 bits");
  }
  return kLucas[i];
}

ZeckWord ZeckWord::from_string(std::string_view text) {
  if (text.empty()) throw RepresentationError("empty Zeckendorf word");
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw RepresentationError("invalid digit '" + std::string(1, c) +
                                "' in Zeckendorf word");
    }
  }
  return ZeckWord(std::string(text));
}

bool ZeckWord::canonical() const { return is_canonical(digits_); }

ZeckWord zeck_encode(Natural n) {
  if (n == 0) return ZeckWord(std::string("0"));
  // Largest index with F_i <= n; F_93 does not fit, so the table bound suffices.
  unsigned top = 2;
  while (top < kMaxFibIndex && kFib[top + 1] <= n) ++top;
  std::string digits;
  digits.reserve(top - 1);
  Natural rest = n;
  for (unsigned i = top; i >= 2; --i) {
    if (kFib[i] <= rest) {
      digits.push_back('1');
      rest -= kFib[i];
    } else {
      digits.push_back('0');
    }
  }
  return ZeckWord(std::move(digits));
}

Natural zeck_decode(std::string_view bits, bool strict) {
  if (bits.empty()) throw RepresentationError("empty Zeckendorf word");
  if (strict && !is_canonical(bits)) {
    throw RepresentationError("non-canonical Zeckendorf word '" +
                              std::string(bits) + "'");
  }
  Natural value = 0;
  const std::size_t len = bits.size();
  for (std::size_t k = 0; k < len; ++k) {
    const char c = bits[k];
    if (c != '0' && c != '1') {
      throw RepresentationError("invalid digit '" + std::string(1, c) +
                                "' in Zeckendorf word");
    }
    if (c == '0') continue;
    const std::size_t index = len - k + 1;  // last digit has weight F_2
    if (index > kMaxFibIndex) throw OverflowError("Zeckendorf word too long");
    if (value > std::numeric_limits<Natural>::max() - kFib[index]) {
      throw OverflowError("Zeckendorf value exceeds 64 bits");
    }
    value += kFib[index];
  }
  return value;
}

Natural zeck_decode(const ZeckWord& word, bool strict) {
  return zeck_decode(word.str(), strict);
}

bool is_canonical(std::string_view bits) {
  if (bits.empty()) return false;
  if (bits == "0") return true;
  if (bits.front() != '1') return false;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] != '0' && bits[k] != '1') return false;
    if (k > 0 && bits[k] == '1' && bits[k - 1] == '1') return false;
  }
  return true;
}

unsigned digit_sum(Natural n) {
  const ZeckWord word = zeck_encode(n);
  return static_cast<unsigned>(std::count(word.str().begin(), word.str().end(), '1'));
}

int ftm_direct(Natural n) { return static_cast<int>(digit_sum(n) % 2); }

GoldenConstants golden_constants() {
  const double sqrt5 = std::sqrt(5.0);
  return {(1.0 + sqrt5) / 2.0, (1.0 - sqrt5) / 2.0, sqrt5};
}

}  // namespace zeckit
