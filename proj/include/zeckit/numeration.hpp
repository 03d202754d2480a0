#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zeckit {

/// Natural numbers are machine words; fib/lucas guard against overflow.
using Natural = std::uint64_t;

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class RepresentationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Largest indices whose values fit in 64 bits.
inline constexpr unsigned kMaxFibIndex = 92;
inline constexpr unsigned kMaxLucasIndex = 90;

/// F_i with F_0 = 0, F_1 = 1. Throws OverflowError for i > 92.
Natural fib(unsigned i);

/// L_i with L_0 = 2, L_1 = 1. Throws OverflowError for i > 90.
Natural lucas(unsigned i);

/// An msd-first Zeckendorf digit string. The last digit has weight F_2.
///
/// A ZeckWord built through encode() is always canonical; one built from
/// arbitrary text may carry leading zeros or adjacent ones, and decode()
/// evaluates it positionally unless strict decoding is requested.
class ZeckWord {
 public:
  ZeckWord() : digits_("0") {}

  /// Accepts any non-empty string over {'0','1'}.
  static ZeckWord from_string(std::string_view text);

  const std::string& str() const { return digits_; }
  std::size_t size() const { return digits_.size(); }
  bool canonical() const;

  friend bool operator==(const ZeckWord&, const ZeckWord&) = default;

 private:
  explicit ZeckWord(std::string digits) : digits_(std::move(digits)) {}
  friend ZeckWord zeck_encode(Natural n);

  std::string digits_;
};

/// Greedy canonical representation; zero encodes as "0".
ZeckWord zeck_encode(Natural n);

/// Positional value. With `strict`, rejects non-canonical words.
Natural zeck_decode(const ZeckWord& word, bool strict = false);
Natural zeck_decode(std::string_view bits, bool strict = false);

/// No adjacent ones and no leading zero, except the word "0" itself.
bool is_canonical(std::string_view bits);

/// s_F(n): number of ones in the Zeckendorf representation of n.
unsigned digit_sum(Natural n);

/// Fibonacci-Thue-Morse term computed from the digit sum.
int ftm_direct(Natural n);

struct GoldenConstants {
  double alpha;
  double beta;
  double sqrt5;
};

GoldenConstants golden_constants();

}  // namespace zeckit
