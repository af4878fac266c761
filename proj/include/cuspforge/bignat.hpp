#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cuspforge {

/// Signed arbitrary-precision integer, used for discriminants, E^2 and K(K+D).
using BigInt = mpz_class;

/// Arbitrary-precision non-negative integer. Subtraction is checked and
/// throws instead of wrapping below zero.
class BigNat {
 public:
  BigNat() = default;
  BigNat(std::uint64_t v) : v_(static_cast<unsigned long>(v)) {}  // NOLINT(google-explicit-constructor)
  explicit BigNat(const BigInt& v);

  /// Decimal digits only, no sign, no whitespace.
  static BigNat parse(std::string_view text);

  const BigInt& value() const noexcept { return v_; }
  std::string to_string() const { return v_.get_str(); }
  std::optional<std::uint64_t> to_u64() const;

  bool is_zero() const noexcept { return sgn(v_) == 0; }
  bool is_one() const noexcept { return v_ == 1; }
  /// True when *this divides other (0 divides only 0).
  bool divides(const BigNat& other) const;

  BigNat& operator+=(const BigNat& o) {
    v_ += o.v_;
    return *this;
  }
  BigNat& operator*=(const BigNat& o) {
    v_ *= o.v_;
    return *this;
  }
  BigNat& operator-=(const BigNat& o);

  friend BigNat operator+(BigNat a, const BigNat& b) { return a += b; }
  friend BigNat operator*(BigNat a, const BigNat& b) { return a *= b; }
  friend BigNat operator-(BigNat a, const BigNat& b) { return a -= b; }
  /// Floor division; throws on division by zero.
  friend BigNat operator/(const BigNat& a, const BigNat& b);
  friend BigNat operator%(const BigNat& a, const BigNat& b);

  friend bool operator==(const BigNat& a, const BigNat& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const BigNat& a, const BigNat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  BigInt v_;
};

BigNat gcd(const BigNat& a, const BigNat& b);

inline BigInt to_signed(const BigNat& n) { return n.value(); }
inline std::string to_string(const BigInt& v) { return v.get_str(); }

/// Fibonacci number F_n (F_0 = 0, F_1 = 1) by fast doubling.
BigNat fibonacci(std::uint64_t n);

}  // namespace cuspforge
