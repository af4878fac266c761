#include "cuspforge/bignat.hpp"

#include <utility>

#include "cuspforge/error.hpp"

namespace cuspforge {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parse: return "ParseError";
    case ErrorCode::invalid_sequence: return "InvalidSequence";
    case ErrorCode::not_reducible: return "NotReducible";
    case ErrorCode::degenerate_remainder: return "DegenerateRemainder";
    case ErrorCode::not_realizable: return "NotRealizable";
    case ErrorCode::not_standard: return "NotStandard";
    case ErrorCode::inconsistent: return "Inconsistent";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::entry_below_two: return "EntryBelowTwo";
    case ErrorCode::not_contractible: return "NotContractible";
    case ErrorCode::not_a_fiber: return "NotAFiber";
    case ErrorCode::not_coprime: return "NotCoprime";
    case ErrorCode::param_out_of_domain: return "ParamOutOfDomain";
    case ErrorCode::too_large: return "TooLarge";
    case ErrorCode::internal: return "InternalError";
  }
  return "UnknownError";
}

BigNat::BigNat(const BigInt& v) : v_(v) {
  if (sgn(v_) < 0) fail(ErrorCode::invalid_argument, "negative value " + v.get_str() + " for a natural number");
}

BigNat BigNat::parse(std::string_view text) {
  if (text.empty()) fail(ErrorCode::parse, "empty integer");
  for (char ch : text) {
    if (ch < '0' || ch > '9') fail(ErrorCode::parse, "invalid integer '" + std::string(text) + "'");
  }
  BigNat out;
  out.v_.set_str(std::string(text), 10);
  return out;
}

std::optional<std::uint64_t> BigNat::to_u64() const {
  if (!v_.fits_ulong_p()) return std::nullopt;
  return static_cast<std::uint64_t>(v_.get_ui());
}

bool BigNat::divides(const BigNat& other) const {
  if (is_zero()) return other.is_zero();
  return mpz_divisible_p(other.v_.get_mpz_t(), v_.get_mpz_t()) != 0;
}

BigNat& BigNat::operator-=(const BigNat& o) {
  if (v_ < o.v_) fail(ErrorCode::invalid_argument, "natural subtraction underflow: " + to_string() + " - " + o.to_string());
  v_ -= o.v_;
  return *this;
}

BigNat operator/(const BigNat& a, const BigNat& b) {
  if (b.is_zero()) fail(ErrorCode::invalid_argument, "division by zero");
  BigNat q;
  mpz_fdiv_q(q.v_.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return q;
}

BigNat operator%(const BigNat& a, const BigNat& b) {
  if (b.is_zero()) fail(ErrorCode::invalid_argument, "division by zero");
  BigNat r;
  mpz_fdiv_r(r.v_.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return r;
}

BigNat gcd(const BigNat& a, const BigNat& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.value().get_mpz_t(), b.value().get_mpz_t());
  return BigNat(g);
}

BigNat fibonacci(std::uint64_t n) {
  // (F_k, F_{k+1}) -> (F_2k, F_2k+1) and (F_2k+1, F_2k+2)
  BigInt a = 0;
  BigInt b = 1;
  for (int bit = 63; bit >= 0; --bit) {
    BigInt twice_b_minus_a = 2 * b - a;
    BigInt f2k = a * twice_b_minus_a;
    BigInt f2k1 = a * a + b * b;
    if ((n >> bit) & 1U) {
      a = f2k1;
      b = f2k + f2k1;
    } else {
      a = std::move(f2k);
      b = std::move(f2k1);
    }
  }
  return BigNat(a);
}

}  // namespace cuspforge
