#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayley {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

enum class ErrorCode {
  SpecMismatch,
  DivisionByZero,
  FactorizationTooHard,
  NotInSubgroup,
  ParseError,
  ZeroCorner,
  DetNotOne,
  ExponentNotInBaseField,
  AbNotInBaseField,
  AbInBaseField,
  NoValidM,
  ZeroC,
  ZeroCPrime,
  LiftFailed,
  NoNontrivialRelation,
  DlogBudgetExceeded,
  DegenerateEqualMessages,
  CharTwo,
  DegreeCapExceeded,
  BudgetExceeded,
  VerifyFailed,
  InvalidArgument,
  UsageError,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

// ---- modular arithmetic on raw residues (modulus < 2^63) ----

inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  if (s >= m || s < a) s -= m;
  return s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m);

// inverse of a modulo m, gcd(a, m) must be 1
u64 inv_mod(u64 a, u64 m);

// extended gcd over signed 128-bit: g = gcd(a,b), a*x + b*y = g  (a,b >= 0)
struct ExtGcd {
  i128 g, x, y;
};
ExtGcd ext_gcd(i128 a, i128 b);

// batch inversion of nonzero residues (Montgomery's trick); values[i] != 0
std::vector<u64> batch_inv(const std::vector<u64>& values, u64 p);

bool is_prime_u64(u64 n);

// deterministic factorization: trial division to 10^6 then Pollard rho with an
// iteration cap; throws FactorizationTooHard past the budget
std::map<u64, unsigned> factor_u64(u64 n);

// p^k as u64, or 0 on overflow past 2^62
u64 checked_pow(u64 p, u64 k);

// least N' | multiple with elem^N' == identity, given elem^multiple == identity;
// generic over a group via a power callback
template <typename PowFn>
u64 reduce_order(u64 multiple, const std::map<u64, unsigned>& factors, PowFn&& is_identity_at) {
  u64 n = multiple;
  for (auto [prime, count] : factors) {
    for (unsigned i = 0; i < count; ++i) {
      if (n % prime != 0) break;
      if (is_identity_at(n / prime))
        n /= prime;
      else
        break;
    }
  }
  return n;
}

// splits [lo, hi) into at most `workers` contiguous chunks
std::vector<std::pair<u64, u64>> split_range(u64 lo, u64 hi, unsigned workers);

}  // namespace cayley
