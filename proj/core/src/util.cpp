#include "cayley/util.hpp"

#include <algorithm>
#include <numeric>

namespace cayley {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FactorizationTooHard: return "FactorizationTooHard";
    case ErrorCode::NotInSubgroup: return "NotInSubgroup";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ZeroCorner: return "ZeroCorner";
    case ErrorCode::DetNotOne: return "DetNotOne";
    case ErrorCode::ExponentNotInBaseField: return "ExponentNotInBaseField";
    case ErrorCode::AbNotInBaseField: return "AbNotInBaseField";
    case ErrorCode::AbInBaseField: return "AbInBaseField";
    case ErrorCode::NoValidM: return "NoValidM";
    case ErrorCode::ZeroC: return "ZeroC";
    case ErrorCode::ZeroCPrime: return "ZeroCPrime";
    case ErrorCode::LiftFailed: return "LiftFailed";
    case ErrorCode::NoNontrivialRelation: return "NoNontrivialRelation";
    case ErrorCode::DlogBudgetExceeded: return "DlogBudgetExceeded";
    case ErrorCode::DegenerateEqualMessages: return "DegenerateEqualMessages";
    case ErrorCode::CharTwo: return "CharTwo";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::VerifyFailed: return "VerifyFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

ExtGcd ext_gcd(i128 a, i128 b) {
  i128 old_r = a, r = b;
  i128 old_s = 1, s = 0;
  i128 old_t = 0, t = 1;
  while (r != 0) {
    i128 q = old_r / r;
    std::swap(old_r -= q * r, r);
    std::swap(old_s -= q * s, s);
    std::swap(old_t -= q * t, t);
  }
  return {old_r, old_s, old_t};
}

u64 inv_mod(u64 a, u64 m) {
  a %= m;
  if (a == 0) raise(ErrorCode::DivisionByZero, "inverse of zero");
  auto [g, x, y] = ext_gcd(static_cast<i128>(a), static_cast<i128>(m));
  if (g != 1) raise(ErrorCode::DivisionByZero, "element not invertible");
  i128 r = x % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

std::vector<u64> batch_inv(const std::vector<u64>& values, u64 p) {
  std::vector<u64> out(values.size());
  if (values.empty()) return out;
  std::vector<u64> prefix(values.size());
  u64 acc = 1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    prefix[i] = acc;
    acc = mul_mod(acc, values[i], p);
  }
  u64 inv = inv_mod(acc, p);
  for (std::size_t i = values.size(); i-- > 0;) {
    out[i] = mul_mod(inv, prefix[i], p);
    inv = mul_mod(inv, values[i], p);
  }
  return out;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // deterministic Miller-Rabin bases for n < 2^64
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

u64 pollard_rho(u64 n, u64 c, u64 iter_cap) {
  u64 x = 2, y = 2, d = 1;
  u64 steps = 0;
  auto step = [&](u64 v) { return add_mod(mul_mod(v, v, n), c, n); };
  while (d == 1) {
    if (++steps > iter_cap) return 0;
    x = step(x);
    y = step(step(y));
    d = std::gcd(x > y ? x - y : y - x, n);
  }
  return d == n ? 0 : d;
}

void factor_rec(u64 n, std::map<u64, unsigned>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  for (u64 c = 1; c < 40; ++c) {
    u64 d = pollard_rho(n, c, 1u << 24);
    if (d != 0 && d != 1 && d != n) {
      factor_rec(d, out);
      factor_rec(n / d, out);
      return;
    }
  }
  raise(ErrorCode::FactorizationTooHard, "Pollard rho exceeded its iteration budget for " + std::to_string(n));
}

}  // namespace

std::map<u64, unsigned> factor_u64(u64 n) {
  std::map<u64, unsigned> out;
  if (n == 0) raise(ErrorCode::InvalidArgument, "factor of zero");
  for (u64 q = 2; q <= 1000000 && q * q <= n; q += (q == 2 ? 1 : 2)) {
    while (n % q == 0) {
      ++out[q];
      n /= q;
    }
  }
  factor_rec(n, out);
  return out;
}

u64 checked_pow(u64 p, u64 k) {
  u128 acc = 1;
  for (u64 i = 0; i < k; ++i) {
    acc *= p;
    if (acc > (static_cast<u128>(1) << 62)) return 0;
  }
  return static_cast<u64>(acc);
}

std::vector<std::pair<u64, u64>> split_range(u64 lo, u64 hi, unsigned workers) {
  std::vector<std::pair<u64, u64>> out;
  if (hi <= lo) return out;
  if (workers == 0) workers = 1;
  u64 n = hi - lo;
  u64 chunks = std::min<u64>(workers, n);
  for (u64 i = 0; i < chunks; ++i) {
    u64 a = lo + n * i / chunks;
    u64 b = lo + n * (i + 1) / chunks;
    if (a < b) out.emplace_back(a, b);
  }
  return out;
}

}  // namespace cayley
