#include "cayley/tz.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>

namespace cayley {

TZParams TZParams::make(SpecPtr spec, std::optional<FieldElement> alpha, std::optional<FieldElement> beta) {
  FieldElement a = alpha ? *alpha : spec->generator_image();
  FieldElement b = beta ? *beta : spec->generator_image() + spec->one();
  if (!spec->same(*a.spec()) || !spec->same(*b.spec()))
    raise(ErrorCode::SpecMismatch, "alpha/beta from a different field");
  return {std::move(spec), std::move(a), std::move(b)};
}

FSeqCursor::FSeqCursor(FieldElement point)
    : point_(std::move(point)), cur_(point_.spec()->one()), prev_(point_.spec()->zero()), index_(1) {}

void FSeqCursor::advance() {
  FieldElement next = point_ * cur_ + prev_;
  prev_ = std::move(cur_);
  cur_ = std::move(next);
  ++index_;
}

FSeqPolyCursor::FSeqPolyCursor(u64 p, std::optional<DensePoly> modulus)
    : modulus_(std::move(modulus)), cur_(DensePoly::one(p)), prev_(DensePoly::zero(p)), index_(1) {}

void FSeqPolyCursor::advance() {
  DensePoly next = cur_.shifted(1) + prev_;  // x * f_n + f_{n-1}
  if (modulus_) next = next.mod(*modulus_);
  prev_ = std::move(cur_);
  cur_ = std::move(next);
  ++index_;
}

FieldElement f_iter_eval(u64 n, const FieldElement& point) {
  if (n == 0) return point.spec()->zero();
  FSeqCursor cur(point);
  while (cur.index() < n) cur.advance();
  return cur.current();
}

DensePoly f_iter_poly(u64 n, u64 p, const std::optional<DensePoly>& modulus) {
  if (n == 0) return DensePoly::zero(p);
  FSeqPolyCursor cur(p, modulus);
  while (cur.index() < n) cur.advance();
  return cur.current();
}

namespace {

// binomial coefficient mod p via Lucas' theorem with per-digit factorials
class BinomModP {
 public:
  explicit BinomModP(u64 p) : p_(p) {
    u64 cap = std::min<u64>(p_, 4096);
    fact_.resize(cap);
    fact_[0] = 1;
    for (u64 i = 1; i < cap; ++i) fact_[i] = mul_mod(fact_[i - 1], i, p_);
  }

  u64 operator()(u64 n, u64 k) const {
    if (k > n) return 0;
    u64 result = 1;
    while (n || k) {
      u64 nd = n % p_, kd = k % p_;
      if (kd > nd) return 0;
      result = mul_mod(result, small(nd, kd), p_);
      n /= p_;
      k /= p_;
    }
    return result;
  }

 private:
  u64 small(u64 n, u64 k) const {
    if (n < fact_.size())
      return mul_mod(fact_[n], inv_mod(mul_mod(fact_[k], fact_[n - k], p_), p_), p_);
    // p > table cap: multiply the falling factorial directly
    u64 num = 1, den = 1;
    for (u64 i = 0; i < k; ++i) {
      num = mul_mod(num, (n - i) % p_, p_);
      den = mul_mod(den, (i + 1) % p_, p_);
    }
    return mul_mod(num, inv_mod(den, p_), p_);
  }

  u64 p_;
  std::vector<u64> fact_;
};

}  // namespace

DensePoly f_closed(u64 n, u64 p) {
  if (p == 2) raise(ErrorCode::CharTwo, "the closed form needs p != 2");
  if (n == 0) return DensePoly::zero(p);
  // f_n = [ (x+w)^n - (x-w)^n ] / (2^n w)  with  w^2 = x^2 + 4; expanding and
  // pairing the surviving terms gives, with nu = n - 1:
  //   f_n = sum_{i <= nu, nu - i even} sum_{j <= (nu-i)/2}
  //         C(nu+1, i) C((nu-i)/2, j) 2^{-(i+2j)} x^{i+2j}
  u64 nu = n - 1;
  BinomModP binom(p);
  u64 inv2 = inv_mod(2, p);
  std::vector<u64> inv2pow(nu + 1);
  inv2pow[0] = 1;
  for (u64 i = 1; i <= nu; ++i) inv2pow[i] = mul_mod(inv2pow[i - 1], inv2, p);
  std::vector<u64> coeffs(nu + 1, 0);
  for (u64 i = 0; i <= nu; ++i) {
    if ((nu - i) % 2) continue;
    u64 h = (nu - i) / 2;
    u64 ci = binom(nu + 1, i);
    if (ci == 0) continue;
    for (u64 j = 0; j <= h; ++j) {
      u64 term = mul_mod(ci, binom(h, j), p);
      if (term == 0) continue;
      u64 e = i + 2 * j;
      coeffs[e] = add_mod(coeffs[e], mul_mod(term, inv2pow[e], p), p);
    }
  }
  return DensePoly(p, coeffs);
}

Mat2 y_power(const FieldElement& point, u64 n) {
  const auto& spec = point.spec();
  Mat2 y(point, spec->one(), spec->one(), spec->zero());
  return mat_pow(y, n);
}

Mat2 tz_hash(const TZParams& params, const Message& m) {
  Mat2 acc = Mat2::identity(params.spec);
  for (const Run& run : m.runs()) {
    const FieldElement& point = run.bit == 0 ? params.alpha : params.beta;
    acc = acc * y_power(point, run.count);
  }
  return acc;
}

// ------------------------------------------------------------- orders

namespace {

constexpr u64 kIterationCap = 1u << 22;

}  // namespace

u64 matrix_order(const Mat2& y) {
  const auto& spec = y.spec();
  u64 p = spec->p();
  u64 k = spec->k();
  u64 pk = checked_pow(p, k);
  u64 p2k = pk ? checked_pow(pk, 2) : 0;
  if (p2k != 0) {
    u128 m0w = static_cast<u128>(p) * (p2k - 1);
    if (m0w < (static_cast<u128>(1) << 62)) {
      u64 m0 = static_cast<u64>(m0w);
      if (mat_pow(y, m0).is_identity()) {
        auto factors = factor_u64(m0);
        return reduce_order(m0, factors, [&](u64 e) { return mat_pow(y, e).is_identity(); });
      }
    }
  }
  // fallback: direct search
  Mat2 acc = y;
  for (u64 n = 1; n <= kIterationCap; ++n) {
    if (acc.is_identity()) return n;
    acc = acc * y;
  }
  raise(ErrorCode::FactorizationTooHard, "matrix order exceeds both the eigenvalue bound and the iteration cap");
}

u64 sequence_period(u64 p, const DensePoly& q, const std::optional<DensePoly>& point) {
  SpecPtr spec = q.degree() == 1 ? FieldSpec::make(p) : FieldSpec::make(p, q.degree(), q);
  FieldElement pt = point ? spec->from_poly(*point)
                          : (q.degree() == 1 ? spec->scalar(sub_mod(0, q.coeff(0), p)) : spec->generator_image());
  u64 d = static_cast<u64>(q.degree());
  u64 n = matrix_order(Mat2(pt, spec->one(), spec->one(), spec->zero()));
  // the period lemma's divisibility bound, checked on every call
  u64 pd = checked_pow(p, d);
  if (pd != 0) {
    u128 p2d = static_cast<u128>(pd) * pd;
    u128 bound = static_cast<u128>(pd) * (p2d - 1);  // (p^{2d}-p^d)(p^{2d}-1)/(p^d-1)
    if (bound % n != 0) raise(ErrorCode::Internal, "period exceeds the lemma's divisibility bound");
  }
  return n;
}

std::optional<std::pair<u64, u64>> power_collision_search(const TZParams& params, u64 bound) {
  if (bound == 0) return std::nullopt;
  if (bound > (1u << 22)) raise(ErrorCode::BudgetExceeded, "orbit join bound above the memory budget");
  const auto& spec = params.spec;
  Mat2 ya(params.alpha, spec->one(), spec->one(), spec->zero());
  Mat2 yb(params.beta, spec->one(), spec->one(), spec->zero());
  u64 na = matrix_order(ya);
  u64 nb = matrix_order(yb);

  std::optional<std::pair<u64, u64>> best;
  if (na <= bound && nb <= bound) best = std::make_pair(nb, na);

  // hash-join of the alpha orbit against the beta orbit
  std::unordered_map<u64, std::vector<std::pair<Mat2, u64>>> orbit;
  u64 cap_a = std::min(bound, na);
  Mat2 acc = ya;
  for (u64 n = 1; n <= cap_a; ++n) {
    auto& bucket = orbit[acc.stable_hash()];
    bool seen = false;
    for (auto& [mat, idx] : bucket) {
      (void)idx;
      if (mat == acc) {
        seen = true;
        break;
      }
    }
    if (!seen) bucket.emplace_back(acc, n);
    acc = acc * ya;
  }
  u64 cap_b = std::min(bound, nb);
  acc = yb;
  for (u64 m = 1; m <= cap_b; ++m) {
    auto it = orbit.find(acc.stable_hash());
    if (it != orbit.end()) {
      for (auto& [mat, n] : it->second) {
        if (mat == acc) {
          if (!best || std::make_pair(m, n) < *best) best = std::make_pair(m, n);
          break;
        }
      }
    }
    if (best && best->first <= m) break;  // later m cannot improve the pair
    acc = acc * yb;
  }
  if (best) {
    if (!(y_power(params.beta, best->first) == y_power(params.alpha, best->second)))
      raise(ErrorCode::Internal, "power collision failed verification");
  }
  return best;
}

bool empty_word_check(const TZParams& params, u64 m, u64 n) {
  Mat2 h = y_power(params.alpha, m) * y_power(params.beta, n);
  return h.is_identity();
}

EmptyWordDiagnostic empty_word_diagnose(const TZParams& params, u64 m, u64 n) {
  EmptyWordDiagnostic diag;
  diag.holds = empty_word_check(params, m, n);
  const auto& spec = params.spec;
  FieldElement x = spec->generator_image();
  // f_t at the composed points, with f_{-1} = 1 handled by the shift t+1 >= 0
  auto f_at = [&](i64 t, const FieldElement& pt) {
    if (t < 0) {
      if (t == -1) return spec->one();
      raise(ErrorCode::InvalidArgument, "f index below -1");
    }
    return f_iter_eval(static_cast<u64>(t), pt);
  };
  i64 mi = static_cast<i64>(m), ni = static_cast<i64>(n);
  FieldElement fn1 = f_at(ni + 1, x), fn = f_at(ni, x), fn0 = f_at(ni - 1, x);
  diag.relations[0] = (f_at(mi + 1, fn1) + f_at(mi, fn)).is_one();
  diag.relations[1] = (f_at(mi + 1, fn) + f_at(mi, fn0)).is_zero();
  diag.relations[2] = (f_at(mi, fn1) + f_at(mi - 1, fn)).is_zero();
  diag.relations[3] = (f_at(mi, fn) + f_at(mi - 1, fn0)).is_one();
  return diag;
}

// ------------------------------------------------------- malicious fields

namespace {

std::vector<WeakField> filter_weak(u64 p, const std::vector<DensePoly>& candidates, u64 order_bound,
                                   unsigned workers) {
  std::vector<std::optional<WeakField>> slots(candidates.size());
  auto work = [&](u64 lo, u64 hi) {
    for (u64 i = lo; i < hi; ++i) {
      u64 n = sequence_period(p, candidates[i]);
      if (n <= order_bound) {
        // verified certificate: the generator to the period is the identity
        SpecPtr spec = candidates[i].degree() == 1 ? FieldSpec::make(p)
                                                   : FieldSpec::make(p, candidates[i].degree(), candidates[i]);
        FieldElement pt = candidates[i].degree() == 1
                              ? spec->scalar(sub_mod(0, candidates[i].coeff(0), p))
                              : spec->generator_image();
        if (!y_power(pt, n).is_identity()) raise(ErrorCode::Internal, "weak-field period failed verification");
        slots[i] = WeakField{candidates[i], n};
      }
    }
  };
  auto chunks = split_range(0, candidates.size(), workers);
  if (chunks.size() <= 1) {
    if (!chunks.empty()) work(chunks[0].first, chunks[0].second);
  } else {
    std::vector<std::thread> pool;
    for (auto& [lo, hi] : chunks) pool.emplace_back(work, lo, hi);
    for (auto& t : pool) t.join();
  }
  std::vector<WeakField> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  std::stable_sort(out.begin(), out.end(), [](const WeakField& a, const WeakField& b) {
    if (a.period != b.period) return a.period < b.period;
    return a.modulus.lex_less(b.modulus);
  });
  return out;
}

}  // namespace

std::vector<WeakField> malicious_generate(u64 p, u64 d, u64 order_bound, u64 scan_limit, unsigned workers) {
  std::vector<DensePoly> candidates = irreducibles_of_degree(p, d, scan_limit);
  return filter_weak(p, candidates, order_bound, workers);
}

std::vector<WeakField> malicious_generate_candidates(u64 p, const std::vector<DensePoly>& candidates,
                                                     u64 order_bound, unsigned workers) {
  for (const auto& c : candidates) {
    if (c.p() != p) raise(ErrorCode::SpecMismatch, "candidate over a different prime");
    if (!is_irreducible(c)) raise(ErrorCode::InvalidArgument, "candidate " + c.serialize() + " is reducible");
  }
  return filter_weak(p, candidates, order_bound, workers);
}

DensePoly symbolic_gcd_probe(u64 p, u64 N) {
  if (N > 2000) raise(ErrorCode::DegreeCapExceeded, "symbolic probe capped at N <= 2000");
  DensePoly fn1 = f_iter_poly(N + 1, p);
  DensePoly fn = f_iter_poly(N, p);
  return poly_gcd(fn1 - DensePoly::one(p), fn);
}

}  // namespace cayley
