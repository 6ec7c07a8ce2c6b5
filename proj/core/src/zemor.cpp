#include "cayley/zemor.hpp"

#include <algorithm>
#include <numeric>
#include <thread>
#include <tuple>

namespace cayley {

ZemorParams ZemorParams::make(SpecPtr spec, FieldElement alpha, FieldElement beta) {
  if (alpha.is_zero() || beta.is_zero())
    raise(ErrorCode::InvalidArgument, "alpha and beta must be nonzero");
  if (!spec->same(*alpha.spec()) || !spec->same(*beta.spec()))
    raise(ErrorCode::SpecMismatch, "alpha/beta from a different field");
  ZemorParams p{std::move(spec), std::move(alpha), std::move(beta), false};
  FieldElement ab = p.alpha * p.beta;
  p.ab_in_base = frobenius(ab, 1) == ab;
  return p;
}

Mat2 zg_power(const ZemorParams& params, unsigned bit, i64 e) {
  u64 p = params.spec->p();
  i64 r = e % static_cast<i64>(p);
  if (r < 0) r += static_cast<i64>(p);
  FieldElement coef = params.spec->scalar(static_cast<u64>(r)) * (bit == 0 ? params.alpha : params.beta);
  if (bit == 0)
    return Mat2(params.spec->one(), coef, params.spec->zero(), params.spec->one());
  return Mat2(params.spec->one(), params.spec->zero(), coef, params.spec->one());
}

Mat2 zemor_hash(const ZemorParams& params, const Message& m) {
  Mat2 acc = Mat2::identity(params.spec);
  for (const Run& run : m.runs()) acc = acc * zg_power(params, run.bit, static_cast<i64>(run.count % params.spec->p()));
  return acc;
}

DiagExtension diagonalize_ext(const ZemorParams& params, const Mat2& C) {
  const auto& spec = params.spec;
  if (!spec->same(*C.spec())) raise(ErrorCode::SpecMismatch, "matrix over a different field");
  if (C.a().is_zero()) raise(ErrorCode::ZeroCorner, "C[0,0] = 0");
  if (!C.det().is_one()) raise(ErrorCode::DetNotOne, "det(C) != 1");
  FieldElement m_el = -(C.b() / (C.a() * params.alpha));
  FieldElement n_el = -(C.a() * C.c() / params.beta);
  if (!m_el.in_base_field() || !n_el.in_base_field())
    raise(ErrorCode::ExponentNotInBaseField, "extension exponents fall outside F_p");
  u64 m = m_el.residue();
  u64 n = n_el.residue();
  Mat2 D = C * zg_power(params, 0, static_cast<i64>(m)) * zg_power(params, 1, static_cast<i64>(n));
  if (shape(D) != MatShape::diagonal || D.a() != C.a())
    raise(ErrorCode::Internal, "diagonal extension failed its postcondition");
  return {m, n, std::move(D)};
}

DiagCollisionResult diag_collision(const ZemorParams& params, const Message& z, i64 m1, i64 n1, i64 m2,
                                   i64 n2) {
  u64 p = params.spec->p();
  auto reduce = [&](i64 v) {
    i64 r = v % static_cast<i64>(p);
    if (r < 0) r += static_cast<i64>(p);
    return static_cast<u64>(r);
  };
  u64 rm1 = reduce(m1), rn1 = reduce(n1), rm2 = reduce(m2), rn2 = reduce(n2);
  if (rm1 == rm2 && rn1 == rn2)
    raise(ErrorCode::InvalidArgument, "the two exponent pairs coincide mod p");
  Mat2 C = zemor_hash(params, z);
  if (C.a().is_zero()) raise(ErrorCode::ZeroCorner, "H(z)[0,0] = 0");

  auto build = [&](u64 m, u64 n) {
    Mat2 D = zg_power(params, 1, static_cast<i64>(n)) * C * zg_power(params, 0, static_cast<i64>(m));
    DiagExtension ext = diagonalize_ext(params, D);
    Message word;
    word.append_run(1, n);
    word = word + z;
    word.append_run(0, (m + ext.m) % p);
    word.append_run(1, ext.n);
    return std::tuple<Message, DiagExtension>(std::move(word), std::move(ext));
  };
  auto [w1, e1] = build(rm1, rn1);
  auto [w2, e2] = build(rm2, rn2);
  if (e1.result != e2.result) raise(ErrorCode::Internal, "diagonal targets disagree");
  if (w1 == w2) raise(ErrorCode::DegenerateEqualMessages, "constructed words coincide");
  CollisionCertificate cert = make_certificate(CertKind::diagonal_pair, params.spec, params.alpha,
                                               params.beta, w1, w2, e1.result);
  return {std::move(cert), e1.m, e1.n, e2.m, e2.n, (rm1 + e1.m) % p};
}

// ------------------------------------------------------------- delta scans

namespace {

struct ScanHit {
  u64 r, s, m, n;
};

bool tuple_less(const ScanHit& a, const ScanHit& b) {
  return std::tie(a.r, a.s, a.m, a.n) < std::tie(b.r, b.s, b.m, b.n);
}

u64 base_residue_of_ab(const ZemorParams& params) {
  FieldElement ab = params.alpha * params.beta;
  if (!ab.in_base_field()) raise(ErrorCode::AbNotInBaseField, "alpha*beta is not in F_p");
  return ab.residue();
}

// Inner accept test of the diagonal scan for one (r, y) pair: s < delta and
// s * (1 + r*s*c) in (p - delta, p).
template <typename Sink>
inline void diag_accept(u64 p, u64 delta, u64 c, u64 r, u64 y, u64 s, Sink&& sink) {
  if (s == 0 || s >= delta) return;
  u64 x = add_mod(mul_mod(mul_mod(r, s, p), c, p), 1, p);
  u64 sx = mul_mod(s, x, p);
  if (sx > p - delta) sink(ScanHit{r, s, p - y, p - sx});
}

}  // namespace

std::optional<ScanWitness> bounded_diag_search(const ZemorParams& params, u64 delta, unsigned workers) {
  const auto& spec = params.spec;
  if (spec->k() != 1) raise(ErrorCode::InvalidArgument, "the diagonal scan is a base-field procedure");
  u64 p = spec->p();
  if (delta < 2 || delta > p) raise(ErrorCode::InvalidArgument, "need 2 <= delta <= p");
  u64 c = base_residue_of_ab(params);
  u64 cinv = inv_mod(c, p);

  // inverses of r in [1, delta) and of y in (p-delta, p), batched
  std::vector<u64> rs(delta - 1), ys(delta - 1);
  std::iota(rs.begin(), rs.end(), 1);
  for (u64 j = 0; j < delta - 1; ++j) ys[j] = p - delta + 1 + j;
  std::vector<u64> rinv = batch_inv(rs, p);
  std::vector<u64> yinv = batch_inv(ys, p);
  std::vector<u64> ycinv(yinv.size());
  for (std::size_t j = 0; j < yinv.size(); ++j) ycinv[j] = mul_mod(yinv[j], cinv, p);

  auto scan_rows = [&](u64 lo, u64 hi, std::optional<ScanHit>& best) {
    const u64 count = ycinv.size();
    const bool narrow = p < (1ull << 31);
    std::vector<u32> yc32;
    if (narrow) {
      yc32.assign(count, 0);
      for (std::size_t j = 0; j < count; ++j) yc32[j] = static_cast<u32>(ycinv[j]);
    }
    for (u64 ri = lo; ri < hi; ++ri) {
      u64 r = rs[ri];
      u64 rc = mul_mod(rinv[ri], cinv, p);
      auto sink = [&](ScanHit h) {
        if (!best || tuple_less(h, *best)) best = h;
      };
      if (narrow) {
        const u32 p32 = static_cast<u32>(p), d32 = static_cast<u32>(delta), rc32 = static_cast<u32>(rc);
        const u32* data = yc32.data();
        for (u64 blk = 0; blk < count; blk += 4096) {
          u64 end = std::min(count, blk + 4096);
          u32 any = 0;
          for (u64 j = blk; j < end; ++j) {
            u32 t = data[j] - rc32;
            t += p32 & static_cast<u32>(static_cast<std::int32_t>(t) >> 31);
            any |= (t < d32);
          }
          if (!any) continue;
          for (u64 j = blk; j < end; ++j) {
            u64 s = sub_mod(ycinv[j], rc, p);
            diag_accept(p, delta, c, r, ys[j], s, sink);
          }
        }
      } else {
        for (u64 j = 0; j < count; ++j) {
          u64 s = sub_mod(ycinv[j], rc, p);
          diag_accept(p, delta, c, r, ys[j], s, sink);
        }
      }
    }
  };

  auto chunks = split_range(0, rs.size(), workers);
  std::vector<std::optional<ScanHit>> results(chunks.size());
  if (chunks.size() <= 1) {
    if (!chunks.empty()) scan_rows(chunks[0].first, chunks[0].second, results[0]);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < chunks.size(); ++i)
      pool.emplace_back([&, i] { scan_rows(chunks[i].first, chunks[i].second, results[i]); });
    for (auto& t : pool) t.join();
  }
  std::optional<ScanHit> best;
  for (auto& r : results) {
    if (r && (!best || tuple_less(*r, *best))) best = r;
  }
  if (!best) return std::nullopt;

  ScanWitness w{best->r, best->s, best->m, best->n};
  Message word;
  word.append_run(0, w.r);
  word.append_run(1, w.s);
  word.append_run(0, w.m);
  word.append_run(1, w.n);
  if (shape(zemor_hash(params, word)) != MatShape::diagonal)
    raise(ErrorCode::Internal, "diagonal scan witness failed verification");
  return w;
}

std::optional<ScanWitness> bounded_triang_search(const ZemorParams& params, u64 delta, unsigned workers) {
  u64 p = params.spec->p();
  if (delta < 2 || delta > p) raise(ErrorCode::InvalidArgument, "need 2 <= delta <= p");
  u64 c = base_residue_of_ab(params);
  u64 cinv = inv_mod(c, p);

  // Accepted (m, s) pairs of the scan correspond bijectively to pairs
  // (s, j) in [1,delta)^2 with m = (-s^{-1} - j^{-1}) c^{-1} mod p landing in
  // [1, delta); the returned n equals j.
  std::vector<u64> vals(delta - 1);
  std::iota(vals.begin(), vals.end(), 1);
  std::vector<u64> vinv = batch_inv(vals, p);
  std::vector<u64> neg_vc(vinv.size());
  for (std::size_t i = 0; i < vinv.size(); ++i) neg_vc[i] = sub_mod(0, mul_mod(vinv[i], cinv, p), p);

  auto scan_rows = [&](u64 lo, u64 hi, std::optional<ScanHit>& best) {
    const u64 count = neg_vc.size();
    const bool narrow = p < (1ull << 31);
    std::vector<u32> b32;
    if (narrow) {
      b32.assign(count, 0);
      for (std::size_t j = 0; j < count; ++j) b32[j] = static_cast<u32>(neg_vc[j]);
    }
    auto sink = [&](ScanHit h) {
      if (!best || tuple_less(h, *best)) best = h;
    };
    for (u64 si = lo; si < hi; ++si) {
      u64 s = vals[si];
      u64 as = neg_vc[si];
      if (narrow) {
        const u32 p32 = static_cast<u32>(p), d32 = static_cast<u32>(delta), as32 = static_cast<u32>(as);
        const u32* data = b32.data();
        for (u64 blk = 0; blk < count; blk += 4096) {
          u64 end = std::min(count, blk + 4096);
          u32 any = 0;
          for (u64 j = blk; j < end; ++j) {
            u32 t = as32 + data[j];
            t -= p32 & static_cast<u32>(-static_cast<std::int32_t>(t >= p32));
            any |= (t - 1 < d32 - 1);
          }
          if (!any) continue;
          for (u64 j = blk; j < end; ++j) {
            u64 m = add_mod(as, neg_vc[j], p);
            if (m >= 1 && m < delta) sink(ScanHit{1, s, m, vals[j]});
          }
        }
      } else {
        for (u64 j = 0; j < count; ++j) {
          u64 m = add_mod(as, neg_vc[j], p);
          if (m >= 1 && m < delta) sink(ScanHit{1, s, m, vals[j]});
        }
      }
    }
  };

  auto chunks = split_range(0, vals.size(), workers);
  std::vector<std::optional<ScanHit>> results(chunks.size());
  if (chunks.size() <= 1) {
    if (!chunks.empty()) scan_rows(chunks[0].first, chunks[0].second, results[0]);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < chunks.size(); ++i)
      pool.emplace_back([&, i] { scan_rows(chunks[i].first, chunks[i].second, results[i]); });
    for (auto& t : pool) t.join();
  }
  std::optional<ScanHit> best;
  for (auto& r : results) {
    if (r && (!best || tuple_less(*r, *best))) best = r;
  }
  if (!best) return std::nullopt;

  ScanWitness w{best->r, best->s, best->m, best->n};
  Message word;
  word.append_run(0, w.r);
  word.append_run(1, w.s);
  word.append_run(0, w.m);
  word.append_run(1, w.n);
  MatShape sh = shape(zemor_hash(params, word));
  if (sh != MatShape::upper_triangular && sh != MatShape::diagonal)
    raise(ErrorCode::Internal, "triangular scan witness failed verification");
  return w;
}

// ---------------------------------------------------------- triangular ext

TriangExtension triangularize_ext(const ZemorParams& params, const Mat2& C, std::optional<u64> m_choice) {
  const auto& spec = params.spec;
  if (!spec->same(*C.spec())) raise(ErrorCode::SpecMismatch, "matrix over a different field");
  if (!params.ab_in_base) raise(ErrorCode::AbNotInBaseField, "alpha*beta must lie in F_p");
  if (C.a().is_zero()) raise(ErrorCode::ZeroCorner, "C[0,0] = 0");
  u64 p = spec->p();
  FieldElement c_alpha = C.c() * params.alpha;
  // generator products keep c/beta and d inside F_p; check the consequences
  FieldElement c_over_beta = C.c() / params.beta;
  if (!(frobenius(c_over_beta, 1) == c_over_beta) || !(frobenius(C.d(), 1) == C.d()))
    raise(ErrorCode::InvalidArgument, "C is not a generator product (c/beta or d outside F_p)");

  u64 m = 0;
  if (m_choice) {
    m = *m_choice % p;
    if ((spec->scalar(m) * c_alpha + C.d()).is_zero())
      raise(ErrorCode::NoValidM, "chosen m makes m*c*alpha + d vanish");
  } else {
    while (m < p && (spec->scalar(m) * c_alpha + C.d()).is_zero()) ++m;
    if (m >= p) raise(ErrorCode::NoValidM, "no m < p keeps m*c*alpha + d nonzero");
  }
  FieldElement denom = params.beta * (spec->scalar(m) * c_alpha + C.d());
  FieldElement n_el = -(C.c() / denom);
  if (!n_el.in_base_field()) raise(ErrorCode::ExponentNotInBaseField, "n falls outside F_p");
  u64 n = n_el.residue();
  Mat2 T = C * zg_power(params, 0, static_cast<i64>(m)) * zg_power(params, 1, static_cast<i64>(n));
  MatShape sh = shape(T);
  if (sh != MatShape::upper_triangular && sh != MatShape::diagonal)
    raise(ErrorCode::Internal, "triangular extension failed its postcondition");
  return {m, n, std::move(T)};
}

// ------------------------------------------------------------ gamma family

FieldElement gamma_of(const ZemorParams& params, const Mat2& C) {
  const auto& spec = params.spec;
  if (!spec->same(*C.spec())) raise(ErrorCode::SpecMismatch, "matrix over a different field");
  if (params.ab_in_base) raise(ErrorCode::AbInBaseField, "gamma needs alpha*beta outside F_p");
  if (C.c().is_zero()) raise(ErrorCode::ZeroC, "C[1,0] = 0");
  u64 p = spec->p();
  FieldElement ab = params.alpha * params.beta;
  FieldElement db = C.d() * params.beta;
  FieldElement num = C.d() * (db.pow(p - 1) - C.c().pow(p - 1));
  FieldElement den = params.alpha * C.c().pow(p) * (spec->one() - ab.pow(p - 1));
  return num / den;
}

FieldElement gamma_update(const ZemorParams& params, const Mat2& C, u64 m, u64 n) {
  const auto& spec = params.spec;
  u64 p = spec->p();
  FieldElement gamma = gamma_of(params, C);
  Mat2 C2 = C * zg_power(params, 0, static_cast<i64>(m % p)) * zg_power(params, 1, static_cast<i64>(n % p));
  if (C2.c().is_zero()) raise(ErrorCode::ZeroCPrime, "extension has c' = 0");
  FieldElement ratio = C.c() / C2.c();
  return ratio.pow(p + 1) * (gamma - spec->scalar(m % p));
}

std::array<FieldElement, 4> double_ext_coefficients(const ZemorParams& params, const Mat2& C) {
  // From (gamma')^p = gamma' with gamma' = (c/c')^{p+1} (gamma - x) and
  // c' = c + x y c ab + y d beta:
  //   c^{p^2} c' (gamma^p - x) = c (c')^{p^2} (gamma - x)
  // expanded over x, y in F_p and divided once by c.
  const auto& spec = params.spec;
  u64 p = spec->p();
  FieldElement gamma = gamma_of(params, C);
  FieldElement gp = frobenius(gamma, 1);
  FieldElement ab = params.alpha * params.beta;
  FieldElement db = C.d() * params.beta;
  FieldElement cp2 = frobenius(C.c(), 2);
  FieldElement cp2m1 = cp2 / C.c();
  FieldElement abp2 = frobenius(ab, 2);
  FieldElement dbp2 = frobenius(db, 2);
  FieldElement q3 = cp2 * (abp2 - ab);
  FieldElement q2 = cp2 * ab * gp - cp2m1 * db - cp2 * abp2 * gamma + dbp2;
  FieldElement q1 = cp2m1 * db * gp - dbp2 * gamma;
  FieldElement q0 = cp2 * (gp - gamma);
  return {q3, q2, q1, q0};
}

namespace {

std::optional<DoubleExtSolution> complete_double_ext(const ZemorParams& params, const Mat2& C, u64 x,
                                                     u64 y) {
  const auto& spec = params.spec;
  Mat2 C1 = C * zg_power(params, 0, static_cast<i64>(x)) * zg_power(params, 1, static_cast<i64>(y));
  if (C1.c().is_zero()) {
    // first step already produced an upper-triangular matrix
    return DoubleExtSolution{x, y, 0, 0, false};
  }
  FieldElement g2 = gamma_of(params, C1);
  if (!(frobenius(g2, 1) == g2)) return std::nullopt;
  if (!g2.in_base_field()) return std::nullopt;
  u64 m2 = g2.residue();
  FieldElement denom = params.beta * (spec->scalar(m2) * C1.c() * params.alpha + C1.d());
  if (denom.is_zero()) return std::nullopt;
  FieldElement n_el = -(C1.c() / denom);
  if (!n_el.in_base_field()) return std::nullopt;
  u64 n2 = n_el.residue();
  Mat2 final_mat =
      C1 * zg_power(params, 0, static_cast<i64>(m2)) * zg_power(params, 1, static_cast<i64>(n2));
  MatShape sh = shape(final_mat);
  if (sh != MatShape::upper_triangular && sh != MatShape::diagonal) return std::nullopt;
  return DoubleExtSolution{x, y, m2, n2, false};
}

}  // namespace

std::optional<DoubleExtSolution> double_ext_solve(const ZemorParams& params, const Mat2& C,
                                                  unsigned workers) {
  const auto& spec = params.spec;
  u64 p = spec->p();
  if (p > 100000) raise(ErrorCode::BudgetExceeded, "double extension scan limited to p <= 10^5");
  FieldElement gamma = gamma_of(params, C);
  if (frobenius(gamma, 1) == gamma) {
    // single extension suffices
    u64 m1 = gamma.residue();
    FieldElement denom = params.beta * (spec->scalar(m1) * C.c() * params.alpha + C.d());
    if (!denom.is_zero()) {
      FieldElement n_el = -(C.c() / denom);
      if (n_el.in_base_field()) {
        u64 n1 = n_el.residue();
        Mat2 T = C * zg_power(params, 0, static_cast<i64>(m1)) * zg_power(params, 1, static_cast<i64>(n1));
        MatShape sh = shape(T);
        if (sh == MatShape::upper_triangular || sh == MatShape::diagonal)
          return DoubleExtSolution{m1, n1, 0, 0, true};
      }
    }
    // fall through to the full scan when the degenerate route is blocked
  }
  auto q = double_ext_coefficients(params, C);
  const FieldElement& q3 = q[0];
  const FieldElement& q2 = q[1];
  const FieldElement& q1 = q[2];
  const FieldElement& q0 = q[3];

  auto scan = [&](u64 lo, u64 hi, std::optional<DoubleExtSolution>& out) {
    for (u64 x = lo; x < hi && !out; ++x) {
      FieldElement xs = spec->scalar(x);
      FieldElement ax = (q3 * xs + q2) * xs + q1;  // y * ax + q0 = 0
      if (ax.is_zero()) {
        if (!q0.is_zero()) continue;
        for (u64 y = 0; y < p; ++y) {
          if (auto sol = complete_double_ext(params, C, x, y)) {
            out = sol;
            break;
          }
        }
      } else {
        FieldElement y_el = -(q0 / ax);
        if (!y_el.in_base_field()) continue;
        if (auto sol = complete_double_ext(params, C, x, y_el.residue())) out = sol;
      }
    }
  };

  auto chunks = split_range(0, p, workers);
  std::vector<std::optional<DoubleExtSolution>> results(chunks.size());
  if (chunks.size() <= 1) {
    if (!chunks.empty()) scan(chunks[0].first, chunks[0].second, results[0]);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < chunks.size(); ++i)
      pool.emplace_back([&, i] { scan(chunks[i].first, chunks[i].second, results[i]); });
    for (auto& t : pool) t.join();
  }
  for (auto& r : results) {
    if (r) return r;  // chunks are ordered by x, so the first hit is lex-least
  }
  return std::nullopt;
}

// ------------------------------------------------------------- Euclid attack

namespace {

// factors a nonnegative SL2(Z) matrix into generator runs, rightmost first
std::optional<std::vector<Run>> peel_nonneg(i128 A, i128 B, i128 C, i128 D) {
  std::vector<Run> out;
  int guard = 0;
  while (!(A == 1 && B == 0 && C == 0 && D == 1)) {
    if (++guard > 4096) return std::nullopt;
    i128 q;
    if (B >= A && D >= C) {
      q = C == 0 ? B / A : std::min(B / A, D / C);
      if (q <= 0) return std::nullopt;
      B -= q * A;
      D -= q * C;
      out.push_back({0, static_cast<u64>(q)});
    } else if (A >= B && C >= D) {
      if (B == 0)
        q = C / D;
      else if (D == 0)
        q = A / B;
      else
        q = std::min(A / B, C / D);
      if (q <= 0) return std::nullopt;
      A -= q * B;
      C -= q * D;
      out.push_back({1, static_cast<u64>(q)});
    } else {
      return std::nullopt;
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

i128 igcd(i128 a, i128 b) {
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

}  // namespace

Message euclid_factor(const ZemorParams& params, const Mat2& X) {
  const auto& spec = params.spec;
  if (spec->k() != 1) raise(ErrorCode::InvalidArgument, "the Euclid attack works over F_p");
  if (!params.alpha.is_one() || !params.beta.is_one())
    raise(ErrorCode::InvalidArgument, "the Euclid attack needs alpha = beta = 1");
  if (!spec->same(*X.spec())) raise(ErrorCode::SpecMismatch, "matrix over a different field");
  if (!X.det().is_one()) raise(ErrorCode::DetNotOne, "X must lie in SL2(F_p)");
  if (X.is_identity()) return Message();

  u64 p = spec->p();
  u64 a = X.a().residue(), b = X.b().residue(), c = X.c().residue(), d = X.d().residue();

  std::optional<Message> best;
  u64 best_len = 0;
  int attempts = 0;
  const int kGrid = 8;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      if (attempts > 64 && best) break;
      i128 Cs = static_cast<i128>(c) + static_cast<i128>(i) * p;
      i128 Ds = static_cast<i128>(d) + static_cast<i128>(j) * p;
      if (Cs == 0 && Ds == 0) continue;
      if (igcd(Cs, Ds) != 1) continue;
      ++attempts;
      auto [g, u, v] = ext_gcd(Ds, Cs);
      if (g != 1) continue;
      i128 A0 = u, B0 = -v;  // A0*Ds - B0*Cs = 1
      // choose t with (A0 + Cs t, B0 + Ds t) = (a, b) mod p
      u64 t0;
      i128 pI = static_cast<i128>(p);
      auto modp = [&](i128 v2) {
        i128 r = v2 % pI;
        if (r < 0) r += pI;
        return static_cast<u64>(r);
      };
      if (c % p != 0)
        t0 = mul_mod(sub_mod(a, modp(A0), p), inv_mod(c, p), p);
      else if (d % p != 0)
        t0 = mul_mod(sub_mod(b, modp(B0), p), inv_mod(d, p), p);
      else
        continue;
      // both congruences must hold (they do when (a,b) solves the det equation)
      if (modp(A0 + Cs * t0) != a || modp(B0 + Ds * t0) != b) continue;
      for (int step = 0; step < 3; ++step) {
        i128 t = static_cast<i128>(t0) + static_cast<i128>(step) * p;
        i128 A = A0 + Cs * t;
        i128 B = B0 + Ds * t;
        int extra = 0;
        while ((A < 0 || B < 0) && extra < 64) {
          t += pI;
          A = A0 + Cs * t;
          B = B0 + Ds * t;
          ++extra;
        }
        if (A < 0 || B < 0) continue;
        if (A * Ds - B * Cs != 1) continue;
        auto runs = peel_nonneg(A, B, Cs, Ds);
        if (!runs) continue;
        Message word = Message::from_runs(*runs);
        u64 len = word.bit_length();
        if (!best || len < best_len) {
          best = std::move(word);
          best_len = len;
        }
      }
    }
  }
  if (!best) raise(ErrorCode::LiftFailed, "no usable SL2(Z) lift within the attempt budget");
  if (zemor_hash(params, *best) != X) raise(ErrorCode::Internal, "Euclid word failed to re-hash");
  return *best;
}

// ------------------------------------------------------------- combiner

CombineResult combine_to_identity(const ZemorParams& params,
                                  const std::vector<std::pair<Message, Mat2>>& items) {
  const auto& spec = params.spec;
  if (items.empty()) raise(ErrorCode::NoNontrivialRelation, "no items to combine");
  u64 p = spec->p();
  for (const auto& [msg, mat] : items) {
    if (zemor_hash(params, msg) != mat) raise(ErrorCode::VerifyFailed, "item hash does not match its message");
    MatShape sh = shape(mat);
    if (sh != MatShape::upper_triangular && sh != MatShape::diagonal)
      raise(ErrorCode::InvalidArgument, "item hash is not upper triangular");
    if (mat.a().is_zero()) raise(ErrorCode::InvalidArgument, "item with zero diagonal entry");
  }
  u64 group = spec->order_u64();
  if (group == 0) raise(ErrorCode::DlogBudgetExceeded, "p^k too large for discrete logs");
  u64 M = group - 1;

  std::size_t r = items.size();
  std::vector<u64> orders(r), dlogs(r, 0);
  bool have_dlogs = false;
  for (std::size_t i = 0; i < r; ++i) orders[i] = mult_order(items[i].second.a());

  std::vector<std::vector<u64>> candidates;
  // single-item relations through element orders
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<u64> e(r, 0);
    e[i] = orders[i];
    candidates.push_back(std::move(e));
  }
  // any unit diagonal entry combines alone with exponent 1
  for (std::size_t i = 0; i < r; ++i) {
    if (items[i].second.a().is_one()) {
      std::vector<u64> e(r, 0);
      e[i] = 1;
      candidates.push_back(std::move(e));
    }
  }
  // pairwise relations through discrete logs to a common generator
  if (r >= 2) {
    FieldElement gen = unit_group_generator(spec);
    for (std::size_t i = 0; i < r; ++i) dlogs[i] = discrete_log(gen, items[i].second.a());
    have_dlogs = true;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = i + 1; j < r; ++j) {
        if (dlogs[i] == 0 || dlogs[j] == 0) continue;
        u64 g = std::gcd(dlogs[i], dlogs[j]);
        std::vector<u64> e(r, 0);
        e[i] = dlogs[j] / g;
        e[j] = M - dlogs[i] / g;
        e[i] %= orders[i];
        e[j] %= orders[j];
        if (e[i] + e[j] > 0) candidates.push_back(std::move(e));
      }
    }
  }
  (void)have_dlogs;

  auto cost = [&](const std::vector<u64>& e) {
    u128 total = 0;
    for (std::size_t i = 0; i < r; ++i) total += static_cast<u128>(e[i]) * (items[i].first.runs().size() + 1);
    return total;
  };
  std::optional<std::vector<u64>> best;
  u128 best_cost = 0;
  for (auto& e : candidates) {
    bool nontrivial = false;
    FieldElement prod = spec->one();
    for (std::size_t i = 0; i < r; ++i) {
      if (e[i]) nontrivial = true;
      prod = prod * items[i].second.a().pow(e[i]);
    }
    if (!nontrivial || !prod.is_one()) continue;
    u128 cst = cost(e);
    if (!best || cst < best_cost || (cst == best_cost && e < *best)) {
      best = e;
      best_cost = cst;
    }
  }
  if (!best) raise(ErrorCode::NoNontrivialRelation, "no exponent relation found");

  Message combined;
  for (std::size_t i = 0; i < r; ++i) combined = combined + items[i].first.repeated((*best)[i]);
  if (combined.empty()) raise(ErrorCode::NoNontrivialRelation, "relation produced an empty word");
  Mat2 U = zemor_hash(params, combined);
  if (!U.a().is_one() || !U.c().is_zero() || !U.d().is_one())
    raise(ErrorCode::Internal, "combined hash is not unipotent");
  u64 repeat = U.b().is_zero() ? 1 : p;
  Message word = combined.repeated(repeat);
  CollisionCertificate cert = make_certificate(CertKind::identity_word, spec, params.alpha, params.beta,
                                               word, Message(), Mat2::identity(spec));
  return {std::move(cert), *best, repeat, std::move(combined)};
}

}  // namespace cayley
