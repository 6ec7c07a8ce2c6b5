#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "cayley/certificate.hpp"
#include "cayley/mat2.hpp"
#include "cayley/message.hpp"

namespace cayley {

/// Parameters of the generalized Tillich-Zemor hash: generators (a 1; 1 0)
/// and (b 1; 1 0) over F_p[x]/q(x). Defaults echo the classical generators:
/// alpha = image of x, beta = alpha + 1.
struct TZParams {
  SpecPtr spec;
  FieldElement alpha;
  FieldElement beta;

  static TZParams make(SpecPtr spec, std::optional<FieldElement> alpha = std::nullopt,
                       std::optional<FieldElement> beta = std::nullopt);
};

/// Streaming cursor over f_0 = 0, f_1 = 1, f_{n+1} = point * f_n + f_{n-1},
/// evaluated at a field point.
class FSeqCursor {
 public:
  explicit FSeqCursor(FieldElement point);
  u64 index() const { return index_; }            // n of the current pair
  const FieldElement& current() const { return cur_; }   // f_n
  const FieldElement& previous() const { return prev_; } // f_{n-1}
  void advance();

 private:
  FieldElement point_, cur_, prev_;
  u64 index_;
};

/// Symbolic twin of FSeqCursor over F_p[x], reducing modulo `modulus` when given.
class FSeqPolyCursor {
 public:
  FSeqPolyCursor(u64 p, std::optional<DensePoly> modulus);
  u64 index() const { return index_; }
  const DensePoly& current() const { return cur_; }
  const DensePoly& previous() const { return prev_; }
  void advance();

 private:
  std::optional<DensePoly> modulus_;
  DensePoly cur_, prev_;
  u64 index_;
};

/// f_n evaluated at a field point, O(n) field operations.
FieldElement f_iter_eval(u64 n, const FieldElement& point);

/// f_n as a polynomial over F_p (reduced modulo `modulus` when given).
DensePoly f_iter_poly(u64 n, u64 p, const std::optional<DensePoly>& modulus = std::nullopt);

/// Closed form of f_n via the double binomial sum; p must be odd.
DensePoly f_closed(u64 n, u64 p);

/// Y^n for Y = (point 1; 1 0), square-and-multiply. Under the corrected
/// indexing Y^n = (f_{n+1} f_n; f_n f_{n-1}).
Mat2 y_power(const FieldElement& point, u64 n);

Mat2 tz_hash(const TZParams& params, const Message& m);

/// Multiplicative order of (point 1; 1 0) over F_p[x]/q — the period of the
/// f-sequence at that point. Default point: the image of x.
u64 sequence_period(u64 p, const DensePoly& q, const std::optional<DensePoly>& point = std::nullopt);

/// Order of an arbitrary 2x2 matrix with det = +-1 over F_p^k (eigenvalue
/// bound p * (p^{2k} - 1), with iterative fallback under a cap).
u64 matrix_order(const Mat2& y);

/// Least (m, n), lexicographic, with 1 <= m, n <= bound and A_1^m = A_0^n,
/// i.e. a hash collision between 1^m and 0^n. Absence is a result.
std::optional<std::pair<u64, u64>> power_collision_search(const TZParams& params, u64 bound);

bool empty_word_check(const TZParams& params, u64 m, u64 n);

struct EmptyWordDiagnostic {
  bool holds = false;              // the matrix test tz_hash(0^m 1^n) == I
  std::array<bool, 4> relations{}; // the four f-composition relations
};
EmptyWordDiagnostic empty_word_diagnose(const TZParams& params, u64 m, u64 n);

struct WeakField {
  DensePoly modulus;
  u64 period = 0;
};

/// Scans monic irreducibles of degree d in enumeration order (up to
/// scan_limit of them) and returns those whose generator order is at most
/// order_bound, sorted by the order. Every entry is re-verified by a direct
/// matrix power.
std::vector<WeakField> malicious_generate(u64 p, u64 d, u64 order_bound, u64 scan_limit,
                                          unsigned workers = 1);

/// Same filter over an explicit candidate list.
std::vector<WeakField> malicious_generate_candidates(u64 p, const std::vector<DensePoly>& candidates,
                                                     u64 order_bound, unsigned workers = 1);

/// gcd(f_{N+1} - 1, f_N) over F_p — the symbolic form of the weak-field
/// criterion; every irreducible factor defines a field where the generator
/// order divides N. Capped at N <= 2000.
DensePoly symbolic_gcd_probe(u64 p, u64 N);

}  // namespace cayley
