#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "cayley/certificate.hpp"
#include "cayley/mat2.hpp"
#include "cayley/message.hpp"

namespace cayley {

/// Parameters of the generalized Zemor hash: generators (1 a; 0 1) and
/// (1 0; b 1) over F_p^k with a, b nonzero.
struct ZemorParams {
  SpecPtr spec;
  FieldElement alpha;
  FieldElement beta;
  bool ab_in_base = false;  // whether alpha*beta is Frobenius-fixed

  static ZemorParams make(SpecPtr spec, FieldElement alpha, FieldElement beta);
};

/// A_0^e or A_1^e in closed form; e may be negative, the generator order is p.
Mat2 zg_power(const ZemorParams& params, unsigned bit, i64 e);

/// Left-to-right product over runs; the empty message hashes to I.
Mat2 zemor_hash(const ZemorParams& params, const Message& m);

struct DiagExtension {
  u64 m = 0;
  u64 n = 0;
  Mat2 result;
};

/// Exponents with C * A_0^m * A_1^n = diag(a, 1/a); requires a != 0 and
/// det C = 1. Base-field case; for k > 1 the divisions must land in F_p.
DiagExtension diagonalize_ext(const ZemorParams& params, const Mat2& C);

struct DiagCollisionResult {
  CollisionCertificate cert;
  u64 mt1 = 0, nt1 = 0, mt2 = 0, nt2 = 0;
  u64 zero_run = 0;  // m_i + mt_i mod p, equal for both words
};

/// Builds the two-word collision of the diagonal-pair procedure from
/// arbitrary distinct exponent pairs.
DiagCollisionResult diag_collision(const ZemorParams& params, const Message& z, i64 m1, i64 n1, i64 m2,
                                   i64 n2);

struct ScanWitness {
  u64 r = 0, s = 0, m = 0, n = 0;
  bool operator==(const ScanWitness&) const = default;
};

/// O(delta^2) scan for a short word 0^r 1^s whose hash extends to a diagonal
/// matrix with short exponents; absence is a legitimate result.
std::optional<ScanWitness> bounded_diag_search(const ZemorParams& params, u64 delta, unsigned workers = 1);

/// O(delta^2) scan for the upper-triangular analogue (alpha*beta in F_p).
std::optional<ScanWitness> bounded_triang_search(const ZemorParams& params, u64 delta, unsigned workers = 1);

struct TriangExtension {
  u64 m = 0;
  u64 n = 0;
  Mat2 result;
};

/// Exponents with C * A_0^m * A_1^n upper triangular, for alpha*beta in F_p.
/// m defaults to the least value keeping m*c*alpha + d nonzero.
TriangExtension triangularize_ext(const ZemorParams& params, const Mat2& C,
                                  std::optional<u64> m_choice = std::nullopt);

/// The triangularizability criterion element for alpha*beta outside F_p:
/// one (A_0^m A_1^n) extension exists iff gamma is Frobenius-fixed.
FieldElement gamma_of(const ZemorParams& params, const Mat2& C);

/// gamma of C*A_0^m*A_1^n computed by the update law (c/c')^{p+1} (gamma - m).
FieldElement gamma_update(const ZemorParams& params, const Mat2& C, u64 m, u64 n);

struct DoubleExtSolution {
  u64 m1 = 0, n1 = 0, m2 = 0, n2 = 0;
  bool single = false;  // gamma was already Frobenius-fixed
};

/// Coefficients (q3, q2, q1, q0) of the solvability equation
/// q3 x^2 y + q2 x y + q1 y + q0 = 0 for the two-step extension.
std::array<FieldElement, 4> double_ext_coefficients(const ZemorParams& params, const Mat2& C);

/// Exhaustive two-step extension solver over F_p x F_p (exact: the side
/// constraints confine solutions to the base field). Practical limit
/// p <= 10^5. Absence is a result.
std::optional<DoubleExtSolution> double_ext_solve(const ZemorParams& params, const Mat2& C,
                                                  unsigned workers = 1);

/// Classical Euclidean-algorithm attack for alpha = beta = 1 over F_p:
/// returns a word hashing to X by lifting X to a nonnegative SL2(Z) matrix
/// and peeling continued-fraction quotients.
Message euclid_factor(const ZemorParams& params, const Mat2& X);

struct CombineResult {
  CollisionCertificate cert;
  std::vector<u64> exponents;
  u64 repeat = 1;      // how many copies of the combined word hash to I
  Message combined;    // the word with unipotent hash (1 b; 0 1)
};

/// Combines upper-triangular hashes into a word hashing to the identity via
/// discrete logs of the diagonal entries.
CombineResult combine_to_identity(const ZemorParams& params,
                                  const std::vector<std::pair<Message, Mat2>>& items);

}  // namespace cayley
