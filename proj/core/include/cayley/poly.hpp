#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cayley/util.hpp"

namespace cayley {

/// Polynomial over F_p with dense little-endian coefficients (index = power).
/// Trailing zeros are always stripped; the zero polynomial has an empty
/// coefficient vector and degree() == -1.
class DensePoly {
 public:
  DensePoly() : p_(2) {}
  explicit DensePoly(u64 p) : p_(p) {}
  DensePoly(u64 p, std::vector<u64> coeffs);

  static DensePoly zero(u64 p) { return DensePoly(p); }
  static DensePoly constant(u64 p, u64 c) { return DensePoly(p, {c}); }
  static DensePoly one(u64 p) { return constant(p, 1); }
  static DensePoly x(u64 p) { return DensePoly(p, {0, 1}); }
  // monic x^d + (coefficients from index, least-significant digit first)
  static DensePoly monic_from_index(u64 p, u64 degree, u64 index);

  u64 p() const { return p_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  u64 coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  const std::vector<u64>& coeffs() const { return coeffs_; }
  u64 leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }

  DensePoly operator+(const DensePoly& o) const;
  DensePoly operator-(const DensePoly& o) const;
  DensePoly operator*(const DensePoly& o) const;
  DensePoly operator-() const;
  bool operator==(const DensePoly& o) const { return p_ == o.p_ && coeffs_ == o.coeffs_; }
  bool operator!=(const DensePoly& o) const { return !(*this == o); }

  DensePoly scaled(u64 c) const;
  DensePoly shifted(std::size_t k) const;  // * x^k
  DensePoly monic() const;
  DensePoly derivative() const;
  u64 eval(u64 x) const;

  // division with remainder; divisor must be nonzero
  std::pair<DensePoly, DensePoly> divmod(const DensePoly& divisor) const;
  DensePoly mod(const DensePoly& divisor) const { return divmod(divisor).second; }

  std::string serialize() const;           // "[c0,c1,...]"
  std::string pretty(char var = 'x') const;
  static DensePoly parse(u64 p, const std::string& text);

  // total order: by degree, then coefficients from the top (enumeration order ties)
  bool lex_less(const DensePoly& o) const;

 private:
  void normalize();
  u64 p_;
  std::vector<u64> coeffs_;
};

/// monic gcd; gcd(f, 0) = monic(f), gcd(0, 0) = 0
DensePoly poly_gcd(DensePoly f, DensePoly g);

DensePoly poly_mulmod(const DensePoly& a, const DensePoly& b, const DensePoly& modulus);
DensePoly poly_powmod(const DensePoly& base, u64 exp, const DensePoly& modulus);

// x^(p^i) mod f, computed by iterated Frobenius steps
DensePoly frobenius_power_x(const DensePoly& f, u64 i);

/// Rabin irreducibility test; requires deg(f) >= 1.
bool is_irreducible(const DensePoly& f);

/// Deterministic enumeration of monic irreducibles of degree d over F_p,
/// ordered by the coefficient vector read as a base-p number with the
/// constant term least significant. Truncated at `limit`.
std::vector<DensePoly> irreducibles_of_degree(u64 p, u64 d, u64 limit);

/// Full factorization into monic irreducibles with multiplicities
/// (squarefree split, then distinct-degree, then Cantor-Zassenhaus with a
/// fixed-seed generator so results are reproducible).
std::vector<std::pair<DensePoly, unsigned>> poly_factor(const DensePoly& f);

}  // namespace cayley
