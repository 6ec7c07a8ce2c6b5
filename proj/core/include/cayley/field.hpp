#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cayley/poly.hpp"
#include "cayley/util.hpp"

namespace cayley {

class FieldElement;

/// F_p^k presented as F_p[x]/(modulus). Immutable; shared by elements.
/// For k = 1 the modulus is the formal polynomial x and is never consulted.
class FieldSpec : public std::enable_shared_from_this<FieldSpec> {
 public:
  static std::shared_ptr<const FieldSpec> make(u64 p);                          // prime field
  static std::shared_ptr<const FieldSpec> make(u64 p, u64 k);                   // default modulus
  static std::shared_ptr<const FieldSpec> make(u64 p, u64 k, DensePoly modulus);
  static std::shared_ptr<const FieldSpec> parse(const std::string& text);

  u64 p() const { return p_; }
  u64 k() const { return k_; }
  const DensePoly& modulus() const { return modulus_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement scalar(u64 value) const;                  // embeds F_p
  FieldElement element(std::vector<u64> coeffs) const;   // little-endian, length <= k
  FieldElement from_poly(const DensePoly& g) const;      // g(xbar)
  FieldElement generator_image() const;                  // xbar; scalar 0 when k = 1
  FieldElement parse_element(const std::string& text) const;

  // number of field elements as u64, or 0 if it would exceed 2^62
  u64 order_u64() const { return checked_pow(p_, k_); }

  bool same(const FieldSpec& other) const;
  std::string serialize() const;  // "p=..;k=..;mod=[..]" (short form "p=.." when k = 1)

 private:
  FieldSpec(u64 p, u64 k, DensePoly modulus) : p_(p), k_(k), modulus_(std::move(modulus)) {}
  u64 p_;
  u64 k_;
  DensePoly modulus_;
};

using SpecPtr = std::shared_ptr<const FieldSpec>;

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(SpecPtr spec, std::vector<u64> coeffs);

  const SpecPtr& spec() const { return spec_; }
  const std::vector<u64>& coeffs() const { return coeffs_; }
  u64 coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }

  bool is_zero() const;
  bool is_one() const;
  bool in_base_field() const;   // all coefficients above index 0 vanish
  u64 residue() const;          // coeff 0; callers check in_base_field first

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement inverse() const;
  FieldElement pow(u64 e) const;

  std::string serialize() const;              // "[c0,...,c_{k-1}]"
  std::string pretty(char var = 'z') const;   // "134z + 110" style
  u64 stable_hash() const;

 private:
  void check_same_spec(const FieldElement& o) const;
  SpecPtr spec_;
  std::vector<u64> coeffs_;  // length k, little-endian
};

/// a^(p^iterations) — the Frobenius power map
FieldElement frobenius(const FieldElement& a, u64 iterations);

/// least t >= 1 with a^t = 1 (a != 0); factors p^k - 1 under the budget
u64 mult_order(const FieldElement& a);

/// least e >= 0 with base^e = target; Pohlig-Hellman over the factored order
/// of base, baby-step/giant-step per prime power
u64 discrete_log(const FieldElement& base, const FieldElement& target);

/// a generator of the multiplicative group (smallest in enumeration order)
FieldElement unit_group_generator(const SpecPtr& spec);

/// evaluate f at a field point (coefficients of f lifted into the field)
FieldElement poly_eval_field(const DensePoly& f, const FieldElement& point);

}  // namespace cayley
