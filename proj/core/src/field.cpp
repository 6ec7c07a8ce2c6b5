#include "cayley/field.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace cayley {

// ---------------------------------------------------------------- FieldSpec

std::shared_ptr<const FieldSpec> FieldSpec::make(u64 p) { return make(p, 1, DensePoly::x(p)); }

std::shared_ptr<const FieldSpec> FieldSpec::make(u64 p, u64 k) {
  if (k == 1) return make(p);
  if (!is_prime_u64(p)) raise(ErrorCode::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
  auto irr = irreducibles_of_degree(p, k, 1);
  if (irr.empty()) raise(ErrorCode::Internal, "no irreducible of requested degree");
  return make(p, k, irr.front());
}

std::shared_ptr<const FieldSpec> FieldSpec::make(u64 p, u64 k, DensePoly modulus) {
  if (!is_prime_u64(p)) raise(ErrorCode::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
  if (k < 1) raise(ErrorCode::InvalidArgument, "extension degree must be >= 1");
  if (modulus.p() != p) raise(ErrorCode::SpecMismatch, "modulus lives over a different prime");
  if (k == 1) {
    modulus = DensePoly::x(p);
  } else {
    if (static_cast<u64>(modulus.degree()) != k || !modulus.is_monic())
      raise(ErrorCode::InvalidArgument, "modulus must be monic of degree k");
    if (!is_irreducible(modulus)) raise(ErrorCode::InvalidArgument, "modulus is reducible");
  }
  return std::shared_ptr<const FieldSpec>(new FieldSpec(p, k, std::move(modulus)));
}

std::shared_ptr<const FieldSpec> FieldSpec::parse(const std::string& text) {
  u64 p = 0, k = 1;
  std::optional<DensePoly> modulus;
  std::size_t i = 0;
  auto read_key = [&]() -> std::string {
    std::string key;
    while (i < text.size() && text[i] != '=') key += text[i++];
    if (i >= text.size()) raise(ErrorCode::ParseError, "expected '=' in field spec");
    ++i;
    return key;
  };
  bool have_p = false;
  while (i < text.size()) {
    std::string key = read_key();
    std::string value;
    if (key == "mod") {
      while (i < text.size() && text[i] != ';') value += text[i++];
    } else {
      while (i < text.size() && text[i] != ';') value += text[i++];
    }
    if (i < text.size() && text[i] == ';') ++i;
    if (key == "p") {
      p = std::stoull(value);
      have_p = true;
    } else if (key == "k") {
      k = std::stoull(value);
    } else if (key == "mod") {
      if (!have_p) raise(ErrorCode::ParseError, "field spec must give p before mod");
      modulus = DensePoly::parse(p, value);
    } else {
      raise(ErrorCode::ParseError, "unknown field spec key '" + key + "'");
    }
  }
  if (!have_p) raise(ErrorCode::ParseError, "field spec needs p=<prime>");
  if (modulus) return make(p, k, *modulus);
  return make(p, k);
}

std::string FieldSpec::serialize() const {
  std::ostringstream os;
  os << "p=" << p_;
  if (k_ > 1) os << ";k=" << k_ << ";mod=" << modulus_.serialize();
  return os.str();
}

bool FieldSpec::same(const FieldSpec& other) const {
  return this == &other || (p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_);
}

FieldElement FieldSpec::zero() const { return FieldElement(shared_from_this(), {}); }
FieldElement FieldSpec::one() const { return scalar(1); }
FieldElement FieldSpec::scalar(u64 value) const { return FieldElement(shared_from_this(), {value % p_}); }

FieldElement FieldSpec::element(std::vector<u64> coeffs) const {
  return FieldElement(shared_from_this(), std::move(coeffs));
}

FieldElement FieldSpec::from_poly(const DensePoly& g) const {
  if (g.p() != p_) raise(ErrorCode::SpecMismatch, "polynomial prime differs from field");
  DensePoly r = k_ == 1 ? DensePoly(p_, {g.eval(0)}) : g.mod(modulus_);
  return FieldElement(shared_from_this(), r.coeffs());
}

FieldElement FieldSpec::generator_image() const {
  if (k_ == 1) return scalar(0);
  return element({0, 1});
}

// ---------------------------------------------------------------- FieldElement

FieldElement::FieldElement(SpecPtr spec, std::vector<u64> coeffs) : spec_(std::move(spec)), coeffs_(std::move(coeffs)) {
  if (!spec_) raise(ErrorCode::InvalidArgument, "element without a field");
  if (coeffs_.size() > spec_->k()) raise(ErrorCode::InvalidArgument, "too many coefficients for the field");
  coeffs_.resize(spec_->k(), 0);
  for (auto& c : coeffs_) c %= spec_->p();
}

void FieldElement::check_same_spec(const FieldElement& o) const {
  if (!spec_ || !o.spec_) raise(ErrorCode::InvalidArgument, "uninitialized element");
  if (!spec_->same(*o.spec_)) raise(ErrorCode::SpecMismatch, "elements of different fields");
}

bool FieldElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](u64 c) { return c == 0; });
}

bool FieldElement::is_one() const {
  if (coeffs_.empty() || coeffs_[0] != 1) return false;
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](u64 c) { return c == 0; });
}

bool FieldElement::in_base_field() const {
  return coeffs_.size() <= 1 ||
         std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](u64 c) { return c == 0; });
}

u64 FieldElement::residue() const { return coeffs_.empty() ? 0 : coeffs_[0]; }

bool FieldElement::operator==(const FieldElement& o) const {
  check_same_spec(o);
  return coeffs_ == o.coeffs_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same_spec(o);
  u64 p = spec_->p();
  std::vector<u64> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = add_mod(coeffs_[i], o.coeffs_[i], p);
  return FieldElement(spec_, std::move(out));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same_spec(o);
  u64 p = spec_->p();
  std::vector<u64> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sub_mod(coeffs_[i], o.coeffs_[i], p);
  return FieldElement(spec_, std::move(out));
}

FieldElement FieldElement::operator-() const {
  u64 p = spec_->p();
  std::vector<u64> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sub_mod(0, coeffs_[i], p);
  return FieldElement(spec_, std::move(out));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same_spec(o);
  u64 p = spec_->p();
  u64 k = spec_->k();
  if (k == 1) return FieldElement(spec_, {mul_mod(residue(), o.residue(), p)});
  std::vector<u64> prod(2 * k - 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (o.coeffs_[j] == 0) continue;
      prod[i + j] = add_mod(prod[i + j], mul_mod(coeffs_[i], o.coeffs_[j], p), p);
    }
  }
  const auto& mod = spec_->modulus().coeffs();
  for (std::size_t i = prod.size(); i-- > k;) {
    u64 c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (mod[j] == 0) continue;
      prod[i - k + j] = sub_mod(prod[i - k + j], mul_mod(c, mod[j], p), p);
    }
  }
  prod.resize(k);
  return FieldElement(spec_, std::move(prod));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) raise(ErrorCode::DivisionByZero, "inverse of zero");
  u64 p = spec_->p();
  if (spec_->k() == 1) return FieldElement(spec_, {inv_mod(residue(), p)});
  // extended Euclid over F_p[x]
  DensePoly r0 = spec_->modulus();
  DensePoly r1(p, coeffs_);
  DensePoly s0 = DensePoly::zero(p), s1 = DensePoly::one(p);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    DensePoly s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.degree() != 0) raise(ErrorCode::Internal, "modulus not coprime with element");
  DensePoly inv = s0.scaled(inv_mod(r0.coeff(0), p));
  return spec_->from_poly(inv);
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

FieldElement FieldElement::pow(u64 e) const {
  FieldElement base = *this;
  FieldElement acc = spec_->one();
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

std::string FieldElement::serialize() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ',';
    os << coeffs_[i];
  }
  os << ']';
  return os.str();
}

std::string FieldElement::pretty(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    u64 c = coeffs_[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c;
      os << var;
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

u64 FieldElement::stable_hash() const {
  u64 h = 1469598103934665603ull;
  for (u64 c : coeffs_) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

FieldElement FieldSpec::parse_element(const std::string& text) const {
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  if (i < text.size() && text[i] == '[') {
    DensePoly poly = DensePoly::parse(p_, text.substr(i));
    if (static_cast<u64>(poly.degree()) >= k_ && !(k_ == 1 && poly.degree() < 1))
      raise(ErrorCode::ParseError, "element has too many coefficients for the field");
    return from_poly(poly);
  }
  // sum of terms: [coeff][*][z[^exp]]
  std::vector<u64> cs(k_, 0);
  bool any = false;
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size()) break;
    u64 coeff = 1;
    bool have_digits = false;
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      coeff = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        coeff = coeff * 10 + (text[i++] - '0');
      have_digits = true;
    }
    skip_ws();
    if (i < text.size() && text[i] == '*') {
      ++i;
      skip_ws();
    }
    u64 exp = 0;
    if (i < text.size() && (text[i] == 'z' || text[i] == 'x')) {
      ++i;
      exp = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
          raise(ErrorCode::ParseError, "expected exponent digits at position " + std::to_string(i));
        exp = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
          exp = exp * 10 + (text[i++] - '0');
      }
    } else if (!have_digits) {
      raise(ErrorCode::ParseError, "expected term at position " + std::to_string(i));
    }
    if (exp >= k_ && !(coeff % p_ == 0)) {
      if (k_ == 1 && exp == 0) {
        // fall through: plain residue
      } else if (exp >= k_) {
        raise(ErrorCode::ParseError, "term exponent " + std::to_string(exp) + " outside the field degree");
      }
    }
    if (exp < k_) cs[exp] = add_mod(cs[exp], coeff % p_, p_);
    any = true;
    skip_ws();
    if (i < text.size()) {
      if (text[i] == '+') {
        ++i;
        continue;
      }
      raise(ErrorCode::ParseError, std::string("unexpected character '") + text[i] + "' at position " +
                                       std::to_string(i));
    }
  }
  if (!any) raise(ErrorCode::ParseError, "empty element text");
  return element(std::move(cs));
}

// ---------------------------------------------------------------- group ops

FieldElement frobenius(const FieldElement& a, u64 iterations) {
  FieldElement r = a;
  for (u64 i = 0; i < iterations % std::max<u64>(a.spec()->k(), 1); ++i) r = r.pow(a.spec()->p());
  return r;
}

namespace {

u64 group_order_checked(const SpecPtr& spec) {
  u64 q = spec->order_u64();
  if (q == 0)
    raise(ErrorCode::FactorizationTooHard,
          "p^k exceeds the supported range for order/dlog operations");
  return q - 1;
}

}  // namespace

u64 mult_order(const FieldElement& a) {
  if (a.is_zero()) raise(ErrorCode::InvalidArgument, "order of zero");
  u64 m = group_order_checked(a.spec());
  auto factors = factor_u64(m);
  return reduce_order(m, factors, [&](u64 e) { return a.pow(e).is_one(); });
}

namespace {

// BSGS inside the subgroup generated by `base` of prime order q; returns
// e with base^e == target or nullopt
std::optional<u64> bsgs(const FieldElement& base, const FieldElement& target, u64 q) {
  u64 m = 1;
  while (m * m < q) ++m;
  if (m > (1u << 22)) raise(ErrorCode::DlogBudgetExceeded, "baby-step table too large");
  std::unordered_map<u64, std::vector<std::pair<FieldElement, u64>>> table;
  table.reserve(m * 2);
  FieldElement cur = base.spec()->one();
  for (u64 j = 0; j < m; ++j) {
    table[cur.stable_hash()].emplace_back(cur, j);
    cur = cur * base;
  }
  FieldElement giant = base.pow(m).inverse();
  FieldElement probe = target;
  for (u64 i = 0; i <= m; ++i) {
    auto it = table.find(probe.stable_hash());
    if (it != table.end()) {
      for (auto& [elem, j] : it->second) {
        if (elem == probe) return i * m + j;
      }
    }
    probe = probe * giant;
  }
  return std::nullopt;
}

}  // namespace

u64 discrete_log(const FieldElement& base, const FieldElement& target) {
  if (base.is_zero() || target.is_zero()) raise(ErrorCode::InvalidArgument, "dlog needs nonzero elements");
  if (target.is_one()) return 0;
  u64 ord = mult_order(base);
  auto factors = factor_u64(ord);
  // Pohlig-Hellman: solve e mod q^c for each prime power, then CRT
  u64 result = 0, modulus = 1;
  for (auto [q, c] : factors) {
    u64 qc = 1;
    for (unsigned i = 0; i < c; ++i) qc *= q;
    FieldElement base_q = base.pow(ord / qc);   // order q^c
    FieldElement tgt_q = target.pow(ord / qc);
    // digits of e base q
    u64 e_q = 0, q_pow = 1;
    FieldElement gamma = base_q.pow(qc / q);    // order q
    for (unsigned i = 0; i < c; ++i) {
      FieldElement rhs = (tgt_q * base_q.pow(e_q).inverse()).pow(qc / (q_pow * q));
      auto digit = bsgs(gamma, rhs, q);
      if (!digit) raise(ErrorCode::NotInSubgroup, "target not in the subgroup generated by base");
      e_q += *digit * q_pow;
      q_pow *= q;
    }
    // CRT combine
    u64 g = modulus;  // gcd(modulus, qc) == 1 by construction
    u64 inv = inv_mod(g % qc, qc);
    u64 diff = sub_mod(e_q % qc, result % qc, qc);
    result = result + mul_mod(mul_mod(diff, inv, qc), g, modulus * qc) % (modulus * qc);
    modulus *= qc;
    result %= modulus;
  }
  if (!(base.pow(result) == target)) raise(ErrorCode::NotInSubgroup, "no exponent maps base to target");
  return result;
}

FieldElement unit_group_generator(const SpecPtr& spec) {
  u64 m = group_order_checked(spec);
  auto factors = factor_u64(m);
  u64 total = spec->order_u64();
  for (u64 idx = 1; idx < total; ++idx) {
    std::vector<u64> cs;
    u64 t = idx;
    for (u64 i = 0; i < spec->k(); ++i) {
      cs.push_back(t % spec->p());
      t /= spec->p();
    }
    FieldElement cand = spec->element(std::move(cs));
    bool ok = true;
    for (auto& [q, c] : factors) {
      (void)c;
      if (cand.pow(m / q).is_one()) {
        ok = false;
        break;
      }
    }
    if (ok) return cand;
  }
  raise(ErrorCode::Internal, "no generator found");
}

FieldElement poly_eval_field(const DensePoly& f, const FieldElement& point) {
  const auto& spec = point.spec();
  if (f.p() != spec->p()) raise(ErrorCode::SpecMismatch, "polynomial prime differs from field");
  FieldElement acc = spec->zero();
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    acc = acc * point + spec->scalar(f.coeff(i));
  }
  return acc;
}

}  // namespace cayley
