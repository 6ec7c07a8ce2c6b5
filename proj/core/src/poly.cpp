#include "cayley/poly.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

namespace cayley {

DensePoly::DensePoly(u64 p, std::vector<u64> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c %= p_;
  normalize();
}

void DensePoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

DensePoly DensePoly::monic_from_index(u64 p, u64 degree, u64 index) {
  std::vector<u64> cs(degree + 1, 0);
  for (u64 i = 0; i < degree; ++i) {
    cs[i] = index % p;
    index /= p;
  }
  cs[degree] = 1;
  return DensePoly(p, std::move(cs));
}

DensePoly DensePoly::operator+(const DensePoly& o) const {
  if (p_ != o.p_) raise(ErrorCode::SpecMismatch, "polynomial moduli differ");
  DensePoly r(p_);
  r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = add_mod(coeff(i), o.coeff(i), p_);
  r.normalize();
  return r;
}

DensePoly DensePoly::operator-(const DensePoly& o) const {
  if (p_ != o.p_) raise(ErrorCode::SpecMismatch, "polynomial moduli differ");
  DensePoly r(p_);
  r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = sub_mod(coeff(i), o.coeff(i), p_);
  r.normalize();
  return r;
}

DensePoly DensePoly::operator-() const {
  DensePoly r(p_);
  r.coeffs_.resize(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = sub_mod(0, coeffs_[i], p_);
  r.normalize();
  return r;
}

DensePoly DensePoly::operator*(const DensePoly& o) const {
  if (p_ != o.p_) raise(ErrorCode::SpecMismatch, "polynomial moduli differ");
  if (is_zero() || o.is_zero()) return zero(p_);
  DensePoly r(p_);
  r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      r.coeffs_[i + j] = add_mod(r.coeffs_[i + j], mul_mod(coeffs_[i], o.coeffs_[j], p_), p_);
    }
  }
  r.normalize();
  return r;
}

DensePoly DensePoly::scaled(u64 c) const {
  c %= p_;
  DensePoly r(p_);
  r.coeffs_.resize(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = mul_mod(coeffs_[i], c, p_);
  r.normalize();
  return r;
}

DensePoly DensePoly::shifted(std::size_t k) const {
  if (is_zero()) return *this;
  DensePoly r(p_);
  r.coeffs_.assign(coeffs_.size() + k, 0);
  std::copy(coeffs_.begin(), coeffs_.end(), r.coeffs_.begin() + k);
  return r;
}

DensePoly DensePoly::monic() const {
  if (is_zero()) return *this;
  return scaled(inv_mod(leading(), p_));
}

DensePoly DensePoly::derivative() const {
  DensePoly r(p_);
  if (coeffs_.size() < 2) return r;
  r.coeffs_.resize(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) r.coeffs_[i - 1] = mul_mod(coeffs_[i], i % p_, p_);
  r.normalize();
  return r;
}

u64 DensePoly::eval(u64 x) const {
  x %= p_;
  u64 acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = add_mod(mul_mod(acc, x, p_), coeffs_[i], p_);
  return acc;
}

std::pair<DensePoly, DensePoly> DensePoly::divmod(const DensePoly& divisor) const {
  if (p_ != divisor.p_) raise(ErrorCode::SpecMismatch, "polynomial moduli differ");
  if (divisor.is_zero()) raise(ErrorCode::DivisionByZero, "polynomial division by zero");
  DensePoly rem = *this;
  DensePoly quot(p_);
  int dd = divisor.degree();
  if (rem.degree() < dd) return {quot, rem};
  quot.coeffs_.assign(rem.degree() - dd + 1, 0);
  u64 lead_inv = inv_mod(divisor.leading(), p_);
  while (!rem.is_zero() && rem.degree() >= dd) {
    std::size_t shift = rem.degree() - dd;
    u64 q = mul_mod(rem.leading(), lead_inv, p_);
    quot.coeffs_[shift] = q;
    for (std::size_t i = 0; i < divisor.coeffs_.size(); ++i) {
      rem.coeffs_[shift + i] = sub_mod(rem.coeffs_[shift + i], mul_mod(q, divisor.coeffs_[i], p_), p_);
    }
    rem.normalize();
  }
  quot.normalize();
  return {quot, rem};
}

std::string DensePoly::serialize() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ',';
    os << coeffs_[i];
  }
  os << ']';
  return os.str();
}

std::string DensePoly::pretty(char var) const {
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

DensePoly DensePoly::parse(u64 p, const std::string& text) {
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  if (i >= text.size() || text[i] != '[') raise(ErrorCode::ParseError, "expected '[' at position " + std::to_string(i));
  ++i;
  std::vector<u64> cs;
  skip_ws();
  if (i < text.size() && text[i] == ']') return DensePoly(p, cs);
  while (true) {
    skip_ws();
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      raise(ErrorCode::ParseError, "expected digit at position " + std::to_string(i));
    u64 v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
    cs.push_back(v);
    skip_ws();
    if (i < text.size() && text[i] == ',') {
      ++i;
      continue;
    }
    if (i < text.size() && text[i] == ']') break;
    raise(ErrorCode::ParseError, "expected ',' or ']' at position " + std::to_string(i));
  }
  return DensePoly(p, cs);
}

bool DensePoly::lex_less(const DensePoly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] != o.coeffs_[i]) return coeffs_[i] < o.coeffs_[i];
  }
  return false;
}

DensePoly poly_gcd(DensePoly f, DensePoly g) {
  while (!g.is_zero()) {
    DensePoly r = f.mod(g);
    f = std::move(g);
    g = std::move(r);
  }
  return f.monic();
}

DensePoly poly_mulmod(const DensePoly& a, const DensePoly& b, const DensePoly& modulus) {
  return (a * b).mod(modulus);
}

DensePoly poly_powmod(const DensePoly& base, u64 exp, const DensePoly& modulus) {
  DensePoly r = DensePoly::one(base.p());
  DensePoly b = base.mod(modulus);
  while (exp) {
    if (exp & 1) r = poly_mulmod(r, b, modulus);
    b = poly_mulmod(b, b, modulus);
    exp >>= 1;
  }
  return r;
}

DensePoly frobenius_power_x(const DensePoly& f, u64 i) {
  DensePoly t = DensePoly::x(f.p()).mod(f);
  for (u64 j = 0; j < i; ++j) t = poly_powmod(t, f.p(), f);
  return t;
}

bool is_irreducible(const DensePoly& f) {
  if (f.degree() < 1) raise(ErrorCode::InvalidArgument, "irreducibility needs degree >= 1");
  u64 d = static_cast<u64>(f.degree());
  if (d == 1) return true;
  DensePoly x = DensePoly::x(f.p());
  // x^(p^d) == x mod f
  if (frobenius_power_x(f, d) != x.mod(f)) return false;
  for (auto [r, mult] : factor_u64(d)) {
    (void)mult;
    DensePoly xp = frobenius_power_x(f, d / r);
    if (poly_gcd(f, xp - x).degree() != 0) return false;
  }
  return true;
}

std::vector<DensePoly> irreducibles_of_degree(u64 p, u64 d, u64 limit) {
  if (d < 1) raise(ErrorCode::InvalidArgument, "degree must be >= 1");
  std::vector<DensePoly> out;
  if (limit == 0) return out;
  u64 total = checked_pow(p, d);
  for (u64 idx = 0; total == 0 || idx < total; ++idx) {
    DensePoly f = DensePoly::monic_from_index(p, d, idx);
    if (is_irreducible(f)) {
      out.push_back(std::move(f));
      if (out.size() >= limit) break;
    }
  }
  return out;
}

namespace {

// equal-degree splitting (Cantor-Zassenhaus); f squarefree, all factors of degree d
void edf(const DensePoly& f, u64 d, std::mt19937_64& rng, std::vector<DensePoly>& out) {
  u64 deg = static_cast<u64>(f.degree());
  if (deg == d) {
    out.push_back(f.monic());
    return;
  }
  u64 p = f.p();
  while (true) {
    std::vector<u64> cs(deg);
    for (auto& c : cs) c = rng() % p;
    DensePoly a(p, cs);
    if (a.degree() < 1) continue;
    DensePoly g = poly_gcd(f, a);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      edf(g, d, rng, out);
      edf(f.divmod(g).first, d, rng, out);
      return;
    }
    DensePoly b;
    if (p == 2) {
      // trace map a + a^2 + a^4 + ... over F_{2^d}
      DensePoly t = a.mod(f);
      DensePoly acc = t;
      for (u64 i = 1; i < d; ++i) {
        t = poly_mulmod(t, t, f);
        acc = acc + t;
      }
      b = acc;
    } else {
      u64 e = (checked_pow(p, d) - 1) / 2;
      b = poly_powmod(a, e, f) - DensePoly::one(p);
    }
    g = poly_gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      edf(g, d, rng, out);
      edf(f.divmod(g).first, d, rng, out);
      return;
    }
  }
}

}  // namespace

namespace {

// distinct irreducible factors of a squarefree monic polynomial
std::vector<DensePoly> squarefree_factor(DensePoly work, std::mt19937_64& rng) {
  std::vector<DensePoly> out;
  u64 p = work.p();
  DensePoly x = DensePoly::x(p);
  for (u64 dd = 1; work.degree() >= 1 && 2 * dd <= static_cast<u64>(work.degree()); ++dd) {
    DensePoly xp = x.mod(work);
    for (u64 i = 0; i < dd; ++i) xp = poly_powmod(xp, p, work);
    DensePoly gd = poly_gcd(work, xp - x.mod(work));
    if (gd.degree() > 0) {
      edf(gd, dd, rng, out);
      work = work.divmod(gd).first;
    }
  }
  if (work.degree() >= 1) out.push_back(work.monic());
  std::sort(out.begin(), out.end(), [](const DensePoly& a, const DensePoly& b) { return a.lex_less(b); });
  return out;
}

}  // namespace

std::vector<std::pair<DensePoly, unsigned>> poly_factor(const DensePoly& f) {
  std::vector<std::pair<DensePoly, unsigned>> result;
  if (f.degree() < 1) return result;
  u64 p = f.p();
  DensePoly original = f.monic();
  DensePoly g = original;
  std::mt19937_64 rng(0x5eedf00dULL);
  while (g.degree() >= 1) {
    if (g.derivative().is_zero()) {
      // g = h(x^p); take the p-th root (coefficients are Frobenius-fixed in F_p)
      std::vector<u64> root;
      for (int i = 0; i <= g.degree(); i += static_cast<int>(p)) root.push_back(g.coeff(i));
      g = DensePoly(p, root);
      continue;
    }
    DensePoly sf = g.divmod(poly_gcd(g, g.derivative())).first.monic();
    for (const DensePoly& irr : squarefree_factor(sf, rng)) {
      unsigned m = 0;
      DensePoly t = original;
      while (true) {
        auto [q, r] = t.divmod(irr);
        if (!r.is_zero()) break;
        t = q;
        ++m;
      }
      result.emplace_back(irr, m);
      while (true) {
        auto [q, r] = g.divmod(irr);
        if (!r.is_zero()) break;
        g = q;
      }
    }
  }
  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) { return a.first.lex_less(b.first); });
  return result;
}

}  // namespace cayley
