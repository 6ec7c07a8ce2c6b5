#include <doctest.h>

#include <random>

#include "cayley/field.hpp"
#include "cayley/poly.hpp"

using namespace cayley;

namespace {

FieldElement random_element(const SpecPtr& spec, std::mt19937_64& rng) {
  std::vector<u64> cs(spec->k());
  for (auto& c : cs) c = rng() % spec->p();
  return spec->element(std::move(cs));
}

FieldElement random_nonzero(const SpecPtr& spec, std::mt19937_64& rng) {
  while (true) {
    FieldElement e = random_element(spec, rng);
    if (!e.is_zero()) return e;
  }
}

// root-exhaustion irreducibility oracle for degrees 2 and 3: reducible iff
// the polynomial has a root (any factor would be linear)
bool irreducible_by_roots(const DensePoly& f) {
  for (u64 r = 0; r < f.p(); ++r) {
    if (f.eval(r) == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("prime field arithmetic basics") {
  auto f7 = FieldSpec::make(7);
  CHECK((f7->scalar(3) / f7->scalar(1)).residue() == 3);
  CHECK((f7->scalar(3) / f7->scalar(3)).residue() == 1);
  CHECK(f7->scalar(3).inverse().residue() == 5);  // 3*5 = 15 = 1 mod 7
  CHECK_THROWS_AS(f7->scalar(1) / f7->scalar(0), Error);
}

TEST_CASE("spec mismatch is rejected") {
  auto f7 = FieldSpec::make(7);
  auto f11 = FieldSpec::make(11);
  CHECK_THROWS_AS(f7->scalar(1) + f11->scalar(1), Error);
}

TEST_CASE("field axioms on random pairs") {
  std::mt19937_64 rng(1);
  for (const auto& spec : {FieldSpec::make(7919), FieldSpec::make(3, 3), FieldSpec::make(2, 5),
                           FieldSpec::make(239, 2)}) {
    for (int t = 0; t < 1000; ++t) {
      FieldElement a = random_element(spec, rng);
      FieldElement b = random_nonzero(spec, rng);
      CHECK((a * b) / b == a);
      CHECK((a + b) - b == a);
    }
  }
}

TEST_CASE("frobenius basics and automorphism property") {
  std::mt19937_64 rng(2);
  auto f7 = FieldSpec::make(7);
  for (int t = 0; t < 20; ++t) {
    FieldElement a = random_element(f7, rng);
    CHECK(frobenius(a, 1) == a);  // Fermat
  }
  auto f9 = FieldSpec::make(3, 2);
  for (int t = 0; t < 20; ++t) {
    FieldElement a = random_element(f9, rng);
    CHECK(frobenius(a, 2) == a);  // full orbit
  }
  auto f32 = FieldSpec::make(2, 5);
  FieldElement x = f32->generator_image();
  CHECK(frobenius(x, 1) == x * x);  // x^2, already reduced (degree < 5)
  // a = z^4: z^8 mod (z^5 + z^2 + 1); reduce by hand: z^8 = z^3 * z^5 =
  // z^3(z^2 + 1) = z^5 + z^3 = z^3 + z^2 + 1
  FieldElement z4 = f32->element({0, 0, 0, 0, 1});
  CHECK(frobenius(z4, 1) == f32->element({1, 0, 1, 1, 0}));

  for (const auto& spec : {FieldSpec::make(3, 3), FieldSpec::make(239, 2)}) {
    for (int t = 0; t < 500; ++t) {
      FieldElement a = random_element(spec, rng);
      FieldElement b = random_element(spec, rng);
      CHECK(frobenius(a * b, 1) == frobenius(a, 1) * frobenius(b, 1));
      CHECK(frobenius(a + b, 1) == frobenius(a, 1) + frobenius(b, 1));
    }
  }
}

TEST_CASE("poly gcd") {
  u64 p = 5;
  DensePoly x2m1(p, {p - 1, 0, 1});
  DensePoly xm1(p, {p - 1, 1});
  CHECK(poly_gcd(x2m1, xm1) == xm1.monic());

  DensePoly f(p, {2, 3, 1, 4});
  CHECK(poly_gcd(f, f) == f.monic());
  CHECK(poly_gcd(f, DensePoly::zero(p)) == f.monic());

  // planted common factor x^2 + 1 over F_3
  std::mt19937_64 rng(3);
  DensePoly planted(3, {1, 0, 1});
  for (int t = 0; t < 20; ++t) {
    auto rand_poly = [&](int deg) {
      std::vector<u64> cs(deg + 1);
      for (auto& c : cs) c = rng() % 3;
      cs[deg] = 1 + rng() % 2;
      return DensePoly(3, cs);
    };
    DensePoly a = rand_poly(18) * planted;
    DensePoly b = rand_poly(17) * planted;
    DensePoly g = poly_gcd(a, b);
    CHECK(g.divmod(planted).second.is_zero());
  }
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(DensePoly(3, {1, 0, 1})));       // x^2 + 1 over F_3
  CHECK_FALSE(is_irreducible(DensePoly(3, {2, 0, 1}))); // x^2 - 1 = (x-1)(x+1)
  // the weak-field polynomial of the F_3^12 example
  DensePoly q(3, {1, 1, 1, 2, 2, 0, 1, 0, 0, 0, 2, 0, 1});
  CHECK(is_irreducible(q));

  SUBCASE("agrees with root exhaustion for all monic quadratics and cubics") {
    for (u64 p : {2ull, 3ull, 5ull}) {
      for (u64 d : {2ull, 3ull}) {
        u64 total = 1;
        for (u64 i = 0; i < d; ++i) total *= p;
        for (u64 idx = 0; idx < total; ++idx) {
          DensePoly f = DensePoly::monic_from_index(p, d, idx);
          CHECK(is_irreducible(f) == irreducible_by_roots(f));
        }
      }
    }
  }
}

TEST_CASE("irreducible enumeration order") {
  auto l1 = irreducibles_of_degree(2, 1, 10);
  REQUIRE(l1.size() == 2);
  CHECK(l1[0] == DensePoly(2, {0, 1}));  // x
  CHECK(l1[1] == DensePoly(2, {1, 1}));  // x + 1

  auto l2 = irreducibles_of_degree(3, 2, 1);
  REQUIRE(l2.size() == 1);
  CHECK(l2[0] == DensePoly(3, {1, 0, 1}));  // x^2 + 1

  auto l3 = irreducibles_of_degree(2, 2, 10);
  REQUIRE(l3.size() == 1);
  CHECK(l3[0] == DensePoly(2, {1, 1, 1}));  // x^2 + x + 1
}

TEST_CASE("multiplicative order") {
  auto f7 = FieldSpec::make(7);
  CHECK(mult_order(f7->one()) == 1);
  CHECK(mult_order(f7->scalar(3)) == 6);
  for (u64 p : {5ull, 7919ull, 239ull}) {
    auto spec = FieldSpec::make(p);
    CHECK(mult_order(spec->scalar(p - 1)) == 2);
  }

  std::mt19937_64 rng(4);
  for (const auto& spec : {FieldSpec::make(7919), FieldSpec::make(3, 3), FieldSpec::make(239, 2)}) {
    u64 group = spec->order_u64() - 1;
    for (int t = 0; t < 200; ++t) {
      FieldElement a = random_nonzero(spec, rng);
      CHECK(group % mult_order(a) == 0);
    }
  }
}

TEST_CASE("discrete log") {
  auto f7 = FieldSpec::make(7);
  FieldElement base = f7->scalar(3);
  CHECK(discrete_log(base, f7->one()) == 0);
  CHECK(discrete_log(base, base) == 1);
  CHECK(discrete_log(base, f7->scalar(5)) == 5);  // 3^5 = 243 = 5 mod 7

  std::mt19937_64 rng(5);
  for (const auto& spec : {FieldSpec::make(7919), FieldSpec::make(3, 3), FieldSpec::make(239, 2)}) {
    FieldElement g = unit_group_generator(spec);
    for (int t = 0; t < 50; ++t) {
      FieldElement target = random_nonzero(spec, rng);
      u64 e = discrete_log(g, target);
      CHECK(g.pow(e) == target);
    }
  }

  // 2 generates a subgroup of index 3 in F_7^*: 3 is outside it
  auto two = f7->scalar(2);
  CHECK_THROWS_AS(discrete_log(two, f7->scalar(3)), Error);
}

TEST_CASE("field spec serialization round-trip") {
  auto spec = FieldSpec::make(3, 12, DensePoly(3, {1, 1, 1, 2, 2, 0, 1, 0, 0, 0, 2, 0, 1}));
  CHECK(spec->serialize() == "p=3;k=12;mod=[1,1,1,2,2,0,1,0,0,0,2,0,1]");
  auto back = FieldSpec::parse(spec->serialize());
  CHECK(back->same(*spec));

  auto prime = FieldSpec::parse("p=7919");
  CHECK(prime->p() == 7919);
  CHECK(prime->k() == 1);
  CHECK(prime->serialize() == "p=7919");

  // default modulus: lexicographically smallest irreducible
  auto f27 = FieldSpec::parse("p=3;k=3");
  CHECK(f27->modulus() == irreducibles_of_degree(3, 3, 1)[0]);

  CHECK_THROWS_AS(FieldSpec::parse("p=6"), Error);
  CHECK_THROWS_AS(FieldSpec::make(3, 2, DensePoly(3, {2, 0, 1})), Error);  // reducible modulus
}

TEST_CASE("element text forms") {
  auto f32 = FieldSpec::make(2, 5);
  CHECK(f32->parse_element("z^3+1") == f32->element({1, 0, 0, 1}));
  CHECK(f32->parse_element("[1,0,0,1]") == f32->element({1, 0, 0, 1}));
  auto f239 = FieldSpec::make(239, 2);
  CHECK(f239->parse_element("134z + 110") == f239->element({110, 134}));
  CHECK(f239->element({110, 134}).pretty() == "134z + 110");
  auto f7919 = FieldSpec::make(7919);
  CHECK(f7919->parse_element("5698").residue() == 5698);
  CHECK_THROWS_AS(f7919->parse_element("z^3"), Error);
  CHECK_THROWS_AS(f7919->parse_element(""), Error);
}

TEST_CASE("polynomial factorization") {
  // (x^2+1)^2 (x+1) over F_3
  DensePoly a(3, {1, 0, 1});
  DensePoly b(3, {1, 1});
  DensePoly f = a * a * b;
  auto factors = poly_factor(f);
  REQUIRE(factors.size() == 2);
  bool saw_a = false, saw_b = false;
  for (auto& [irr, mult] : factors) {
    if (irr == a) {
      saw_a = true;
      CHECK(mult == 2);
    }
    if (irr == b.monic()) {
      saw_b = true;
      CHECK(mult == 1);
    }
  }
  CHECK(saw_a);
  CHECK(saw_b);

  SUBCASE("random products re-multiply") {
    std::mt19937_64 rng(6);
    for (u64 p : {2ull, 3ull, 5ull}) {
      for (int t = 0; t < 10; ++t) {
        DensePoly prod = DensePoly::one(p);
        int nf = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < nf; ++i) {
          auto irr = irreducibles_of_degree(p, 1 + rng() % 3, 8);
          prod = prod * irr[rng() % irr.size()];
        }
        auto fs = poly_factor(prod);
        DensePoly re = DensePoly::one(p);
        for (auto& [irr, mult] : fs) {
          for (unsigned i = 0; i < mult; ++i) re = re * irr;
        }
        CHECK(re == prod.monic());
      }
    }
  }
}
