#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fqcorr/field.hpp"
#include "fqcorr/poly.hpp"
#include "fqcorr/sieve.hpp"

using namespace fqcorr;

TEST_CASE("field arithmetic in small prime fields") {
  Field f5 = Field::prime(5);
  CHECK(f5.inv(2) == 3);  // 2*3 = 6 = 1
  CHECK(f5.mul(4, 4) == 1);
  CHECK(f5.sub(1, 3) == 3);

  Field f7 = Field::prime(7);
  CHECK(f7.pow(3, 6) == 1);
  for (unsigned a = 1; a < 7; ++a) CHECK(f7.mul((ElemCode)a, f7.inv((ElemCode)a)) == 1);

  CHECK_THROWS_AS(f5.inv(0), std::domain_error);
  CHECK_THROWS_AS(Field::prime(6), std::domain_error);
}

TEST_CASE("prime power fields use the least irreducible modulus") {
  Field f4 = Field::prime_power(2, 2);
  CHECK(f4.q() == 4);
  // x * x = x + 1 under x^2 + x + 1
  ElemCode x = f4.from_coords({0, 1});
  CHECK(f4.mul(x, x) == f4.from_coords({1, 1}));
  CHECK(f4.modulus() == std::vector<unsigned>{1, 1, 1});

  Field f9 = Field::of_order(9);
  CHECK(f9.p() == 3);
  CHECK(f9.modulus() == std::vector<unsigned>{1, 0, 1});  // x^2 + 1
  for (unsigned a = 1; a < 9; ++a) CHECK(f9.mul((ElemCode)a, f9.inv((ElemCode)a)) == 1);
  CHECK(f9.pow(f9.from_coords({0, 1}), 8) == 1);

  Field f8 = Field::of_order(8);
  CHECK(f8.modulus() == std::vector<unsigned>{1, 1, 0, 1});  // x^3 + x + 1
  Field f16 = Field::of_order(16);
  CHECK(f16.modulus() == std::vector<unsigned>{1, 1, 0, 0, 1});  // x^4 + x + 1

  CHECK_THROWS_AS(Field::with_modulus(3, {0, 0, 1}), std::domain_error);  // x^2 reducible
}

TEST_CASE("polynomial arithmetic and divmod contract") {
  Field f3 = Field::prime(3);
  Poly a = Poly::parse(f3, "T^2-1");
  Poly b = Poly::parse(f3, "T-1");
  CHECK(gcd(a, b).str() == "T + 2");  // monic generator

  Field f2 = Field::prime(2);
  CHECK(Poly::parse(f2, "T^2").derivative().is_zero());

  Field f5 = Field::prime(5);
  CHECK(Poly::parse(f5, "T^2+1").eval(2) == 0);

  // divmod: f = q*g + r exactly, deg r < deg g
  Poly f = Poly::parse(f5, "3*T^4 + T^2 + 2");
  Poly g = Poly::parse(f5, "T^2 + 4*T");
  auto [q, r] = f.divmod(g);
  CHECK(q * g + r == f);
  CHECK(r.degree() < g.degree());
  CHECK_THROWS_AS(f.divmod(Poly::zero(f5)), std::domain_error);

  CHECK(Poly::zero(f5).degree() == kNegInfDeg);
  CHECK(kNegInfDeg < -1000000);
}

TEST_CASE("polynomial text format round trip") {
  Field f5 = Field::prime(5);
  Poly p = Poly::parse(f5, " 2*T^3   +T -  1 ");
  CHECK(p.str() == "2*T^3 + T + 4");
  CHECK(Poly::parse(f5, p.str()) == p);

  Field f4 = Field::of_order(4);
  Poly v = Poly::parse(f4, "[1,1]*T^2 + [0,1]");
  CHECK(Poly::parse(f4, v.str()) == v);
  CHECK_THROWS_AS(Poly::parse(f5, "T^2 ++ 1x"), std::invalid_argument);
}

TEST_CASE("index encoding round trips and ordering") {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    Field f = Field::of_order(q);
    for (int n = 0; n <= 6; ++n) {
      std::uint64_t count = pow_u64(q, n);
      std::uint64_t step = count > 3000 ? 17 : 1;  // dense at small degree
      for (std::uint64_t i = 0; i < count; i += step) {
        Poly m = monic_from_index(f, n, i);
        CHECK(m.is_monic());
        CHECK(monic_index(m) == i);
        CHECK(poly_from_index(f, poly_index(m)) == m);
      }
    }
    // general (non-monic) encodings across all degrees <= 4
    std::uint64_t full = pow_u64(q, 4);
    for (std::uint64_t i = 0; i < full; ++i) CHECK(poly_index(poly_from_index(f, i)) == i);
  }
  Field f3 = Field::prime(3);
  CHECK(monic_from_index(f3, 2, 0).str() == "T^2");  // first element of the stream
}

TEST_CASE("enumeration counts") {
  Field f3 = Field::prime(3);
  int count = 0;
  for (MonicEnumerator en(f3, 3); !en.done(); en.next()) ++count;
  CHECK(count == 27);

  // all degree-n polynomials: q^n (q-1)
  Field f5 = Field::prime(5);
  CHECK(pow_u64(f5.q(), 2) * (f5.q() - 1) == 100);
}

TEST_CASE("squarefree and irreducible tests") {
  Field f3 = Field::prime(3);
  CHECK_FALSE(is_squarefree(Poly::parse(f3, "T^2")));
  CHECK(is_irreducible(Poly::parse(f3, "T^2+1")));

  Field f5 = Field::prime(5);
  CHECK(is_squarefree(Poly::parse(f5, "T^2+T")));  // T(T+1)
  CHECK_FALSE(is_irreducible(Poly::parse(f5, "T^2+1")));  // root 2

  Field f2 = Field::prime(2);
  Poly g = Poly::parse(f2, "T^2+T+1");
  CHECK_FALSE(is_squarefree(g * g));
  CHECK_THROWS_AS(is_squarefree(Poly::zero(f2)), std::domain_error);
  CHECK_THROWS_AS(is_irreducible(Poly::one(f2)), std::domain_error);

  // count of monic irreducible cubics over F_3: enumerate and trial-divide
  int irr = 0;
  for (MonicEnumerator en(f3, 3); !en.done(); en.next())
    if (is_irreducible(en.current())) ++irr;
  CHECK(irr == 8);
}

TEST_CASE("distinct roots in the base field, both routes") {
  Field f5 = Field::prime(5);
  CHECK(distinct_roots_in_base(Poly::parse(f5, "T^2-1")) == 2);
  Field f3 = Field::prime(3);
  CHECK(distinct_roots_in_base(Poly::parse(f3, "T^2+1")) == 0);
  CHECK(distinct_roots_in_base(Poly::constant(f5, 3)) == 0);
  CHECK_THROWS_AS(distinct_roots_in_base(Poly::zero(f5)), std::domain_error);
  // the evaluation route and the gcd route agree on random samples; the
  // implementation cross-checks internally and would throw on mismatch
  std::uint64_t state = 0x853c49e6748fea9bULL;
  auto next = [&] { state = state * 6364136223846793005ULL + 1442695040888963407ULL; return state >> 12; };
  for (unsigned q : {3u, 4u, 5u, 7u, 9u}) {
    Field f = Field::of_order(q);
    for (int n = 1; n <= 4; ++n)
      for (int trial = 0; trial < 1000; ++trial) {
        std::uint64_t idx = next() % (pow_u64(q, n + 1) - 1) + 1;
        Poly p = poly_from_index(f, idx);
        int roots = distinct_roots_in_base(p);
        CHECK(roots >= 0);
        CHECK(roots <= (int)q);
      }
  }
}

TEST_CASE("euler phi of polynomial moduli") {
  Field f5 = Field::prime(5);
  CHECK(euler_phi(Poly::parse(f5, "T")) == 4);
  Field f3 = Field::prime(3);
  CHECK(euler_phi(Poly::parse(f3, "T^2")) == 6);
  // count units among the 9 residues mod T(T+1)
  Poly m = Poly::parse(f3, "T^2+T");
  int units = 0;
  for (std::uint64_t i = 0; i < 9; ++i) {
    Poly r = poly_from_index(f3, i);
    if (!r.is_zero() && gcd(r, m).degree() == 0) ++units;
  }
  CHECK(euler_phi(m) == units);
  CHECK(units == 4);
}

TEST_CASE("factor sieve agrees with trial division and Gauss counts") {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 9u}) {
    Field f = Field::of_order(q);
    int maxd = q <= 4 ? 6 : 4;
    FactorSieve sieve(f, maxd);
    for (int d = 1; d <= maxd; ++d)
      CHECK(sieve.irreducible_count(d) == gauss_irreducible_count(q, d));
    // trial-division fallback agrees on 1000 random samples per degree
    std::uint64_t state = 0xda3e39cb94b95bdbULL ^ q;
    auto next = [&] { state = state * 6364136223846793005ULL + 1442695040888963407ULL; return state >> 12; };
    for (int d = 1; d <= maxd; ++d) {
      std::uint64_t count = pow_u64(q, d);
      for (int trial = 0; trial < 1000; ++trial) {
        std::uint64_t i = next() % count;
        CHECK(sieve.eft(sieve.eft_id(d, i)) == eft_of_poly(monic_from_index(f, d, i)));
      }
    }
  }
}

TEST_CASE("sieve type examples") {
  Field f3 = Field::prime(3);
  FactorSieve sieve(f3, 4);
  CHECK(sieve.eft_of(Poly::parse(f3, "T^2")).str() == "(1,2)");
  // T(T+1)(T^2+1): two linear factors and one irreducible quadratic
  Poly p = Poly::parse(f3, "T") * Poly::parse(f3, "T+1") * Poly::parse(f3, "T^2+1");
  CHECK(sieve.eft_of(p).str() == "(1,1)(1,1)(2,1)");
  // degree conservation over all monics of degree <= 3
  long long total = 0, expect = 0;
  for (int d = 1; d <= 3; ++d) {
    const auto& counts = sieve.type_counts(d);
    for (std::uint32_t id = 0; id < counts.size(); ++id)
      total += counts[id] * sieve.eft(id).total_degree();
    expect += (long long)pow_u64(3, d) * d;
  }
  CHECK(total == expect);
}

TEST_CASE("squarefree criterion matches sieve multiplicities") {
  Field f4 = Field::of_order(4);
  FactorSieve sieve(f4, 4);
  for (int d = 1; d <= 4; ++d) {
    std::uint64_t count = pow_u64(4, d);
    for (std::uint64_t i = 0; i < count; i += 3) {
      Poly m = monic_from_index(f4, d, i);
      CHECK(is_squarefree(m) == sieve.eft(sieve.eft_id(d, i)).is_squarefree());
    }
  }
}

TEST_CASE("sieve cache round trip") {
  Field f3 = Field::prime(3);
  FactorSieve sieve(f3, 4);
  std::string path = "/tmp/fqcorr_test_sieve.bin";
  REQUIRE(sieve.save_cache(path));
  auto loaded = FactorSieve::load_cache(f3, 4, path);
  REQUIRE(loaded != nullptr);
  for (int d = 0; d <= 4; ++d)
    for (std::uint64_t i = 0; i < pow_u64(3, d); ++i)
      CHECK(loaded->eft(loaded->eft_id(d, i)) == sieve.eft(sieve.eft_id(d, i)));
  CHECK(FactorSieve::load_cache(f3, 3, path) == nullptr);
  std::remove(path.c_str());
}

TEST_CASE("sieve entry cap raises a resource error") {
  Field f5 = Field::prime(5);
  CHECK_THROWS_AS(FactorSieve(f5, 6, 1000), ResourceError);
}

TEST_CASE("first squarefree monic is deterministic") {
  Field f3 = Field::prime(3);
  CHECK(first_squarefree_monic(f3, 0).str() == "1");
  Poly m1 = first_squarefree_monic(f3, 1);
  CHECK(m1.str() == "T");
  Poly m2 = first_squarefree_monic(f3, 2);
  CHECK(is_squarefree(m2));
  CHECK(monic_index(m2) < 9);
}
