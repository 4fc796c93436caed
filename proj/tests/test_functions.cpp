#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <complex>
#include <numeric>

#include "fqcorr/arithfun.hpp"
#include "fqcorr/partitions.hpp"
#include "fqcorr/symfunc.hpp"

using namespace fqcorr;

namespace {

// deterministic LCG for sampled properties
struct Lcg {
  std::uint64_t s = 0x9e3779b97f4a7c15ULL;
  std::uint64_t next() {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return s >> 11;
  }
};

long long divisor_oracle(const Poly& f, int k) {
  // ordered k-tuples of monic polynomials with the given product
  const Field& F = f.field();
  Poly m = f.monic();
  if (k == 1) return 1;
  long long total = 0;
  for (int d = 0; d <= m.degree(); ++d) {
    std::uint64_t cnt = pow_u64(F.q(), d);
    for (std::uint64_t i = 0; i < cnt; ++i) {
      Poly g = monic_from_index(F, d, i);
      if (g.divides(m)) total += divisor_oracle(m / g, k - 1);
    }
  }
  return total;
}

// p(n) by the pentagonal-number recurrence (independent of the generator)
long long partition_count_oracle(int n) {
  std::vector<long long> p(n + 1, 0);
  p[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int k = 1;; ++k) {
      long long g1 = (long long)k * (3 * k - 1) / 2, g2 = (long long)k * (3 * k + 1) / 2;
      if (g1 > i && g2 > i) break;
      long long sign = (k % 2 == 1) ? 1 : -1;
      if (g1 <= i) p[i] += sign * p[i - g1];
      if (g2 <= i) p[i] += sign * p[i - g2];
    }
  return p[n];
}

std::vector<int> cycle_type(const std::vector<int>& perm) {
  int n = (int)perm.size();
  std::vector<bool> seen(n, false);
  std::vector<int> cycles;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = perm[j];
      ++len;
    }
    cycles.push_back(len);
  }
  std::sort(cycles.rbegin(), cycles.rend());
  return cycles;
}

}  // namespace

TEST_CASE("builtin values against direct definitions") {
  Field f3 = Field::prime(3);
  FactorSieve sieve(f3, 4);
  auto lam = FactorizationFunction::von_mangoldt();
  auto mu = FactorizationFunction::mobius();
  auto d2 = FactorizationFunction::divisor(2);

  CHECK(evaluate(lam, Poly::parse(f3, "T^2"), &sieve).real() == doctest::Approx(1.0));
  CHECK(evaluate(mu, Poly::parse(f3, "T^2+T"), &sieve).real() == doctest::Approx(1.0));
  // d_2(P^2) = 3
  Poly p2 = Poly::parse(f3, "T^2");
  CHECK(evaluate(d2, p2, &sieve).real() == doctest::Approx(3.0));
  // frozen oracle value: ordered triples with product T^3 + 2T
  auto d3 = FactorizationFunction::divisor(3);
  Poly f = Poly::parse(f3, "T^3+2*T");
  CHECK(divisor_oracle(f, 3) == 27);
  CHECK(evaluate(d3, f, &sieve).real() == doctest::Approx(27.0));

  // exhaustive agreement with oracles at small degrees
  for (int n = 1; n <= 3; ++n) {
    for (MonicEnumerator en(f3, n); !en.done(); en.next()) {
      Poly m = en.current();
      auto factors = factor_one(m);
      double lam_direct = factors.size() == 1 ? factors[0].first.degree() : 0.0;
      CHECK(evaluate(lam, m, &sieve).real() == doctest::Approx(lam_direct));
      bool sf = true;
      for (auto& [p, e] : factors) sf = sf && e == 1;
      double mu_direct = sf ? ((factors.size() % 2 == 0) ? 1.0 : -1.0) : 0.0;
      CHECK(evaluate(mu, m, &sieve).real() == doctest::Approx(mu_direct));
      CHECK(evaluate(d2, m, &sieve).real() == doctest::Approx((double)divisor_oracle(m, 2)));
    }
  }
}

TEST_CASE("evenness and multiplicativity") {
  Field f5 = Field::prime(5);
  FactorSieve sieve(f5, 4);
  auto d3 = FactorizationFunction::divisor(3);
  for (int n = 1; n <= 4; ++n)
    for (MonicEnumerator en(f5, n); !en.done(); en.next()) {
      Poly m = en.current();
      Complex base = evaluate(d3, m, &sieve);
      for (unsigned c = 2; c < 5; ++c)
        CHECK(evaluate(d3, m.scaled((ElemCode)c), &sieve) == base);
      if (en.index() > 120) break;
    }
  // d_k(fg) = d_k(f) d_k(g) for coprime pairs
  Lcg rng;
  int tested = 0;
  while (tested < 1000) {
    int da = 1 + (int)(rng.next() % 2), db = 1 + (int)(rng.next() % 2);
    Poly a = monic_from_index(f5, da, rng.next() % pow_u64(5, da));
    Poly b = monic_from_index(f5, db, rng.next() % pow_u64(5, db));
    if (gcd(a, b).degree() != 0) continue;
    CHECK(evaluate(d3, a * b, &sieve) == evaluate(d3, a, &sieve) * evaluate(d3, b, &sieve));
    ++tested;
  }
}

TEST_CASE("mean values are exact") {
  for (unsigned q : {3u, 5u}) {
    Field f = Field::of_order(q);
    FactorSieve sieve(f, 5);
    auto lam = FactorizationFunction::von_mangoldt();
    auto mu = FactorizationFunction::mobius();
    for (int n = 1; n <= 5; ++n) {
      CHECK(mean(lam, n, Domain::Monic, sieve).exact.value() == Rational(1));
      if (n >= 2) CHECK(mean(mu, n, Domain::Monic, sieve).exact.value() == Rational(0));
      for (int k = 2; k <= 4; ++k) {
        auto dk = FactorizationFunction::divisor(k);
        CHECK(mean(dk, n, Domain::Monic, sieve).exact.value() ==
              Rational(binomial(n + k - 1, n)));
        CHECK(mean(dk, n, Domain::All, sieve).exact.value() ==
              Rational(binomial(n + k - 1, n)));
      }
    }
  }
}

TEST_CASE("shifted mean with a forced linear factor") {
  Field f3 = Field::prime(3);
  FactorSieve sieve(f3, 4);
  // indicator of irreducible degree-n types vanishes: f*T is never irreducible
  ExtFactType irr;
  irr.parts = {{3, 1}};
  auto ind = FactorizationFunction::indicator(irr);
  CHECK(shifted_mean_with_linear_factor(ind, 3, sieve).exact.value() == Rational(0));
  auto lam = FactorizationFunction::von_mangoldt();
  auto v = shifted_mean_with_linear_factor(lam, 3, sieve);
  CHECK(std::abs(v.value) <= max_abs(lam, 3, sieve) + 1e-12);
  // Lambda(f*T) = 0 unless f = T^k, so the mean is exactly q^{-(n-1)}
  CHECK(v.exact.value() == Rational(1, 9));
}

TEST_CASE("user tables: parsing, defaults, degree errors") {
  std::string path = "/tmp/fqcorr_table_test.txt";
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("# comment\n", f);
    std::fputs("EFT := (1,1)(2,1) ; value := 2/3\n", f);
    std::fputs("EFT := (3,1) ; value := -1\n", f);
    std::fclose(f);
  }
  auto t = FactorizationFunction::load_user_table(path);
  CHECK(t.fixed_degree() == 3);
  CHECK(t.exact());
  ExtFactType mixed = ExtFactType::parse("(1,1)(2,1)");
  CHECK(t.rational_value(mixed) == Rational(2, 3));
  ExtFactType missing = ExtFactType::parse("(1,1)(1,1)(1,1)");
  CHECK(t.rational_value(missing) == Rational(0));  // off-support default, warns
  ExtFactType wrong = ExtFactType::parse("(2,2)");
  CHECK_THROWS_AS((void)t.rational_value(wrong), std::domain_error);
  std::remove(path.c_str());
}

TEST_CASE("partitions: counts, order, conjugation, class sizes") {
  CHECK(partitions_of(4).size() == 5);
  CHECK(partitions_of(1).size() == 1);
  CHECK(partitions_of(8).size() == (size_t)partition_count_oracle(8));
  for (int n = 1; n <= 9; ++n)
    CHECK(partitions_of(n).size() == (size_t)partition_count_oracle(n));
  // reverse-lexicographic: (n) first, (1^n) last
  CHECK(partitions_of(4).front().str() == "(4)");
  CHECK(partitions_of(4).back().str() == "(1,1,1,1)");

  long long total = 0;
  for (const auto& p : partitions_of(6)) {
    CHECK(p.conjugate().conjugate() == p);
    total += p.class_size();
  }
  CHECK(total == factorial(6));
  CHECK(Partition::parse("3,1,1").str() == "(3,1,1)");
  CHECK_THROWS_AS(Partition({1, 2}), std::domain_error);
}

TEST_CASE("irreducible characters: trivial, sign, small table") {
  for (const auto& mu : partitions_of(5)) {
    CHECK(sn_character(Partition({5}), mu) == 1);
    long long sign = (5 - mu.length()) % 2 == 0 ? 1 : -1;
    CHECK(sn_character(Partition({1, 1, 1, 1, 1}), mu) == sign);
  }
  Partition lam({2, 1});
  CHECK(sn_character(lam, Partition({1, 1, 1})) == 2);
  CHECK(sn_character(lam, Partition({2, 1})) == 0);
  CHECK(sn_character(lam, Partition({3})) == -1);
  CHECK_THROWS_AS(sn_character(Partition({2}), Partition({3})), std::domain_error);
}

TEST_CASE("character table against the permutation-enumeration oracle") {
  for (int n = 2; n <= 6; ++n) {
    const CharacterTable& ct = CharacterTable::get(n);
    const auto& ps = ct.partitions();
    // class sizes from enumerating all n! permutations
    std::vector<long long> counts(ps.size(), 0);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Partition type{cycle_type(perm)};
      counts[partition_index(n, type)]++;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (size_t m = 0; m < ps.size(); ++m) CHECK(counts[m] == ct.class_size((int)m));
    // row orthogonality with enumerated class sizes
    for (size_t l1 = 0; l1 < ps.size(); ++l1)
      for (size_t l2 = 0; l2 < ps.size(); ++l2) {
        long long s = 0;
        for (size_t m = 0; m < ps.size(); ++m)
          s += counts[m] * ct.value((int)l1, (int)m) * ct.value((int)l2, (int)m);
        CHECK(s == (l1 == l2 ? factorial(n) : 0));
      }
    // column orthogonality
    for (size_t m1 = 0; m1 < ps.size(); ++m1)
      for (size_t m2 = 0; m2 < ps.size(); ++m2) {
        long long s = 0;
        for (size_t l = 0; l < ps.size(); ++l)
          s += ct.value((int)l, (int)m1) * ct.value((int)l, (int)m2);
        long long expect = m1 == m2 ? factorial(n) / ct.class_size((int)m1) : 0;
        CHECK(s == expect);
      }
    // dimensions via the hook length formula
    int id_idx = partition_index(n, Partition(std::vector<int>(n, 1)));
    for (size_t l = 0; l < ps.size(); ++l)
      CHECK(ct.value((int)l, id_idx) == ps[l].hook_dimension());
  }
  // hook dimensions and exact row orthogonality through n = 8
  for (int n = 7; n <= 8; ++n) {
    const auto& ps = partitions_of(n);
    int id_idx = partition_index(n, Partition(std::vector<int>(n, 1)));
    for (const auto& lam : ps) CHECK(sn_character(lam, ps[id_idx]) == lam.hook_dimension());
    for (size_t l1 = 0; l1 < ps.size(); ++l1)
      for (size_t l2 = l1; l2 < ps.size(); ++l2) {
        long long s = 0;
        for (size_t m = 0; m < ps.size(); ++m)
          s += ps[m].class_size() * sn_character(ps[l1], ps[m]) * sn_character(ps[l2], ps[m]);
        CHECK(s == (l1 == l2 ? factorial(n) : 0));
      }
  }
}

TEST_CASE("spectra of the builtin functions") {
  for (int n = 2; n <= 8; ++n) {
    auto fmu = fourier_coefficients(FactorizationFunction::mobius(), n);
    REQUIRE(fmu.is_exact);
    for (const auto& lam : partitions_of(n)) {
      Rational expect =
          (lam.length() == n) ? Rational(n % 2 == 0 ? 1 : -1) : Rational(0);
      CHECK(fmu.exact_at(lam) == expect);
    }
    auto flam = fourier_coefficients(FactorizationFunction::von_mangoldt(), n);
    for (const auto& lam : partitions_of(n)) {
      Rational expect(0);
      if (lam.is_hook()) expect = Rational((n - lam.part(0)) % 2 == 0 ? 1 : -1);
      CHECK(flam.exact_at(lam) == expect);
    }
    for (int k = 2; k <= 5; ++k) {
      auto fdk = fourier_coefficients(FactorizationFunction::divisor(k), n);
      for (const auto& lam : partitions_of(n)) CHECK(fdk.exact_at(lam) == schur_at_ones(lam, k));
    }
    if (n >= 3) {
      Partition top({n - 1, 1});
      CHECK(fmu.exact_at(top) == Rational(0));
      CHECK(flam.exact_at(top) == Rational(-1));
      for (int k = 2; k <= 5; ++k) {
        auto fdk = fourier_coefficients(FactorizationFunction::divisor(k), n);
        CHECK(fdk.exact_at(top) == Rational(binomial(n + k - 2, k - 2) * (n - 1)));
      }
    }
    CHECK(reconstruction_error(FactorizationFunction::divisor(3),
                               fourier_coefficients(FactorizationFunction::divisor(3), n)) == 0.0);
  }
}

TEST_CASE("schur evaluations") {
  // dimension of the degree-n polynomials in two variables
  for (int n = 1; n <= 6; ++n)
    CHECK(schur_at_ones(Partition({n}), 2) == Rational(n + 1));
  CHECK(schur_at_ones(Partition({1, 1, 1}), 2) == Rational(0));
  for (int k = 1; k <= 6; ++k) CHECK(schur_at_ones(Partition({1}), k) == Rational(k));

  std::vector<Complex> xs = {Complex(0.3, 0.4), Complex(-0.1, 0.9), Complex(0.8, -0.2)};
  Complex trace = xs[0] + xs[1] + xs[2];
  CHECK(std::abs(schur_eval(Partition({1}), xs) - trace) < 1e-12);
  // s_(2)(x, y) = x^2 + xy + y^2 at (1, i)
  std::vector<Complex> oneI = {Complex(1, 0), Complex(0, 1)};
  CHECK(std::abs(schur_eval(Partition({2}), oneI) - Complex(0, 1)) < 1e-12);
  // consistency with the product formula at repeated ones
  for (int k = 2; k <= 5; ++k)
    for (const auto& lam : partitions_of(4)) {
      std::vector<Complex> ones(k, 1.0);
      CHECK(std::abs(schur_eval(lam, ones) - schur_at_ones(lam, k).to_double()) < 1e-9);
    }
  // conjugation symmetry
  for (const auto& lam : partitions_of(3)) {
    std::vector<Complex> conj_xs;
    for (auto& x : xs) conj_xs.push_back(std::conj(x));
    CHECK(std::abs(schur_eval(lam, conj_xs) - std::conj(schur_eval(lam, xs))) < 1e-12);
  }
  CHECK(schur_eval(Partition({1, 1, 1, 1}), xs) == Complex(0.0));
}

TEST_CASE("plancherel pairing both ways") {
  for (int n = 3; n <= 6; ++n) {
    auto mu = FactorizationFunction::mobius();
    auto pp = plancherel_pairing(mu, mu, n);
    CHECK(std::abs(pp.by_classes - 1.0) < 1e-10);
    CHECK(std::abs(pp.by_spectrum - 1.0) < 1e-10);
    auto c1 = FactorizationFunction::sn_character(partitions_of(n)[0]);
    auto c2 = FactorizationFunction::sn_character(partitions_of(n)[1]);
    auto orth = plancherel_pairing(c1, c2, n);
    CHECK(std::abs(orth.by_classes) < 1e-10);
    CHECK(std::abs(orth.by_spectrum) < 1e-10);
    auto lam = FactorizationFunction::von_mangoldt();
    auto diag = plancherel_pairing(lam, lam, n);
    CHECK(std::abs(diag.by_spectrum - (double)n) < 1e-9);  // one hook per leg length
    CHECK(std::abs(diag.by_classes - diag.by_spectrum) < 1e-9);
  }
}

TEST_CASE("function spec parsing") {
  CHECK(parse_function("Lambda").name() == "Lambda");
  CHECK(parse_function("mu").name() == "mu");
  CHECK(parse_function("d4").name() == "d4");
  CHECK(parse_function("chi:2,1").name() == "chi(2,1)");
  CHECK(parse_function("ind:(1,1)(2,1)").fixed_degree() == 3);
  CHECK_THROWS_AS(parse_function("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(parse_function("d1"), std::domain_error);
}
