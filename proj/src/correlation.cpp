#include "fqcorr/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "fqcorr/parallel.hpp"
#include "index_shift.hpp"

namespace fqcorr {

namespace {

struct CovSums {
  Complex ab = 0.0, a = 0.0, b = 0.0;
  long long count = 0;
};

}  // namespace

ShiftSpec::ShiftSpec(int n_, Poly d) : n(n_), delta(std::move(d)) {
  if (delta.is_zero()) throw std::domain_error("shift must be nonzero");
  if (delta.degree() >= n) throw std::domain_error("shift degree must be below n");
  a_delta = distinct_roots_in_base(delta);
  squarefree = fqcorr::is_squarefree(delta);
}

std::string ShiftSpec::str() const {
  return "n=" + std::to_string(n) + ", delta=" + delta.str();
}

Complex CorrelationEngine::cov_monic(const ValueTable& a, const ValueTable& b, int n,
                                     const Poly& delta) const {
  const Field& F = *f_;
  if (delta.is_zero() || delta.degree() >= n)
    throw std::domain_error("cov_monic needs 0 < deg delta < n or a scalar shift");
  IndexShift shift(F, delta, n);
  std::uint64_t count = pow_u64(F.q(), n);
  std::uint64_t nblocks = (count + kBlockSize - 1) / kBlockSize;
  std::vector<CovSums> partial(nblocks);
  parallel_blocks(count, [&](std::uint64_t blk, std::uint64_t lo, std::uint64_t hi) {
    CovSums s;
    MonicEnumerator en(F, n, lo);
    for (std::uint64_t i = lo; i < hi; ++i, en.next()) {
      Complex av = a.values[sieve_->eft_id(n, i)];
      Complex bv = b.values[sieve_->eft_id(n, shift.apply(i, en.low()))];
      s.ab += av * std::conj(bv);
      s.a += av;
      s.b += bv;
    }
    partial[blk] = s;
  });
  CovSums total;
  for (auto& s : partial) {
    total.ab += s.ab;
    total.a += s.a;
    total.b += s.b;
  }
  double inv = 1.0 / (double)count;
  return total.ab * inv - (total.a * inv) * std::conj(total.b * inv);
}

Complex CorrelationEngine::cov_all_direct(const ValueTable& a, const ValueTable& b, int n,
                                          const Poly& delta) const {
  const Field& F = *f_;
  // f = c * m with m monic: alpha(f) = alpha(m), beta(f + delta) = beta(m + delta/c)
  Complex sum_ab = 0.0, sum_a = 0.0, sum_b = 0.0;
  std::uint64_t count = pow_u64(F.q(), n);
  for (unsigned c = 1; c < F.q(); ++c) {
    Poly shifted = delta.scaled(F.inv((ElemCode)c));
    IndexShift shift(F, shifted, n);
    std::uint64_t nblocks = (count + kBlockSize - 1) / kBlockSize;
    std::vector<CovSums> partial(nblocks);
    parallel_blocks(count, [&](std::uint64_t blk, std::uint64_t lo, std::uint64_t hi) {
      CovSums s;
      MonicEnumerator en(F, n, lo);
      for (std::uint64_t i = lo; i < hi; ++i, en.next()) {
        Complex av = a.values[sieve_->eft_id(n, i)];
        Complex bv = b.values[sieve_->eft_id(n, shift.apply(i, en.low()))];
        s.ab += av * std::conj(bv);
        s.a += av;
        s.b += bv;
      }
      partial[blk] = s;
    });
    for (auto& s : partial) {
      sum_ab += s.ab;
      sum_a += s.a;
      sum_b += s.b;
    }
  }
  double inv = 1.0 / ((double)count * (F.q() - 1));
  return sum_ab * inv - (sum_a * inv) * std::conj(sum_b * inv);
}

Complex CorrelationEngine::cov_all_via_scalars(const ValueTable& a, const ValueTable& b, int n,
                                               const Poly& delta) const {
  Complex sum = 0.0;
  for (unsigned c = 1; c < f_->q(); ++c) sum += cov_monic(a, b, n, delta.scaled((ElemCode)c));
  return sum / (double)(f_->q() - 1);
}

Complex CorrelationEngine::cov_gap(const ValueTable& a, const ValueTable& b, int n,
                                   const Poly& delta, int h) const {
  if (h < delta.degree() || h > n) throw std::domain_error("gap parameter out of range");
  UnitGroup g(*f_, HayesModulus(n - h, delta));
  std::vector<Complex> ta = g.class_sums(n, a, *sieve_);
  std::vector<Complex> tb = g.class_sums(n, b, *sieve_);
  Complex sum_ab = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (std::uint64_t r = 0; r < g.size(); ++r) {
    sum_ab += ta[r] * std::conj(tb[r]);
    sum_a += ta[r];
    sum_b += tb[r];
  }
  double inv = 1.0 / (double)g.size();
  return sum_ab * inv - (sum_a * inv) * std::conj(sum_b * inv);
}

Complex CorrelationEngine::cov_gap_spectral(const ValueTable& a, const ValueTable& b, int n,
                                            const Poly& delta, int h) const {
  if (h < delta.degree() || h > n) throw std::domain_error("gap parameter out of range");
  UnitGroup g(*f_, HayesModulus(n - h, delta));
  std::vector<Complex> sa = g.char_sums_all(n, a, *sieve_);
  std::vector<Complex> sb = g.char_sums_all(n, b, *sieve_);
  Complex sum = 0.0;
  for (std::uint64_t r = 1; r < g.size(); ++r) sum += sa[r] * std::conj(sb[r]);
  return sum / ((double)g.size() * (double)g.size());
}

std::vector<std::uint8_t> CorrelationEngine::coprimality_mask(int n, const Poly& modulus) const {
  const Field& F = *f_;
  Poly m = modulus.monic();
  std::uint64_t count = pow_u64(F.q(), n);
  std::vector<std::uint8_t> mask(count, 1);
  if (m.degree() <= 0) return mask;
  parallel_blocks(count, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      Poly f = monic_from_index(F, n, i);
      mask[i] = (std::uint8_t)(gcd(f, m).degree() == 0);
    }
  });
  return mask;
}

Complex CorrelationEngine::cov_coprime(const ValueTable& a, const ValueTable& b, int n,
                                       const Poly& modulus, const Poly& shift) const {
  const Field& F = *f_;
  std::vector<std::uint8_t> mask = coprimality_mask(n, modulus);
  IndexShift sh(F, shift, n);
  std::uint64_t count = pow_u64(F.q(), n);
  std::uint64_t nblocks = (count + kBlockSize - 1) / kBlockSize;
  std::vector<CovSums> partial(nblocks);
  parallel_blocks(count, [&](std::uint64_t blk, std::uint64_t lo, std::uint64_t hi) {
    CovSums s;
    MonicEnumerator en(F, n, lo);
    for (std::uint64_t i = lo; i < hi; ++i, en.next()) {
      if (!mask[i]) continue;
      Complex av = a.values[sieve_->eft_id(n, i)];
      Complex bv = b.values[sieve_->eft_id(n, sh.apply(i, en.low()))];
      s.ab += av * std::conj(bv);
      s.a += av;
      s.b += bv;
      s.count++;
    }
    partial[blk] = s;
  });
  CovSums total;
  for (auto& s : partial) {
    total.ab += s.ab;
    total.a += s.a;
    total.b += s.b;
    total.count += s.count;
  }
  double inv = 1.0 / (double)total.count;
  return total.ab * inv - (total.a * inv) * std::conj(total.b * inv);
}

Complex CorrelationEngine::coprime_product_mean(const ValueTable& a, const ValueTable& b, int n,
                                                const Poly& delta) const {
  const Field& F = *f_;
  std::vector<std::uint8_t> mask = coprimality_mask(n, delta);
  IndexShift sh(F, delta, n);
  std::uint64_t count = pow_u64(F.q(), n);
  Complex sum = 0.0;
  long long kept = 0;
  MonicEnumerator en(F, n);
  for (std::uint64_t i = 0; i < count; ++i, en.next()) {
    if (!mask[i]) continue;
    sum += a.values[sieve_->eft_id(n, i)] *
           std::conj(b.values[sieve_->eft_id(n, sh.apply(i, en.low()))]);
    ++kept;
  }
  return sum / (double)kept;
}

Complex CorrelationEngine::coprime_product_mean_spectral(const ValueTable& a,
                                                         const ValueTable& b, int n,
                                                         const Poly& delta) const {
  const Field& F = *f_;
  int m = n - delta.degree();
  UnitGroup g(F, HayesModulus(m, delta));
  std::vector<Complex> sa = g.char_sums_all(n, a, *sieve_);
  std::vector<Complex> sb = g.char_sums_all(n, b, *sieve_);
  // distinguished class: 1 mod delta, short part of T^m + lc(delta)
  std::uint64_t key = g.identity_key() + (std::uint64_t)delta.lead() * pow_u64(F.q(), m - 1);
  std::int32_t grank = g.rank_of_key(key);
  if (grank == kNonUnit) throw std::logic_error("distinguished class is not a unit");
  Complex sum = 0.0;
  for (std::uint64_t r = 0; r < g.size(); ++r) {
    HayesCharacter chi = g.character(r);
    sum += g.eval(chi, grank) * sa[r] * std::conj(sb[r]);
  }
  double denom = (double)g.size() * (double)g.size();
  return sum / denom;
}

long long CorrelationEngine::shift_class_relation_violations(int n, const Poly& delta) const {
  const Field& F = *f_;
  int m = n - delta.degree();
  UnitGroup g(F, HayesModulus(m, delta));
  std::uint64_t gkey = g.identity_key() + (std::uint64_t)delta.lead() * pow_u64(F.q(), m - 1);
  std::uint64_t count = pow_u64(F.q(), n);
  long long bad = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    Poly f = monic_from_index(F, n, i);
    ClassKey kf = g.class_key(f);
    if (kf == UnitGroup::kNonUnitKey) continue;
    ClassKey lhs = g.class_key(f + delta);
    if (lhs != g.mult(gkey, kf)) ++bad;
  }
  return bad;
}

CorrelationEngine::SubstitutionResidual CorrelationEngine::substitution_invariance(
    const ValueTable& a, const ValueTable& b, int n, const Poly& delta, ElemCode c1,
    ElemCode c2, bool self_paired) const {
  if (c1 == 0) throw std::domain_error("substitution needs c1 != 0");
  const Field& F = *f_;
  Poly subst = delta.substitute_linear(c1, c2).scaled(F.inv(F.pow(c1, (unsigned)n)));
  Complex base = cov_monic(a, b, n, delta);
  SubstitutionResidual out;
  out.plain = std::abs(base - cov_monic(a, b, n, subst));
  if (self_paired) out.flipped = std::abs(base - cov_monic(a, b, n, -subst));
  return out;
}

CorrelationEngine::NonCoprimePair CorrelationEngine::noncoprime_correction(
    const ValueTable& a, const ValueTable& b, int n, const Poly& delta) const {
  const Field& F = *f_;
  std::vector<std::uint8_t> mask = coprimality_mask(n, delta);
  IndexShift sh(F, delta, n);
  std::uint64_t count = pow_u64(F.q(), n);
  Complex exact = 0.0;
  MonicEnumerator en(F, n);
  for (std::uint64_t i = 0; i < count; ++i, en.next()) {
    if (mask[i]) continue;
    exact += a.values[sieve_->eft_id(n, i)] *
             std::conj(b.values[sieve_->eft_id(n, sh.apply(i, en.low()))]);
  }
  Complex sa = 0.0, sb = 0.0;
  std::uint64_t count1 = pow_u64(F.q(), n - 1);
  for (std::uint64_t i = 0; i < count1; ++i) {
    sa += a.values[sieve_->eft_id(n, i * F.q())];
    sb += b.values[sieve_->eft_id(n, i * F.q())];
  }
  int ad = distinct_roots_in_base(delta);
  NonCoprimePair out;
  out.exact = exact;
  out.prediction = (double)ad * sa * std::conj(sb) / (double)count1;
  out.residual_scaled = std::abs(out.exact - out.prediction) / std::pow((double)F.q(), n - 1.5);
  return out;
}

CorrelationEngine::SingleNonCoprime CorrelationEngine::noncoprime_single(
    const ValueTable& a, int n, const Poly& delta) const {
  const Field& F = *f_;
  std::vector<std::uint8_t> mask = coprimality_mask(n, delta);
  std::uint64_t count = pow_u64(F.q(), n);
  Complex exact = 0.0;
  for (std::uint64_t i = 0; i < count; ++i)
    if (!mask[i]) exact += a.values[sieve_->eft_id(n, i)];
  Complex sa = 0.0;
  std::uint64_t count1 = pow_u64(F.q(), n - 1);
  for (std::uint64_t i = 0; i < count1; ++i) sa += a.values[sieve_->eft_id(n, i * F.q())];
  SingleNonCoprime out;
  out.exact = exact;
  out.prediction = (double)distinct_roots_in_base(delta) * sa;
  out.residual_scaled = std::abs(out.exact - out.prediction) / std::pow((double)F.q(), n - 2.0);
  return out;
}

Complex pair_main_term(const FourierCoefficients& a, const FourierCoefficients& b, int a_delta,
                       unsigned q) {
  if (a.n < 2) throw std::domain_error("main term needs n >= 2");
  Partition lam({a.n - 1, 1});
  return (double)(a_delta - 1) * a.at(lam) * std::conj(b.at(lam)) / (double)q;
}

Complex gap_main_term(const FourierCoefficients& a, const FourierCoefficients& b, int n,
                      int deg_delta, int h, unsigned q) {
  const auto& ps = partitions_of(n);
  Complex sum = 0.0;
  for (size_t i = 0; i < ps.size(); ++i)
    if (ps[i].part(0) <= n - h + deg_delta - 1) sum += a.values[i] * std::conj(b.values[i]);
  return std::pow((double)q, h - deg_delta) * sum;
}

Complex shift_sum_main_term(const FourierCoefficients& a, const FourierCoefficients& b, int n,
                            int h) {
  const auto& ps = partitions_of(n);
  Complex sum = 0.0;
  for (size_t i = 0; i < ps.size(); ++i)
    if (ps[i].part(0) == n - h - 1) sum += a.values[i] * std::conj(b.values[i]);
  return -sum;
}

HlValue hl_constant(const Poly& delta, int truncation_degree) {
  if (delta.is_zero()) throw std::domain_error("singular series needs a nonzero shift");
  const Field& F = delta.field();
  unsigned q = F.q();
  if (q <= 2) throw std::domain_error("singular series needs q > 2 (degree-one factor vanishes)");
  int D = truncation_degree;
  if (D < delta.degree()) throw std::domain_error("truncation degree below deg delta");
  std::vector<int> delta_prime_degrees;
  for (auto& [p, e] : factor_one(delta)) {
    (void)e;
    delta_prime_degrees.push_back(p.degree());
  }
  double log_value = 0.0;
  for (int d = 1; d <= D; ++d) {
    double x = std::pow((double)q, -d);
    long long total = gauss_irreducible_count(q, d);
    long long dividing = (long long)std::count(delta_prime_degrees.begin(),
                                               delta_prime_degrees.end(), d);
    // P | delta: (1-x)/(1-x)^2; P not dividing: (1-2x)/(1-x)^2
    log_value += (double)dividing * -std::log1p(-x);
    log_value += (double)(total - dividing) * (std::log1p(-2.0 * x) - 2.0 * std::log1p(-x));
  }
  HlValue out;
  out.value = std::exp(log_value);
  out.truncation_degree = D;
  // |log((1-2x)/(1-x)^2)| <= 1.01 x^2 for the tail range, summed over degrees
  out.tail_bound = 1.01 * std::pow((double)q, -D) / ((double)(D + 1) * (double)(q - 1));
  return out;
}

double phi_expansion_residual(const Poly& delta) {
  if (delta.is_zero()) throw std::domain_error("phi expansion of zero shift");
  const Field& F = delta.field();
  double q = (double)F.q();
  double ratio = std::pow(q, delta.degree()) / (double)euler_phi(delta);
  double a = (double)distinct_roots_in_base(delta);
  return std::abs(ratio - 1.0 - a / q) * q * q;
}

double coeff_interpretation_residual(const FactorizationFunction& a, int n,
                                     const FactorSieve& sieve) {
  if (n < 2) throw std::domain_error("coefficient interpretation needs n >= 2");
  FourierCoefficients fc = fourier_coefficients(a, n);
  Complex hat = fc.at(Partition({n - 1, 1}));
  Complex shifted = shifted_mean_with_linear_factor(a, n, sieve).value;
  Complex plain = mean(a, n, Domain::All, sieve).value;
  return std::abs(hat - (shifted - plain)) * (double)sieve.field().q();
}

}  // namespace fqcorr
