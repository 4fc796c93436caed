#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fqcorr/hayes.hpp"
#include "fqcorr/symfunc.hpp"

namespace fqcorr {

// Shift parameters for one covariance experiment.
struct ShiftSpec {
  int n;
  Poly delta;  // nonzero, deg < n
  int a_delta;
  bool squarefree;

  ShiftSpec(int n_, Poly d);
  std::string str() const;
};

// Bundles the per-field state the covariance loops need.
class CorrelationEngine {
 public:
  CorrelationEngine(const Field& f, const FactorSieve& sieve)
      : f_(&f), sieve_(&sieve) {}

  const Field& field() const { return *f_; }
  const FactorSieve& sieve() const { return *sieve_; }

  // Cov over monic degree-n f of (alpha(f), beta(f + delta)).
  Complex cov_monic(const ValueTable& a, const ValueTable& b, int n, const Poly& delta) const;
  // Cov over all degree-n f, enumerated literally over leading coefficients.
  Complex cov_all_direct(const ValueTable& a, const ValueTable& b, int n,
                         const Poly& delta) const;
  // The same via the scalar-shift identity (1/(q-1)) sum_c cov_monic(n, c*delta).
  Complex cov_all_via_scalars(const ValueTable& a, const ValueTable& b, int n,
                              const Poly& delta) const;

  // Covariance across unit classes mod R_{n-h, delta} of within-class sums.
  Complex cov_gap(const ValueTable& a, const ValueTable& b, int n, const Poly& delta,
                  int h) const;
  // Spectral side of the same quantity, summed over nontrivial characters.
  Complex cov_gap_spectral(const ValueTable& a, const ValueTable& b, int n,
                           const Poly& delta, int h) const;

  // Cov over f in M_{n,q} coprime to modulus of (alpha(f), beta(f + shift)).
  Complex cov_coprime(const ValueTable& a, const ValueTable& b, int n, const Poly& modulus,
                      const Poly& shift) const;
  // E over the same set of alpha(f) conj(beta(f + delta)).
  Complex coprime_product_mean(const ValueTable& a, const ValueTable& b, int n,
                               const Poly& delta) const;
  // Character-side evaluation of that mean via the distinguished class g with
  // g = 1 mod delta and the short part of T^{n - deg delta} + lc(delta).
  Complex coprime_product_mean_spectral(const ValueTable& a, const ValueTable& b, int n,
                                        const Poly& delta) const;
  // Largest violation count of f + delta = g*f in the quotient, over all
  // coprime monic f of degree n (0 when the defining relation holds).
  long long shift_class_relation_violations(int n, const Poly& delta) const;

  struct SubstitutionResidual {
    double plain;
    std::optional<double> flipped;  // alpha = conj(beta) only
  };
  SubstitutionResidual substitution_invariance(const ValueTable& a, const ValueTable& b,
                                               int n, const Poly& delta, ElemCode c1,
                                               ElemCode c2, bool self_paired) const;

  struct NonCoprimePair {
    Complex exact;        // sum over gcd(f, delta) != 1 of alpha(f) conj(beta(f+delta))
    Complex prediction;   // a_delta * S_alpha S_beta / q^{n-1}
    double residual_scaled;  // |exact - prediction| / q^{n - 3/2}
  };
  NonCoprimePair noncoprime_correction(const ValueTable& a, const ValueTable& b, int n,
                                       const Poly& delta) const;

  struct SingleNonCoprime {
    Complex exact;       // sum over gcd(f, delta) != 1 of alpha(f)
    Complex prediction;  // a_delta * sum_{M_{n-1,q}} alpha(f*T)
    double residual_scaled;  // |exact - prediction| / q^{n-2}
  };
  SingleNonCoprime noncoprime_single(const ValueTable& a, int n, const Poly& delta) const;

  // 1 where gcd(f, modulus) = 1, indexed by monic degree-n index.
  std::vector<std::uint8_t> coprimality_mask(int n, const Poly& modulus) const;

 private:
  const Field* f_;
  const FactorSieve* sieve_;
};

// Main-term predictions from the degree-n spectrum.
Complex pair_main_term(const FourierCoefficients& a, const FourierCoefficients& b,
                       int a_delta, unsigned q);
Complex gap_main_term(const FourierCoefficients& a, const FourierCoefficients& b, int n,
                      int deg_delta, int h, unsigned q);
Complex shift_sum_main_term(const FourierCoefficients& a, const FourierCoefficients& b,
                            int n, int h);

struct HlValue {
  double value;
  double tail_bound;  // certified truncation bound
  int truncation_degree;
};

// Twin-prime singular series: product over monic irreducibles grouped by
// degree, truncated at degree D with a certified tail bound. Needs q > 2.
HlValue hl_constant(const Poly& delta, int truncation_degree);

double phi_expansion_residual(const Poly& delta);   // ||delta|/phi - 1 - a/q| * q^2
double coeff_interpretation_residual(const FactorizationFunction& a, int n,
                                     const FactorSieve& sieve);

// One row of an identity-suite report.
struct IdentityResult {
  std::string identity;  // stable descriptive name
  std::string params;
  double residual;
  double tolerance;
  bool pass;
};

struct IdentitySuiteOptions {
  double tolerance = 1e-8;
  int max_delta_degree = 2;
};

// Runs every exact identity at one (q, n) over all monic squarefree shifts of
// degree <= 2 and the standard function set.
std::vector<IdentityResult> run_identity_suite(const Field& f, int n,
                                               const IdentitySuiteOptions& opt = {});

// Character orthogonality relations (both directions) and the monic-mean
// orthogonality, over small moduli of every shape; independent of n.
std::vector<IdentityResult> run_orthogonality_suite(const Field& f, double tolerance = 1e-8);

}  // namespace fqcorr
