#pragma once

#include "fqcorr/lfunc.hpp"
#include "fqcorr/symfunc.hpp"

namespace fqcorr {

struct EnsembleFilter {
  bool primitive_only = true;
  bool odd_only = true;
};

// Class-function test evaluated on the unitarized spectra: either Tr(Theta^m)
// or a product s_{lam1'}(Theta) conj(s_{lam2'}(Theta)).
struct EnsembleTest {
  enum class Kind { TracePower, SchurPair };
  Kind kind;
  int power = 1;
  Partition lam1, lam2;

  static EnsembleTest trace(int m);
  static EnsembleTest schur_pair(Partition l1, Partition l2);
  std::string id() const;
  Complex evaluate(const ThetaClass& th) const;
  // Haar-measure reference on U(N): 0 for trace powers, the equal-partition
  // indicator (with lam_1 <= N) for Schur pairs.
  Complex reference(int N) const;
};

struct EnsembleStat {
  std::string modulus;
  std::string test_id;
  std::uint64_t ensemble_size = 0;
  Complex average;
  Complex reference;
  double normalized_residual = 0.0;  // sqrt(q) * |average - reference|
};

struct CountReport {
  std::uint64_t group_size = 0;
  std::uint64_t primitive = 0;
  std::uint64_t odd = 0;
  std::uint64_t primitive_odd = 0;
  long long quadratic = 0;
  bool nonprimitive_bound_ok = false;  // #nonprim <= |G| (sum_P 1/phi(P) + 1/q)
  bool quadratic_crosscheck_ok = false;
  double primitive_odd_fraction = 0.0;
};

// Character-family statistics over one modulus: spectra, filtered averages,
// and the exact count checks.
class EquidistEngine {
 public:
  EquidistEngine(const Field& f, HayesModulus r)
      : EquidistEngine(f, std::move(r), UnitGroup::Options()) {}
  EquidistEngine(const Field& f, HayesModulus r, UnitGroup::Options opt);

  const UnitGroup& group() const { return group_; }
  const LEnsemble& ensemble() const { return ens_; }
  int matrix_size() const;  // ell + deg M - 1

  std::vector<std::uint64_t> filtered_ranks(const EnsembleFilter& filter) const;
  EnsembleStat ensemble_average(const EnsembleFilter& filter, const EnsembleTest& test) const;

  // sqrt(q) * | (1/|G|) sum_{chi != chi0} q^{-n} S(n,a,chi) conj(S(n,b,chi))
  //            - sum_{lam_1 <= ell + deg M - 1} a^_lam conj(b^_lam) |
  double schur_sum_residual(const FactorizationFunction& a, const FactorizationFunction& b,
                            int n, const FactorSieve& sieve) const;
  bool schur_sum_hypothesis() const;  // (ell >= 4, M squarefree) or (ell = 0, deg M >= 2)

  // |S(n, chi_lam, chi) - q^{n/2} (-1)^n s_{lam'}(Theta_chi)| / q^{(n-1)/2};
  // requires chi nontrivial with chi^2 nontrivial.
  double lemschur_residual(const Partition& lam, std::uint64_t chi_rank, int n,
                           const FactorSieve& sieve) const;

  // Gauss-sum-twisted average over primitive characters (deg M = 0 only):
  // sqrt(q) * |(1/#prim) sum test(Theta_chi) psi_delta(chi)|.
  EnsembleStat twisted_average(ElemCode delta, const EnsembleTest& test) const;

  CountReport count_checks() const;

 private:
  UnitGroup group_;
  LEnsemble ens_;
};

}  // namespace fqcorr
