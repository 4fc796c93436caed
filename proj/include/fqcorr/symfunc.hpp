#pragma once

#include <complex>
#include <vector>

#include "fqcorr/arithfun.hpp"
#include "fqcorr/partitions.hpp"

namespace fqcorr {

// Spectrum of a factorization function restricted to squarefree types of
// degree n, in the basis of irreducible S_n characters. Exact when the
// function is.
struct FourierCoefficients {
  int n;
  std::vector<Complex> values;            // by partition index (reverse-lex)
  std::vector<Rational> exact;            // empty when not exact
  bool is_exact = false;

  Complex at(const Partition& lam) const { return values[partition_index(n, lam)]; }
  Rational exact_at(const Partition& lam) const { return exact[partition_index(n, lam)]; }
};

FourierCoefficients fourier_coefficients(const FactorizationFunction& a, int n);

// Resynthesize the class function from its spectrum and compare on every
// class; exact for exact functions. Returns the largest deviation.
double reconstruction_error(const FactorizationFunction& a, const FourierCoefficients& fc);

// s_lambda(1,...,1) with k ones: 0 when the partition has more than k parts,
// otherwise prod_{i<j<=k} (lam_i - lam_j + j - i)/(j - i).
Rational schur_at_ones(const Partition& lam, int k);

// s_lambda at an eigenvalue multiset, via the Jacobi-Trudi determinant in the
// complete homogeneous basis generated from power sums by Newton's identities.
Complex schur_eval(const Partition& lam, const std::vector<Complex>& xs);

struct PlancherelPair {
  Complex by_classes;   // (1/n!) sum_mu |C_mu| a(mu) conj(b(mu))
  Complex by_spectrum;  // sum_lambda a^_lambda conj(b^_lambda)
};

PlancherelPair plancherel_pairing(const FactorizationFunction& a,
                                  const FactorizationFunction& b, int n);

}  // namespace fqcorr
