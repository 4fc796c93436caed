#pragma once

#include <complex>
#include <string>
#include <vector>

#include "fqcorr/hayes.hpp"

namespace fqcorr {

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// L(u, chi) = sum over monic f of chi(f) u^{deg f}. For nontrivial chi this is
// a polynomial of degree <= ell + deg M - 1; the trivial character keeps its
// rational form prod_{P|M}(1 - u^{deg P}) / (1 - qu) symbolically.
struct LPolynomial {
  bool trivial = false;
  std::vector<Complex> coeffs;        // nontrivial case, constant term 1
  std::vector<int> numerator_degrees; // trivial case: deg P over P | M
  unsigned q = 0;

  int degree() const { return (int)coeffs.size() - 1; }
  Complex eval(Complex u) const;
  std::string str() const;
};

// Unitarized spectral data of a nontrivial character: the multiplicity a of
// the root u = 1 and the inverse roots gamma_i of modulus sqrt(q), with
// eigenvalues gamma_i / sqrt(q) sorted by principal argument (ties by real
// part) for reproducible reports.
struct ThetaClass {
  int a = 0;
  std::vector<Complex> gammas;
  std::vector<Complex> eigenvalues;

  Complex trace_power(int n) const {
    Complex s = 0.0;
    for (const Complex& e : eigenvalues) s += std::pow(e, n);
    return s;
  }
};

ThetaClass theta_class(const LPolynomial& l, unsigned q, std::uint64_t char_rank = 0);

// L-polynomials and theta classes for every character of one unit group.
// Coefficients come from per-degree class counts and one group transform per
// degree, so no factorization data is needed.
class LEnsemble {
 public:
  explicit LEnsemble(const UnitGroup& g);

  const UnitGroup& group() const { return *g_; }
  const std::vector<HayesCharacter>& characters() const { return chars_; }
  const LPolynomial& lpoly(std::uint64_t rank) const { return lpolys_[rank]; }
  const ThetaClass& theta(std::uint64_t rank) const;

  // max over i of ||gamma_i| - sqrt(q)| / sqrt(q) for one character
  double rh_residual(std::uint64_t rank) const;
  // Primitive characters must place every inverse root at modulus sqrt(q);
  // imprimitive ones may also carry unit-modulus roots inherited from the
  // Euler factors of the primes they are induced through. Returns the
  // largest relative distance to the admissible set.
  double root_weight_residual(std::uint64_t rank) const;

  // |S(n, Lambda, chi) + Tr(Theta^n) q^{n/2} + a(chi)| for every nontrivial
  // character, indexed by rank (index 0 unused).
  std::vector<double> explicit_formula_residuals(int n, const FactorSieve& sieve) const;

 private:
  const UnitGroup* g_;
  std::vector<HayesCharacter> chars_;
  std::vector<LPolynomial> lpolys_;
  std::vector<ThetaClass> thetas_;
};

}  // namespace fqcorr
