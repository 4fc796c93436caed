#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "fqcorr/arithfun.hpp"
#include "fqcorr/poly.hpp"
#include "fqcorr/sieve.hpp"

namespace fqcorr {

// The congruence-and-short-interval relation on monic polynomials: A ~ B when
// A = B mod M and the first ell next-to-leading coefficients agree (missing
// ones read as 0). Only the ideal of M matters, so M is kept monic.
struct HayesModulus {
  int ell = 0;
  Poly modulus;  // monic; degree 0 means no congruence condition

  HayesModulus(int l, Poly m) : ell(l), modulus(m.monic()) {
    if (l < 0) throw std::domain_error("short-interval depth must be >= 0");
    if (m.is_zero()) throw std::domain_error("modulus must be nonzero");
  }
  int deg_m() const { return modulus.degree(); }
  std::string str() const {
    return "R(" + std::to_string(ell) + "," + modulus.str() + ")";
  }
};

// A unit class: residue mod M (coprime to M) plus the truncated-reversal
// class 1 + c_1 T + ... + c_ell T^ell. Keys pack both indexes.
using ClassKey = std::uint64_t;
inline constexpr std::int32_t kNonUnit = -1;

class UnitGroup;

struct HayesCharacter {
  const UnitGroup* group = nullptr;
  std::uint64_t rank = 0;                 // mixed-radix rank of the exponent vector
  std::vector<std::uint64_t> exponents;   // k_i mod d_i
  bool is_trivial = false;
  bool is_primitive = false;
  bool is_odd = false;
  std::uint64_t order = 1;

  bool is_quadratic() const;  // chi^2 trivial
};

// Unit group of the quotient monoid, with an explicit cyclic decomposition
// found by repeated extraction of maximal-order elements (per Sylow subgroup)
// and a complete discrete-log table.
class UnitGroup {
 public:
  struct Options {
    std::uint64_t group_cap = 2000000;
    // Paper convention: every character is odd when ell > 0 or deg M = 0.
    // The strict variant tests triviality on the embedded scalars always.
    bool strict_odd = false;
  };

  UnitGroup(const Field& f, HayesModulus r) : UnitGroup(f, std::move(r), Options()) {}
  UnitGroup(const Field& f, HayesModulus r, Options opt);

  const Field& field() const { return *f_; }
  const HayesModulus& modulus() const { return r_; }
  std::uint64_t size() const { return size_; }

  struct CyclicFactor {
    std::uint64_t order;
    ClassKey generator;
  };
  const std::vector<CyclicFactor>& basis() const { return factors_; }

  // --- classes ---
  ClassKey class_key(const Poly& monic_f) const;  // kNonUnitKey when not coprime to M
  static constexpr ClassKey kNonUnitKey = ~0ULL;
  std::int32_t rank_of_key(ClassKey k) const { return dlog_rank_[k]; }
  std::int32_t class_rank(const Poly& monic_f) const {
    ClassKey k = class_key(monic_f);
    return k == kNonUnitKey ? kNonUnit : dlog_rank_[k];
  }
  ClassKey key_of_rank(std::uint64_t rank) const { return rank_key_[rank]; }
  ClassKey mult(ClassKey a, ClassKey b) const;
  ClassKey identity_key() const;
  // Class ranks of every monic polynomial of degree n, in index order
  // (kNonUnit where gcd(f, M) != 1).
  std::vector<std::int32_t> class_ranks(int n) const;

  // --- characters ---
  std::vector<HayesCharacter> characters() const;
  HayesCharacter character(std::uint64_t rank) const;
  Complex eval(const HayesCharacter& chi, std::int32_t class_rank) const;
  Complex eval_poly(const HayesCharacter& chi, const Poly& monic_f) const;

  // S(n, alpha, chi) = sum over monic degree-n f of alpha(f) chi(f).
  Complex char_sum(int n, const ValueTable& alpha, const FactorSieve& sieve,
                   const HayesCharacter& chi) const;
  // The same sum for every character at once: the group Fourier transform of
  // the class-aggregated values, indexed by character rank.
  std::vector<Complex> char_sums_all(int n, const ValueTable& alpha,
                                     const FactorSieve& sieve) const;
  std::vector<Complex> group_dft(const std::vector<Complex>& by_class_rank) const;
  // Class-aggregated sums T_A = sum_{f in class A} alpha(f) over monic deg n.
  std::vector<Complex> class_sums(int n, const ValueTable& alpha,
                                  const FactorSieve& sieve) const;

  // chi_c(f) = chi(f(cT)/c^deg f); requires deg M = 0 and ell >= 1.
  HayesCharacter twist(const HayesCharacter& chi, ElemCode c) const;

  // psi_chi(x) = chi(T^ell + x), an additive character for deg M = 0.
  Complex induced_additive_character(const HayesCharacter& chi, ElemCode x) const;
  // A(chi, delta) = sum_{c in F_q^x} psi_chi(delta c^ell) / sqrt(q).
  Complex gauss_average(const HayesCharacter& chi, ElemCode delta) const;

  long long quad_torsion_count() const;

  // Embedded scalars (unit classes of the constants, Dirichlet component).
  std::vector<ClassKey> scalar_keys() const;

 private:
  const Field* f_;
  HayesModulus r_;
  Options opt_;
  int deg_m_;
  std::uint64_t q_ell_, key_count_, size_;
  std::vector<std::int32_t> dlog_rank_;  // key -> rank (kNonUnit for non-units)
  std::vector<ClassKey> rank_key_;
  std::vector<CyclicFactor> factors_;
  std::vector<std::uint64_t> strides_;
  std::vector<std::vector<Complex>> factor_roots_;  // e^{2 pi i t / d_i}

  // kernels used by the primitivity test
  std::vector<std::vector<std::int32_t>> prime_kernels_;  // per prime P | M
  std::vector<std::int32_t> infinity_kernel_;             // ell -> ell-1

  void build_basis();
  void build_dlog();
  void build_kernels();
  bool eval_trivial_on(const std::vector<std::uint64_t>& exps,
                       const std::vector<std::int32_t>& ranks) const;
  std::uint64_t char_order(const std::vector<std::uint64_t>& exps) const;
  std::vector<std::uint64_t> unrank_exponents(std::uint64_t rank) const;
};

}  // namespace fqcorr
