#include "fqcorr/equidist.hpp"

#include <cmath>

namespace fqcorr {

EnsembleTest EnsembleTest::trace(int m) {
  EnsembleTest t;
  t.kind = Kind::TracePower;
  t.power = m;
  return t;
}

EnsembleTest EnsembleTest::schur_pair(Partition l1, Partition l2) {
  EnsembleTest t;
  t.kind = Kind::SchurPair;
  t.lam1 = std::move(l1);
  t.lam2 = std::move(l2);
  return t;
}

std::string EnsembleTest::id() const {
  if (kind == Kind::TracePower) return "tr^" + std::to_string(power);
  return "schur" + lam1.str() + "x" + lam2.str();
}

Complex EnsembleTest::evaluate(const ThetaClass& th) const {
  if (kind == Kind::TracePower) return th.trace_power(power);
  if (th.eigenvalues.empty())
    return (lam1.length() == 0 && lam2.length() == 0) ? 1.0 : 0.0;
  return schur_eval(lam1.conjugate(), th.eigenvalues) *
         std::conj(schur_eval(lam2.conjugate(), th.eigenvalues));
}

Complex EnsembleTest::reference(int N) const {
  if (kind == Kind::TracePower) return 0.0;
  bool match = lam1 == lam2 && lam1.part(0) <= N;
  return match ? 1.0 : 0.0;
}

EquidistEngine::EquidistEngine(const Field& f, HayesModulus r, UnitGroup::Options opt)
    : group_(f, std::move(r), opt), ens_(group_) {}

int EquidistEngine::matrix_size() const {
  return group_.modulus().ell + group_.modulus().deg_m() - 1;
}

std::vector<std::uint64_t> EquidistEngine::filtered_ranks(const EnsembleFilter& filter) const {
  std::vector<std::uint64_t> out;
  const auto& chars = ens_.characters();
  for (std::uint64_t r = 1; r < group_.size(); ++r) {
    if (filter.primitive_only && !chars[r].is_primitive) continue;
    if (filter.odd_only && !chars[r].is_odd) continue;
    out.push_back(r);
  }
  return out;
}

EnsembleStat EquidistEngine::ensemble_average(const EnsembleFilter& filter,
                                              const EnsembleTest& test) const {
  std::vector<std::uint64_t> ranks = filtered_ranks(filter);
  if (ranks.empty()) throw std::domain_error("empty character ensemble");
  Complex sum = 0.0;
  for (std::uint64_t r : ranks) sum += test.evaluate(ens_.theta(r));
  EnsembleStat st;
  st.modulus = group_.modulus().str();
  st.test_id = test.id();
  st.ensemble_size = ranks.size();
  st.average = sum / (double)ranks.size();
  st.reference = test.reference(matrix_size());
  st.normalized_residual =
      std::sqrt((double)group_.field().q()) * std::abs(st.average - st.reference);
  return st;
}

bool EquidistEngine::schur_sum_hypothesis() const {
  const HayesModulus& r = group_.modulus();
  if (r.ell >= 4 && (r.deg_m() == 0 || is_squarefree(r.modulus))) return true;
  return r.ell == 0 && r.deg_m() >= 2;
}

double EquidistEngine::schur_sum_residual(const FactorizationFunction& a,
                                          const FactorizationFunction& b, int n,
                                          const FactorSieve& sieve) const {
  ValueTable ta = make_value_table(a, sieve);
  ValueTable tb = make_value_table(b, sieve);
  std::vector<Complex> sa = group_.char_sums_all(n, ta, sieve);
  std::vector<Complex> sb = group_.char_sums_all(n, tb, sieve);
  Complex lhs = 0.0;
  double qn = std::pow((double)group_.field().q(), n);
  for (std::uint64_t r = 1; r < group_.size(); ++r) lhs += sa[r] * std::conj(sb[r]) / qn;
  lhs /= (double)group_.size();
  FourierCoefficients fa = fourier_coefficients(a, n);
  FourierCoefficients fb = fourier_coefficients(b, n);
  const auto& ps = partitions_of(n);
  Complex rhs = 0.0;
  int bound = group_.modulus().ell + group_.modulus().deg_m() - 1;
  for (size_t i = 0; i < ps.size(); ++i)
    if (ps[i].part(0) <= bound) rhs += fa.values[i] * std::conj(fb.values[i]);
  return std::sqrt((double)group_.field().q()) * std::abs(lhs - rhs);
}

double EquidistEngine::lemschur_residual(const Partition& lam, std::uint64_t chi_rank, int n,
                                         const FactorSieve& sieve) const {
  const auto& chars = ens_.characters();
  if (chi_rank == 0 || chars[chi_rank].is_quadratic())
    throw std::domain_error("spectral comparison needs chi with chi^2 nontrivial");
  FactorizationFunction f = FactorizationFunction::sn_character(lam);
  ValueTable t = make_value_table(f, sieve);
  Complex s = group_.char_sum(n, t, sieve, chars[chi_rank]);
  double qn2 = std::pow((double)group_.field().q(), n / 2.0);
  Complex pred = qn2 * ((n % 2 == 0) ? 1.0 : -1.0) *
                 schur_eval(lam.conjugate(), ens_.theta(chi_rank).eigenvalues);
  return std::abs(s - pred) / std::pow((double)group_.field().q(), (n - 1) / 2.0);
}

EnsembleStat EquidistEngine::twisted_average(ElemCode delta, const EnsembleTest& test) const {
  if (group_.modulus().deg_m() != 0)
    throw std::domain_error("twisted average needs a trivial congruence modulus");
  EnsembleFilter filter;
  filter.primitive_only = true;
  filter.odd_only = false;
  std::vector<std::uint64_t> ranks = filtered_ranks(filter);
  if (ranks.empty()) throw std::domain_error("empty character ensemble");
  const auto& chars = ens_.characters();
  Complex sum = 0.0;
  for (std::uint64_t r : ranks)
    sum += test.evaluate(ens_.theta(r)) * group_.gauss_average(chars[r], delta);
  EnsembleStat st;
  st.modulus = group_.modulus().str();
  st.test_id = test.id() + "*gauss";
  st.ensemble_size = ranks.size();
  st.average = sum / (double)ranks.size();
  st.reference = 0.0;
  st.normalized_residual =
      std::sqrt((double)group_.field().q()) * std::abs(st.average);
  return st;
}

CountReport EquidistEngine::count_checks() const {
  CountReport rep;
  rep.group_size = group_.size();
  const auto& chars = ens_.characters();
  for (std::uint64_t r = 0; r < group_.size(); ++r) {
    if (chars[r].is_primitive) ++rep.primitive;
    if (chars[r].is_odd) ++rep.odd;
    if (chars[r].is_primitive && chars[r].is_odd) ++rep.primitive_odd;
  }
  rep.quadratic = group_.quad_torsion_count();
  {
    long long via_flags = 0;
    for (std::uint64_t r = 0; r < group_.size(); ++r)
      if (chars[r].is_quadratic()) ++via_flags;
    bool ok = via_flags == rep.quadratic;
    const Field& F = group_.field();
    const Poly& M = group_.modulus().modulus;
    if (F.q() % 2 == 1 && M.degree() >= 0 && (M.degree() == 0 || is_squarefree(M))) {
      long long expect = 1;
      for (auto& fac : factor_one(M)) {
        (void)fac;
        expect *= 2;
      }
      ok = ok && rep.quadratic == expect;
    } else if (F.q() % 2 == 0) {
      double bound = std::pow((double)F.q(), (group_.modulus().ell + 1) / 2 +
                                                 group_.modulus().deg_m() / 2);
      ok = ok && (double)rep.quadratic <= bound;
    }
    rep.quadratic_crosscheck_ok = ok;
  }
  {
    double bound = 1.0 / (double)group_.field().q();
    for (auto& [P, e] : factor_one(group_.modulus().modulus)) {
      (void)e;
      bound += 1.0 / (double)(pow_u64(group_.field().q(), P.degree()) - 1);
    }
    rep.nonprimitive_bound_ok =
        (double)(rep.group_size - rep.primitive) <= (double)rep.group_size * bound + 1e-9;
  }
  rep.primitive_odd_fraction = (double)rep.primitive_odd / (double)rep.group_size;
  return rep;
}

}  // namespace fqcorr
