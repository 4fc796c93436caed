#include "fqcorr/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fqcorr {

Complex LPolynomial::eval(Complex u) const {
  if (trivial) {
    Complex num = 1.0;
    for (int d : numerator_degrees) num *= 1.0 - std::pow(u, d);
    return num / (1.0 - (double)q * u);
  }
  Complex v = 0.0;
  for (size_t i = coeffs.size(); i-- > 0;) v = v * u + coeffs[i];
  return v;
}

std::string LPolynomial::str() const {
  if (trivial) {
    std::string s;
    for (int d : numerator_degrees) s += "(1-u^" + std::to_string(d) + ")";
    if (s.empty()) s = "1";
    return s + "/(1-" + std::to_string(q) + "u)";
  }
  char buf[64];
  std::string s;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", coeffs[i].real(), coeffs[i].imag());
    if (i) s += " + ";
    s += buf;
    if (i >= 1) s += "u" + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return s.empty() ? "0" : s;
}

ThetaClass theta_class(const LPolynomial& l, unsigned q, std::uint64_t char_rank) {
  if (l.trivial) throw std::domain_error("theta class of the trivial character");
  ThetaClass th;
  // trim negligible leading coefficients to the effective degree
  std::vector<Complex> c = l.coeffs;
  double maxc = 0.0;
  for (auto& v : c) maxc = std::max(maxc, std::abs(v));
  while (c.size() > 1 && std::abs(c.back()) <= 1e-9 * maxc) c.pop_back();

  // deflate u = 1 while L(1) vanishes
  double csum_abs = 0.0;
  for (auto& v : c) csum_abs += std::abs(v);
  while (c.size() > 1) {
    Complex at1 = 0.0;
    for (auto& v : c) at1 += v;
    if (std::abs(at1) > 1e-6 * std::max(1.0, csum_abs)) break;
    // divide by (1 - u): quotient q_j = c_j + q_{j-1}
    std::vector<Complex> quot(c.size() - 1);
    Complex prev = 0.0;
    for (size_t j = 0; j + 1 < c.size(); ++j) {
      quot[j] = c[j] + prev;
      prev = quot[j];
    }
    c = std::move(quot);
    ++th.a;
    csum_abs = 0.0;
    for (auto& v : c) csum_abs += std::abs(v);
  }
  int m = (int)c.size() - 1;
  if (m > 0) {
    // Durand-Kerner on z^m L(1/z), whose roots are the gammas; with
    // c_0 = 1 its descending-power coefficients are the c_j themselves
    std::vector<Complex> r(m + 1);
    for (int j = 0; j <= m; ++j) r[j] = c[j] / c[0];
    double radius = std::sqrt((double)q);
    std::vector<Complex> z(m);
    for (int k = 0; k < m; ++k) {
      double ang = 2.0 * std::numbers::pi * k / m + 0.4;
      z[k] = radius * Complex(std::cos(ang), std::sin(ang));
    }
    auto eval_r = [&](Complex x) {
      Complex v = 0.0;
      for (int j = 0; j <= m; ++j) v = v * x + r[j];
      return v;
    };
    for (int iter = 0; iter < 2000; ++iter) {
      double worst = 0.0;
      for (int k = 0; k < m; ++k) {
        Complex denom = 1.0;
        for (int j = 0; j < m; ++j)
          if (j != k) denom *= z[k] - z[j];
        Complex step = eval_r(z[k]) / denom;
        z[k] -= step;
        worst = std::max(worst, std::abs(step));
      }
      if (worst < 1e-13 * radius) break;
    }
    for (int k = 0; k < m; ++k) {
      Complex lval = l.eval(1.0 / z[k]);
      if (std::abs(lval) > 1e-8 * std::max(1.0, maxc))
        throw NumericError("root extraction failed for character rank " +
                           std::to_string(char_rank));
    }
    th.gammas = z;
  }
  th.eigenvalues.resize(th.gammas.size());
  double sq = std::sqrt((double)q);
  for (size_t i = 0; i < th.gammas.size(); ++i) th.eigenvalues[i] = th.gammas[i] / sq;
  std::sort(th.eigenvalues.begin(), th.eigenvalues.end(), [](Complex a, Complex b) {
    double aa = std::arg(a), ab = std::arg(b);
    if (aa != ab) return aa < ab;
    return a.real() < b.real();
  });
  std::sort(th.gammas.begin(), th.gammas.end(), [](Complex a, Complex b) {
    double aa = std::arg(a), ab = std::arg(b);
    if (aa != ab) return aa < ab;
    return a.real() < b.real();
  });
  return th;
}

LEnsemble::LEnsemble(const UnitGroup& g) : g_(&g) {
  chars_ = g.characters();
  const HayesModulus& r = g.modulus();
  int dmax = r.ell + r.deg_m();  // coefficients 0 .. dmax-1
  std::uint64_t n_chars = g.size();

  std::vector<std::vector<Complex>> coeff_cols;
  for (int i = 0; i < std::max(dmax, 1); ++i) {
    std::vector<std::int32_t> ranks = g.class_ranks(i);
    std::vector<Complex> counts(g.size(), 0.0);
    for (std::int32_t rk : ranks)
      if (rk != kNonUnit) counts[(std::uint64_t)rk] += 1.0;
    coeff_cols.push_back(g.group_dft(counts));
  }

  lpolys_.resize(n_chars);
  thetas_.resize(n_chars);
  for (std::uint64_t rank = 0; rank < n_chars; ++rank) {
    LPolynomial& L = lpolys_[rank];
    L.q = g.field().q();
    if (rank == 0) {
      L.trivial = true;
      if (r.deg_m() > 0)
        for (auto& [P, e] : factor_one(r.modulus)) {
          (void)e;
          L.numerator_degrees.push_back(P.degree());
        }
      continue;
    }
    L.coeffs.resize(std::max(dmax, 1));
    for (int i = 0; i < std::max(dmax, 1); ++i) L.coeffs[i] = coeff_cols[i][rank];
    while (L.coeffs.size() > 1 && std::abs(L.coeffs.back()) < 1e-9) L.coeffs.pop_back();
    thetas_[rank] = theta_class(L, L.q, rank);
  }
}

const ThetaClass& LEnsemble::theta(std::uint64_t rank) const {
  if (rank == 0) throw std::domain_error("theta class of the trivial character");
  return thetas_[rank];
}

double LEnsemble::rh_residual(std::uint64_t rank) const {
  double sq = std::sqrt((double)g_->field().q());
  double worst = 0.0;
  for (const Complex& gam : thetas_[rank].gammas)
    worst = std::max(worst, std::abs(std::abs(gam) - sq) / sq);
  return worst;
}

double LEnsemble::root_weight_residual(std::uint64_t rank) const {
  double sq = std::sqrt((double)g_->field().q());
  bool primitive = chars_[rank].is_primitive;
  double worst = 0.0;
  for (const Complex& gam : thetas_[rank].gammas) {
    double d = std::abs(std::abs(gam) - sq) / sq;
    if (!primitive) d = std::min(d, std::abs(std::abs(gam) - 1.0));
    worst = std::max(worst, d);
  }
  return worst;
}

std::vector<double> LEnsemble::explicit_formula_residuals(int n, const FactorSieve& sieve) const {
  ValueTable lam = make_value_table(FactorizationFunction::von_mangoldt(), sieve);
  std::vector<Complex> sums = g_->char_sums_all(n, lam, sieve);
  std::vector<double> res(g_->size(), 0.0);
  double qn2 = std::pow((double)g_->field().q(), n / 2.0);
  for (std::uint64_t rank = 1; rank < g_->size(); ++rank) {
    Complex lhs = sums[rank];
    Complex rhs = thetas_[rank].trace_power(n) * qn2 + (double)thetas_[rank].a;
    res[rank] = std::abs(lhs + rhs);
  }
  return res;
}

}  // namespace fqcorr
