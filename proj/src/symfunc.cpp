#include "fqcorr/symfunc.hpp"

#include <stdexcept>

namespace fqcorr {

FourierCoefficients fourier_coefficients(const FactorizationFunction& a, int n) {
  const CharacterTable& ct = CharacterTable::get(n);
  const auto& ps = ct.partitions();
  FourierCoefficients fc;
  fc.n = n;
  fc.values.resize(ps.size());
  fc.is_exact = a.exact();
  if (fc.is_exact) fc.exact.resize(ps.size());
  long long nfact = factorial(n);
  for (size_t l = 0; l < ps.size(); ++l) {
    if (fc.is_exact) {
      Rational sum(0);
      for (size_t m = 0; m < ps.size(); ++m) {
        Rational av = a.rational_value(ExtFactType::from_partition(ps[m].parts));
        sum += Rational(ct.class_size((int)m)) * av * Rational(ct.value((int)l, (int)m));
      }
      fc.exact[l] = sum / Rational(nfact);
      fc.values[l] = Complex(fc.exact[l].to_double(), 0.0);
    } else {
      Complex sum = 0.0;
      for (size_t m = 0; m < ps.size(); ++m) {
        Complex av = a.value(ExtFactType::from_partition(ps[m].parts));
        sum += (double)ct.class_size((int)m) * av * (double)ct.value((int)l, (int)m);
      }
      fc.values[l] = sum / (double)nfact;
    }
  }
  return fc;
}

double reconstruction_error(const FactorizationFunction& a, const FourierCoefficients& fc) {
  const CharacterTable& ct = CharacterTable::get(fc.n);
  const auto& ps = ct.partitions();
  double worst = 0.0;
  for (size_t m = 0; m < ps.size(); ++m) {
    Complex resynth = 0.0;
    for (size_t l = 0; l < ps.size(); ++l)
      resynth += fc.values[l] * (double)ct.value((int)l, (int)m);
    Complex direct = a.value(ExtFactType::from_partition(ps[m].parts));
    worst = std::max(worst, std::abs(resynth - direct));
  }
  return worst;
}

Rational schur_at_ones(const Partition& lam, int k) {
  if (k < 1) throw std::domain_error("schur_at_ones needs k >= 1");
  if (lam.length() > k) return Rational(0);
  Rational prod(1);
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j)
      prod *= Rational(lam.part(i - 1) - lam.part(j - 1) + j - i, j - i);
  return prod;
}

Complex schur_eval(const Partition& lam, const std::vector<Complex>& xs) {
  int N = (int)xs.size();
  if (N < 1) throw std::domain_error("schur_eval needs at least one value");
  int L = lam.length();
  if (L == 0) return 1.0;
  if (L > N) return 0.0;
  int hmax = lam.part(0) + L;  // largest index needed in the determinant
  std::vector<Complex> p(hmax + 1, 0.0), h(hmax + 1, 0.0);
  for (int j = 1; j <= hmax; ++j)
    for (const Complex& x : xs) p[j] += std::pow(x, j);
  h[0] = 1.0;
  for (int m = 1; m <= hmax; ++m) {
    Complex s = 0.0;
    for (int j = 1; j <= m; ++j) s += p[j] * h[m - j];
    h[m] = s / (double)m;
  }
  // det(h_{lam_i - i + j})_{1<=i,j<=L}, Gaussian elimination with pivoting
  std::vector<std::vector<Complex>> mat(L, std::vector<Complex>(L));
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      int idx = lam.part(i) - (i + 1) + (j + 1);
      mat[i][j] = (idx < 0) ? Complex(0.0) : h[idx];
    }
  Complex det = 1.0;
  for (int col = 0; col < L; ++col) {
    int piv = col;
    for (int r = col + 1; r < L; ++r)
      if (std::abs(mat[r][col]) > std::abs(mat[piv][col])) piv = r;
    if (std::abs(mat[piv][col]) == 0.0) return 0.0;
    if (piv != col) {
      std::swap(mat[piv], mat[col]);
      det = -det;
    }
    det *= mat[col][col];
    for (int r = col + 1; r < L; ++r) {
      Complex factor = mat[r][col] / mat[col][col];
      for (int c = col; c < L; ++c) mat[r][c] -= factor * mat[col][c];
    }
  }
  return det;
}

PlancherelPair plancherel_pairing(const FactorizationFunction& a,
                                  const FactorizationFunction& b, int n) {
  const CharacterTable& ct = CharacterTable::get(n);
  const auto& ps = ct.partitions();
  PlancherelPair out;
  Complex by_classes = 0.0;
  for (size_t m = 0; m < ps.size(); ++m) {
    ExtFactType t = ExtFactType::from_partition(ps[m].parts);
    by_classes += (double)ct.class_size((int)m) * a.value(t) * std::conj(b.value(t));
  }
  out.by_classes = by_classes / (double)factorial(n);
  FourierCoefficients fa = fourier_coefficients(a, n);
  FourierCoefficients fb = fourier_coefficients(b, n);
  Complex by_spec = 0.0;
  for (size_t l = 0; l < ps.size(); ++l) by_spec += fa.values[l] * std::conj(fb.values[l]);
  out.by_spectrum = by_spec;
  return out;
}

}  // namespace fqcorr
