#include <algorithm>
#include <cmath>
#include <numeric>

#include "fqcorr/correlation.hpp"
#include "fqcorr/parallel.hpp"
#include "index_shift.hpp"

namespace fqcorr {

namespace {

using Matrix = std::vector<std::vector<Complex>>;

struct BatchedCov {
  const Field& F;
  const FactorSieve& sieve;
  const std::vector<ValueTable>& tabs;
  int n;

  // covariance matrix over monic f (optionally restricted by mask) of
  // (alpha_i(f), beta_j(f + shift))
  Matrix cov(const Poly& shift, const std::vector<std::uint8_t>* mask = nullptr) const {
    size_t k = tabs.size();
    IndexShift add(F, shift, n);
    std::uint64_t count = pow_u64(F.q(), n);
    std::uint64_t nblocks = (count + kBlockSize - 1) / kBlockSize;
    struct Part {
      std::vector<Complex> cross, va, vb;
      long long cnt = 0;
    };
    std::vector<Part> parts(nblocks);
    parallel_blocks(count, [&](std::uint64_t blk, std::uint64_t lo, std::uint64_t hi) {
      Part p;
      p.cross.assign(k * k, 0.0);
      p.va.assign(k, 0.0);
      p.vb.assign(k, 0.0);
      MonicEnumerator en(F, n, lo);
      std::vector<Complex> av(k), bv(k);
      for (std::uint64_t i = lo; i < hi; ++i, en.next()) {
        if (mask && !(*mask)[i]) continue;
        std::uint32_t ida = sieve.eft_id(n, i);
        std::uint32_t idb = sieve.eft_id(n, add.apply(i, en.low()));
        for (size_t t = 0; t < k; ++t) {
          av[t] = tabs[t].values[ida];
          bv[t] = tabs[t].values[idb];
          p.va[t] += av[t];
          p.vb[t] += bv[t];
        }
        for (size_t ia = 0; ia < k; ++ia)
          for (size_t ib = 0; ib < k; ++ib) p.cross[ia * k + ib] += av[ia] * std::conj(bv[ib]);
        p.cnt++;
      }
      parts[blk] = std::move(p);
    });
    Part tot;
    tot.cross.assign(k * k, 0.0);
    tot.va.assign(k, 0.0);
    tot.vb.assign(k, 0.0);
    for (auto& p : parts) {
      if (p.cross.empty()) continue;
      for (size_t i = 0; i < k * k; ++i) tot.cross[i] += p.cross[i];
      for (size_t i = 0; i < k; ++i) {
        tot.va[i] += p.va[i];
        tot.vb[i] += p.vb[i];
      }
      tot.cnt += p.cnt;
    }
    Matrix m(k, std::vector<Complex>(k));
    double inv = 1.0 / (double)tot.cnt;
    for (size_t ia = 0; ia < k; ++ia)
      for (size_t ib = 0; ib < k; ++ib)
        m[ia][ib] = tot.cross[ia * k + ib] * inv - (tot.va[ia] * inv) * std::conj(tot.vb[ib] * inv);
    return m;
  }

};

double rel_residual(Complex lhs, Complex rhs) {
  double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return std::abs(lhs - rhs) / scale;
}

double matrix_residual(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) worst = std::max(worst, rel_residual(a[i][j], b[i][j]));
  return worst;
}

std::vector<Poly> monic_squarefree_shifts(const Field& F, int max_deg) {
  std::vector<Poly> out;
  out.push_back(Poly::one(F));
  for (int d = 1; d <= max_deg; ++d) {
    std::uint64_t count = pow_u64(F.q(), d);
    for (std::uint64_t i = 0; i < count; ++i) {
      Poly m = monic_from_index(F, d, i);
      if (is_squarefree(m)) out.push_back(m);
    }
  }
  return out;
}

}  // namespace

std::vector<IdentityResult> run_identity_suite(const Field& F, int n,
                                               const IdentitySuiteOptions& opt) {
  std::vector<IdentityResult> results;
  auto add = [&](const std::string& id, const std::string& params, double residual,
                 double tol) {
    results.push_back({id, params, residual, tol, residual <= tol});
  };

  FactorSieve sieve(F, n);
  std::vector<FactorizationFunction> funcs = {
      FactorizationFunction::von_mangoldt(), FactorizationFunction::mobius(),
      FactorizationFunction::divisor(2), FactorizationFunction::divisor(3)};
  if (n >= 2) funcs.push_back(FactorizationFunction::sn_character(Partition({n - 1, 1})));
  std::vector<ValueTable> tabs;
  for (auto& fn : funcs) tabs.push_back(make_value_table(fn, sieve));
  size_t k = tabs.size();

  BatchedCov bc{F, sieve, tabs, n};
  CorrelationEngine engine(F, sieve);
  const double tol = opt.tolerance;

  std::vector<Poly> deltas = monic_squarefree_shifts(F, std::min(opt.max_delta_degree, n - 1));

  for (const Poly& delta : deltas) {
    std::string dstr = "n=" + std::to_string(n) + " delta=" + delta.str();
    int dd = delta.degree();

    // non-monic average vs scalar multiples of the shift
    {
      Matrix via_scalars(k, std::vector<Complex>(k, 0.0));
      for (unsigned c = 1; c < F.q(); ++c) {
        Matrix mc = bc.cov(delta.scaled((ElemCode)c));
        for (size_t i = 0; i < k; ++i)
          for (size_t j = 0; j < k; ++j) via_scalars[i][j] += mc[i][j] / (double)(F.q() - 1);
      }
      Matrix direct(k, std::vector<Complex>(k));
      for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) direct[i][j] = engine.cov_all_direct(tabs[i], tabs[j], n, delta);
      add("nonmonic_vs_scalar_shifts", dstr, matrix_residual(direct, via_scalars), tol);
    }

    // substitution invariance of monic covariances
    {
      std::vector<std::pair<ElemCode, ElemCode>> subs = {{1, 1},
                                                         {(ElemCode)(F.q() - 1), 1}};
      if (F.q() >= 5) subs.push_back({2, 1});
      Matrix base = bc.cov(delta);
      double worst_plain = 0.0, worst_flip = 0.0;
      for (auto& [c1, c2] : subs) {
        Poly subst = delta.substitute_linear(c1, c2).scaled(F.inv(F.pow(c1, (unsigned)n)));
        Matrix m1 = bc.cov(subst);
        worst_plain = std::max(worst_plain, matrix_residual(base, m1));
        Matrix m2 = bc.cov(-subst);
        for (size_t i = 0; i < k; ++i)
          worst_flip = std::max(worst_flip, rel_residual(base[i][i], m2[i][i]));
      }
      add("shift_substitution", dstr, worst_plain, tol);
      add("shift_substitution_negated", dstr, worst_flip, tol);
    }

    // monic average equals the non-monic one for binomial-power shifts
    // (squarefree forces delta = a(T+b)^k with k in {0,1})
    if (dd <= 1) {
      int kk = dd;
      bool branch1 = std::gcd((unsigned)(n - kk), F.q() - 1) == 1;
      bool branch2 = F.p() > 2 && std::gcd((unsigned)(n - kk), (F.q() - 1) / 2) == 1;
      for (unsigned a = 1; branch1 || branch2; ++a) {
        if (a >= std::min(F.q(), 3u)) break;
        Poly scaled = delta.scaled((ElemCode)a);
        Matrix covm = bc.cov(scaled);
        double worst = 0.0;
        for (size_t i = 0; i < k; ++i) {
          for (size_t j = 0; j < k; ++j) {
            if (!branch1 && i != j) continue;  // second branch needs alpha = conj(beta)
            Complex cova = engine.cov_all_direct(tabs[i], tabs[j], n, scaled);
            worst = std::max(worst, rel_residual(cova, covm[i][j]));
          }
        }
        add("monic_equals_nonmonic_binomial_shift",
            dstr + " scale=" + F.elem_str((ElemCode)a) +
                (branch1 ? " [coprime]" : " [half-coprime]"),
            worst, tol);
      }
    }

    // progression covariances: spectral identity and the difference identity
    std::vector<std::uint8_t> mask = engine.coprimality_mask(n, delta);
    std::vector<Matrix> gap_cov(n + 1);
    for (int h = dd; h <= n; ++h) {
      UnitGroup group(F, HayesModulus(n - h, delta));
      std::vector<std::vector<Complex>> T(k);
      {
        std::vector<std::int32_t> ranks = group.class_ranks(n);
        for (size_t t = 0; t < k; ++t) T[t].assign(group.size(), 0.0);
        for (std::uint64_t i = 0; i < ranks.size(); ++i) {
          if (ranks[i] == kNonUnit) continue;
          std::uint32_t id = sieve.eft_id(n, i);
          for (size_t t = 0; t < k; ++t) T[t][(std::uint64_t)ranks[i]] += tabs[t].values[id];
        }
      }
      double gsize = (double)group.size();
      Matrix lhs(k, std::vector<Complex>(k));
      for (size_t ia = 0; ia < k; ++ia)
        for (size_t ib = 0; ib < k; ++ib) {
          Complex sab = 0.0, sa = 0.0, sb = 0.0;
          for (std::uint64_t r = 0; r < group.size(); ++r) {
            sab += T[ia][r] * std::conj(T[ib][r]);
            sa += T[ia][r];
            sb += T[ib][r];
          }
          lhs[ia][ib] = sab / gsize - (sa / gsize) * std::conj(sb / gsize);
        }
      gap_cov[h] = lhs;

      std::vector<std::vector<Complex>> S(k);
      for (size_t t = 0; t < k; ++t) S[t] = group.group_dft(T[t]);
      Matrix rhs(k, std::vector<Complex>(k));
      for (size_t ia = 0; ia < k; ++ia)
        for (size_t ib = 0; ib < k; ++ib) {
          Complex sum = 0.0;
          for (std::uint64_t r = 1; r < group.size(); ++r) sum += S[ia][r] * std::conj(S[ib][r]);
          rhs[ia][ib] = sum / (gsize * gsize);
        }
      add("progression_cov_spectral", dstr + " h=" + std::to_string(h),
          matrix_residual(lhs, rhs), tol);

      // the coprime-mean identity with the distinguished shift class
      if (h == dd) {
        Matrix pm(k, std::vector<Complex>(k));
        {
          IndexShift addidx(F, delta, n);
          std::vector<Complex> cross(k * k, 0.0);
          long long kept = 0;
          MonicEnumerator en(F, n);
          std::uint64_t count = pow_u64(F.q(), n);
          for (std::uint64_t i = 0; i < count; ++i, en.next()) {
            if (!mask[i]) continue;
            std::uint32_t ida = sieve.eft_id(n, i);
            std::uint32_t idb = sieve.eft_id(n, addidx.apply(i, en.low()));
            for (size_t ia = 0; ia < k; ++ia)
              for (size_t ib = 0; ib < k; ++ib)
                cross[ia * k + ib] += tabs[ia].values[ida] * std::conj(tabs[ib].values[idb]);
            ++kept;
          }
          for (size_t ia = 0; ia < k; ++ia)
            for (size_t ib = 0; ib < k; ++ib) pm[ia][ib] = cross[ia * k + ib] / (double)kept;
        }
        int m = n - dd;
        std::uint64_t gkey =
            group.identity_key() + (std::uint64_t)delta.lead() * pow_u64(F.q(), m - 1);
        std::int32_t grank = group.rank_of_key(gkey);
        Matrix rhs2(k, std::vector<Complex>(k, 0.0));
        for (std::uint64_t r = 0; r < group.size(); ++r) {
          Complex chg = group.eval(group.character(r), grank);
          for (size_t ia = 0; ia < k; ++ia)
            for (size_t ib = 0; ib < k; ++ib)
              rhs2[ia][ib] += chg * S[ia][r] * std::conj(S[ib][r]);
        }
        for (auto& row : rhs2)
          for (auto& v : row) v /= gsize * gsize;
        add("coprime_mean_spectral", dstr, matrix_residual(pm, rhs2), tol);
        add("shift_class_relation", dstr,
            (double)engine.shift_class_relation_violations(n, delta), 0.5);
      }

      // scaling symmetry of character sums (trivial congruence modulus only)
      if (dd == 0 && h == 0) {
        double worst = 0.0;
        for (unsigned c = 2; c < F.q(); ++c) {
          for (std::uint64_t r = 0; r < group.size(); ++r) {
            HayesCharacter tw = group.twist(group.character(r), (ElemCode)c);
            for (size_t t = 0; t < k; ++t)
              worst = std::max(worst, rel_residual(S[t][r], S[t][tw.rank]));
          }
        }
        add("char_sum_scaling_symmetry", dstr, worst, tol);
      }
    }

    for (int h = dd + 1; h <= n; ++h) {
      double qq = (double)F.q();
      Matrix lhs(k, std::vector<Complex>(k));
      for (size_t ia = 0; ia < k; ++ia)
        for (size_t ib = 0; ib < k; ++ib)
          lhs[ia][ib] = gap_cov[h][ia][ib] / std::pow(qq, h - dd) -
                        gap_cov[h - 1][ia][ib] / std::pow(qq, h - 1 - dd);
      Matrix rhs(k, std::vector<Complex>(k, 0.0));
      int ddeg = h - dd - 1;
      std::uint64_t dcount = pow_u64(F.q(), ddeg);
      for (unsigned lead = 1; lead < F.q(); ++lead) {
        for (std::uint64_t di = 0; di < dcount; ++di) {
          Poly small = poly_from_index(F, di);
          std::vector<ElemCode> dc(ddeg + 1, 0);
          for (int j = 0; j < ddeg; ++j) dc[j] = small.coeff(j);
          dc[ddeg] = (ElemCode)lead;
          Poly dpoly = Poly::from_coeffs(F, dc);
          Matrix mc = bc.cov(dpoly * delta, &mask);
          for (size_t ia = 0; ia < k; ++ia)
            for (size_t ib = 0; ib < k; ++ib) rhs[ia][ib] += mc[ia][ib];
        }
      }
      add("progression_cov_difference", dstr + " h=" + std::to_string(h),
          matrix_residual(lhs, rhs), tol);
    }
  }

  return results;
}

std::vector<IdentityResult> run_orthogonality_suite(const Field& F, double tolerance) {
  std::vector<IdentityResult> results;
  auto add = [&](const std::string& id, const std::string& params, double residual) {
    results.push_back({id, params, residual, tolerance, residual <= tolerance});
  };

  std::vector<Poly> moduli = {Poly::one(F), first_squarefree_monic(F, 1),
                              first_squarefree_monic(F, 2)};
  for (const Poly& M : moduli) {
    for (int ell = 0; ell + M.degree() <= 4; ++ell) {
      if (ell == 0 && M.degree() == 0) continue;
      UnitGroup g(F, HayesModulus(ell, M));
      std::string params = g.modulus().str();
      std::uint64_t gs = g.size();
      int rep_deg = ell + M.degree();

      // representative set: monic of degree ell + deg M coprime to M
      std::vector<std::int32_t> reps;
      {
        std::vector<std::int32_t> ranks = g.class_ranks(rep_deg);
        std::vector<char> seen(gs, 0);
        for (auto r : ranks) {
          if (r == kNonUnit) continue;
          reps.push_back(r);
          seen[(std::uint64_t)r]++;
        }
        bool exact_cover = reps.size() == gs;
        for (auto s : seen) exact_cover = exact_cover && s == 1;
        add("representative_set_cover", params, exact_cover ? 0.0 : 1.0);
      }

      std::vector<HayesCharacter> chars = g.characters();
      std::vector<std::vector<Complex>> V(gs, std::vector<Complex>(gs));
      for (std::uint64_t c = 0; c < gs; ++c)
        for (std::uint64_t a = 0; a < gs; ++a) V[c][a] = g.eval(chars[c], (std::int32_t)a);

      double worst1 = 0.0;
      for (std::uint64_t c1 = 0; c1 < gs; ++c1)
        for (std::uint64_t c2 = 0; c2 < gs; ++c2) {
          Complex s = 0.0;
          for (std::int32_t a : reps) s += V[c1][a] * std::conj(V[c2][a]);
          s /= (double)gs;
          worst1 = std::max(worst1, std::abs(s - (c1 == c2 ? 1.0 : 0.0)));
        }
      add("char_orthogonality", params, worst1);

      double worst2 = 0.0;
      for (std::uint64_t a = 0; a < gs; ++a)
        for (std::uint64_t b = 0; b < gs; ++b) {
          Complex s = 0.0;
          for (std::uint64_t c = 0; c < gs; ++c) s += V[c][a] * std::conj(V[c][b]);
          s /= (double)gs;
          worst2 = std::max(worst2, std::abs(s - (a == b ? 1.0 : 0.0)));
        }
      add("class_orthogonality", params, worst2);

      // mean of each nontrivial character over monic degree-n polynomials
      {
        int nn = std::max(rep_deg, 1);
        std::vector<std::int32_t> ranks = g.class_ranks(nn);
        std::vector<Complex> counts(gs, 0.0);
        for (auto r : ranks)
          if (r != kNonUnit) counts[(std::uint64_t)r] += 1.0;
        std::vector<Complex> sums = g.group_dft(counts);
        double denom = std::pow((double)F.q(), nn - M.degree()) * (double)euler_phi(M);
        double worst = std::abs(sums[0] / denom - 1.0);
        for (std::uint64_t r = 1; r < gs; ++r)
          worst = std::max(worst, std::abs(sums[r]) / denom);
        add("monic_mean_orthogonality", params + " n=" + std::to_string(nn), worst);
      }
    }
  }
  return results;
}

}  // namespace fqcorr
