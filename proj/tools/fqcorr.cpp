// Batch driver: every verification and experiment as a subcommand with
// reproducible, machine-readable output. Reports are byte-identical for a
// fixed config, independent of --threads; progress notes go to stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <string>

#include "fqcorr/correlation.hpp"
#include "fqcorr/equidist.hpp"
#include "fqcorr/lfunc.hpp"
#include "fqcorr/parallel.hpp"
#include "fqcorr/report.hpp"

using namespace fqcorr;
using nlohmann::json;

namespace {

struct GlobalOpts {
  int threads = 0;
  std::string out_dir = ".";
  std::string cache_dir;
  std::uint64_t sieve_cap = 100000000ULL;
  std::uint64_t group_cap = 2000000ULL;
  bool strict_odd = false;

  UnitGroup::Options group_options() const {
    UnitGroup::Options o;
    o.group_cap = group_cap;
    o.strict_odd = strict_odd;
    return o;
  }
};

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir + "/" + name;
}

std::shared_ptr<FactorSieve> get_sieve(const Field& f, int maxdeg, const GlobalOpts& g) {
  if (!g.cache_dir.empty()) {
    std::string path = join_path(g.cache_dir, FactorSieve::cache_file_name(f, maxdeg));
    auto loaded = FactorSieve::load_cache(f, maxdeg, path);
    if (loaded) {
      std::fprintf(stderr, "[fqcorr] sieve q=%u n=%d loaded from cache\n", f.q(), maxdeg);
      return std::shared_ptr<FactorSieve>(loaded.release());
    }
    auto built = std::make_shared<FactorSieve>(f, maxdeg, g.sieve_cap);
    built->save_cache(path);
    return built;
  }
  return std::make_shared<FactorSieve>(f, maxdeg, g.sieve_cap);
}

json base_report(const std::string& command, const std::map<std::string, std::string>& opts) {
  json r;
  r["schema_version"] = kSchemaVersion;
  r["tool"] = "fqcorr";
  r["command"] = command;
  r["config"] = opts;
  r["config_hash"] = config_hash(opts);
  return r;
}

json complex_json(Complex v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

void write_report(const json& r, const std::string& path) {
  write_text_file(path, r.dump(1) + "\n");
  std::fprintf(stderr, "[fqcorr] wrote %s\n", path.c_str());
}

std::string qlist_str(const std::vector<unsigned>& qs) {
  std::string s;
  for (size_t i = 0; i < qs.size(); ++i) s += (i ? "," : "") + std::to_string(qs[i]);
  return s;
}

// --- verify ---------------------------------------------------------------

int run_verify(const GlobalOpts& g, const std::string& suite, std::vector<unsigned> qs,
               int n_max, int ell_budget) {
  std::map<std::string, std::string> opts = {{"suite", suite},
                                             {"q", qlist_str(qs)},
                                             {"n", std::to_string(n_max)},
                                             {"ell", std::to_string(ell_budget)}};
  json report = base_report("verify", opts);
  json rows = json::array();
  bool all_pass = true;
  auto push = [&](const std::string& s, const IdentityResult& r) {
    rows.push_back(json{{"suite", s},
                        {"check", r.identity},
                        {"params", r.params},
                        {"residual", r.residual},
                        {"tolerance", r.tolerance},
                        {"pass", r.pass}});
    all_pass = all_pass && r.pass;
  };

  for (unsigned q : qs) {
    Field f = Field::of_order(q);
    if (suite == "identities" || suite == "all") {
      for (int n = 2; n <= n_max; ++n)
        for (auto& r : run_identity_suite(f, n)) push("identities", r);
      for (auto& r : run_orthogonality_suite(f)) push("identities", r);
    }
    if (suite == "rh" || suite == "all") {
      for (int m = 0; m <= ell_budget; ++m) {
        for (int ell = (m == 0 ? 1 : 0); ell + m <= ell_budget; ++ell) {
          UnitGroup group(f, HayesModulus(ell, first_squarefree_monic(f, m)), g.group_options());
          LEnsemble ens(group);
          std::string params = group.modulus().str();
          double worst_w = 0.0, worst_prim = 0.0;
          bool prim_deg_ok = true, prim_odd_a0 = true;
          for (std::uint64_t r = 1; r < group.size(); ++r) {
            worst_w = std::max(worst_w, ens.root_weight_residual(r));
            const auto& chi = ens.characters()[r];
            if (chi.is_primitive) {
              worst_prim = std::max(worst_prim, ens.rh_residual(r));
              prim_deg_ok = prim_deg_ok && ens.lpoly(r).degree() == ell + m - 1;
              if (chi.is_odd) prim_odd_a0 = prim_odd_a0 && ens.theta(r).a == 0;
            }
          }
          push("rh", {"root_weights", params, worst_w, 1e-6, worst_w <= 1e-6});
          push("rh",
               {"primitive_root_modulus", params, worst_prim, 1e-6, worst_prim <= 1e-6});
          push("rh", {"primitive_degree", params, prim_deg_ok ? 0.0 : 1.0, 0.5, prim_deg_ok});
          push("rh", {"primitive_odd_no_unit_root", params, prim_odd_a0 ? 0.0 : 1.0, 0.5,
                      prim_odd_a0});
          int nn = std::min(n_max, 5);
          auto sieve = get_sieve(f, nn, g);
          for (int n = 1; n <= nn; ++n) {
            auto res = ens.explicit_formula_residuals(n, *sieve);
            double worst = 0.0;
            for (std::uint64_t r = 1; r < group.size(); ++r) worst = std::max(worst, res[r]);
            double tol = 1e-6 * std::pow((double)q, n / 2.0);
            push("rh", {"explicit_formula", params + " n=" + std::to_string(n), worst, tol,
                        worst <= tol});
          }
        }
      }
    }
    if (suite == "means" || suite == "all") {
      auto sieve = get_sieve(f, std::min(n_max, 6), g);
      for (int n = 1; n <= std::min(n_max, 6); ++n) {
        auto lam = mean(FactorizationFunction::von_mangoldt(), n, Domain::Monic, *sieve);
        bool ok = lam.exact && *lam.exact == Rational(1);
        push("means", {"mean_von_mangoldt", "n=" + std::to_string(n), ok ? 0.0 : 1.0, 0.5, ok});
        if (n >= 2) {
          auto mu = mean(FactorizationFunction::mobius(), n, Domain::Monic, *sieve);
          bool ok2 = mu.exact && *mu.exact == Rational(0);
          push("means", {"mean_mobius", "n=" + std::to_string(n), ok2 ? 0.0 : 1.0, 0.5, ok2});
        }
        for (int k = 2; k <= 5; ++k) {
          auto dk = mean(FactorizationFunction::divisor(k), n, Domain::Monic, *sieve);
          bool ok3 = dk.exact && *dk.exact == Rational(binomial(n + k - 1, n));
          push("means", {"mean_divisor_" + std::to_string(k), "n=" + std::to_string(n),
                         ok3 ? 0.0 : 1.0, 0.5, ok3});
        }
      }
    }
  }
  if (suite == "fourier" || suite == "all") {
    for (int n = 2; n <= 8; ++n) {
      bool ok = true;
      auto fmu = fourier_coefficients(FactorizationFunction::mobius(), n);
      auto flam = fourier_coefficients(FactorizationFunction::von_mangoldt(), n);
      for (const auto& lam : partitions_of(n)) {
        Rational mexp = lam.length() == n ? Rational(n % 2 ? -1 : 1) : Rational(0);
        ok = ok && fmu.exact_at(lam) == mexp;
        Rational lexp(0);
        if (lam.is_hook()) lexp = Rational((n - lam.part(0)) % 2 == 0 ? 1 : -1);
        ok = ok && flam.exact_at(lam) == lexp;
      }
      for (int k = 2; k <= 5; ++k) {
        auto fd = fourier_coefficients(FactorizationFunction::divisor(k), n);
        for (const auto& lam : partitions_of(n))
          ok = ok && fd.exact_at(lam) == schur_at_ones(lam, k);
        if (n >= 3)
          ok = ok && fd.exact_at(Partition({n - 1, 1})) ==
                         Rational(binomial(n + k - 2, k - 2) * (n - 1));
      }
      push("fourier",
           {"spectrum_closed_forms", "n=" + std::to_string(n), ok ? 0.0 : 1.0, 0.5, ok});
    }
  }

  report["rows"] = rows;
  report["all_pass"] = all_pass;
  write_report(report,
               join_path(g.out_dir, "verify_" + report["config_hash"].get<std::string>() + ".json"));
  return all_pass ? 0 : 1;
}

// --- cov --------------------------------------------------------------------

int run_cov(const GlobalOpts& g, const std::string& alpha_s, const std::string& beta_s, int n,
            const std::string& delta_s, std::vector<unsigned> qs, double exponent, int gap_h,
            int sum_deg) {
  std::map<std::string, std::string> opts = {
      {"alpha", alpha_s},  {"beta", beta_s},
      {"n", std::to_string(n)}, {"delta", delta_s},
      {"q", qlist_str(qs)}, {"exponent", format_double(exponent)},
      {"gap_h", std::to_string(gap_h)}, {"sum_deg", std::to_string(sum_deg)}};
  json report = base_report("cov", opts);
  json rows = json::array();
  std::string hash = report["config_hash"].get<std::string>();
  CsvWriter csv(join_path(g.out_dir, "cov_" + hash + ".csv"));
  csv.row({"q", "delta", "re_cov_A", "im_cov_A", "re_cov_M", "im_cov_M", "re_main", "im_main",
           "residual_A", "normalized_A"});

  FactorizationFunction alpha = parse_function(alpha_s);
  FactorizationFunction beta = parse_function(beta_s);
  auto fa = fourier_coefficients(alpha, n);
  auto fb = fourier_coefficients(beta, n);

  for (unsigned q : qs) {
    Field f = Field::of_order(q);
    auto sieve = get_sieve(f, n, g);
    CorrelationEngine engine(f, *sieve);
    ValueTable ta = make_value_table(alpha, *sieve);
    ValueTable tb = make_value_table(beta, *sieve);

    std::vector<Poly> deltas;
    if (delta_s.rfind("all-squarefree-deg:", 0) == 0) {
      int d = std::stoi(delta_s.substr(19));
      std::uint64_t count = pow_u64(q, d);
      if (count > 100000)
        throw ResourceError("squarefree sweep over " + std::to_string(count) + " shifts");
      for (std::uint64_t i = 0; i < count; ++i) {
        Poly m = monic_from_index(f, d, i);
        if (is_squarefree(m)) deltas.push_back(m);
      }
    } else {
      deltas.push_back(Poly::parse(f, delta_s));
    }

    for (const Poly& delta : deltas) {
      ShiftSpec spec(n, delta);
      Complex cov_a = engine.cov_all_direct(ta, tb, n, delta);
      Complex cov_a2 = engine.cov_all_via_scalars(ta, tb, n, delta);
      Complex cov_m = engine.cov_monic(ta, tb, n, delta);
      Complex main = pair_main_term(fa, fb, spec.a_delta, q);
      double resid = std::abs(cov_a - main);
      double normalized = resid * std::pow((double)q, exponent);
      json row = {{"q", q},
                  {"delta", delta.str()},
                  {"a_delta", spec.a_delta},
                  {"squarefree", spec.squarefree},
                  {"cov_A", complex_json(cov_a)},
                  {"cov_A_scalar_route", complex_json(cov_a2)},
                  {"route_gap", std::abs(cov_a - cov_a2)},
                  {"cov_M", complex_json(cov_m)},
                  {"main_term", complex_json(main)},
                  {"check", "pair_correlation_main_term"},
                  {"residual_A", resid},
                  {"normalized_A", normalized}};
      if ((delta.degree() >= n - 4 && delta.degree() <= n - 2) || !spec.squarefree)
        row["outside_main_term_hypothesis"] = true;
      if (gap_h >= 0) {
        Complex gap = engine.cov_gap(ta, tb, n, delta, gap_h);
        Complex gap_spec = engine.cov_gap_spectral(ta, tb, n, delta, gap_h);
        Complex gmain = gap_main_term(fa, fb, n, delta.degree(), gap_h, q);
        row["gap_cov"] = complex_json(gap);
        row["gap_spectral_gap"] = std::abs(gap - gap_spec);
        row["gap_main_term"] = complex_json(gmain);
        row["gap_residual"] = std::abs(gap - gmain);
      }
      rows.push_back(row);
      csv.row({std::to_string(q), delta.str(), format_double(cov_a.real()),
               format_double(cov_a.imag()), format_double(cov_m.real()),
               format_double(cov_m.imag()), format_double(main.real()),
               format_double(main.imag()), format_double(resid), format_double(normalized)});
    }

    if (sum_deg >= 0) {
      // sum of monic covariances over every shift of one degree, checked
      // against the progression ladder and the spectrum prediction
      Complex total = 0.0;
      std::uint64_t count = pow_u64(q, sum_deg);
      for (unsigned lead = 1; lead < q; ++lead)
        for (std::uint64_t i = 0; i < count; ++i) {
          Poly low = poly_from_index(f, i);
          std::vector<ElemCode> c(sum_deg + 1, 0);
          for (int j = 0; j < sum_deg; ++j) c[j] = low.coeff(j);
          c[sum_deg] = (ElemCode)lead;
          total += engine.cov_monic(ta, tb, n, Poly::from_coeffs(f, c));
        }
      Complex ladder = engine.cov_gap(ta, tb, n, Poly::one(f), sum_deg + 1) /
                           std::pow((double)q, sum_deg + 1) -
                       engine.cov_gap(ta, tb, n, Poly::one(f), sum_deg) /
                           std::pow((double)q, sum_deg);
      Complex main = shift_sum_main_term(fa, fb, n, sum_deg);
      rows.push_back(json{{"q", q},
                          {"check", "shift_sum_ladder"},
                          {"h", sum_deg},
                          {"shift_sum", complex_json(total)},
                          {"ladder_gap", std::abs(total - ladder)},
                          {"main_term", complex_json(main)},
                          {"residual", std::abs(total - main)},
                          {"normalized", std::abs(total - main) * std::sqrt((double)q)}});
    }
  }
  report["rows"] = rows;
  write_report(report, join_path(g.out_dir, "cov_" + hash + ".json"));
  return 0;
}

// --- lfunc ------------------------------------------------------------------

int run_lfunc(const GlobalOpts& g, std::vector<unsigned> qs, int ell, const std::string& m_s,
              int n_max) {
  std::map<std::string, std::string> opts = {{"q", qlist_str(qs)},
                                             {"ell", std::to_string(ell)},
                                             {"M", m_s},
                                             {"n", std::to_string(n_max)}};
  json report = base_report("lfunc", opts);
  std::string hash = report["config_hash"].get<std::string>();
  json rows = json::array();
  CsvWriter zeros(join_path(g.out_dir, "lfunc_zeros_" + hash + ".csv"));
  CsvWriter chars(join_path(g.out_dir, "lfunc_chars_" + hash + ".csv"));
  chars.row({"q", "char_id", "exponent_vector", "order", "primitive", "odd"});

  for (unsigned q : qs) {
    Field f = Field::of_order(q);
    Poly M = Poly::parse(f, m_s);
    UnitGroup group(f, HayesModulus(ell, M), g.group_options());
    LEnsemble ens(group);
    auto sieve = get_sieve(f, n_max, g);
    std::vector<std::vector<double>> efr;
    for (int n = 1; n <= n_max; ++n) efr.push_back(ens.explicit_formula_residuals(n, *sieve));
    for (std::uint64_t r = 0; r < group.size(); ++r) {
      const auto& chi = ens.characters()[r];
      std::string expvec;
      for (size_t i = 0; i < chi.exponents.size(); ++i)
        expvec += (i ? ";" : "") + std::to_string(chi.exponents[i]);
      chars.row({std::to_string(q), std::to_string(r), expvec, std::to_string(chi.order),
                 chi.is_primitive ? "1" : "0", chi.is_odd ? "1" : "0"});
      if (r == 0) continue;
      const ThetaClass& th = ens.theta(r);
      std::vector<std::string> cells = {std::to_string(q), std::to_string(r),
                                        std::to_string(th.a)};
      for (const Complex& e : th.eigenvalues) {
        cells.push_back(format_double(e.real()));
        cells.push_back(format_double(e.imag()));
      }
      zeros.row(cells);
      double worst_ef = 0.0;
      for (int n = 1; n <= n_max; ++n)
        worst_ef = std::max(worst_ef, efr[n - 1][r] / std::pow((double)q, n / 2.0));
      rows.push_back(json{{"q", q},
                          {"char_id", r},
                          {"a", th.a},
                          {"deg_L", ens.lpoly(r).degree()},
                          {"primitive", chi.is_primitive},
                          {"odd", chi.is_odd},
                          {"rh_residual", ens.rh_residual(r)},
                          {"root_weight_residual", ens.root_weight_residual(r)},
                          {"explicit_formula_scaled", worst_ef}});
    }
  }
  report["rows"] = rows;
  write_report(report, join_path(g.out_dir, "lfunc_" + hash + ".json"));
  return 0;
}

// --- fourier ------------------------------------------------------------------

int run_fourier(const GlobalOpts& g, const std::string& alpha_s, int n) {
  std::map<std::string, std::string> opts = {{"alpha", alpha_s}, {"n", std::to_string(n)}};
  json report = base_report("fourier", opts);
  std::string hash = report["config_hash"].get<std::string>();
  FactorizationFunction alpha = parse_function(alpha_s);
  auto fc = fourier_coefficients(alpha, n);
  CsvWriter csv(join_path(g.out_dir, "fourier_" + hash + ".csv"));
  csv.row({"partition", "re", "im"});
  json rows = json::array();
  const auto& ps = partitions_of(n);
  for (size_t i = 0; i < ps.size(); ++i) {
    csv.row(
        {ps[i].str(), format_double(fc.values[i].real()), format_double(fc.values[i].imag())});
    json row = {{"partition", ps[i].str()}, {"value", complex_json(fc.values[i])}};
    if (fc.is_exact) row["exact"] = fc.exact[i].str();
    rows.push_back(row);
  }
  report["rows"] = rows;
  report["reconstruction_error"] = reconstruction_error(alpha, fc);
  write_report(report, join_path(g.out_dir, "fourier_" + hash + ".json"));
  return 0;
}

// --- equidist -------------------------------------------------------------------

int run_equidist(const GlobalOpts& g, std::vector<unsigned> qs, int ell, const std::string& m_s,
                 int max_n) {
  std::map<std::string, std::string> opts = {{"q", qlist_str(qs)},
                                             {"ell", std::to_string(ell)},
                                             {"M", m_s},
                                             {"max_n", std::to_string(max_n)}};
  json report = base_report("equidist", opts);
  std::string hash = report["config_hash"].get<std::string>();
  CsvWriter csv(join_path(g.out_dir, "equidist_" + hash + ".csv"));
  csv.row({"q", "ensemble_size", "test_id", "re_avg", "im_avg", "normalized_residual"});
  json rows = json::array();

  for (unsigned q : qs) {
    Field f = Field::of_order(q);
    Poly M = Poly::parse(f, m_s);
    EquidistEngine eng(f, HayesModulus(ell, M), g.group_options());
    EnsembleFilter filter;
    std::vector<EnsembleTest> tests = {EnsembleTest::trace(1), EnsembleTest::trace(2)};
    for (int n = 2; n <= max_n; ++n)
      for (const auto& l1 : partitions_of(n))
        for (const auto& l2 : partitions_of(n)) tests.push_back(EnsembleTest::schur_pair(l1, l2));
    auto emit = [&](const EnsembleStat& st, bool hypothesis_ok) {
      csv.row({std::to_string(q), std::to_string(st.ensemble_size), st.test_id,
               format_double(st.average.real()), format_double(st.average.imag()),
               format_double(st.normalized_residual)});
      json row = {{"q", q},
                  {"modulus", st.modulus},
                  {"test_id", st.test_id},
                  {"ensemble_size", st.ensemble_size},
                  {"avg", complex_json(st.average)},
                  {"reference", complex_json(st.reference)},
                  {"normalized_residual", st.normalized_residual}};
      if (!hypothesis_ok) row["outside_stated_hypothesis"] = true;
      rows.push_back(row);
    };
    bool hyp =
        (ell >= 4 && (M.degree() == 0 || is_squarefree(M))) || (ell == 0 && M.degree() >= 2);
    for (const auto& t : tests) emit(eng.ensemble_average(filter, t), hyp);
    if (M.degree() == 0 && ell >= 1) {
      bool twist_hyp = ell >= 4 || (ell == 3 && f.p() != 2 && f.p() != 5);
      for (unsigned d = 1; d < std::min(q, 4u); ++d) {
        auto st = eng.twisted_average((ElemCode)d, EnsembleTest::trace(1));
        st.test_id += "@delta=" + f.elem_str((ElemCode)d);
        emit(st, twist_hyp);
      }
      double worst_gauss = 0.0;
      for (std::uint64_t r : eng.filtered_ranks(EnsembleFilter{true, false}))
        for (unsigned d = 1; d < q; ++d)
          worst_gauss = std::max(worst_gauss,
                                 std::abs(eng.group().gauss_average(
                                     eng.ensemble().characters()[r], (ElemCode)d)));
      rows.push_back(json{{"q", q},
                          {"check", "gauss_sum_bound"},
                          {"worst", worst_gauss},
                          {"bound", ell},
                          {"pass", worst_gauss <= ell + 1e-9}});
    }
    auto census = eng.count_checks();
    rows.push_back(json{{"q", q},
                        {"check", "character_census"},
                        {"group_size", census.group_size},
                        {"primitive", census.primitive},
                        {"odd", census.odd},
                        {"primitive_odd", census.primitive_odd},
                        {"quadratic", census.quadratic},
                        {"nonprimitive_bound_ok", census.nonprimitive_bound_ok},
                        {"quadratic_crosscheck_ok", census.quadratic_crosscheck_ok},
                        {"primitive_odd_fraction", census.primitive_odd_fraction}});
  }
  report["rows"] = rows;
  write_report(report, join_path(g.out_dir, "equidist_" + hash + ".json"));
  return 0;
}

// --- hl ---------------------------------------------------------------------

int run_hl(const GlobalOpts& g, const std::string& delta_s, std::vector<unsigned> qs, int D) {
  std::map<std::string, std::string> opts = {
      {"delta", delta_s}, {"q", qlist_str(qs)}, {"D", std::to_string(D)}};
  json report = base_report("hl", opts);
  std::string hash = report["config_hash"].get<std::string>();
  CsvWriter csv(join_path(g.out_dir, "hl_" + hash + ".csv"));
  csv.row({"q", "delta", "value", "tail_bound", "D", "a_delta", "second_order_dev_q2"});
  json rows = json::array();
  for (unsigned q : qs) {
    Field f = Field::of_order(q);
    Poly delta = Poly::parse(f, delta_s);
    auto v = hl_constant(delta, D);
    int ad = distinct_roots_in_base(delta);
    double dev = std::abs(v.value - 1.0 - (ad - 1.0) / (double)q) * q * q;
    rows.push_back(json{{"q", q},
                        {"delta", delta.str()},
                        {"check", "singular_series_expansion"},
                        {"value", v.value},
                        {"tail_bound", v.tail_bound},
                        {"D", v.truncation_degree},
                        {"a_delta", ad},
                        {"second_order_dev_q2", dev}});
    csv.row({std::to_string(q), delta.str(), format_double(v.value),
             format_double(v.tail_bound), std::to_string(v.truncation_degree),
             std::to_string(ad), format_double(dev)});
  }
  report["rows"] = rows;
  write_report(report, join_path(g.out_dir, "hl_" + hash + ".json"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-computation and verification engine for shifted correlations over F_q[T]"};
  app.set_config("--config", "", "key-value config file");
  GlobalOpts g;
  app.add_option("--threads", g.threads, "worker threads (0 = hardware)");
  app.add_option("--out", g.out_dir, "output directory");
  app.add_option("--cache-dir", g.cache_dir,
                 "sieve cache directory (env FQCORR_CACHE_DIR overrides)");
  app.add_option("--sieve-cap", g.sieve_cap, "max sieve entries");
  app.add_option("--group-cap", g.group_cap, "max unit-group order");
  app.add_flag("--strict-odd", g.strict_odd,
               "decide parity on the embedded scalars even at positive depth");
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::string suite = "all", alpha = "Lambda", beta = "Lambda", delta = "1", modulus = "1";
  std::vector<unsigned> qs = {3, 5};
  int n = 4, ell = 4, n_max = 4, D = 12, gap_h = -1, sum_deg = -1;
  double exponent = 1.5;

  CLI::App* verify = app.add_subcommand("verify", "run exact-identity and spectral suites");
  verify->add_option("--suite", suite, "identities|rh|means|fourier|all");
  verify->add_option("--q", qs, "field orders")->delimiter(',');
  verify->add_option("--n", n, "max degree for identity/mean suites");
  verify->add_option("--ell", ell, "total modulus budget for the rh suite");

  CLI::App* cov = app.add_subcommand("cov", "shifted covariances and main terms");
  cov->add_option("--alpha", alpha, "first function");
  cov->add_option("--beta", beta, "second function");
  cov->add_option("--n", n, "degree")->required();
  cov->add_option("--delta", delta, "shift polynomial or all-squarefree-deg:D");
  cov->add_option("--q", qs, "field orders")->delimiter(',');
  cov->add_option("--exponent", exponent, "normalization exponent s in residual*q^s");
  cov->add_option("--gap-h", gap_h, "also report progression covariances at this h");
  cov->add_option("--sum-shifts-deg", sum_deg, "also report the shift-sum at this degree");

  CLI::App* lf = app.add_subcommand("lfunc", "L-polynomials, spectra, explicit formula");
  lf->add_option("--q", qs, "field orders")->delimiter(',');
  lf->add_option("--ell", ell, "short-interval depth");
  lf->add_option("--M", modulus, "congruence modulus (polynomial)");
  lf->add_option("--n", n_max, "explicit-formula degrees to check");

  CLI::App* fo = app.add_subcommand("fourier", "spectrum of a factorization function");
  fo->add_option("--alpha", alpha, "function");
  fo->add_option("--n", n, "degree")->required();

  CLI::App* eq = app.add_subcommand("equidist", "character-family statistics");
  eq->add_option("--q", qs, "field orders")->delimiter(',');
  eq->add_option("--ell", ell, "short-interval depth");
  eq->add_option("--M", modulus, "congruence modulus (polynomial)");
  eq->add_option("--max-n", n_max, "largest partition size for test pairs");

  CLI::App* hl = app.add_subcommand("hl", "twin-prime singular series");
  hl->add_option("--delta", delta, "shift polynomial");
  hl->add_option("--q", qs, "field orders")->delimiter(',');
  hl->add_option("--D", D, "truncation degree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (const char* env = std::getenv("FQCORR_CACHE_DIR")) g.cache_dir = env;
  if (g.threads > 0) set_thread_count(g.threads);

  try {
    if (verify->parsed()) return run_verify(g, suite, qs, n, ell);
    if (cov->parsed()) return run_cov(g, alpha, beta, n, delta, qs, exponent, gap_h, sum_deg);
    if (lf->parsed()) return run_lfunc(g, qs, ell, modulus, n_max);
    if (fo->parsed()) return run_fourier(g, alpha, n);
    if (eq->parsed()) return run_equidist(g, qs, ell, modulus, n_max);
    if (hl->parsed()) return run_hl(g, delta, qs, D);
  } catch (const ResourceError& e) {
    std::fprintf(stderr, "resource cap: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
