#include "fqcorr/arithfun.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fqcorr {

FactorizationFunction FactorizationFunction::mobius() {
  FactorizationFunction a;
  a.kind_ = Kind::Mobius;
  a.name_ = "mu";
  return a;
}

FactorizationFunction FactorizationFunction::von_mangoldt() {
  FactorizationFunction a;
  a.kind_ = Kind::VonMangoldt;
  a.name_ = "Lambda";
  return a;
}

FactorizationFunction FactorizationFunction::divisor(int k) {
  if (k < 2) throw std::domain_error("divisor function needs k >= 2");
  FactorizationFunction a;
  a.kind_ = Kind::DivisorK;
  a.k_ = k;
  a.name_ = "d" + std::to_string(k);
  return a;
}

FactorizationFunction FactorizationFunction::sn_character(Partition lam) {
  FactorizationFunction a;
  a.kind_ = Kind::SnCharacter;
  a.fixed_degree_ = lam.n();
  a.name_ = "chi" + lam.str();
  a.lambda_ = std::move(lam);
  return a;
}

FactorizationFunction FactorizationFunction::indicator(ExtFactType nu) {
  FactorizationFunction a;
  a.kind_ = Kind::IndicatorEft;
  a.fixed_degree_ = nu.total_degree();
  a.name_ = "ind" + nu.str();
  a.nu_ = std::move(nu);
  return a;
}

FactorizationFunction FactorizationFunction::user_table(
    int degree, std::map<ExtFactType, Complex> values, std::map<ExtFactType, Rational> exact) {
  FactorizationFunction a;
  a.kind_ = Kind::UserTable;
  a.fixed_degree_ = degree;
  a.name_ = "table_n" + std::to_string(degree);
  a.table_ = std::move(values);
  a.exact_table_ = std::move(exact);
  a.exact_ = a.exact_table_.size() == a.table_.size();
  for (auto& [t, v] : a.table_)
    if (t.total_degree() != degree)
      throw std::domain_error("user table entry " + t.str() + " has wrong total degree");
  return a;
}

FactorizationFunction FactorizationFunction::load_user_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open user table " + path);
  std::map<ExtFactType, Complex> values;
  std::map<ExtFactType, Rational> exact;
  int degree = -1;
  std::string line;
  auto trim = [](std::string s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    size_t e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    std::string l = trim(line);
    if (l.empty() || l[0] == '#') continue;
    auto mid = l.find(";");
    auto a1 = l.find(":=");
    if (mid == std::string::npos || a1 == std::string::npos || a1 > mid)
      throw std::invalid_argument("bad user table line: " + line);
    auto a2 = l.find(":=", mid);
    if (a2 == std::string::npos) throw std::invalid_argument("bad user table line: " + line);
    std::string eft_s = trim(l.substr(a1 + 2, mid - a1 - 2));
    std::string val_s = trim(l.substr(a2 + 2));
    ExtFactType t = ExtFactType::parse(eft_s);
    if (degree == -1) degree = t.total_degree();
    if (t.total_degree() != degree)
      throw std::invalid_argument("user table mixes degrees: " + line);
    if (!val_s.empty() && val_s[0] == '(') {
      auto comma = val_s.find(',');
      auto close = val_s.find(')');
      if (comma == std::string::npos || close == std::string::npos)
        throw std::invalid_argument("bad complex value: " + line);
      double re = std::stod(val_s.substr(1, comma - 1));
      double im = std::stod(val_s.substr(comma + 1, close - comma - 1));
      values[t] = Complex(re, im);
    } else if (val_s.find('.') != std::string::npos || val_s.find('e') != std::string::npos) {
      values[t] = Complex(std::stod(val_s), 0.0);
    } else {
      Rational r = Rational::parse(val_s);
      values[t] = Complex(r.to_double(), 0.0);
      exact[t] = r;
    }
  }
  if (degree == -1) throw std::invalid_argument("empty user table " + path);
  return user_table(degree, std::move(values), std::move(exact));
}

Rational FactorizationFunction::rational_value(const ExtFactType& t) const {
  switch (kind_) {
    case Kind::Mobius: {
      if (!t.is_squarefree()) return Rational(0);
      return Rational((t.parts.size() % 2 == 0) ? 1 : -1);
    }
    case Kind::VonMangoldt: {
      if (t.parts.size() != 1) return Rational(0);
      return Rational(t.parts[0].first);  // deg P for f = P^k
    }
    case Kind::DivisorK: {
      long long v = 1;
      for (auto& [d, e] : t.parts) v *= binomial(e + k_ - 1, k_ - 1);
      return Rational(v);
    }
    case Kind::SnCharacter: {
      if (!t.is_squarefree() || t.total_degree() != fixed_degree_) return Rational(0);
      return Rational(fqcorr::sn_character(lambda_, Partition(t.as_partition())));
    }
    case Kind::IndicatorEft:
      return Rational(t == nu_ ? 1 : 0);
    case Kind::UserTable: {
      if (t.total_degree() != fixed_degree_)
        throw std::domain_error("user table evaluated at degree " +
                                std::to_string(t.total_degree()) + ", table is for degree " +
                                std::to_string(fixed_degree_));
      auto it = exact_table_.find(t);
      if (it != exact_table_.end()) return it->second;
      if (table_.count(t))
        throw std::domain_error("user table value for " + t.str() + " is not rational");
      // Off-support types default to 0 (the defining function is not unique there).
      std::fprintf(stderr, "warning: user table has no entry for %s; using 0\n",
                   t.str().c_str());
      return Rational(0);
    }
  }
  throw std::logic_error("unreachable");
}

Complex FactorizationFunction::value(const ExtFactType& t) const {
  if (kind_ == Kind::UserTable) {
    if (t.total_degree() != fixed_degree_)
      throw std::domain_error("user table evaluated at wrong degree");
    auto it = table_.find(t);
    if (it != table_.end()) return it->second;
    std::fprintf(stderr, "warning: user table has no entry for %s; using 0\n", t.str().c_str());
    return Complex(0.0, 0.0);
  }
  return Complex(rational_value(t).to_double(), 0.0);
}

ValueTable make_value_table(const FactorizationFunction& a, const FactorSieve& sieve) {
  ValueTable tab;
  std::uint32_t nt = sieve.num_types();
  tab.values.resize(nt);
  bool exact = a.exact();
  if (exact) tab.exact.emplace(nt);
  for (std::uint32_t i = 0; i < nt; ++i) {
    const ExtFactType& t = sieve.eft(i);
    if (a.fixed_degree() >= 0 && t.total_degree() != a.fixed_degree()) {
      tab.values[i] = 0.0;
      if (exact) (*tab.exact)[i] = Rational(0);
      continue;
    }
    tab.values[i] = a.value(t);
    if (exact) (*tab.exact)[i] = a.rational_value(t);
  }
  return tab;
}

Complex evaluate(const FactorizationFunction& a, const Poly& f, const FactorSieve* sieve) {
  if (f.is_zero()) throw std::domain_error("factorization function of zero polynomial");
  if (a.fixed_degree() >= 0 && a.kind() == FactorizationFunction::Kind::UserTable &&
      f.degree() != a.fixed_degree())
    throw std::domain_error("user table evaluated at wrong degree");
  const ExtFactType t =
      (sieve && f.degree() <= sieve->max_degree()) ? sieve->eft_of(f) : eft_of_poly(f);
  if (a.fixed_degree() >= 0 && t.total_degree() != a.fixed_degree()) return 0.0;
  return a.value(t);
}

MeanValue mean(const FactorizationFunction& a, int n, Domain domain, const FactorSieve& sieve) {
  const auto& counts = sieve.type_counts(n);
  long long denom_monic = (long long)pow_u64(sieve.field().q(), n);
  MeanValue out;
  Complex sum = 0.0;
  for (std::uint32_t i = 0; i < counts.size(); ++i)
    if (counts[i]) sum += (double)counts[i] * a.value(sieve.eft(i));
  // Means over all degree-n polynomials agree with the monic mean (evenness):
  // the (q-1) leading coefficients replicate each monic orbit.
  out.value = sum / (double)denom_monic;
  if (a.exact()) {
    Rational r(0);
    for (std::uint32_t i = 0; i < counts.size(); ++i)
      if (counts[i]) r += Rational(counts[i]) * a.rational_value(sieve.eft(i));
    out.exact = r / Rational(denom_monic);
  }
  (void)domain;
  return out;
}

MeanValue shifted_mean_with_linear_factor(const FactorizationFunction& a, int n,
                                          const FactorSieve& sieve) {
  if (n < 1) throw std::domain_error("shifted mean needs n >= 1");
  if (n > sieve.max_degree()) throw std::domain_error("sieve bound too small");
  const Field& F = sieve.field();
  // f in A_{n-1,q}: alpha((c*g)*T) = alpha(g*T) for monic g, so enumerate the
  // monic g*T types; multiplying g by T appends one linear factor.
  Rational rsum(0);
  Complex csum = 0.0;
  for (MonicEnumerator en(F, n - 1); !en.done(); en.next()) {
    std::uint64_t gt_idx = en.index() * F.q();  // index of g*T (coefficients shift up)
    std::uint32_t id = sieve.eft_id(n, gt_idx);
    csum += a.value(sieve.eft(id));
    if (a.exact()) rsum += a.rational_value(sieve.eft(id));
  }
  long long denom = (long long)pow_u64(F.q(), n - 1);
  MeanValue out;
  out.value = csum / (double)denom;
  if (a.exact()) out.exact = rsum / Rational(denom);
  return out;
}

double max_abs(const FactorizationFunction& a, int n, const FactorSieve& sieve) {
  const auto& counts = sieve.type_counts(n);
  double m = 0.0;
  for (std::uint32_t i = 0; i < counts.size(); ++i)
    if (counts[i]) m = std::max(m, std::abs(a.value(sieve.eft(i))));
  return m;
}

FactorizationFunction parse_function(const std::string& spec) {
  if (spec == "Lambda" || spec == "lambda") return FactorizationFunction::von_mangoldt();
  if (spec == "mu") return FactorizationFunction::mobius();
  if (spec.size() >= 2 && spec[0] == 'd') {
    bool digits = true;
    for (size_t i = 1; i < spec.size(); ++i)
      if (!std::isdigit((unsigned char)spec[i])) digits = false;
    if (digits) return FactorizationFunction::divisor(std::stoi(spec.substr(1)));
  }
  if (spec.rfind("chi:", 0) == 0)
    return FactorizationFunction::sn_character(Partition::parse(spec.substr(4)));
  if (spec.rfind("ind:", 0) == 0)
    return FactorizationFunction::indicator(ExtFactType::parse(spec.substr(4)));
  if (spec.rfind("table:", 0) == 0)
    return FactorizationFunction::load_user_table(spec.substr(6));
  throw std::invalid_argument("unknown function spec: " + spec);
}

}  // namespace fqcorr
