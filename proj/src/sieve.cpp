#include "fqcorr/sieve.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace fqcorr {

void ExtFactType::canonicalize() { std::sort(parts.begin(), parts.end()); }

int ExtFactType::total_degree() const {
  int n = 0;
  for (auto& [d, e] : parts) n += d * e;
  return n;
}

bool ExtFactType::is_squarefree() const {
  for (auto& [d, e] : parts)
    if (e > 1) return false;
  return true;
}

std::vector<int> ExtFactType::as_partition() const {
  std::vector<int> p;
  for (auto& [d, e] : parts)
    for (int i = 0; i < e; ++i) p.push_back(d);
  std::sort(p.rbegin(), p.rend());
  return p;
}

ExtFactType ExtFactType::from_partition(const std::vector<int>& parts) {
  ExtFactType t;
  for (int d : parts) t.parts.push_back({d, 1});
  t.canonicalize();
  return t;
}

std::string ExtFactType::str() const {
  if (parts.empty()) return "()";
  std::string s;
  for (auto& [d, e] : parts)
    s += "(" + std::to_string(d) + "," + std::to_string(e) + ")";
  return s;
}

ExtFactType ExtFactType::parse(const std::string& s) {
  ExtFactType t;
  size_t pos = 0;
  auto skip = [&] { while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos; };
  skip();
  if (s.substr(pos) == "()") return t;
  while (pos < s.size()) {
    skip();
    if (pos >= s.size()) break;
    if (s[pos] != '(') throw std::invalid_argument("bad factorization type: " + s);
    size_t close = s.find(')', pos);
    size_t comma = s.find(',', pos);
    if (close == std::string::npos || comma == std::string::npos || comma > close)
      throw std::invalid_argument("bad factorization type: " + s);
    int d = std::stoi(s.substr(pos + 1, comma - pos - 1));
    int e = std::stoi(s.substr(comma + 1, close - comma - 1));
    if (d < 1 || e < 1) throw std::invalid_argument("bad factorization type: " + s);
    t.parts.push_back({d, e});
    pos = close + 1;
  }
  t.canonicalize();
  return t;
}

std::vector<std::pair<Poly, int>> factor_one(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("factor_one of zero polynomial");
  const Field& F = f.field();
  Poly m = f.monic();
  std::vector<std::pair<Poly, int>> factors;
  for (int d = 1; m.degree() >= 1 && d <= m.degree() / 2; ++d) {
    std::uint64_t count = pow_u64(F.q(), d);
    for (std::uint64_t idx = 0; idx < count && m.degree() >= 1; ++idx) {
      Poly g = monic_from_index(F, d, idx);
      if (d > m.degree() / 2 && !g.divides(m)) continue;
      int e = 0;
      while (g.divides(m)) {
        m = m / g;
        ++e;
      }
      if (e > 0) factors.push_back({g, e});
    }
  }
  if (m.degree() >= 1) factors.push_back({m, 1});
  return factors;
}

ExtFactType eft_of_poly(const Poly& f) {
  ExtFactType t;
  for (auto& [p, e] : factor_one(f)) t.parts.push_back({p.degree(), e});
  t.canonicalize();
  return t;
}

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("is_squarefree of zero polynomial");
  // gcd(f, f') constant; f' = 0 forces a p-th power for deg f >= 1.
  return gcd(f, f.derivative()).degree() <= 0;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) throw std::domain_error("is_irreducible of constant polynomial");
  const Field& F = f.field();
  Poly m = f.monic();
  for (int d = 1; d <= m.degree() / 2; ++d) {
    std::uint64_t count = pow_u64(F.q(), d);
    for (std::uint64_t idx = 0; idx < count; ++idx)
      if (monic_from_index(F, d, idx).divides(m)) return false;
  }
  return true;
}

int distinct_roots_in_base(const Poly& delta) {
  if (delta.is_zero()) throw std::domain_error("distinct_roots_in_base of zero polynomial");
  const Field& F = delta.field();
  int direct = 0;
  for (unsigned a = 0; a < F.q(); ++a)
    if (delta.eval((ElemCode)a) == 0) ++direct;
  std::vector<ElemCode> frob(F.q() + 1, 0);
  frob[1] = F.neg(1);
  frob[F.q()] = 1;
  Poly tq_minus_t = Poly::from_coeffs(F, std::move(frob));
  int via_gcd = gcd(delta, tq_minus_t).degree();
  if (via_gcd < 0) via_gcd = 0;
  if (direct != via_gcd) throw std::logic_error("distinct root count mismatch between methods");
  return direct;
}

long long euler_phi(const Poly& m) {
  if (m.is_zero()) throw std::domain_error("euler_phi of zero polynomial");
  long long phi = 1;
  unsigned q = m.field().q();
  for (auto& [p, e] : factor_one(m)) {
    long long pd = (long long)pow_u64(q, p.degree());
    for (int i = 1; i < e; ++i) phi *= pd;
    phi *= pd - 1;
  }
  return phi;
}

long long gauss_irreducible_count(unsigned q, int n) {
  long long total = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    // mu(d) via factorization of d
    int m = d, mu = 1;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p != 0) continue;
      m /= p;
      if (m % p == 0) { mu = 0; break; }
      mu = -mu;
    }
    if (mu != 0 && m > 1) mu = -mu;
    total += mu * (long long)pow_u64(q, n / d);
  }
  return total / n;
}

Poly first_squarefree_monic(const Field& f, int degree) {
  if (degree == 0) return Poly::one(f);
  std::uint64_t count = pow_u64(f.q(), degree);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly m = monic_from_index(f, degree, idx);
    if (is_squarefree(m)) return m;
  }
  throw std::logic_error("no squarefree monic polynomial found");
}

std::uint32_t FactorSieve::intern(const ExtFactType& t) {
  auto it = type_ids_.find(t);
  if (it != type_ids_.end()) return it->second;
  std::uint32_t id = (std::uint32_t)types_.size();
  types_.push_back(t);
  type_ids_[t] = id;
  return id;
}

FactorSieve::FactorSieve(const Field& f, int max_degree, std::uint64_t entry_cap)
    : f_(&f), max_deg_(max_degree) {
  std::uint64_t entries = 0;
  for (int d = 0; d <= max_degree; ++d) entries += pow_u64(f.q(), d);
  if (entries > entry_cap)
    throw ResourceError("factor sieve would need " + std::to_string(entries) +
                        " entries (cap " + std::to_string(entry_cap) +
                        "); factor polynomials one at a time instead");
  build();
}

void FactorSieve::build() {
  const Field& F = *f_;
  const unsigned q = F.q();
  const int n = max_deg_;

  // Global key of monic degree-d index-i polynomial: offset[d] + i.
  std::vector<std::uint64_t> offset(n + 2, 0);
  for (int d = 0; d <= n; ++d) offset[d + 1] = offset[d] + pow_u64(q, d);

  std::vector<std::vector<std::uint32_t>> spf(n + 1), quot(n + 1);
  for (int d = 1; d <= n; ++d) {
    spf[d].assign(pow_u64(q, d), 0);
    quot[d].assign(pow_u64(q, d), 0);
  }

  irred_count_.assign(n + 1, 0);

  // Mark every monic multiple of each irreducible, smallest factor first.
  std::vector<ElemCode> pcoef, prod, gdig;
  for (int dp = 1; dp <= n; ++dp) {
    std::uint64_t pcount = pow_u64(q, dp);
    for (std::uint64_t pidx = 0; pidx < pcount; ++pidx) {
      if (spf[dp][pidx] != 0) continue;  // composite
      std::uint32_t pkey = (std::uint32_t)(offset[dp] + pidx);
      spf[dp][pidx] = pkey;
      quot[dp][pidx] = 0;  // key of 1
      ++irred_count_[dp];

      pcoef.assign(dp + 1, 0);
      {
        std::uint64_t t = pidx;
        for (int i = 0; i < dp; ++i) { pcoef[i] = (ElemCode)(t % q); t /= q; }
        pcoef[dp] = 1;
      }
      for (int dg = 1; dp + dg <= n; ++dg) {
        int dprod = dp + dg;
        // product starts at P * T^dg
        prod.assign(dprod + 1, 0);
        for (int i = 0; i <= dp; ++i) prod[dg + i] = pcoef[i];
        gdig.assign(dg, 0);
        std::uint64_t gcount = pow_u64(q, dg);
        std::uint64_t prod_idx = 0;
        {
          std::uint64_t mul = 1;
          for (int i = 0; i < dprod; ++i, mul *= q) prod_idx += (std::uint64_t)prod[i] * mul;
        }
        for (std::uint64_t gidx = 0;;) {
          if (spf[dprod][prod_idx] == 0) {
            spf[dprod][prod_idx] = pkey;
            quot[dprod][prod_idx] = (std::uint32_t)(offset[dg] + gidx);
          }
          if (++gidx >= gcount) break;
          // odometer step on g; apply scaled copies of P at changed digits
          for (int j = 0;; ++j) {
            ElemCode oldv = gdig[j];
            ElemCode newv = (ElemCode)((oldv + 1 == q) ? 0 : oldv + 1);
            gdig[j] = newv;
            ElemCode delta = F.sub(newv, oldv);
            std::uint64_t mul = pow_u64(q, j);
            for (int i = 0; i <= dp; ++i, mul *= q) {
              if (i + j >= dprod) break;  // leading coefficient fixed
              ElemCode oc = prod[i + j];
              ElemCode nc = F.add(oc, F.mul(delta, pcoef[i]));
              prod[i + j] = nc;
              prod_idx += ((std::uint64_t)nc - oc) * mul;
            }
            if (newv != 0) break;
          }
        }
      }
    }
  }

  // Factorization chains -> interned types (chain primes are nondecreasing).
  ExtFactType unit;
  std::uint32_t unit_id = intern(unit);
  eft_.assign(n + 1, {});
  eft_[0] = {unit_id};
  counts_.assign(n + 1, {});
  auto key_deg = [&](std::uint32_t key) {
    int d = 0;
    while (key >= offset[d + 1]) ++d;
    return d;
  };
  ExtFactType t;
  for (int d = 1; d <= n; ++d) {
    eft_[d].assign(pow_u64(q, d), 0);
    for (std::uint64_t i = 0; i < pow_u64(q, d); ++i) {
      t.parts.clear();
      int cd = d;
      std::uint64_t ci = i;
      std::uint32_t prev_key = 0;
      while (cd > 0) {
        std::uint32_t pk = spf[cd][ci];
        std::uint32_t qk = quot[cd][ci];
        if (pk == prev_key) {
          ++t.parts.back().second;
        } else {
          t.parts.push_back({key_deg(pk), 1});
          prev_key = pk;
        }
        cd = key_deg(qk);
        ci = qk - offset[cd];
      }
      t.canonicalize();
      eft_[d][i] = intern(t);
    }
  }
  for (int d = 0; d <= n; ++d) {
    counts_[d].assign(types_.size(), 0);
    for (std::uint64_t i = 0; i < pow_u64(q, d); ++i) ++counts_[d][eft_[d][i]];
  }
}

std::uint32_t FactorSieve::eft_id_of(const Poly& f) const {
  if (f.is_zero()) throw std::domain_error("factorization type of zero polynomial");
  int d = f.degree();
  if (d > max_deg_) throw std::domain_error("polynomial degree exceeds sieve bound");
  return eft_[d][monic_index(f.monic())];
}

bool FactorSieve::is_irreducible_idx(int degree, std::uint64_t monic_idx) const {
  const ExtFactType& t = types_[eft_[degree][monic_idx]];
  return t.parts.size() == 1 && t.parts[0].first == degree && t.parts[0].second == 1;
}

std::string FactorSieve::cache_file_name(const Field& f, int max_degree) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "sieve_q%u_n%d.bin", f.q(), max_degree);
  return buf;
}

std::unique_ptr<FactorSieve> FactorSieve::load_cache(const Field& f, int max_degree,
                                                     const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) return nullptr;
  auto r32 = [&]() {
    std::uint32_t v = 0;
    if (std::fread(&v, 4, 1, fp) != 1) throw std::runtime_error("sieve cache truncated");
    return v;
  };
  std::unique_ptr<FactorSieve> s;
  try {
    if (r32() != 0x46515631u || r32() != f.q() || r32() != (std::uint32_t)max_degree) {
      std::fclose(fp);
      return nullptr;
    }
    s.reset(new FactorSieve());
    s->f_ = &f;
    s->max_deg_ = max_degree;
    std::uint32_t ntypes = r32();
    for (std::uint32_t i = 0; i < ntypes; ++i) {
      ExtFactType t;
      std::uint32_t np = r32();
      for (std::uint32_t j = 0; j < np; ++j) {
        int d = (int)r32(), e = (int)r32();
        t.parts.push_back({d, e});
      }
      s->types_.push_back(t);
      s->type_ids_[t] = i;
    }
    s->eft_.assign(max_degree + 1, {});
    for (int d = 0; d <= max_degree; ++d) {
      s->eft_[d].assign(pow_u64(f.q(), d), 0);
      if (std::fread(s->eft_[d].data(), 4, s->eft_[d].size(), fp) != s->eft_[d].size())
        throw std::runtime_error("sieve cache truncated");
    }
  } catch (const std::exception&) {
    std::fclose(fp);
    return nullptr;
  }
  std::fclose(fp);
  s->irred_count_.assign(max_degree + 1, 0);
  s->counts_.assign(max_degree + 1, {});
  for (int d = 0; d <= max_degree; ++d) {
    s->counts_[d].assign(s->types_.size(), 0);
    for (std::uint64_t i = 0; i < pow_u64(f.q(), d); ++i) ++s->counts_[d][s->eft_[d][i]];
    if (d >= 1)
      for (std::uint64_t i = 0; i < pow_u64(f.q(), d); ++i)
        if (s->is_irreducible_idx(d, i)) ++s->irred_count_[d];
  }
  return s;
}

bool FactorSieve::save_cache(const std::string& path) const {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) return false;
  auto w32 = [&](std::uint32_t v) { std::fwrite(&v, 4, 1, fp); };
  w32(0x46515631u);  // "FQV1"
  w32(f_->q());
  w32((std::uint32_t)max_deg_);
  w32(num_types());
  for (auto& t : types_) {
    w32((std::uint32_t)t.parts.size());
    for (auto& [d, e] : t.parts) { w32((std::uint32_t)d); w32((std::uint32_t)e); }
  }
  for (int d = 0; d <= max_deg_; ++d)
    std::fwrite(eft_[d].data(), 4, eft_[d].size(), fp);
  std::fclose(fp);
  return true;
}

}  // namespace fqcorr
