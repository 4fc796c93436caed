#include "fqcorr/hayes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "fqcorr/parallel.hpp"

namespace fqcorr {

namespace {

// Extended Euclid over F_q[T]: g = u*a + v*b with g monic.
struct ExtGcd {
  Poly g, u, v;
};

ExtGcd ext_gcd(const Poly& a, const Poly& b) {
  const Field& F = a.field();
  Poly r0 = a, r1 = b;
  Poly u0 = Poly::one(F), u1 = Poly::zero(F);
  Poly v0 = Poly::zero(F), v1 = Poly::one(F);
  while (!r1.is_zero()) {
    auto [q, r2] = r0.divmod(r1);
    Poly u2 = u0 - q * u1, v2 = v0 - q * v1;
    r0 = r1; r1 = r2;
    u0 = u1; u1 = u2;
    v0 = v1; v1 = v2;
  }
  if (!r0.is_zero() && !r0.is_monic()) {
    ElemCode inv = F.inv(r0.lead());
    r0 = r0.scaled(inv);
    u0 = u0.scaled(inv);
    v0 = v0.scaled(inv);
  }
  return {r0, u0, v0};
}

// Generic finite abelian group on opaque keys, driven by a mult callback.
struct GroupOps {
  std::function<ClassKey(ClassKey, ClassKey)> mult;
  ClassKey identity;

  ClassKey pow(ClassKey x, std::uint64_t k) const {
    ClassKey r = identity, b = x;
    while (k) {
      if (k & 1) r = mult(r, b);
      b = mult(b, b);
      k >>= 1;
    }
    return r;
  }
};

// Basis of an abelian p-group by repeatedly extracting an element of maximal
// order in the remaining quotient.
std::vector<std::pair<ClassKey, std::uint64_t>> pgroup_basis(
    const GroupOps& ops, const std::vector<ClassKey>& elements, std::uint64_t p) {
  std::vector<std::pair<ClassKey, std::uint64_t>> basis;
  std::unordered_map<ClassKey, std::vector<std::uint64_t>> span;
  span[ops.identity] = {};
  while (span.size() < elements.size()) {
    ClassKey best = ops.identity;
    int best_k = -1;
    for (ClassKey x : elements) {
      if (span.count(x)) continue;
      int k = 0;
      ClassKey y = x;
      while (!span.count(y)) {
        y = ops.pow(y, p);
        ++k;
      }
      if (k > best_k) {
        best_k = k;
        best = x;
      }
    }
    std::uint64_t d = 1;
    for (int i = 0; i < best_k; ++i) d *= p;
    // divisibility correction: best^d lies in the span and each exponent is
    // divisible by d, so a shift by span generators kills the tail
    ClassKey tail = ops.pow(best, d);
    std::vector<std::uint64_t> c = span.at(tail);
    ClassKey g = best;
    for (size_t i = 0; i < basis.size() && i < c.size(); ++i) {
      if (c[i] == 0) continue;
      if (c[i] % d != 0) throw std::logic_error("abelian basis: divisibility failure");
      std::uint64_t shift = (basis[i].second - (c[i] / d) % basis[i].second) % basis[i].second;
      g = ops.mult(g, ops.pow(basis[i].first, shift));
    }
    if (ops.pow(g, d) != ops.identity) throw std::logic_error("abelian basis: order failure");
    basis.push_back({g, d});
    std::vector<std::pair<ClassKey, std::vector<std::uint64_t>>> snapshot(span.begin(), span.end());
    for (auto& [h, v] : snapshot) {
      ClassKey cur = h;
      for (std::uint64_t e = 1; e < d; ++e) {
        cur = ops.mult(cur, g);
        auto vv = v;
        vv.resize(basis.size() - 1, 0);
        vv.push_back(e);
        span[cur] = std::move(vv);
      }
    }
  }
  return basis;
}

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

// Basis of any finite abelian group, Sylow subgroup by Sylow subgroup.
std::vector<std::pair<ClassKey, std::uint64_t>> abelian_basis(
    const GroupOps& ops, const std::vector<ClassKey>& elements) {
  std::uint64_t n = elements.size();
  std::vector<std::pair<ClassKey, std::uint64_t>> basis;
  if (n == 1) return basis;
  for (std::uint64_t p : prime_factors_u64(n)) {
    std::uint64_t pa = 1;
    std::uint64_t m = n;
    while (m % p == 0) {
      m /= p;
      pa *= p;
    }
    std::vector<ClassKey> sylow;
    std::unordered_map<ClassKey, bool> seen;
    for (ClassKey x : elements) {
      ClassKey y = ops.pow(x, n / pa);
      if (!seen.count(y)) {
        seen[y] = true;
        sylow.push_back(y);
      }
    }
    for (auto& be : pgroup_basis(ops, sylow, p)) basis.push_back(be);
  }
  return basis;
}

}  // namespace

bool HayesCharacter::is_quadratic() const {
  const auto& fs = group->basis();
  for (size_t i = 0; i < exponents.size(); ++i)
    if ((2 * exponents[i]) % fs[i].order != 0) return false;
  return true;
}

UnitGroup::UnitGroup(const Field& f, HayesModulus r, Options opt)
    : f_(&f), r_(std::move(r)), opt_(opt) {
  deg_m_ = r_.deg_m();
  if (r_.ell > 31) throw ResourceError("short-interval depth too large");
  q_ell_ = pow_u64(f.q(), r_.ell);
  key_count_ = q_ell_ * pow_u64(f.q(), deg_m_);
  long long phi = euler_phi(r_.modulus);
  size_ = q_ell_ * (std::uint64_t)phi;
  if (size_ > opt_.group_cap)
    throw ResourceError("unit group of order " + std::to_string(size_) +
                        " exceeds cap " + std::to_string(opt_.group_cap));
  build_basis();
  build_dlog();
  build_kernels();
}

ClassKey UnitGroup::identity_key() const {
  std::uint64_t dir = deg_m_ > 0 ? 1 : 0;  // index of the residue 1
  return dir * q_ell_;
}

ClassKey UnitGroup::mult(ClassKey a, ClassKey b) const {
  const Field& F = *f_;
  const unsigned q = F.q();
  std::uint64_t sa = a % q_ell_, sb = b % q_ell_;
  std::uint64_t da = a / q_ell_, db = b / q_ell_;
  // short components: truncated product of 1 + c_1 T + ... + c_ell T^ell
  std::uint64_t sc = 0;
  if (r_.ell > 0) {
    int ell = r_.ell;
    ElemCode ca[32], cb[32], cc[32];
    for (int i = 1; i <= ell; ++i) {
      ca[i] = (ElemCode)(sa % q);
      sa /= q;
      cb[i] = (ElemCode)(sb % q);
      sb /= q;
      cc[i] = 0;
    }
    ca[0] = cb[0] = 1;
    for (int i = 0; i <= ell; ++i) {
      if (ca[i] == 0) continue;
      for (int j = (i == 0 ? 1 : 0); i + j <= ell; ++j)
        cc[i + j] = F.add(cc[i + j], F.mul(ca[i], cb[j]));
    }
    for (int i = ell; i >= 1; --i) sc = sc * q + cc[i];
  }
  std::uint64_t dc = 0;
  if (deg_m_ > 0) {
    Poly pa = poly_from_index(F, da), pb = poly_from_index(F, db);
    dc = poly_index((pa * pb) % r_.modulus);
  }
  return dc * q_ell_ + sc;
}

void UnitGroup::build_basis() {
  const Field& F = *f_;
  GroupOps ops{[this](ClassKey a, ClassKey b) { return mult(a, b); }, identity_key()};

  factors_.clear();
  // short-interval component: an abelian p-group of order q^ell
  if (r_.ell > 0) {
    std::vector<ClassKey> shorts(q_ell_);
    std::uint64_t dir = identity_key();
    for (std::uint64_t s = 0; s < q_ell_; ++s) shorts[s] = dir + s;
    for (auto& [g, d] : pgroup_basis(ops, shorts, F.p())) factors_.push_back({d, g});
  }
  // Dirichlet component, one CRT block per prime power in M
  if (deg_m_ > 0) {
    auto fact = factor_one(r_.modulus);
    for (auto& [P, e] : fact) {
      Poly pe = Poly::one(F);
      for (int i = 0; i < e; ++i) pe = pe * P;
      Poly cof = r_.modulus / pe;
      // x = r * cof * (cof^-1 mod P^e) + 1 * pe * (pe^-1 mod cof) mod M
      Poly lift_r, lift_1;
      if (cof.degree() == 0) {
        lift_r = Poly::one(F);
        lift_1 = Poly::zero(F);
      } else {
        ExtGcd eg = ext_gcd(cof, pe);
        if (eg.g.degree() != 0) throw std::logic_error("CRT blocks not coprime");
        lift_r = cof * eg.u;       // = 1 mod pe, 0 mod cof
        lift_1 = pe * eg.v;        // = 1 mod cof, 0 mod pe
      }
      std::vector<ClassKey> block;
      std::uint64_t res_count = pow_u64(F.q(), pe.degree());
      for (std::uint64_t ri = 0; ri < res_count; ++ri) {
        Poly r = poly_from_index(F, ri);
        if (gcd(r, P).degree() != 0) continue;
        Poly lifted = (r * lift_r + lift_1) % r_.modulus;
        block.push_back(poly_index(lifted) * q_ell_);
      }
      for (auto& [g, d] : abelian_basis(ops, block)) factors_.push_back({d, g});
    }
  }

  std::uint64_t prod = 1;
  for (auto& cf : factors_) prod *= cf.order;
  if (prod != size_) throw std::logic_error("cyclic decomposition does not cover the unit group");

  strides_.assign(factors_.size(), 1);
  for (size_t i = 1; i < factors_.size(); ++i)
    strides_[i] = strides_[i - 1] * factors_[i - 1].order;

  factor_roots_.clear();
  for (auto& cf : factors_) {
    std::vector<Complex> roots(cf.order);
    for (std::uint64_t t = 0; t < cf.order; ++t) {
      double ang = 2.0 * std::numbers::pi * (double)t / (double)cf.order;
      roots[t] = Complex(std::cos(ang), std::sin(ang));
    }
    factor_roots_.push_back(std::move(roots));
  }
}

void UnitGroup::build_dlog() {
  dlog_rank_.assign(key_count_, kNonUnit);
  rank_key_.assign(size_, 0);
  std::vector<std::uint64_t> digit(factors_.size(), 0);
  ClassKey cur = identity_key();
  for (std::uint64_t rank = 0;; ++rank) {
    if (dlog_rank_[cur] != kNonUnit) throw std::logic_error("duplicate class in span");
    dlog_rank_[cur] = (std::int32_t)rank;
    rank_key_[rank] = cur;
    if (rank + 1 == size_) break;
    for (size_t i = 0;; ++i) {
      cur = mult(cur, factors_[i].generator);
      if (++digit[i] < factors_[i].order) break;
      digit[i] = 0;
    }
  }
}

void UnitGroup::build_kernels() {
  const Field& F = *f_;
  infinity_kernel_.clear();
  if (r_.ell > 0) {
    std::uint64_t base = identity_key();
    std::uint64_t stride = pow_u64(F.q(), r_.ell - 1);
    for (unsigned c = 0; c < F.q(); ++c)
      infinity_kernel_.push_back(dlog_rank_[base + (std::uint64_t)c * stride]);
  }
  prime_kernels_.clear();
  if (deg_m_ > 0) {
    for (auto& [P, e] : factor_one(r_.modulus)) {
      (void)e;
      Poly mp = r_.modulus / P;  // kernel of reduction to R_{ell, M/P}
      std::vector<std::int32_t> ker;
      std::uint64_t tcount = pow_u64(F.q(), P.degree());
      for (std::uint64_t ti = 0; ti < tcount; ++ti) {
        Poly r = (Poly::one(F) + mp * poly_from_index(F, ti)) % r_.modulus;
        std::int32_t rk = dlog_rank_[poly_index(r) * q_ell_];
        if (rk != kNonUnit) ker.push_back(rk);
      }
      prime_kernels_.push_back(std::move(ker));
    }
  }
}

ClassKey UnitGroup::class_key(const Poly& f) const {
  const Field& F = *f_;
  std::uint64_t dir = 0;
  if (deg_m_ > 0) {
    Poly r = f % r_.modulus;
    if (gcd(r, r_.modulus).degree() != 0) return kNonUnitKey;
    dir = poly_index(r);
  }
  std::uint64_t s = 0;
  int d = f.degree();
  for (int j = r_.ell; j >= 1; --j) s = s * F.q() + f.coeff(d - j);
  return dir * q_ell_ + s;
}

std::vector<std::int32_t> UnitGroup::class_ranks(int n) const {
  const Field& F = *f_;
  std::uint64_t count = pow_u64(F.q(), n);
  std::vector<std::int32_t> ranks(count);
  parallel_blocks(count, [&](std::uint64_t b, std::uint64_t lo, std::uint64_t hi) {
    (void)b;
    for (std::uint64_t i = lo; i < hi; ++i) {
      Poly f = monic_from_index(F, n, i);
      ClassKey k = class_key(f);
      ranks[i] = (k == kNonUnitKey) ? kNonUnit : dlog_rank_[k];
    }
  });
  return ranks;
}

std::vector<std::uint64_t> UnitGroup::unrank_exponents(std::uint64_t rank) const {
  std::vector<std::uint64_t> e(factors_.size());
  for (size_t i = 0; i < factors_.size(); ++i) e[i] = (rank / strides_[i]) % factors_[i].order;
  return e;
}

Complex UnitGroup::eval(const HayesCharacter& chi, std::int32_t class_rank) const {
  if (class_rank == kNonUnit) return 0.0;
  Complex v = 1.0;
  std::uint64_t rank = (std::uint64_t)class_rank;
  for (size_t i = 0; i < factors_.size(); ++i) {
    std::uint64_t a = (rank / strides_[i]) % factors_[i].order;
    if (a && chi.exponents[i])
      v *= factor_roots_[i][(chi.exponents[i] * a) % factors_[i].order];
  }
  return v;
}

Complex UnitGroup::eval_poly(const HayesCharacter& chi, const Poly& monic_f) const {
  ClassKey k = class_key(monic_f);
  return k == kNonUnitKey ? Complex(0.0) : eval(chi, dlog_rank_[k]);
}

std::uint64_t UnitGroup::char_order(const std::vector<std::uint64_t>& exps) const {
  std::uint64_t ord = 1;
  for (size_t i = 0; i < factors_.size(); ++i) {
    std::uint64_t d = factors_[i].order / std::gcd(factors_[i].order, exps[i]);
    ord = std::lcm(ord, d);
  }
  return ord;
}

bool UnitGroup::eval_trivial_on(const std::vector<std::uint64_t>& exps,
                                const std::vector<std::int32_t>& ranks) const {
  // chi is trivial on an element iff the exact integer phase over the common
  // denominator L vanishes.
  long long L = 1;
  for (auto& cf : factors_) L = std::lcm(L, (long long)cf.order);
  for (std::int32_t rk : ranks) {
    if (rk == kNonUnit) continue;
    std::uint64_t rank = (std::uint64_t)rk;
    long long phase = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
      std::uint64_t a = (rank / strides_[i]) % factors_[i].order;
      phase = (phase + (long long)((exps[i] * a) % factors_[i].order) *
                           (L / (long long)factors_[i].order)) % L;
    }
    if (phase != 0) return false;
  }
  return true;
}

HayesCharacter UnitGroup::character(std::uint64_t rank) const {
  HayesCharacter chi;
  chi.group = this;
  chi.rank = rank;
  chi.exponents = unrank_exponents(rank);
  chi.is_trivial = rank == 0;
  chi.order = char_order(chi.exponents);
  // primitive: nontrivial on the depth-reduction kernel (when ell > 0) and on
  // every kernel of reduction modulo M/P
  bool prim = true;
  if (r_.ell > 0 && eval_trivial_on(chi.exponents, infinity_kernel_)) prim = false;
  for (auto& ker : prime_kernels_)
    if (prim && eval_trivial_on(chi.exponents, ker)) prim = false;
  chi.is_primitive = prim;
  if (!opt_.strict_odd && (r_.ell > 0 || deg_m_ == 0)) {
    chi.is_odd = true;
  } else if (deg_m_ == 0) {
    chi.is_odd = true;  // strict mode, no Dirichlet component: scalars embed trivially
  } else {
    std::vector<std::int32_t> scalar_ranks;
    for (ClassKey k : scalar_keys()) scalar_ranks.push_back(dlog_rank_[k]);
    chi.is_odd = !eval_trivial_on(chi.exponents, scalar_ranks);
  }
  return chi;
}

std::vector<HayesCharacter> UnitGroup::characters() const {
  std::vector<HayesCharacter> out;
  out.reserve(size_);
  for (std::uint64_t r = 0; r < size_; ++r) out.push_back(character(r));
  return out;
}

std::vector<ClassKey> UnitGroup::scalar_keys() const {
  std::vector<ClassKey> keys;
  if (deg_m_ == 0) return keys;
  for (unsigned c = 1; c < f_->q(); ++c)
    keys.push_back(poly_index(Poly::constant(*f_, (ElemCode)c)) * q_ell_);
  return keys;
}

std::vector<Complex> UnitGroup::class_sums(int n, const ValueTable& alpha,
                                           const FactorSieve& sieve) const {
  std::vector<std::int32_t> ranks = class_ranks(n);
  std::vector<Complex> T(size_, 0.0);
  for (std::uint64_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] == kNonUnit) continue;
    T[(std::uint64_t)ranks[i]] += alpha.at(sieve.eft_id(n, i));
  }
  return T;
}

std::vector<Complex> UnitGroup::group_dft(const std::vector<Complex>& by_class) const {
  std::vector<Complex> buf = by_class;
  std::vector<Complex> line_out;
  for (size_t i = 0; i < factors_.size(); ++i) {
    std::uint64_t d = factors_[i].order;
    if (d == 1) continue;
    std::uint64_t s = strides_[i];
    const auto& roots = factor_roots_[i];
    line_out.resize(d);
    std::uint64_t outer_count = size_ / (d * s);
    for (std::uint64_t outer = 0; outer < outer_count; ++outer) {
      std::uint64_t base0 = outer * d * s;
      for (std::uint64_t inner = 0; inner < s; ++inner) {
        std::uint64_t base = base0 + inner;
        for (std::uint64_t k = 0; k < d; ++k) {
          Complex acc = 0.0;
          for (std::uint64_t a = 0; a < d; ++a) acc += buf[base + a * s] * roots[(k * a) % d];
          line_out[k] = acc;
        }
        for (std::uint64_t k = 0; k < d; ++k) buf[base + k * s] = line_out[k];
      }
    }
  }
  return buf;
}

std::vector<Complex> UnitGroup::char_sums_all(int n, const ValueTable& alpha,
                                              const FactorSieve& sieve) const {
  return group_dft(class_sums(n, alpha, sieve));
}

Complex UnitGroup::char_sum(int n, const ValueTable& alpha, const FactorSieve& sieve,
                            const HayesCharacter& chi) const {
  std::vector<std::int32_t> ranks = class_ranks(n);
  return blocked_sum(ranks.size(), [&](std::uint64_t i) -> Complex {
    if (ranks[i] == kNonUnit) return 0.0;
    return alpha.at(sieve.eft_id(n, i)) * eval(chi, ranks[i]);
  });
}

HayesCharacter UnitGroup::twist(const HayesCharacter& chi, ElemCode c) const {
  if (deg_m_ != 0) throw std::domain_error("twist needs a trivial congruence modulus");
  if (r_.ell < 1) throw std::domain_error("twist needs ell >= 1");
  if (c == 0) throw std::domain_error("twist by zero scalar");
  const Field& F = *f_;
  // tau_c multiplies the j-th next-to-leading coefficient by c^{-j}
  ElemCode cinv = F.inv(c);
  auto tau = [&](ClassKey key) {
    std::uint64_t s = key;
    ElemCode scale = 1;
    std::uint64_t out = 0, mul = 1;
    for (int j = 1; j <= r_.ell; ++j) {
      scale = F.mul(scale, cinv);
      out += (std::uint64_t)F.mul((ElemCode)(s % F.q()), scale) * mul;
      s /= F.q();
      mul *= F.q();
    }
    return out;
  };
  long long L = 1;
  for (auto& cf : factors_) L = std::lcm(L, (long long)cf.order);
  std::vector<std::uint64_t> exps(factors_.size());
  for (size_t m = 0; m < factors_.size(); ++m) {
    std::uint64_t g_im = tau(factors_[m].generator);
    std::uint64_t rank = (std::uint64_t)dlog_rank_[g_im];
    long long phase = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
      std::uint64_t a = (rank / strides_[i]) % factors_[i].order;
      phase = (phase + (long long)((chi.exponents[i] * a) % factors_[i].order) *
                           (L / (long long)factors_[i].order)) % L;
    }
    long long num = phase * (long long)factors_[m].order;
    if (num % L != 0) throw std::logic_error("twist: phase is not a character exponent");
    exps[m] = (std::uint64_t)(num / L) % factors_[m].order;
  }
  std::uint64_t rank = 0;
  for (size_t i = 0; i < factors_.size(); ++i) rank += exps[i] * strides_[i];
  return character(rank);
}

Complex UnitGroup::induced_additive_character(const HayesCharacter& chi, ElemCode x) const {
  if (deg_m_ != 0) throw std::domain_error("additive character needs a trivial modulus");
  if (r_.ell < 1) throw std::domain_error("additive character needs ell >= 1");
  std::uint64_t key = (std::uint64_t)x * pow_u64(f_->q(), r_.ell - 1);
  return eval(chi, dlog_rank_[key]);
}

Complex UnitGroup::gauss_average(const HayesCharacter& chi, ElemCode delta) const {
  if (delta == 0) throw std::domain_error("gauss average needs a nonzero shift");
  const Field& F = *f_;
  Complex sum = 0.0;
  for (unsigned c = 1; c < F.q(); ++c) {
    ElemCode arg = F.mul(delta, F.pow((ElemCode)c, (unsigned)r_.ell));
    sum += induced_additive_character(chi, arg);
  }
  return sum / std::sqrt((double)F.q());
}

long long UnitGroup::quad_torsion_count() const {
  long long count = 0;
  for (std::uint64_t rank = 0; rank < size_; ++rank) {
    bool quad = true;
    for (size_t i = 0; i < factors_.size() && quad; ++i) {
      std::uint64_t a = (rank / strides_[i]) % factors_[i].order;
      if ((2 * a) % factors_[i].order != 0) quad = false;
    }
    if (quad) ++count;
  }
  return count;
}

}  // namespace fqcorr
