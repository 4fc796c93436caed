#include "fqcorr/field.hpp"

#include <stdexcept>

namespace fqcorr {

namespace {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Minimal mod-p polynomial helpers used only to pick/verify the modulus.
using PVec = std::vector<unsigned>;  // low-first, over F_p

PVec pv_trim(PVec a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

PVec pv_mod(PVec a, const PVec& b, unsigned p) {
  a = pv_trim(std::move(a));
  PVec bb = b;  // monic expected
  while (a.size() >= bb.size() && !a.empty()) {
    unsigned c = a.back();
    size_t shift = a.size() - bb.size();
    for (size_t i = 0; i < bb.size(); ++i)
      a[shift + i] = (a[shift + i] + p - (unsigned)((unsigned long long)c * bb[i] % p)) % p;
    a = pv_trim(std::move(a));
  }
  return a;
}

bool pv_irreducible(const PVec& f, unsigned p) {
  // Trial division by every monic polynomial of degree <= deg f / 2.
  int n = (int)f.size() - 1;
  if (n < 1) return false;
  for (int d = 1; d <= n / 2; ++d) {
    unsigned long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (unsigned long long idx = 0; idx < count; ++idx) {
      PVec g(d + 1, 0);
      g[d] = 1;
      unsigned long long t = idx;
      for (int i = 0; i < d; ++i) { g[i] = (unsigned)(t % p); t /= p; }
      if (pv_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

PVec least_irreducible(unsigned p, unsigned e) {
  unsigned long long count = 1;
  for (unsigned i = 0; i < e; ++i) count *= p;
  for (unsigned long long idx = 0; idx < count; ++idx) {
    PVec f(e + 1, 0);
    f[e] = 1;
    unsigned long long t = idx;
    for (unsigned i = 0; i < e; ++i) { f[i] = (unsigned)(t % p); t /= p; }
    if (pv_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible modulus found");
}

}  // namespace

Field Field::prime(unsigned p) {
  if (!is_prime(p)) throw std::domain_error("field characteristic must be prime");
  Field f;
  f.p_ = p;
  f.e_ = 1;
  f.q_ = p;
  f.build_tables();
  return f;
}

Field Field::with_modulus(unsigned p, const std::vector<unsigned>& modulus) {
  if (!is_prime(p)) throw std::domain_error("field characteristic must be prime");
  if (modulus.size() < 3 || modulus.back() != 1)
    throw std::domain_error("modulus must be monic of degree >= 2");
  for (unsigned c : modulus)
    if (c >= p) throw std::domain_error("modulus coefficients must be reduced mod p");
  if (!pv_irreducible(modulus, p)) throw std::domain_error("modulus is reducible");
  Field f;
  f.p_ = p;
  f.e_ = (unsigned)modulus.size() - 1;
  f.q_ = 1;
  for (unsigned i = 0; i < f.e_; ++i) {
    unsigned long long nq = (unsigned long long)f.q_ * p;
    if (nq > 4096) throw std::domain_error("field order too large");
    f.q_ = (unsigned)nq;
  }
  f.mod_ = modulus;
  f.build_tables();
  return f;
}

Field Field::prime_power(unsigned p, unsigned e) {
  if (e == 1) return prime(p);
  return with_modulus(p, least_irreducible(p, e));
}

Field Field::of_order(unsigned q) {
  if (is_prime(q)) return prime(q);
  for (unsigned p = 2; p * p <= q; ++p) {
    if (q % p != 0) continue;
    unsigned e = 0, m = q;
    while (m % p == 0) { m /= p; ++e; }
    if (m != 1) break;
    return prime_power(p, e);
  }
  throw std::domain_error("field order must be a prime power");
}

void Field::build_tables() {
  add_.assign((size_t)q_ * q_, 0);
  mul_.assign((size_t)q_ * q_, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, 0);
  if (e_ == 1) {
    for (unsigned a = 0; a < q_; ++a) {
      neg_[a] = (ElemCode)((q_ - a) % q_);
      for (unsigned b = 0; b < q_; ++b) {
        add_[(size_t)a * q_ + b] = (ElemCode)((a + b) % q_);
        mul_[(size_t)a * q_ + b] = (ElemCode)((unsigned long long)a * b % q_);
      }
    }
  } else {
    auto decode = [&](unsigned a) {
      PVec v(e_, 0);
      for (unsigned i = 0; i < e_; ++i) { v[i] = a % p_; a /= p_; }
      return v;
    };
    auto encode = [&](const PVec& v) {
      unsigned c = 0;
      for (unsigned i = e_; i-- > 0;) c = c * p_ + (i < v.size() ? v[i] : 0);
      return (ElemCode)c;
    };
    for (unsigned a = 0; a < q_; ++a) {
      PVec va = decode(a);
      PVec nv(e_);
      for (unsigned i = 0; i < e_; ++i) nv[i] = (p_ - va[i]) % p_;
      neg_[a] = encode(nv);
      for (unsigned b = 0; b < q_; ++b) {
        PVec vb = decode(b);
        PVec s(e_);
        for (unsigned i = 0; i < e_; ++i) s[i] = (va[i] + vb[i]) % p_;
        add_[(size_t)a * q_ + b] = encode(s);
        PVec prod(2 * e_ - 1, 0);
        for (unsigned i = 0; i < e_; ++i)
          for (unsigned j = 0; j < e_; ++j)
            prod[i + j] = (prod[i + j] + va[i] * vb[j]) % p_;
        mul_[(size_t)a * q_ + b] = encode(pv_mod(prod, mod_, p_));
      }
    }
  }
  for (unsigned a = 1; a < q_; ++a)
    for (unsigned b = 1; b < q_; ++b)
      if (mul_[(size_t)a * q_ + b] == 1) { inv_[a] = (ElemCode)b; break; }
}

ElemCode Field::inv(ElemCode a) const {
  if (a == 0) throw std::domain_error("inversion of zero field element");
  return inv_[a];
}

ElemCode Field::pow(ElemCode a, unsigned long long k) const {
  ElemCode r = 1, base = a;
  while (k > 0) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

std::vector<unsigned> Field::coords(ElemCode a) const {
  std::vector<unsigned> v(e_, 0);
  unsigned x = a;
  for (unsigned i = 0; i < e_; ++i) { v[i] = x % p_; x /= p_; }
  return v;
}

ElemCode Field::from_coords(const std::vector<unsigned>& c) const {
  unsigned v = 0;
  for (unsigned i = e_; i-- > 0;) v = v * p_ + (i < c.size() ? c[i] % p_ : 0);
  return (ElemCode)v;
}

ElemCode Field::from_int(long long v) const {
  long long m = (e_ == 1) ? q_ : p_;
  long long r = v % m;
  if (r < 0) r += m;
  return (ElemCode)r;
}

std::string Field::elem_str(ElemCode a) const {
  if (e_ == 1) return std::to_string(a);
  std::string s = "[";
  auto c = coords(a);
  for (unsigned i = 0; i < e_; ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "]";
}

}  // namespace fqcorr
