#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "fqcorr/field.hpp"

namespace fqcorr {

// Degree of the zero polynomial: a sentinel ordered below every integer.
inline constexpr int kNegInfDeg = std::numeric_limits<int>::min();

// Dense polynomial over F_q, coefficients lowest degree first, top entry
// nonzero (empty vector = zero polynomial).
class Poly {
 public:
  Poly() : f_(nullptr) {}
  explicit Poly(const Field& f) : f_(&f) {}
  static Poly zero(const Field& f) { return Poly(f); }
  static Poly one(const Field& f) { return constant(f, 1); }
  static Poly constant(const Field& f, ElemCode c);
  static Poly variable(const Field& f);  // T
  static Poly from_coeffs(const Field& f, std::vector<ElemCode> c);

  const Field& field() const { return *f_; }
  int degree() const { return c_.empty() ? kNegInfDeg : (int)c_.size() - 1; }
  bool is_zero() const { return c_.empty(); }
  ElemCode coeff(int i) const { return (i >= 0 && i < (int)c_.size()) ? c_[i] : 0; }
  ElemCode lead() const { return c_.empty() ? 0 : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  const std::vector<ElemCode>& coeffs() const { return c_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(ElemCode c) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return c_ != o.c_; }

  // f = q*g + r with deg r < deg g; throws on g = 0.
  std::pair<Poly, Poly> divmod(const Poly& g) const;
  Poly operator/(const Poly& g) const { return divmod(g).first; }
  Poly operator%(const Poly& g) const { return divmod(g).second; }
  bool divides(const Poly& f) const { return !is_zero() && f.divmod(*this).second.is_zero(); }

  Poly derivative() const;
  ElemCode eval(ElemCode a) const;
  Poly monic() const;  // divide by leading coefficient; zero stays zero
  // f(c1*T + c2)
  Poly substitute_linear(ElemCode c1, ElemCode c2) const;

  std::string str() const;
  static Poly parse(const Field& f, const std::string& text);

 private:
  const Field* f_;
  std::vector<ElemCode> c_;
  void trim();
};

Poly gcd(const Poly& a, const Poly& b);  // monic generator of (a, b)

// Index encoding: sum of enc(c_i) * q^i. For monic polynomials the leading
// coefficient is stripped, so monic degree-n polynomials map onto [0, q^n).
std::uint64_t poly_index(const Poly& f);
Poly poly_from_index(const Field& f, std::uint64_t idx);
std::uint64_t monic_index(const Poly& f);
Poly monic_from_index(const Field& f, int n, std::uint64_t idx);

inline std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Streams all monic polynomials of one degree in index order without
// re-allocating; hot loops read the coefficient array directly.
class MonicEnumerator {
 public:
  MonicEnumerator(const Field& f, int n, std::uint64_t start = 0)
      : f_(&f), n_(n), low_(n, 0), count_(pow_u64(f.q(), n)), idx_(start) {
    std::uint64_t t = start;
    for (int i = 0; i < n_; ++i) {
      low_[i] = (ElemCode)(t % f.q());
      t /= f.q();
    }
  }

  bool done() const { return idx_ >= count_; }
  std::uint64_t index() const { return idx_; }
  // Low coefficients c_0..c_{n-1}; the leading coefficient is 1.
  const std::vector<ElemCode>& low() const { return low_; }

  void next() {
    ++idx_;
    for (int i = 0; i < n_; ++i) {
      if (++low_[i] < f_->q()) return;
      low_[i] = 0;
    }
  }

  Poly current() const {
    std::vector<ElemCode> c = low_;
    c.push_back(1);
    return Poly::from_coeffs(*f_, std::move(c));
  }

 private:
  const Field* f_;
  int n_;
  std::vector<ElemCode> low_;
  std::uint64_t count_, idx_;
};

}  // namespace fqcorr
