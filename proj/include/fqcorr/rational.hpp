#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fqcorr {

// Exact rational on 64-bit numerator/denominator. Intermediate products go
// through __int128 and overflow raises instead of wrapping.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  static Rational from_i128(__int128 n, __int128 d) {
    __int128 g = gcd128(n < 0 ? -n : n, d < 0 ? -d : d);
    if (g != 0) { n /= g; d /= g; }
    if (d < 0) { n = -n; d = -d; }
    return Rational(narrow(n), narrow(d));
  }

  Rational operator-() const { return Rational(-num_, den_); }

  Rational operator+(const Rational& o) const {
    __int128 n = (__int128)num_ * o.den_ + (__int128)o.num_ * den_;
    return from_i128(n, (__int128)den_ * o.den_);
  }
  Rational operator-(const Rational& o) const { return *this + (-o); }
  Rational operator*(const Rational& o) const {
    return from_i128((__int128)num_ * o.num_, (__int128)den_ * o.den_);
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
    return from_i128((__int128)num_ * o.den_, (__int128)den_ * o.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  double to_double() const { return (double)num_ / (double)den_; }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "n" or "n/d".
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  }

 private:
  long long num_, den_;

  void normalize() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a;
  }

  static long long narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Rational overflow");
    return (long long)v;
  }
};

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > INT64_MAX) throw std::overflow_error("binomial overflow");
  }
  return (long long)r;
}

inline long long factorial(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) {
    if (r > INT64_MAX / i) throw std::overflow_error("factorial overflow");
    r *= i;
  }
  return r;
}

}  // namespace fqcorr
