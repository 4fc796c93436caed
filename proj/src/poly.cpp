#include "fqcorr/poly.hpp"

#include <cctype>
#include <stdexcept>

namespace fqcorr {

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const Field& f, ElemCode c) {
  Poly r(f);
  if (c != 0) r.c_ = {c};
  return r;
}

Poly Poly::variable(const Field& f) {
  Poly r(f);
  r.c_ = {0, 1};
  return r;
}

Poly Poly::from_coeffs(const Field& f, std::vector<ElemCode> c) {
  Poly r(f);
  r.c_ = std::move(c);
  r.trim();
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r(*f_);
  r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = f_->add(coeff((int)i), o.coeff((int)i));
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r(*f_);
  r.c_.resize(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = f_->neg(c_[i]);
  return r;
}

Poly Poly::scaled(ElemCode c) const {
  Poly r(*f_);
  if (c == 0) return r;
  r.c_.resize(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = f_->mul(c_[i], c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(*f_);
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      r.c_[i + j] = f_->add(r.c_[i + j], f_->mul(c_[i], o.c_[j]));
  }
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& g) const {
  if (g.is_zero()) throw std::domain_error("division by zero polynomial");
  Poly q(*f_), r = *this;
  int dg = g.degree();
  if (degree() >= dg) q.c_.assign(degree() - dg + 1, 0);
  ElemCode lg_inv = f_->inv(g.lead());
  while (r.degree() >= dg) {
    int shift = r.degree() - dg;
    ElemCode c = f_->mul(r.lead(), lg_inv);
    q.c_[shift] = c;
    for (int i = 0; i <= dg; ++i)
      r.c_[shift + i] = f_->sub(r.c_[shift + i], f_->mul(c, g.coeff(i)));
    r.trim();
  }
  q.trim();
  return {q, r};
}

Poly Poly::derivative() const {
  Poly r(*f_);
  if (degree() < 1) return r;
  r.c_.resize(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) {
    ElemCode m = f_->from_int((long long)i);
    r.c_[i - 1] = f_->mul(c_[i], m);
  }
  r.trim();
  return r;
}

ElemCode Poly::eval(ElemCode a) const {
  ElemCode r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = f_->add(f_->mul(r, a), c_[i]);
  return r;
}

Poly Poly::monic() const {
  if (is_zero() || is_monic()) return *this;
  return scaled(f_->inv(lead()));
}

Poly Poly::substitute_linear(ElemCode c1, ElemCode c2) const {
  Poly lin(*f_);
  lin = Poly::from_coeffs(*f_, {c2, c1});
  Poly r = Poly::zero(*f_);
  for (size_t i = c_.size(); i-- > 0;) r = r * lin + Poly::constant(*f_, c_[i]);
  return r;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = y;
    y = r;
  }
  return x.monic();
}

std::uint64_t poly_index(const Poly& f) {
  std::uint64_t idx = 0;
  const auto& c = f.coeffs();
  for (size_t i = c.size(); i-- > 0;) idx = idx * f.field().q() + c[i];
  return idx;
}

Poly poly_from_index(const Field& f, std::uint64_t idx) {
  std::vector<ElemCode> c;
  while (idx > 0) {
    c.push_back((ElemCode)(idx % f.q()));
    idx /= f.q();
  }
  return Poly::from_coeffs(f, std::move(c));
}

std::uint64_t monic_index(const Poly& f) {
  if (!f.is_monic()) throw std::domain_error("monic_index of non-monic polynomial");
  std::uint64_t idx = 0;
  const auto& c = f.coeffs();
  for (size_t i = c.size() - 1; i-- > 0;) idx = idx * f.field().q() + c[i];
  return idx;
}

Poly monic_from_index(const Field& f, int n, std::uint64_t idx) {
  std::vector<ElemCode> c(n + 1, 0);
  c[n] = 1;
  for (int i = 0; i < n; ++i) {
    c[i] = (ElemCode)(idx % f.q());
    idx /= f.q();
  }
  return Poly::from_coeffs(f, std::move(c));
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    ElemCode c = coeff(i);
    if (c == 0) continue;
    if (!s.empty()) s += " + ";
    bool unit = (c == 1);
    if (!unit || i == 0) s += f_->elem_str(c);
    if (i > 0) {
      if (!unit) s += "*";
      s += "T";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

namespace {

struct Parser {
  const Field& f;
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) { ++pos; return true; }
    return false;
  }
  long long parse_int() {
    skip_ws();
    bool negated = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) negated = (s[pos++] == '-');
    skip_ws();
    if (pos >= s.size() || !std::isdigit((unsigned char)s[pos]))
      throw std::invalid_argument("polynomial parse error: expected integer");
    long long v = 0;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) v = v * 10 + (s[pos++] - '0');
    return negated ? -v : v;
  }

  ElemCode parse_coeff() {
    skip_ws();
    if (pos < s.size() && s[pos] == '[') {
      ++pos;
      std::vector<unsigned> coords;
      while (true) {
        long long v = parse_int();
        long long m = f.p();
        coords.push_back((unsigned)(((v % m) + m) % m));
        if (eat(']')) break;
        if (!eat(',')) throw std::invalid_argument("polynomial parse error: bad coefficient vector");
      }
      return f.from_coords(coords);
    }
    return f.from_int(parse_int());
  }

  Poly parse() {
    Poly acc = Poly::zero(f);
    bool first = true;
    while (true) {
      skip_ws();
      if (pos >= s.size()) break;
      bool negated = false;
      if (s[pos] == '+' || s[pos] == '-') {
        negated = (s[pos] == '-');
        ++pos;
      } else if (!first) {
        throw std::invalid_argument("polynomial parse error: expected + or -");
      }
      first = false;
      skip_ws();
      ElemCode c = 1;
      bool have_coeff = false;
      if (pos < s.size() && (std::isdigit((unsigned char)s[pos]) || s[pos] == '[')) {
        c = parse_coeff();
        have_coeff = true;
      }
      eat('*');
      int exp = 0;
      skip_ws();
      if (pos < s.size() && (s[pos] == 'T' || s[pos] == 't')) {
        ++pos;
        exp = 1;
        if (eat('^')) exp = (int)parse_int();
        if (exp < 0) throw std::invalid_argument("polynomial parse error: negative exponent");
      } else if (!have_coeff) {
        throw std::invalid_argument("polynomial parse error: expected term");
      }
      if (negated) c = f.neg(c);
      std::vector<ElemCode> t(exp + 1, 0);
      t[exp] = c;
      acc = acc + Poly::from_coeffs(f, std::move(t));
    }
    return acc;
  }
};

}  // namespace

Poly Poly::parse(const Field& f, const std::string& text) {
  Parser p{f, text};
  Poly r = p.parse();
  p.skip_ws();
  if (p.pos != text.size()) throw std::invalid_argument("polynomial parse error: trailing input");
  return r;
}

}  // namespace fqcorr
