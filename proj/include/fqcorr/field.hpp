#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fqcorr {

using ElemCode = std::uint16_t;

// Arithmetic in F_q, q = p^e. Elements are codes in [0, q): for prime fields
// the residue itself, otherwise sum a_i p^i over the power-basis coordinates
// of the defining modulus. All operations are table-driven.
class Field {
 public:
  // Prime field F_p.
  static Field prime(unsigned p);
  // F_{p^e} with the built-in modulus (least monic irreducible in index order).
  static Field prime_power(unsigned p, unsigned e);
  // F_{p^e} with an explicit monic irreducible modulus, coefficients mod p,
  // lowest degree first, length e+1. Irreducibility is verified.
  static Field with_modulus(unsigned p, const std::vector<unsigned>& modulus);
  // Dispatch on q: prime or built-in prime power (q <= 16 for e > 1).
  static Field of_order(unsigned q);

  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  unsigned q() const { return q_; }
  const std::vector<unsigned>& modulus() const { return mod_; }

  ElemCode add(ElemCode a, ElemCode b) const { return add_[a * q_ + b]; }
  ElemCode sub(ElemCode a, ElemCode b) const { return add_[a * q_ + neg_[b]]; }
  ElemCode mul(ElemCode a, ElemCode b) const { return mul_[a * q_ + b]; }
  ElemCode neg(ElemCode a) const { return neg_[a]; }
  ElemCode inv(ElemCode a) const;
  ElemCode div(ElemCode a, ElemCode b) const { return mul(a, inv(b)); }
  ElemCode pow(ElemCode a, unsigned long long k) const;

  // Power-basis coordinates (length e, residues mod p) of a code.
  std::vector<unsigned> coords(ElemCode a) const;
  ElemCode from_coords(const std::vector<unsigned>& c) const;
  // Canonical embedding of small integers (reduction mod p on the constant
  // coordinate); for prime fields this is reduction mod q.
  ElemCode from_int(long long v) const;

  std::string elem_str(ElemCode a) const;

  bool operator==(const Field& o) const { return p_ == p_ && q_ == o.q_ && mod_ == o.mod_; }

 private:
  Field() = default;
  void build_tables();

  unsigned p_ = 0, e_ = 1, q_ = 0;
  std::vector<unsigned> mod_;  // length e+1, monic, over F_p (empty for e=1)
  std::vector<ElemCode> add_, mul_, neg_, inv_;
};

}  // namespace fqcorr
