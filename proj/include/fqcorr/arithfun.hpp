#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>

#include "fqcorr/partitions.hpp"
#include "fqcorr/sieve.hpp"

namespace fqcorr {

using Complex = std::complex<double>;

// Arithmetic functions whose value depends only on the extended factorization
// type. Builtins carry exact rational (in fact integer) values; user tables
// may be rational or complex.
class FactorizationFunction {
 public:
  enum class Kind { Mobius, VonMangoldt, DivisorK, SnCharacter, IndicatorEft, UserTable };

  static FactorizationFunction mobius();
  static FactorizationFunction von_mangoldt();
  static FactorizationFunction divisor(int k);              // k >= 2
  static FactorizationFunction sn_character(Partition lam); // chi_{lambda,q}
  static FactorizationFunction indicator(ExtFactType nu);
  static FactorizationFunction user_table(int degree,
                                          std::map<ExtFactType, Complex> values,
                                          std::map<ExtFactType, Rational> exact = {});
  // Text lines: EFT := (d1,e1)(d2,e2)... ; value := rational-or-complex
  static FactorizationFunction load_user_table(const std::string& path);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool exact() const { return exact_; }
  // Degree the function is pinned to (SnCharacter / IndicatorEft / UserTable),
  // or -1 when defined on every degree.
  int fixed_degree() const { return fixed_degree_; }

  Complex value(const ExtFactType& t) const;
  Rational rational_value(const ExtFactType& t) const;  // throws when !exact()

 private:
  FactorizationFunction() = default;
  Kind kind_;
  std::string name_;
  bool exact_ = true;
  int fixed_degree_ = -1;
  int k_ = 0;
  Partition lambda_;
  ExtFactType nu_;
  std::map<ExtFactType, Complex> table_;
  std::map<ExtFactType, Rational> exact_table_;
};

// Per-sieve evaluation table: one value per interned factorization type.
struct ValueTable {
  std::vector<Complex> values;               // by eft id
  std::optional<std::vector<Rational>> exact;

  Complex at(std::uint32_t eft_id) const { return values[eft_id]; }
};

ValueTable make_value_table(const FactorizationFunction& a, const FactorSieve& sieve);

// alpha(lambda_f) for a single polynomial; factors via the sieve when the
// degree is covered, otherwise by trial division.
Complex evaluate(const FactorizationFunction& a, const Poly& f, const FactorSieve* sieve = nullptr);

enum class Domain { Monic, All };

struct MeanValue {
  Complex value;
  std::optional<Rational> exact;
};

// E over monic (resp. all) degree-n polynomials, exact for exact functions.
MeanValue mean(const FactorizationFunction& a, int n, Domain domain, const FactorSieve& sieve);

// E over f in A_{n-1,q} of alpha(f * T); exhaustive.
MeanValue shifted_mean_with_linear_factor(const FactorizationFunction& a, int n,
                                          const FactorSieve& sieve);

// max over monic degree-n polynomials of |alpha| (realized types only).
double max_abs(const FactorizationFunction& a, int n, const FactorSieve& sieve);

// Name forms: Lambda | mu | dK (K >= 2) | chi:3,1 | ind:(1,1)(2,1) | table:PATH
FactorizationFunction parse_function(const std::string& spec);

}  // namespace fqcorr
