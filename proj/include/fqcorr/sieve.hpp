#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fqcorr/poly.hpp"

namespace fqcorr {

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Extended factorization type: the multiset of (degree, multiplicity) pairs of
// the irreducible factorization, one entry per distinct prime, canonically
// sorted. Equality is structural.
struct ExtFactType {
  std::vector<std::pair<int, int>> parts;

  void canonicalize();
  int total_degree() const;
  bool is_squarefree() const;
  // Squarefree types correspond to partitions (parts = factor degrees).
  std::vector<int> as_partition() const;
  static ExtFactType from_partition(const std::vector<int>& parts);

  std::string str() const;            // "(1,1)(2,3)"
  static ExtFactType parse(const std::string& s);

  bool operator==(const ExtFactType& o) const { return parts == o.parts; }
  bool operator<(const ExtFactType& o) const { return parts < o.parts; }
};

// Full trial-division factorization, monic prime factors in (degree, index)
// order. Independent of the sieve; used as the spot-check oracle.
std::vector<std::pair<Poly, int>> factor_one(const Poly& f);
ExtFactType eft_of_poly(const Poly& f);

bool is_squarefree(const Poly& f);
bool is_irreducible(const Poly& f);  // trial division by all monics of degree <= deg f / 2

// Number of distinct roots in the base field; computed both by direct
// evaluation and as deg gcd(f, T^q - T), which must agree.
int distinct_roots_in_base(const Poly& delta);

long long euler_phi(const Poly& m);  // #(F_q[T]/m)^x

// (1/n) sum_{d | n} mu(d) q^{n/d}: count of monic irreducibles of degree n.
long long gauss_irreducible_count(unsigned q, int n);

Poly first_squarefree_monic(const Field& f, int degree);  // least in index order

// Smallest-factor sieve over all monic polynomials of degree <= max_degree,
// with interned factorization types. One uint32 type id per polynomial.
class FactorSieve {
 public:
  FactorSieve(const Field& f, int max_degree, std::uint64_t entry_cap = 100000000ULL);

  const Field& field() const { return *f_; }
  int max_degree() const { return max_deg_; }

  std::uint32_t eft_id(int degree, std::uint64_t monic_idx) const {
    return eft_[degree][monic_idx];
  }
  std::uint32_t eft_id_of(const Poly& f) const;  // any nonzero f; uses monic normalization
  const ExtFactType& eft(std::uint32_t id) const { return types_[id]; }
  const ExtFactType& eft_of(const Poly& f) const { return types_[eft_id_of(f)]; }
  std::uint32_t num_types() const { return (std::uint32_t)types_.size(); }

  bool is_irreducible_idx(int degree, std::uint64_t monic_idx) const;
  long long irreducible_count(int degree) const { return irred_count_[degree]; }

  // Histogram of type ids over monic polynomials of one degree.
  const std::vector<long long>& type_counts(int degree) const { return counts_[degree]; }

  // Optional binary cache (see cache_dir in the CLI).
  static std::string cache_file_name(const Field& f, int max_degree);
  bool save_cache(const std::string& path) const;
  // Returns null if the file is absent or does not match (q, max_degree).
  static std::unique_ptr<FactorSieve> load_cache(const Field& f, int max_degree,
                                                 const std::string& path);

 private:
  FactorSieve() = default;
  const Field* f_;
  int max_deg_;
  std::vector<std::vector<std::uint32_t>> eft_;     // per degree, size q^d
  std::vector<std::vector<std::uint64_t>> spf_;     // smallest-factor global key
  std::vector<ExtFactType> types_;
  std::map<ExtFactType, std::uint32_t> type_ids_;
  std::vector<long long> irred_count_;
  std::vector<std::vector<long long>> counts_;

  std::uint32_t intern(const ExtFactType& t);
  void build();
};

}  // namespace fqcorr
