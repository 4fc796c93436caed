#pragma once

#include <string>
#include <vector>

#include "fqcorr/rational.hpp"

namespace fqcorr {

// Integer partition with non-increasing positive parts.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p);

  int n() const;
  int length() const { return (int)parts.size(); }
  int part(int i) const { return (i >= 0 && i < length()) ? parts[i] : 0; }
  Partition conjugate() const;
  bool is_hook() const;  // (r, 1^{n-r})

  // z = prod i^{m_i} m_i!; class size in S_n is n!/z.
  long long z() const;
  long long class_size() const { return factorial(n()) / z(); }

  // Dimension of the irreducible via the hook length formula.
  long long hook_dimension() const;

  std::string str() const;  // "(3,1,1)"
  static Partition parse(const std::string& s);  // "3,1,1" or "(3,1,1)"

  bool operator==(const Partition& o) const { return parts == o.parts; }
  bool operator<(const Partition& o) const { return parts < o.parts; }
};

// All partitions of n in reverse-lexicographic order: (n) first, (1^n) last.
const std::vector<Partition>& partitions_of(int n);
int partition_index(int n, const Partition& p);

// Irreducible character chi_lambda evaluated on the class mu, both of the
// same n, by the Murnaghan-Nakayama rule. Exact.
long long sn_character(const Partition& lambda, const Partition& mu);

// Cached class-by-partition table for one n (built once, then shared).
class CharacterTable {
 public:
  explicit CharacterTable(int n);
  int n() const { return n_; }
  const std::vector<Partition>& partitions() const { return partitions_of(n_); }
  long long value(int lambda_idx, int mu_idx) const {
    return values_[lambda_idx][mu_idx];
  }
  long long class_size(int mu_idx) const { return class_sizes_[mu_idx]; }

  static const CharacterTable& get(int n);  // cached, n <= 12

 private:
  int n_;
  std::vector<std::vector<long long>> values_;
  std::vector<long long> class_sizes_;
};

}  // namespace fqcorr
