#include "fqcorr/partitions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fqcorr {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) throw std::domain_error("partition parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1])
      throw std::domain_error("partition parts must be non-increasing");
  }
}

int Partition::n() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

Partition Partition::conjugate() const {
  Partition c;
  if (parts.empty()) return c;
  c.parts.assign(parts[0], 0);
  for (int p : parts)
    for (int j = 0; j < p; ++j) ++c.parts[j];
  return c;
}

bool Partition::is_hook() const {
  for (size_t i = 1; i < parts.size(); ++i)
    if (parts[i] != 1) return false;
  return !parts.empty();
}

long long Partition::z() const {
  long long zz = 1;
  int run = 0, prev = 0;
  auto flush = [&] {
    for (int i = 1; i <= run; ++i) zz *= i;     // m_i!
    for (int i = 0; i < run; ++i) zz *= prev;   // i^{m_i}
  };
  for (int p : parts) {
    if (p == prev) {
      ++run;
    } else {
      flush();
      prev = p;
      run = 1;
    }
  }
  flush();
  return zz;
}

long long Partition::hook_dimension() const {
  Partition conj = conjugate();
  __int128 num = factorial(n());
  for (int i = 0; i < length(); ++i)
    for (int j = 0; j < parts[i]; ++j) {
      long long hook = (parts[i] - j) + (conj.parts[j] - i) - 1;
      num /= hook;
    }
  return (long long)num;
}

std::string Partition::str() const {
  std::string s = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  return s + ")";
}

Partition Partition::parse(const std::string& s) {
  std::vector<int> p;
  std::string body = s;
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') throw std::invalid_argument("bad partition: " + s);
    body = body.substr(1, body.size() - 2);
  }
  size_t pos = 0;
  while (pos < body.size()) {
    size_t comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    p.push_back(std::stoi(body.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return Partition(p);
}

namespace {

void gen_partitions(int remaining, int max_part, std::vector<int>& cur,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(Partition(cur));
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    gen_partitions(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

std::map<int, std::vector<Partition>> partition_cache;
std::mutex partition_mutex;

}  // namespace

const std::vector<Partition>& partitions_of(int n) {
  if (n < 0) throw std::domain_error("partitions_of negative n");
  std::lock_guard<std::mutex> lock(partition_mutex);
  auto it = partition_cache.find(n);
  if (it != partition_cache.end()) return it->second;
  std::vector<Partition> out;
  std::vector<int> cur;
  gen_partitions(n, n, cur, out);
  if (n == 0) out = {Partition()};
  return partition_cache.emplace(n, std::move(out)).first->second;
}

int partition_index(int n, const Partition& p) {
  const auto& all = partitions_of(n);
  for (size_t i = 0; i < all.size(); ++i)
    if (all[i] == p) return (int)i;
  throw std::domain_error("partition " + p.str() + " is not a partition of " + std::to_string(n));
}

namespace {

// Murnaghan-Nakayama on beta-numbers: remove a border strip of length r.
long long mn_recurse(std::vector<int> beta, const std::vector<int>& mu, size_t mi) {
  // drop trailing structure: beta sorted descending, distinct
  if (mi == mu.size()) return 1;
  int r = mu[mi];
  long long total = 0;
  for (size_t i = 0; i < beta.size(); ++i) {
    int target = beta[i] - r;
    if (target < 0) continue;
    bool occupied = false;
    int height = 0;
    for (size_t j = 0; j < beta.size(); ++j) {
      if (j == i) continue;
      if (beta[j] == target) { occupied = true; break; }
      if (beta[j] > target && beta[j] < beta[i]) ++height;
    }
    if (occupied) continue;
    std::vector<int> nb = beta;
    nb[i] = target;
    std::sort(nb.rbegin(), nb.rend());
    long long sub = mn_recurse(std::move(nb), mu, mi + 1);
    total += (height % 2 == 0) ? sub : -sub;
  }
  return total;
}

}  // namespace

long long sn_character(const Partition& lambda, const Partition& mu) {
  if (lambda.n() != mu.n())
    throw std::domain_error("sn_character: partitions of different n");
  int len = lambda.length();
  std::vector<int> beta(len);
  for (int i = 0; i < len; ++i) beta[i] = lambda.parts[i] + (len - 1 - i);
  return mn_recurse(std::move(beta), mu.parts, 0);
}

CharacterTable::CharacterTable(int n) : n_(n) {
  const auto& ps = partitions_of(n);
  values_.resize(ps.size());
  class_sizes_.resize(ps.size());
  for (size_t m = 0; m < ps.size(); ++m) class_sizes_[m] = ps[m].class_size();
  for (size_t l = 0; l < ps.size(); ++l) {
    values_[l].resize(ps.size());
    for (size_t m = 0; m < ps.size(); ++m) values_[l][m] = sn_character(ps[l], ps[m]);
  }
}

const CharacterTable& CharacterTable::get(int n) {
  if (n < 1 || n > 12) throw std::domain_error("character table cached for 1 <= n <= 12");
  static std::map<int, CharacterTable> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, CharacterTable(n)).first;
  return it->second;
}

}  // namespace fqcorr
