#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fqcorr/poly.hpp"

namespace fqcorr {

// Digit-wise shift of a monic stripped index by a fixed polynomial of smaller
// degree; addition is coefficientwise so no carries cross digits.
struct IndexShift {
  std::vector<std::vector<std::int64_t>> contrib;  // per position, per digit code

  IndexShift(const Field& f, const Poly& delta, int n) {
    int d = delta.degree();
    if (d >= n) throw std::domain_error("shift degree must be below n");
    contrib.resize(std::max(d + 1, 0));
    std::uint64_t mul = 1;
    for (int j = 0; j <= d; ++j, mul *= f.q()) {
      contrib[j].resize(f.q());
      for (unsigned a = 0; a < f.q(); ++a)
        contrib[j][a] = ((std::int64_t)f.add((ElemCode)a, delta.coeff(j)) - (std::int64_t)a) *
                        (std::int64_t)mul;
    }
  }

  std::uint64_t apply(std::uint64_t idx, const std::vector<ElemCode>& low) const {
    std::int64_t out = (std::int64_t)idx;
    for (size_t j = 0; j < contrib.size(); ++j) out += contrib[j][low[j]];
    return (std::uint64_t)out;
  }
};

}  // namespace fqcorr
