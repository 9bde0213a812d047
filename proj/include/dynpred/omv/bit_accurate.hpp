#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dynpred/omv/bool_matrix.hpp"
#include "dynpred/omv/eh_solver.hpp"

namespace dynpred::omv {

/// A partially specified vector over {0, 1, *}.
enum class TriBit : std::uint8_t { zero = 0, one = 1, star = 2 };
using TriVector = std::vector<TriBit>;

struct BitAccurateResult {
  std::vector<BitString> products;
  std::vector<std::uint64_t> round_probes;  // per-round correction work
};

/// Solver for b-bit-accurate predictions: the known 1-bits of each round are
/// folded into a precomputed product, the online phase only multiplies over
/// the starred positions. Per-round correction work is <= n*(n - b) + O(n).
inline BitAccurateResult bit_accurate_solve(const BoolMatrix& m,
                                            const std::vector<TriVector>& partials,
                                            const std::vector<BitString>& online) {
  if (partials.size() != online.size())
    throw std::invalid_argument("bit_accurate_solve: round count mismatch");
  const std::size_t n_cols = m.cols();
  const std::size_t n_rows = m.rows();

  // Precompute M v'_k where v'_k takes exactly the known 1-bits.
  std::vector<IntVector> fixed_products;
  std::vector<std::vector<std::size_t>> stars;
  for (const auto& p : partials) {
    if (p.size() != n_cols)
      throw std::invalid_argument("bit_accurate_solve: partial dimension mismatch");
    BitString vp(n_cols, 0);
    std::vector<std::size_t> star_cols;
    for (std::size_t j = 0; j < n_cols; ++j) {
      if (p[j] == TriBit::one) vp[j] = 1;
      if (p[j] == TriBit::star) star_cols.push_back(j);
    }
    IntVector y(n_rows, 0);
    for (std::size_t i = 0; i < n_rows; ++i)
      for (std::size_t j = 0; j < n_cols; ++j)
        if (m.get(i, j) && vp[j]) ++y[i];
    fixed_products.push_back(std::move(y));
    stars.push_back(std::move(star_cols));
  }

  BitAccurateResult res;
  for (std::size_t k = 0; k < online.size(); ++k) {
    const auto& v = online[k];
    if (v.size() != n_cols)
      throw std::invalid_argument("bit_accurate_solve: online dimension mismatch");
    for (std::size_t j = 0; j < n_cols; ++j) {
      const TriBit p = partials[k][j];
      if (p != TriBit::star && static_cast<std::uint8_t>(p) != v[j])
        throw std::invalid_argument("bit_accurate_solve: fill contradicts a fixed bit");
    }
    IntVector y = fixed_products[k];
    std::uint64_t probes = n_rows;  // result init
    for (auto j : stars[k]) {
      if (!v[j]) continue;
      for (std::size_t i = 0; i < n_rows; ++i) {
        y[i] += m.get(i, j) ? 1 : 0;
        ++probes;
      }
    }
    BitString out(n_rows, 0);
    for (std::size_t i = 0; i < n_rows; ++i) out[i] = y[i] > 0;
    res.products.push_back(std::move(out));
    res.round_probes.push_back(probes);
  }
  return res;
}

}  // namespace dynpred::omv
