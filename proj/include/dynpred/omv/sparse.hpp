#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dynpred/omv/bool_matrix.hpp"

namespace dynpred::omv {

/// Column partition of [n2] into groups of size floor(n2^t); the last group
/// may be smaller.
inline std::vector<std::vector<std::size_t>> support_partition(std::size_t n2,
                                                               double t) {
  if (!(t > 0.0) || t > 1.0)
    throw std::invalid_argument("support_partition: t must be in (0, 1]");
  auto group = static_cast<std::size_t>(std::floor(std::pow(double(n2), t)));
  if (group == 0) group = 1;
  std::vector<std::vector<std::size_t>> parts;
  for (std::size_t start = 0; start < n2; start += group) {
    std::vector<std::size_t> p;
    for (std::size_t j = start; j < std::min(n2, start + group); ++j) p.push_back(j);
    parts.push_back(std::move(p));
  }
  return parts;
}

/// Answers each query by summing restricted products M (v|_{S_i}) over the
/// column partition; output identical to bool_mv per query.
inline std::vector<BitString> sparse_partition_solve(
    const BoolMatrix& m, const std::vector<BitString>& queries, double t) {
  const auto parts = support_partition(m.cols(), t);
  std::vector<BitString> out;
  out.reserve(queries.size());
  for (const auto& v : queries) {
    if (v.size() != m.cols())
      throw std::invalid_argument("sparse_partition_solve: dimension mismatch");
    BitString acc(m.rows(), 0);
    BitString restricted(m.cols(), 0);
    for (const auto& part : parts) {
      std::fill(restricted.begin(), restricted.end(), 0);
      for (auto j : part) restricted[j] = v[j];
      const auto partial = bool_mv(m, restricted);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] |= partial[i];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace dynpred::omv
