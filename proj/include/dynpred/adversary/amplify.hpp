#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dynpred/core/rng.hpp"

namespace dynpred::adversary {

/// Request amplification: a uniformly random interleaving of rho with
/// ceil(1/(1-eps)) * T copies of the fixed query qstar. rho stays a
/// subsequence; the added queries never change the underlying data.
template <typename R>
std::vector<R> eps_amplify(const std::vector<R>& rho, const R& qstar, double eps,
                           Rng& rng) {
  if (!qstar.is_query())
    throw std::invalid_argument("eps_amplify: qstar must be a query");
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("eps_amplify: eps must be in (0, 1)");
  const std::size_t T = rho.size();
  const auto a = static_cast<std::size_t>(std::ceil(1.0 / (1.0 - eps)));
  const std::size_t total = (a + 1) * T;

  // Choose the positions carrying rho by a Fisher-Yates selection, then
  // place rho in order.
  std::vector<std::size_t> perm(total);
  for (std::size_t i = 0; i < total; ++i) perm[i] = i;
  for (std::size_t i = 0; i < T; ++i) {
    const std::size_t j = i + uniform_below(rng, total - i);
    std::swap(perm[i], perm[j]);
  }
  std::vector<bool> carries(total, false);
  for (std::size_t i = 0; i < T; ++i) carries[perm[i]] = true;

  std::vector<R> out;
  out.reserve(total);
  std::size_t next = 0;
  for (std::size_t i = 0; i < total; ++i)
    out.push_back(carries[i] ? rho[next++] : qstar);
  return out;
}

/// Greedy subsequence containment check.
template <typename R>
bool contains_subsequence(const std::vector<R>& seq, const std::vector<R>& sub) {
  std::size_t j = 0;
  for (const auto& r : seq)
    if (j < sub.size() && r == sub[j]) ++j;
  return j == sub.size();
}

}  // namespace dynpred::adversary
