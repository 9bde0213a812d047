#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "dynpred/core/request.hpp"

namespace dynpred::adversary {

/// One block B of a universal request sequence: the fixed-order request
/// list, per-request multiplicities M(x), and per-update cyclic orders.
template <typename R>
struct UniversalBlock {
  std::vector<R> requests;               // B in its universal order
  std::map<R, std::size_t> multiplicity; // M(x)
  std::map<R, std::size_t> cyclic_order; // ord(x), updates only
  std::size_t updates{0};
  std::size_t queries{0};

  static UniversalBlock from_requests(std::vector<R> reqs,
                                      std::map<R, std::size_t> ord) {
    UniversalBlock b;
    b.requests = std::move(reqs);
    b.cyclic_order = std::move(ord);
    for (const auto& r : b.requests) {
      ++b.multiplicity[r];
      if (r.is_update()) {
        ++b.updates;
        auto it = b.cyclic_order.find(r);
        if (it == b.cyclic_order.end() || it->second < 1)
          throw std::invalid_argument("UniversalBlock: update without cyclic order");
      } else {
        ++b.queries;
      }
    }
    return b;
  }

  [[nodiscard]] std::size_t size() const { return requests.size(); }

  /// Distinct requests, in universal (first-occurrence) order.
  [[nodiscard]] std::vector<R> distinct() const {
    std::vector<R> out;
    std::map<R, bool> seen;
    for (const auto& r : requests)
      if (!seen[r]) {
        seen[r] = true;
        out.push_back(r);
      }
    return out;
  }
};

/// The prediction: n3 concatenated copies of the block.
template <typename R>
std::vector<R> universal_prediction(const UniversalBlock<R>& block, std::size_t n3) {
  std::vector<R> out;
  out.reserve(block.size() * n3);
  for (std::size_t k = 0; k < n3; ++k)
    out.insert(out.end(), block.requests.begin(), block.requests.end());
  return out;
}

template <typename R>
struct PaddedSequence {
  std::vector<R> sequence;             // rho*
  std::vector<std::size_t> block_end;  // one past the end of each B*_k
};

/// The padded reduction sequence rho*: per round, the reduction's own
/// requests, then update padding in cyclic-order multiples, then query
/// padding to the exact per-round count, and a final flush of everything
/// unused (attributed to the last block; it holds fewer than ord(x) copies
/// per update and follows the last query). The result is a permutation of
/// the universal prediction with per-prefix counts N(x, k) pinned into
/// (kM(x) - ord(x), kM(x)] for updates and exactly kM(q) for queries.
template <typename R>
PaddedSequence<R> pad_locally_reducible(
    const UniversalBlock<R>& block,
    const std::vector<std::vector<R>>& per_round_subsets) {
  const std::size_t n3 = per_round_subsets.size();
  const auto distinct = block.distinct();

  // Validate: every round subset fits inside B as a multiset.
  for (const auto& sub : per_round_subsets) {
    std::map<R, std::size_t> counts;
    for (const auto& r : sub) {
      auto it = block.multiplicity.find(r);
      if (it == block.multiplicity.end() || ++counts[r] > it->second)
        throw std::invalid_argument(
            "pad_locally_reducible: round subset exceeds block multiplicities");
    }
  }

  PaddedSequence<R> out;
  auto& rho_star = out.sequence;
  std::map<R, std::size_t> used;  // N(x, rho*) so far
  for (std::size_t k = 1; k <= n3; ++k) {
    for (const auto& r : per_round_subsets[k - 1]) {
      rho_star.push_back(r);
      ++used[r];
    }
    for (const auto& x : distinct) {
      if (!x.is_update()) continue;
      const std::size_t target = k * block.multiplicity.at(x);
      const std::size_t ord = block.cyclic_order.at(x);
      const std::size_t have = used[x];
      if (have + ord > target) continue;
      const std::size_t copies = ((target - have) / ord) * ord;
      for (std::size_t c = 0; c < copies; ++c) rho_star.push_back(x);
      used[x] += copies;
    }
    for (const auto& q : distinct) {
      if (q.is_update()) continue;
      const std::size_t target = k * block.multiplicity.at(q);
      while (used[q] < target) {
        rho_star.push_back(q);
        ++used[q];
      }
    }
    out.block_end.push_back(rho_star.size());
  }
  // Flush: whatever the prediction still owes, fewer than ord(x) copies per
  // update, appended after the last query.
  for (const auto& x : distinct) {
    const std::size_t target = n3 * block.multiplicity.at(x);
    while (used[x] < target) {
      rho_star.push_back(x);
      ++used[x];
    }
  }
  if (!out.block_end.empty()) out.block_end.back() = rho_star.size();
  return out;
}

/// Occurrence counts over a sequence prefix; helper for checking the pinned
/// count inequalities against block boundaries.
template <typename R>
std::map<R, std::size_t> prefix_block_counts(const std::vector<R>& seq,
                                             std::size_t upto) {
  std::map<R, std::size_t> counts;
  for (std::size_t i = 0; i < upto && i < seq.size(); ++i) ++counts[seq[i]];
  return counts;
}

}  // namespace dynpred::adversary
