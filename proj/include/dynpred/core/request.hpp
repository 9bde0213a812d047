#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace dynpred {

enum class RequestKind : std::uint8_t { update, query };

/// One update-or-query event. The payload is an opaque problem token;
/// anything totally ordered works, which keeps multisets and maps over
/// requests deterministic.
template <typename P>
  requires std::totally_ordered<P>
struct Request {
  RequestKind kind{RequestKind::update};
  P payload{};

  [[nodiscard]] bool is_update() const { return kind == RequestKind::update; }
  [[nodiscard]] bool is_query() const { return kind == RequestKind::query; }

  friend auto operator<=>(const Request&, const Request&) = default;
};

// Sequences are stored 0-based; every API that talks about a time step t
// uses the 1-based convention, so the prefix of the first t requests is
// seq[0..t-1].
template <typename P>
using RequestSequence = std::vector<Request<P>>;

template <typename R>
[[nodiscard]] const R& at_step(const std::vector<R>& seq, std::size_t t) {
  return seq[t - 1];
}

/// Multiset view of a sequence prefix; value = multiplicity.
template <typename R>
[[nodiscard]] std::map<R, std::int64_t> prefix_counts(const std::vector<R>& seq,
                                                      std::size_t t) {
  std::map<R, std::int64_t> counts;
  for (std::size_t i = 0; i < t && i < seq.size(); ++i) ++counts[seq[i]];
  return counts;
}

}  // namespace dynpred
