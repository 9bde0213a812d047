#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dynpred {

/// Undirected simple graph under edge flips, adjacency-matrix backed.
class FlipGraph {
 public:
  FlipGraph() : FlipGraph(0) {}
  explicit FlipGraph(std::size_t n) : n_(n), adj_(n * n, 0) {}

  [[nodiscard]] std::size_t size() const { return n_; }

  [[nodiscard]] bool has_edge(std::size_t u, std::size_t v) const {
    return adj_[u * n_ + v] != 0;
  }

  void set_edge(std::size_t u, std::size_t v, bool present) {
    check(u, v);
    adj_[u * n_ + v] = adj_[v * n_ + u] = present ? 1 : 0;
  }

  /// Insert if absent, remove otherwise. Returns true when the edge is
  /// present after the flip.
  bool flip(std::size_t u, std::size_t v) {
    check(u, v);
    const bool now = !has_edge(u, v);
    set_edge(u, v, now);
    return now;
  }

  [[nodiscard]] std::vector<std::size_t> neighbors(std::size_t u) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < n_; ++v)
      if (has_edge(u, v)) out.push_back(v);
    return out;
  }

  [[nodiscard]] std::size_t edge_count() const {
    std::size_t m = 0;
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v) m += has_edge(u, v) ? 1 : 0;
    return m;
  }

  friend bool operator==(const FlipGraph&, const FlipGraph&) = default;

 private:
  void check(std::size_t u, std::size_t v) const {
    if (u >= n_ || v >= n_) throw std::out_of_range("FlipGraph: vertex out of range");
    if (u == v) throw std::invalid_argument("FlipGraph: self-loop");
  }

  std::size_t n_;
  std::vector<std::uint8_t> adj_;
};

/// Directed simple graph under edge flips.
class DiGraph {
 public:
  DiGraph() : DiGraph(0) {}
  explicit DiGraph(std::size_t n) : n_(n), adj_(n * n, 0) {}

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] bool has_edge(std::size_t u, std::size_t v) const {
    return adj_[u * n_ + v] != 0;
  }
  void set_edge(std::size_t u, std::size_t v, bool present) {
    check(u, v);
    adj_[u * n_ + v] = present ? 1 : 0;
  }
  bool flip(std::size_t u, std::size_t v) {
    check(u, v);
    const bool now = !has_edge(u, v);
    set_edge(u, v, now);
    return now;
  }

  [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = 0; v < n_; ++v)
        if (has_edge(u, v)) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const DiGraph&, const DiGraph&) = default;

 private:
  void check(std::size_t u, std::size_t v) const {
    if (u >= n_ || v >= n_) throw std::out_of_range("DiGraph: vertex out of range");
    if (u == v) throw std::invalid_argument("DiGraph: self-loop");
  }

  std::size_t n_;
  std::vector<std::uint8_t> adj_;
};

/// Reachable set from `src` in a digraph given as adjacency bitmask rows
/// (word-packed). Used by the table-filling preprocessing loops where the
/// per-step cost matters.
inline std::vector<std::uint64_t> reach_mask(
    const std::vector<std::vector<std::uint64_t>>& adj, std::size_t n,
    std::size_t src) {
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> visited(words, 0), frontier(words, 0);
  visited[src / 64] |= 1ull << (src % 64);
  frontier[src / 64] |= 1ull << (src % 64);
  bool more = true;
  while (more) {
    more = false;
    std::vector<std::uint64_t> next(words, 0);
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = frontier[w];
      while (bits != 0) {
        const auto b = static_cast<std::size_t>(__builtin_ctzll(bits));
        bits &= bits - 1;
        const std::size_t u = w * 64 + b;
        for (std::size_t ww = 0; ww < words; ++ww) next[ww] |= adj[u][ww];
      }
    }
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t fresh = next[w] & ~visited[w];
      if (fresh != 0) more = true;
      visited[w] |= fresh;
      frontier[w] = fresh;
    }
  }
  return visited;
}

}  // namespace dynpred
