#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "dynpred/core/request.hpp"
#include "dynpred/graph/flip_graph.hpp"

namespace dynpred::subconn {

/// Subgraph connectivity request: toggle-free vertex insert/delete into the
/// active set S, or a pairwise connectivity query inside G[S].
struct Payload {
  enum class Op : std::int8_t { none = 0, add = 1, del = 2 };
  Op op{Op::none};
  std::int32_t a{-1};
  std::int32_t b{-1};
  friend auto operator<=>(const Payload&, const Payload&) = default;
};

using Req = Request<Payload>;
using Seq = RequestSequence<Payload>;

inline Req add_request(std::int32_t v) {
  return Req{RequestKind::update, Payload{Payload::Op::add, v, -1}};
}
inline Req del_request(std::int32_t v) {
  return Req{RequestKind::update, Payload{Payload::Op::del, v, -1}};
}
inline Req query_request(std::int32_t u, std::int32_t v) {
  if (u > v) std::swap(u, v);
  return Req{RequestKind::query, Payload{Payload::Op::none, u, v}};
}

/// Fixed graph plus the initial active set.
struct Instance {
  FlipGraph g;
  std::vector<std::uint8_t> s0;  // membership flags, size n
};

inline void apply_to_set(std::vector<std::uint8_t>& in_s, const Req& r) {
  if (!r.is_update()) return;
  const auto v = static_cast<std::size_t>(r.payload.a);
  if (v >= in_s.size()) throw std::out_of_range("subconn: vertex out of range");
  if (r.payload.op == Payload::Op::add) {
    if (in_s[v]) throw std::invalid_argument("subconn: inserting a present vertex");
    in_s[v] = 1;
  } else {
    if (!in_s[v]) throw std::invalid_argument("subconn: deleting an absent vertex");
    in_s[v] = 0;
  }
}

/// DFS connectivity restricted to the member vertices; the oracle for this
/// module.
inline bool connected_in_subgraph(const FlipGraph& g,
                                  const std::vector<std::uint8_t>& member,
                                  std::size_t u, std::size_t v) {
  if (u == v) return member[u] != 0;
  if (!member[u] || !member[v]) return false;
  std::vector<std::uint8_t> seen(g.size(), 0);
  std::vector<std::size_t> stack{u};
  seen[u] = 1;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    if (x == v) return true;
    for (std::size_t y = 0; y < g.size(); ++y) {
      if (seen[y] || !member[y] || !g.has_edge(x, y)) continue;
      seen[y] = 1;
      stack.push_back(y);
    }
  }
  return false;
}

struct PromiseBroken : std::runtime_error {
  PromiseBroken() : std::runtime_error("subconn: delay promise broken") {}
};

/// Per-level precomputed artifacts: change events of the permanent set and,
/// at steps where the prediction window contains a query, the active list
/// with its pairwise through-P connectivity table.
struct LevelTables {
  std::size_t d{0};
  std::vector<std::vector<std::int32_t>> enter;  // indexed by t in [0, T]
  std::vector<std::vector<std::int32_t>> leave;
  std::vector<std::uint8_t> hosted;
  std::vector<std::vector<std::int32_t>> active;
  std::vector<std::vector<std::int16_t>> active_idx;  // vertex -> slot, -1 absent
  std::vector<std::vector<std::uint8_t>> conn;        // |A| x |A|, flattened

  [[nodiscard]] bool conn_at(std::size_t t, std::int16_t i, std::int16_t j) const {
    return conn[t][static_cast<std::size_t>(i) * active[t].size() +
                   static_cast<std::size_t>(j)] != 0;
  }
};

namespace detail {

inline bool touches(const Req& r, std::size_t v) {
  const auto vv = static_cast<std::int32_t>(v);
  if (r.is_update()) return r.payload.a == vv;
  return r.payload.a == vv || r.payload.b == vv;
}

}  // namespace detail

/// Tables for one delay level, everything derived from the prediction.
/// C(u,v,t) is filled through connected components of G[P_t]: a pair of
/// active vertices is connected in G[P_t + {u,v}] iff they share an edge or
/// both touch a common component.
inline LevelTables promise_preprocess(const Instance& inst, const Seq& rhohat,
                                      std::size_t d) {
  const std::size_t n = inst.g.size();
  const std::size_t T = rhohat.size();
  LevelTables tab;
  tab.d = d;
  tab.enter.resize(T + 1);
  tab.leave.resize(T + 1);
  tab.hosted.assign(T + 1, 0);
  tab.active.resize(T + 1);
  tab.active_idx.resize(T + 1);
  tab.conn.resize(T + 1);

  // Predicted membership snapshots after each step.
  std::vector<std::vector<std::uint8_t>> shat(T + 1);
  shat[0] = inst.s0;
  for (std::size_t t = 1; t <= T; ++t) {
    shat[t] = shat[t - 1];
    apply_to_set(shat[t], rhohat[t - 1]);
  }

  std::vector<std::uint8_t> prev_p(n, 0);
  for (std::size_t t = 0; t <= T; ++t) {
    const std::size_t t1 = t > d ? t - d : (T == 0 ? 0 : 1);
    const std::size_t t2 = std::min(T, t + d);

    std::vector<std::uint8_t> touched(n, 0);
    bool has_query = false;
    for (std::size_t tau = t1; tau >= 1 && tau <= t2; ++tau) {
      const Req& r = rhohat[tau - 1];
      if (r.is_query()) {
        has_query = true;
        touched[static_cast<std::size_t>(r.payload.a)] = 1;
        touched[static_cast<std::size_t>(r.payload.b)] = 1;
      } else {
        touched[static_cast<std::size_t>(r.payload.a)] = 1;
      }
    }

    std::vector<std::uint8_t> in_p(n, 0);
    for (std::size_t v = 0; v < n; ++v)
      in_p[v] = (!touched[v] && (T == 0 ? inst.s0[v] : shat[t1 >= 1 ? t1 : 0][v])) ? 1 : 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (in_p[v] && !prev_p[v]) tab.enter[t].push_back(static_cast<std::int32_t>(v));
      if (!in_p[v] && prev_p[v]) tab.leave[t].push_back(static_cast<std::int32_t>(v));
    }
    prev_p = in_p;

    tab.hosted[t] = (t >= 1 && has_query) ? 1 : 0;
    if (!tab.hosted[t]) continue;

    for (std::size_t v = 0; v < n; ++v)
      if (touched[v]) tab.active[t].push_back(static_cast<std::int32_t>(v));
    tab.active_idx[t].assign(n, -1);
    for (std::size_t i = 0; i < tab.active[t].size(); ++i)
      tab.active_idx[t][static_cast<std::size_t>(tab.active[t][i])] =
          static_cast<std::int16_t>(i);

    // Components of G[P_t] by DFS.
    std::vector<std::int32_t> comp(n, -1);
    std::int32_t ncomp = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_p[v] || comp[v] >= 0) continue;
      std::vector<std::size_t> stack{v};
      comp[v] = ncomp;
      while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        for (std::size_t y = 0; y < n; ++y) {
          if (!in_p[y] || comp[y] >= 0 || !inst.g.has_edge(x, y)) continue;
          comp[y] = ncomp;
          stack.push_back(y);
        }
      }
      ++ncomp;
    }

    // Component sets adjacent to each active vertex, as bit words.
    const std::size_t words = (static_cast<std::size_t>(ncomp) + 63) / 64;
    const auto& act = tab.active[t];
    std::vector<std::vector<std::uint64_t>> reach_comp(
        act.size(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < act.size(); ++i) {
      const auto u = static_cast<std::size_t>(act[i]);
      for (std::size_t y = 0; y < n; ++y)
        if (in_p[y] && inst.g.has_edge(u, y)) {
          const auto c = static_cast<std::size_t>(comp[y]);
          reach_comp[i][c / 64] |= 1ull << (c % 64);
        }
    }
    tab.conn[t].assign(act.size() * act.size(), 0);
    for (std::size_t i = 0; i < act.size(); ++i) {
      for (std::size_t j = 0; j < act.size(); ++j) {
        bool c = i == j;
        c = c || inst.g.has_edge(static_cast<std::size_t>(act[i]),
                                 static_cast<std::size_t>(act[j]));
        for (std::size_t w = 0; !c && w < words; ++w)
          c = (reach_comp[i][w] & reach_comp[j][w]) != 0;
        tab.conn[t][i * act.size() + j] = c ? 1 : 0;
      }
    }
  }
  return tab;
}

struct Stats {
  std::optional<std::size_t> dstar;
  std::uint64_t scanned_vertices{0};
  std::size_t q_size{0};
};

/// Online state over one or more delay levels. With one level the query
/// throws PromiseBroken when that level cannot serve; with a ladder it
/// falls back to a full DFS instead.
class SubConn {
 public:
  SubConn(Instance inst, Seq rhohat, std::vector<std::size_t> ds, bool promise_mode)
      : inst_(std::move(inst)),
        rhohat_(std::move(rhohat)),
        promise_mode_(promise_mode),
        in_s_(inst_.s0) {
    for (auto d : ds) {
      Level lvl;
      lvl.tab = promise_preprocess(inst_, rhohat_, d);
      lvl.in_p.assign(inst_.g.size(), 0);
      for (std::size_t v = 0; v < inst_.g.size(); ++v)
        if (in_s_[v]) lvl.q_set.insert(static_cast<std::int32_t>(v));
      levels_.push_back(std::move(lvl));
    }
    for (auto& lvl : levels_) slide(lvl, 0);
  }

  static SubConn promise(Instance inst, Seq rhohat, std::size_t d) {
    return SubConn(std::move(inst), std::move(rhohat), {d}, true);
  }

  /// Doubling levels reach 2n so certified delays near n still land on a
  /// level before the full-DFS fallback.
  static SubConn agnostic(Instance inst, Seq rhohat) {
    std::vector<std::size_t> ds{0};
    const std::size_t n = std::max<std::size_t>(2, inst.g.size());
    for (std::size_t d = 1; d / 2 < 2 * n; d *= 2) ds.push_back(d);
    return SubConn(std::move(inst), std::move(rhohat), std::move(ds), false);
  }

  /// Advance to step t (1-based) and apply the actual request to S.
  void apply(std::size_t t, const Req& r) {
    for (auto& lvl : levels_) slide(lvl, t);
    if (!r.is_update()) return;
    const auto v = static_cast<std::size_t>(r.payload.a);
    const bool adding = r.payload.op == Payload::Op::add;
    apply_to_set(in_s_, r);
    for (auto& lvl : levels_) {
      if (adding) {
        if (lvl.in_p[v])
          --lvl.violations;
        else
          lvl.q_set.insert(static_cast<std::int32_t>(v));
      } else {
        if (lvl.in_p[v])
          ++lvl.violations;
        else
          lvl.q_set.erase(static_cast<std::int32_t>(v));
      }
    }
  }

  [[nodiscard]] bool query(std::size_t t, std::size_t u, std::size_t v) {
    if (u >= inst_.g.size() || v >= inst_.g.size())
      throw std::out_of_range("subconn: queried vertex out of range");
    if (!in_s_[u] || !in_s_[v])
      throw std::invalid_argument("subconn: queried vertex not in S");
    stats_ = Stats{};
    if (u == v) return true;
    for (auto& lvl : levels_) {
      if (lvl.violations != 0) continue;
      if (lvl.q_set.size() > 4 * lvl.tab.d + 2) continue;
      if (t >= lvl.tab.hosted.size() || !lvl.tab.hosted[t]) continue;
      const auto& idx = lvl.tab.active_idx[t];
      if (idx[u] < 0 || idx[v] < 0) continue;
      bool covered = true;
      for (auto w : lvl.q_set)
        if (idx[static_cast<std::size_t>(w)] < 0) {
          covered = false;
          break;
        }
      if (!covered) continue;
      stats_.dstar = lvl.tab.d;
      stats_.q_size = lvl.q_set.size();
      return promise_query(lvl, t, u, v);
    }
    if (promise_mode_) throw PromiseBroken{};
    stats_.scanned_vertices = inst_.g.size();
    return connected_in_subgraph(inst_.g, in_s_, u, v);
  }

  [[nodiscard]] const Stats& stats() const { return stats_; }
  [[nodiscard]] std::size_t level_q_size(std::size_t i) const {
    return levels_[i].q_set.size();
  }
  [[nodiscard]] bool level_p_in_s(std::size_t i) const {
    return levels_[i].violations == 0;
  }
  [[nodiscard]] std::size_t level_count() const { return levels_.size(); }
  [[nodiscard]] std::size_t level_delay(std::size_t i) const {
    return levels_[i].tab.d;
  }
  [[nodiscard]] const std::vector<std::uint8_t>& current_set() const { return in_s_; }
  [[nodiscard]] const Instance& instance() const { return inst_; }

 private:
  struct Level {
    LevelTables tab;
    std::vector<std::uint8_t> in_p;
    std::set<std::int32_t> q_set;  // S_t \ P_t
    std::size_t violations{0};     // |P_t \ S_t|
  };

  void slide(Level& lvl, std::size_t t) {
    if (t >= lvl.tab.enter.size()) return;  // past the prediction horizon
    for (auto v : lvl.tab.enter[t]) {
      lvl.in_p[static_cast<std::size_t>(v)] = 1;
      if (in_s_[static_cast<std::size_t>(v)])
        lvl.q_set.erase(v);
      else
        ++lvl.violations;
    }
    for (auto v : lvl.tab.leave[t]) {
      lvl.in_p[static_cast<std::size_t>(v)] = 0;
      if (in_s_[static_cast<std::size_t>(v)])
        lvl.q_set.insert(v);
      else
        --lvl.violations;
    }
  }

  /// H_t on Q_t + {u, v}: induced edges of G plus shortcuts where the
  /// tabulated through-P connectivity is 1, then DFS.
  bool promise_query(const Level& lvl, std::size_t t, std::size_t u, std::size_t v) {
    std::vector<std::int32_t> verts(lvl.q_set.begin(), lvl.q_set.end());
    if (std::find(verts.begin(), verts.end(), static_cast<std::int32_t>(u)) ==
        verts.end())
      verts.push_back(static_cast<std::int32_t>(u));
    if (std::find(verts.begin(), verts.end(), static_cast<std::int32_t>(v)) ==
        verts.end())
      verts.push_back(static_cast<std::int32_t>(v));
    stats_.scanned_vertices = verts.size();

    const std::size_t m = verts.size();
    const auto& idx = lvl.tab.active_idx[t];
    std::vector<std::uint8_t> adj(m * m, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        const auto a = static_cast<std::size_t>(verts[i]);
        const auto b = static_cast<std::size_t>(verts[j]);
        bool e = inst_.g.has_edge(a, b);
        e = e || lvl.tab.conn_at(t, idx[a], idx[b]);
        adj[i * m + j] = e ? 1 : 0;
      }

    std::size_t src = 0, dst = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (verts[i] == static_cast<std::int32_t>(u)) src = i;
      if (verts[i] == static_cast<std::int32_t>(v)) dst = i;
    }
    std::vector<std::uint8_t> seen(m, 0);
    std::vector<std::size_t> stack{src};
    seen[src] = 1;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      if (x == dst) return true;
      for (std::size_t y = 0; y < m; ++y)
        if (!seen[y] && adj[x * m + y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    return false;
  }

  Instance inst_;
  Seq rhohat_;
  bool promise_mode_;
  std::vector<std::uint8_t> in_s_;
  std::vector<Level> levels_;
  Stats stats_;
};

}  // namespace dynpred::subconn
