#pragma once

#include <cstdint>
#include <vector>

#include "dynpred/adversary/universal.hpp"
#include "dynpred/adversary/workload_pair.hpp"
#include "dynpred/core/delay.hpp"
#include "dynpred/core/list_prediction.hpp"
#include "dynpred/omv/bool_matrix.hpp"
#include "dynpred/problems/striangle.hpp"

namespace dynpred::adversary {

struct StriInstance {
  FlipGraph g0;
  std::size_t s{0};
};

using StriWorkload = WorkloadPair<StriInstance, striangle::Payload, std::int64_t>;

namespace detail {

/// Vertex layout shared by the reductions: s = 0, u_i = i, v_j = n + j
/// (1-based i, j), plus an optional junk vertex 2n + 1.
inline std::int32_t u_vertex(std::size_t i) { return static_cast<std::int32_t>(i + 1); }
inline std::int32_t v_vertex(std::size_t n, std::size_t j) {
  return static_cast<std::int32_t>(n + j + 1);
}

inline FlipGraph matrix_graph(const omv::OuMvInstance& inst, std::size_t extra) {
  const std::size_t n = inst.M.rows();
  FlipGraph g(2 * n + 1 + extra);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (inst.M.get(i, j))
        g.set_edge(static_cast<std::size_t>(u_vertex(i)),
                   static_cast<std::size_t>(v_vertex(n, j)), true);
  return g;
}

}  // namespace detail

/// Baseline reduction: per round, flip exactly the s-edges whose indicator
/// must change, then query. Query answer > 0 iff the round's bit is 1.
/// The prediction is the sequence itself (identity certificate).
inline StriWorkload gen_striangle_oumv(const omv::OuMvInstance& inst) {
  const std::size_t n = inst.M.rows();
  StriInstance instance{detail::matrix_graph(inst, 0), 0};

  striangle::Seq rho;
  std::vector<std::int64_t> answers;
  striangle::Baseline sim(instance.g0, instance.s);
  for (const auto& [u, v] : inst.pairs) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(detail::u_vertex(i));
      if (sim.graph().has_edge(0, ui) != (u[i] != 0)) {
        const auto r = striangle::flip_request(0, detail::u_vertex(i));
        sim.apply(r);
        rho.push_back(r);
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      const auto vj = static_cast<std::size_t>(detail::v_vertex(n, j));
      if (sim.graph().has_edge(0, vj) != (v[j] != 0)) {
        const auto r = striangle::flip_request(0, detail::v_vertex(n, j));
        sim.apply(r);
        rho.push_back(r);
      }
    }
    rho.push_back(striangle::query_request());
    answers.push_back(sim.count());
  }

  StriWorkload wl;
  wl.instance = std::move(instance);
  wl.rho = rho;
  wl.rhohat = std::move(rho);
  wl.cert = DelayCertificate::identity(wl.rho.size());
  wl.answers = std::move(answers);
  return wl;
}

struct TwoListStriangle {
  StriInstance instance;
  ListPrediction<striangle::Req> prediction;  // L = 2
  striangle::Seq rho;
  std::vector<std::int64_t> answers;
};

/// Junk-vertex reduction: each round performs exactly n flips for u and n
/// for v, targeting s when the indicator must change and the junk vertex t
/// otherwise, so every step has the generic 2-element candidate list.
inline TwoListStriangle gen_2list_striangle(const omv::OuMvInstance& inst) {
  const std::size_t n = inst.M.rows();
  TwoListStriangle out;
  out.instance = StriInstance{detail::matrix_graph(inst, 1), 0};
  const auto junk = static_cast<std::int32_t>(2 * n + 1);

  striangle::Baseline sim(out.instance.g0, out.instance.s);
  out.prediction.bound = 2;
  for (const auto& [u, v] : inst.pairs) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto target = detail::u_vertex(i);
      const bool need =
          sim.graph().has_edge(0, static_cast<std::size_t>(target)) != (u[i] != 0);
      const auto r = need ? striangle::flip_request(0, target)
                          : striangle::flip_request(junk, target);
      sim.apply(r);
      out.rho.push_back(r);
      out.prediction.slots.push_back(
          {striangle::flip_request(0, target), striangle::flip_request(junk, target)});
    }
    for (std::size_t j = 0; j < n; ++j) {
      const auto target = detail::v_vertex(n, j);
      const bool need =
          sim.graph().has_edge(0, static_cast<std::size_t>(target)) != (v[j] != 0);
      const auto r = need ? striangle::flip_request(0, target)
                          : striangle::flip_request(junk, target);
      sim.apply(r);
      out.rho.push_back(r);
      out.prediction.slots.push_back(
          {striangle::flip_request(0, target), striangle::flip_request(junk, target)});
    }
    out.rho.push_back(striangle::query_request());
    out.prediction.slots.push_back({striangle::query_request()});
    out.answers.push_back(sim.count());
  }
  return out;
}

/// The universal block for the #s-triangle reduction: all 2n flips at s in
/// a fixed order, then the query. Every edge flip has cyclic order 2.
inline UniversalBlock<striangle::Req> striangle_universal_block(std::size_t n) {
  std::vector<striangle::Req> reqs;
  std::map<striangle::Req, std::size_t> ord;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = striangle::flip_request(0, detail::u_vertex(i));
    reqs.push_back(r);
    ord[r] = 2;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto r = striangle::flip_request(0, detail::v_vertex(n, j));
    reqs.push_back(r);
    ord[r] = 2;
  }
  reqs.push_back(striangle::query_request());
  return UniversalBlock<striangle::Req>::from_requests(std::move(reqs), std::move(ord));
}

struct RhoStarStriangle {
  StriInstance instance;
  striangle::Seq rhohat;     // universal prediction
  striangle::Seq rho_star;   // padded reduction sequence
  std::vector<std::size_t> block_end;
  std::vector<std::size_t> decode_query_pos;  // index of B'_k's query in rho*
  std::vector<std::int64_t> decode_answers;   // count at that query
  std::vector<bool> bits;                     // ground truth u^T M v per round
};

/// Instantiates the padding construction for #s-triangle: the per-round
/// subsets are the baseline reduction's diffs, the prediction is n3 copies
/// of the universal block.
inline RhoStarStriangle gen_striangle_rhostar(const omv::OuMvInstance& inst) {
  const std::size_t n = inst.M.rows();
  const auto block = striangle_universal_block(n);

  RhoStarStriangle out;
  out.instance = StriInstance{detail::matrix_graph(inst, 0), 0};
  out.rhohat = universal_prediction(block, inst.pairs.size());

  std::vector<std::vector<striangle::Req>> subsets;
  striangle::Baseline sim(out.instance.g0, out.instance.s);
  for (const auto& [u, v] : inst.pairs) {
    std::vector<striangle::Req> sub;
    for (std::size_t i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(detail::u_vertex(i));
      if (sim.graph().has_edge(0, ui) != (u[i] != 0)) {
        const auto r = striangle::flip_request(0, detail::u_vertex(i));
        sim.apply(r);
        sub.push_back(r);
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      const auto vj = static_cast<std::size_t>(detail::v_vertex(n, j));
      if (sim.graph().has_edge(0, vj) != (v[j] != 0)) {
        const auto r = striangle::flip_request(0, detail::v_vertex(n, j));
        sim.apply(r);
        sub.push_back(r);
      }
    }
    sub.push_back(striangle::query_request());
    subsets.push_back(std::move(sub));
    out.bits.push_back(omv::oumv_round(inst.M, u, v));
  }

  auto padded = pad_locally_reducible(block, subsets);
  out.rho_star = std::move(padded.sequence);
  out.block_end = std::move(padded.block_end);

  // Replay rho* and record the answer at each round's decode query (the
  // first query inside each block).
  striangle::Baseline replay(out.instance.g0, out.instance.s);
  std::size_t round = 0;
  for (std::size_t t = 0; t < out.rho_star.size() && round < subsets.size(); ++t) {
    const auto& r = out.rho_star[t];
    replay.apply(r);
    if (r.is_query() && out.decode_query_pos.size() == round) {
      out.decode_query_pos.push_back(t);
      out.decode_answers.push_back(replay.count());
      ++round;
    }
  }
  return out;
}

}  // namespace dynpred::adversary
