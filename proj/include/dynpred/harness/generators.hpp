#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dynpred/adversary/perturb.hpp"
#include "dynpred/adversary/striangle_reductions.hpp"
#include "dynpred/adversary/workload_pair.hpp"
#include "dynpred/core/rng.hpp"
#include "dynpred/problems/apsp.hpp"
#include "dynpred/problems/erickson.hpp"
#include "dynpred/problems/reach_tc.hpp"
#include "dynpred/problems/striangle.hpp"
#include "dynpred/problems/subconn.hpp"

namespace dynpred::harness {

struct GenSpec {
  std::size_t n{10};
  std::size_t T{50};
  std::size_t d{0};
  std::size_t k{0};
  std::uint64_t seed{1};
};

using StriWorkload = adversary::StriWorkload;
using SubConnWorkload =
    adversary::WorkloadPair<subconn::Instance, subconn::Payload, bool>;
using TcWorkload = adversary::WorkloadPair<DiGraph, reach_tc::Payload, bool>;
using ApspWorkload =
    adversary::WorkloadPair<apsp::WeightedDiGraph, apsp::Payload, std::int64_t>;
using EricksonWorkload =
    adversary::WorkloadPair<erickson::Matrix, erickson::Payload, std::int64_t>;

inline StriWorkload gen_striangle(const GenSpec& spec) {
  Rng rng(spec.seed);
  const std::size_t n = std::max<std::size_t>(3, spec.n);
  StriWorkload wl;
  wl.instance.s = 0;
  wl.instance.g0 = FlipGraph(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (uniform_below(rng, 100) < 30) wl.instance.g0.set_edge(u, v, true);

  auto random_flip = [n](Rng& r) {
    const auto u = static_cast<std::int32_t>(uniform_below(r, n));
    auto v = static_cast<std::int32_t>(uniform_below(r, n - 1));
    if (v >= u) ++v;
    return striangle::flip_request(u, v);
  };
  for (std::size_t t = 0; t < spec.T; ++t) {
    if (uniform_below(rng, 100) < 25)
      wl.rhohat.push_back(striangle::query_request());
    else
      wl.rhohat.push_back(random_flip(rng));
  }

  auto pert = adversary::perturb(wl.rhohat, spec.d, spec.k, rng, random_flip);
  wl.rho = std::move(pert.rho);
  wl.cert = std::move(pert.cert);

  striangle::Baseline sim(wl.instance.g0, wl.instance.s);
  for (const auto& r : wl.rho) {
    sim.apply(r);
    if (r.is_query()) wl.answers.push_back(sim.count());
  }
  return wl;
}

/// Subgraph-connectivity sequences need care to stay valid under any
/// d-bounded shuffle: the first four vertices are anchors (always in S,
/// never updated, the only query targets), and updates of the same vertex
/// are spaced at least 2d+1 steps apart so no shuffle can reorder them.
inline SubConnWorkload gen_subconn(const GenSpec& spec) {
  Rng rng(spec.seed);
  const std::size_t n = std::max<std::size_t>(6, spec.n);
  constexpr std::size_t kAnchors = 4;

  SubConnWorkload wl;
  wl.instance.g = FlipGraph(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (uniform_below(rng, 1000) < 2500 / n) wl.instance.g.set_edge(u, v, true);
  wl.instance.s0.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    wl.instance.s0[v] = (v < kAnchors || coin(rng)) ? 1 : 0;

  auto anchor_query = [](Rng& r) {
    const auto a = static_cast<std::int32_t>(uniform_below(r, kAnchors));
    auto b = static_cast<std::int32_t>(uniform_below(r, kAnchors - 1));
    if (b >= a) ++b;
    return subconn::query_request(a, b);
  };

  const std::size_t gap = 2 * spec.d + 1;
  std::vector<std::size_t> last_touch(n, 0);
  std::vector<std::uint8_t> shat = wl.instance.s0;
  for (std::size_t t = 1; t <= spec.T; ++t) {
    bool emitted = false;
    if (uniform_below(rng, 100) >= 25) {
      // try a few times for an eligible non-anchor vertex
      for (int tries = 0; tries < 8 && !emitted; ++tries) {
        const auto v = kAnchors + uniform_below(rng, n - kAnchors);
        if (last_touch[v] != 0 && t - last_touch[v] < gap + 1) continue;
        last_touch[v] = t;
        const auto req = shat[v] ? subconn::del_request(static_cast<std::int32_t>(v))
                                 : subconn::add_request(static_cast<std::int32_t>(v));
        shat[v] ^= 1;
        wl.rhohat.push_back(req);
        emitted = true;
      }
    }
    if (!emitted) wl.rhohat.push_back(anchor_query(rng));
  }

  // Outliers only replace query slots; replacing an update would break the
  // add/delete alternation of the replaced vertex.
  auto pert = adversary::perturb_where(
      wl.rhohat, spec.d, spec.k, rng, anchor_query,
      [](const subconn::Req& r) { return r.is_query(); });
  wl.rho = std::move(pert.rho);
  wl.cert = std::move(pert.cert);

  std::vector<std::uint8_t> in_s = wl.instance.s0;
  for (const auto& r : wl.rho) {
    if (r.is_update()) {
      subconn::apply_to_set(in_s, r);
    } else {
      wl.answers.push_back(subconn::connected_in_subgraph(
          wl.instance.g, in_s, static_cast<std::size_t>(r.payload.a),
          static_cast<std::size_t>(r.payload.b)));
    }
  }
  return wl;
}

inline TcWorkload gen_tc(const GenSpec& spec) {
  Rng rng(spec.seed);
  const std::size_t n = std::max<std::size_t>(3, spec.n);
  TcWorkload wl;
  wl.instance = DiGraph(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && uniform_below(rng, 1000) < 1800 / n)
        wl.instance.set_edge(u, v, true);

  // A modest edge pool keeps flips revisiting the same edges, which makes
  // permanence patterns and reachability changes non-trivial.
  std::vector<std::pair<std::int32_t, std::int32_t>> pool;
  for (std::size_t i = 0; i < 3 * n; ++i) {
    const auto u = static_cast<std::int32_t>(uniform_below(rng, n));
    auto v = static_cast<std::int32_t>(uniform_below(rng, n - 1));
    if (v >= u) ++v;
    pool.emplace_back(u, v);
  }
  auto random_flip = [&pool](Rng& r) {
    const auto& [u, v] = pool[uniform_below(r, pool.size())];
    return reach_tc::flip_request(u, v);
  };
  for (std::size_t t = 0; t < spec.T; ++t) {
    if (uniform_below(rng, 100) < 20) {
      const auto u = static_cast<std::int32_t>(uniform_below(rng, n));
      const auto v = static_cast<std::int32_t>(uniform_below(rng, n));
      wl.rhohat.push_back(reach_tc::query_request(u, v));
    } else {
      wl.rhohat.push_back(random_flip(rng));
    }
  }

  auto pert = adversary::perturb(wl.rhohat, spec.d, spec.k, rng, random_flip);
  wl.rho = std::move(pert.rho);
  wl.cert = std::move(pert.cert);

  DiGraph g = wl.instance;
  for (const auto& r : wl.rho) {
    if (r.is_update())
      g.flip(static_cast<std::size_t>(r.payload.u),
             static_cast<std::size_t>(r.payload.v));
    else
      wl.answers.push_back(reach_tc::reachable(
          g, static_cast<std::size_t>(r.payload.u),
          static_cast<std::size_t>(r.payload.v)));
  }
  return wl;
}

inline ApspWorkload gen_apsp(const GenSpec& spec) {
  Rng rng(spec.seed);
  const std::size_t n = std::max<std::size_t>(3, spec.n);
  ApspWorkload wl;
  wl.instance = apsp::WeightedDiGraph(n);

  // Fixed per-pair weights; every flip of a pair carries the same weight.
  std::vector<std::int64_t> wt(n * n, 1);
  for (auto& w : wt) w = 1 + static_cast<std::int64_t>(uniform_below(rng, 10));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && uniform_below(rng, 1000) < 1800 / n)
        wl.instance.set_edge(u, v, wt[u * n + v]);

  std::vector<std::pair<std::int32_t, std::int32_t>> pool;
  for (std::size_t i = 0; i < 3 * n; ++i) {
    const auto u = static_cast<std::int32_t>(uniform_below(rng, n));
    auto v = static_cast<std::int32_t>(uniform_below(rng, n - 1));
    if (v >= u) ++v;
    pool.emplace_back(u, v);
  }
  auto random_flip = [&pool, &wt, n](Rng& r) {
    const auto& [u, v] = pool[uniform_below(r, pool.size())];
    return apsp::flip_request(u, v,
                              wt[static_cast<std::size_t>(u) * n +
                                 static_cast<std::size_t>(v)]);
  };
  for (std::size_t t = 0; t < spec.T; ++t) {
    if (uniform_below(rng, 100) < 15) {
      const auto u = static_cast<std::int32_t>(uniform_below(rng, n));
      const auto v = static_cast<std::int32_t>(uniform_below(rng, n));
      wl.rhohat.push_back(apsp::query_request(u, v));
    } else {
      wl.rhohat.push_back(random_flip(rng));
    }
  }

  auto pert = adversary::perturb(wl.rhohat, spec.d, spec.k, rng, random_flip);
  wl.rho = std::move(pert.rho);
  wl.cert = std::move(pert.cert);

  apsp::WeightedDiGraph g = wl.instance;
  for (const auto& r : wl.rho) {
    if (r.is_update())
      g.flip(static_cast<std::size_t>(r.payload.u),
             static_cast<std::size_t>(r.payload.v), r.payload.w);
    else
      wl.answers.push_back(apsp::bellman_ford(
          g, static_cast<std::size_t>(r.payload.u))[static_cast<std::size_t>(
          r.payload.v)]);
  }
  return wl;
}

inline EricksonWorkload gen_erickson(const GenSpec& spec) {
  Rng rng(spec.seed);
  const std::size_t n = std::max<std::size_t>(2, spec.n);
  EricksonWorkload wl;
  wl.instance.assign(n, std::vector<std::int64_t>(n, 0));
  for (auto& row : wl.instance)
    for (auto& x : row) x = static_cast<std::int64_t>(uniform_below(rng, 41)) - 20;

  auto random_incr = [n](Rng& r) {
    const auto idx = static_cast<std::int32_t>(uniform_below(r, n));
    return coin(r) ? erickson::row_request(idx) : erickson::col_request(idx);
  };
  for (std::size_t t = 0; t < spec.T; ++t) {
    if (uniform_below(rng, 100) < 20)
      wl.rhohat.push_back(erickson::query_request());
    else
      wl.rhohat.push_back(random_incr(rng));
  }

  auto pert = adversary::perturb(wl.rhohat, spec.d, spec.k, rng, random_incr);
  wl.rho = std::move(pert.rho);
  wl.cert = std::move(pert.cert);

  erickson::Base base(wl.instance);
  for (const auto& r : wl.rho) {
    base.apply(r);
    if (r.is_query()) wl.answers.push_back(erickson::erickson_oracle(base).value);
  }
  return wl;
}

}  // namespace dynpred::harness
