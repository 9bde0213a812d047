#include <catch2/catch_amalgamated.hpp>

#include "dynpred/harness/generators.hpp"
#include "dynpred/problems/reach_tc.hpp"

using namespace dynpred;
using namespace dynpred::reach_tc;

TEST_CASE("promise tables: window drops a flipped edge") {
  // Single predicted flip of (0,1) at t=2; with d=1 the edge is permanent
  // exactly when the window avoids t=2.
  DiGraph g0(3);
  g0.set_edge(0, 1, true);
  g0.set_edge(1, 2, true);
  Seq rhohat{query_request(0, 2), flip_request(0, 1), query_request(0, 2),
             query_request(0, 2), query_request(0, 2)};
  const auto tab = promise_preprocess(g0, rhohat, 1);

  std::vector<std::uint8_t> in_p(9, 0);
  auto has_p = [&](std::size_t u, std::size_t v) { return in_p[u * 3 + v] != 0; };
  for (std::size_t t = 0; t <= rhohat.size(); ++t) {
    for (auto e : tab.enter[t]) in_p[static_cast<std::size_t>(e)] = 1;
    for (auto e : tab.leave[t]) in_p[static_cast<std::size_t>(e)] = 0;
    if (t == 0) CHECK(has_p(0, 1));  // window [1,1] precedes the flip
    // From t=1 the window reaches the flip; afterwards the edge is gone.
    if (t >= 1) CHECK_FALSE(has_p(0, 1));
    CHECK(has_p(1, 2));  // never touched
  }
}

TEST_CASE("stored reachability equals fresh DFS") {
  Rng rng(701);
  for (int it = 0; it < 25; ++it) {
    harness::GenSpec spec{6 + uniform_below(rng, 14), 50, 2, 0,
                          14000 + static_cast<std::uint64_t>(it)};
    auto wl = harness::gen_tc(spec);
    const std::size_t d = 1 + uniform_below(rng, 4);
    const auto tab = promise_preprocess(wl.instance, wl.rhohat, d);

    const std::size_t n = wl.instance.size();
    std::vector<std::uint8_t> in_p(n * n, 0);
    for (std::size_t t = 0; t <= wl.rhohat.size(); ++t) {
      for (auto e : tab.enter[t]) in_p[static_cast<std::size_t>(e)] = 1;
      for (auto e : tab.leave[t]) in_p[static_cast<std::size_t>(e)] = 0;
      if (!tab.hosted[t]) continue;
      DiGraph perm(n);
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
          if (in_p[u * n + v]) perm.set_edge(u, v, true);
      const auto& act = tab.active[t];
      for (std::size_t i = 0; i < act.size(); ++i)
        for (std::size_t j = 0; j < act.size(); ++j)
          CHECK(tab.reach_at(t, static_cast<std::int16_t>(i),
                             static_cast<std::int16_t>(j)) ==
                reachable(perm, static_cast<std::size_t>(act[i]),
                          static_cast<std::size_t>(act[j])));
    }
  }
}

TEST_CASE("tc agnostic answers equal DFS over fuzzed certified workloads") {
  Rng rng(702);
  for (int it = 0; it < 40; ++it) {
    const std::size_t d = static_cast<std::size_t>(uniform_below(rng, 9));
    const std::size_t k = static_cast<std::size_t>(uniform_below(rng, 3));
    harness::GenSpec spec{6 + uniform_below(rng, 34), 30 + uniform_below(rng, 200), d,
                          k, 15000 + static_cast<std::uint64_t>(it)};
    auto wl = harness::gen_tc(spec);
    REQUIRE(wl.certificate_ok());

    auto tc = ReachTC::agnostic(wl.instance, wl.rhohat);
    DiGraph live = wl.instance;
    for (std::size_t t = 1; t <= wl.rho.size(); ++t) {
      const auto& r = wl.rho[t - 1];
      tc.apply(t, r);
      if (r.is_update()) {
        live.flip(static_cast<std::size_t>(r.payload.u),
                  static_cast<std::size_t>(r.payload.v));
        continue;
      }
      const auto u = static_cast<std::size_t>(r.payload.u);
      const auto v = static_cast<std::size_t>(r.payload.v);
      CHECK(tc.query(t, u, v) == reachable(live, u, v));

      if (k == 0 && u != v) {  // self queries answer on the O(1) fast path
        REQUIRE(tc.stats().dstar.has_value());
        CHECK(*tc.stats().dstar <= std::max<std::size_t>(1, 2 * d));
        CHECK(tc.stats().f_size <= 2 * *tc.stats().dstar + 1);
        CHECK(tc.stats().scanned_vertices <= 2 * tc.stats().f_size + 2);
      }
    }

    if (k == 0) {
      for (std::size_t i = 0; i < tc.level_count(); ++i) {
        if (tc.level_delay(i) < d) continue;
        CHECK(tc.level_p_in_e(i));
        CHECK(tc.level_f_size(i) <= 2 * tc.level_delay(i) + 1);
      }
    }
  }
}

TEST_CASE("self reachability and double flips") {
  DiGraph g(4);
  auto tc = ReachTC::agnostic(g, {});
  CHECK(tc.query(1, 2, 2));

  Seq rhohat{flip_request(0, 1), flip_request(0, 1), query_request(0, 1)};
  auto tc2 = ReachTC::agnostic(DiGraph(3), rhohat);
  tc2.apply(1, rhohat[0]);
  tc2.apply(2, rhohat[1]);
  tc2.apply(3, rhohat[2]);
  CHECK_FALSE(tc2.query(3, 0, 1));  // flipped on then off
  CHECK_FALSE(tc2.graph().has_edge(0, 1));
}

TEST_CASE("tc garbage prediction: full-DFS fallback stays correct") {
  harness::GenSpec spec{14, 90, 0, 0, 321};
  auto wl = harness::gen_tc(spec);
  harness::GenSpec other{14, 90, 0, 0, 322};
  auto junk = harness::gen_tc(other);  // different pool and sequence

  auto tc = ReachTC(wl.instance, junk.rhohat, {0, 1, 2, 4}, false);
  DiGraph live = wl.instance;
  for (std::size_t t = 1; t <= wl.rho.size(); ++t) {
    const auto& r = wl.rho[t - 1];
    tc.apply(t, r);
    if (r.is_update()) {
      live.flip(static_cast<std::size_t>(r.payload.u),
                static_cast<std::size_t>(r.payload.v));
      continue;
    }
    CHECK(tc.query(t, static_cast<std::size_t>(r.payload.u),
                   static_cast<std::size_t>(r.payload.v)) ==
          reachable(live, static_cast<std::size_t>(r.payload.u),
                    static_cast<std::size_t>(r.payload.v)));
  }
}
