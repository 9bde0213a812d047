#include <catch2/catch_amalgamated.hpp>

#include "dynpred/harness/generators.hpp"
#include "dynpred/problems/subconn.hpp"

using namespace dynpred;
using namespace dynpred::subconn;

TEST_CASE("promise tables: path graph example") {
  // Path a-b-c with S0 = {a, c}; the prediction inserts b, then queries
  // (a, c). Connectivity through permanent vertices depends on whether b
  // is permanent in the window.
  Instance inst{FlipGraph(3), {1, 0, 1}};
  inst.g.set_edge(0, 1, true);
  inst.g.set_edge(1, 2, true);

  Seq rhohat{add_request(1), query_request(0, 2), query_request(0, 2)};
  auto sc = SubConn::promise(inst, rhohat, 0);
  sc.apply(1, rhohat[0]);
  sc.apply(2, rhohat[1]);
  CHECK(sc.query(2, 0, 2));  // b in S and permanent at the query step
  sc.apply(3, rhohat[2]);
  CHECK(sc.query(3, 0, 2));
}

TEST_CASE("stored connectivity equals fresh DFS on random instances") {
  Rng rng(601);
  for (int it = 0; it < 30; ++it) {
    harness::GenSpec spec{8 + uniform_below(rng, 12), 40, 2, 0,
                          12000 + static_cast<std::uint64_t>(it)};
    auto wl = harness::gen_subconn(spec);
    const std::size_t d = 2;
    const auto tab = promise_preprocess(wl.instance, wl.rhohat, d);

    // Replay the prediction; at each hosted step compare every stored
    // active-pair entry against a DFS on G[P + {u, v}].
    const std::size_t n = wl.instance.g.size();
    const std::size_t T = wl.rhohat.size();
    auto shat = wl.instance.s0;
    std::vector<std::vector<std::uint8_t>> snaps{shat};
    for (std::size_t t = 1; t <= T; ++t) {
      apply_to_set(shat, wl.rhohat[t - 1]);
      snaps.push_back(shat);
    }
    std::vector<std::uint8_t> in_p(n, 0);
    for (std::size_t t = 0; t <= T; ++t) {
      for (auto v : tab.enter[t]) in_p[static_cast<std::size_t>(v)] = 1;
      for (auto v : tab.leave[t]) in_p[static_cast<std::size_t>(v)] = 0;
      if (!tab.hosted[t]) continue;

      // P_t is exactly: in shat at the window start and untouched inside.
      const std::size_t t1 = t > d ? t - d : 1;
      const std::size_t t2 = std::min(T, t + d);
      for (std::size_t v = 0; v < n; ++v) {
        bool touched = false;
        for (std::size_t tau = t1; tau <= t2; ++tau)
          touched = touched || subconn::detail::touches(wl.rhohat[tau - 1], v);
        CHECK(in_p[v] == ((!touched && snaps[t1][v]) ? 1 : 0));
      }

      const auto& act = tab.active[t];
      for (std::size_t i = 0; i < act.size(); ++i)
        for (std::size_t j = 0; j < act.size(); ++j) {
          auto member = in_p;
          member[static_cast<std::size_t>(act[i])] = 1;
          member[static_cast<std::size_t>(act[j])] = 1;
          const bool want = connected_in_subgraph(
              wl.instance.g, member, static_cast<std::size_t>(act[i]),
              static_cast<std::size_t>(act[j]));
          CHECK(tab.conn_at(t, static_cast<std::int16_t>(i),
                            static_cast<std::int16_t>(j)) == want);
        }
    }
  }
}

TEST_CASE("agnostic answers equal DFS over fuzzed certified workloads") {
  Rng rng(602);
  for (int it = 0; it < 40; ++it) {
    const std::size_t d = static_cast<std::size_t>(uniform_below(rng, 9));
    const std::size_t k = static_cast<std::size_t>(uniform_below(rng, 3));
    harness::GenSpec spec{8 + uniform_below(rng, 30), 30 + uniform_below(rng, 200), d,
                          k, 13000 + static_cast<std::uint64_t>(it)};
    auto wl = harness::gen_subconn(spec);
    REQUIRE(wl.certificate_ok());

    auto sc = SubConn::agnostic(wl.instance, wl.rhohat);
    auto in_s = wl.instance.s0;
    for (std::size_t t = 1; t <= wl.rho.size(); ++t) {
      const auto& r = wl.rho[t - 1];
      sc.apply(t, r);
      if (r.is_update()) {
        apply_to_set(in_s, r);
        continue;
      }
      const auto u = static_cast<std::size_t>(r.payload.a);
      const auto v = static_cast<std::size_t>(r.payload.b);
      const bool got = sc.query(t, u, v);
      CHECK(got == connected_in_subgraph(wl.instance.g, in_s, u, v));

      if (k == 0) {
        // d* at most twice the certified delay; residual sets within budget
        // at every qualifying level.
        REQUIRE(sc.stats().dstar.has_value());
        CHECK(*sc.stats().dstar <= std::max<std::size_t>(1, 2 * d));
        CHECK(sc.stats().q_size <= 4 * *sc.stats().dstar + 2);
      }
    }

    if (k == 0) {
      // Levels at or above the certified delay keep P inside S with a small
      // residual, checked at the end of the run.
      for (std::size_t i = 0; i < sc.level_count(); ++i) {
        if (sc.level_delay(i) < d) continue;
        CHECK(sc.level_p_in_s(i));
        CHECK(sc.level_q_size(i) <= 4 * sc.level_delay(i) + 2);
      }
    }
  }
}

TEST_CASE("self queries and membership errors") {
  Instance inst{FlipGraph(4), {1, 1, 0, 1}};
  auto sc = SubConn::agnostic(inst, {});
  CHECK(sc.query(1, 0, 0));
  CHECK_THROWS_AS(sc.query(1, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(sc.apply(1, del_request(2)), std::invalid_argument);
  CHECK_THROWS_AS(sc.apply(1, add_request(0)), std::invalid_argument);
}

TEST_CASE("garbage prediction falls back to a full DFS and stays correct") {
  harness::GenSpec spec{12, 80, 0, 0, 999};
  auto wl = harness::gen_subconn(spec);
  // Same seed and instance but a different spacing parameter: a valid yet
  // unrelated predicted sequence for the same initial set.
  harness::GenSpec other{12, 80, 8, 0, 999};
  auto junk = harness::gen_subconn(other);

  auto sc = SubConn(wl.instance, junk.rhohat, {0, 1, 2, 4, 8, 16}, false);
  auto in_s = wl.instance.s0;
  for (std::size_t t = 1; t <= wl.rho.size(); ++t) {
    const auto& r = wl.rho[t - 1];
    sc.apply(t, r);
    if (r.is_update()) {
      apply_to_set(in_s, r);
      continue;
    }
    const auto u = static_cast<std::size_t>(r.payload.a);
    const auto v = static_cast<std::size_t>(r.payload.b);
    CHECK(sc.query(t, u, v) == connected_in_subgraph(wl.instance.g, in_s, u, v));
  }
}
