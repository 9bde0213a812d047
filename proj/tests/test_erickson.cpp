#include <catch2/catch_amalgamated.hpp>

#include "dynpred/detail/addressable_heap.hpp"
#include "dynpred/harness/generators.hpp"
#include "dynpred/problems/erickson.hpp"

using namespace dynpred;
using namespace dynpred::erickson;

TEST_CASE("addressable heap under random key updates") {
  Rng rng(901);
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = 1 + uniform_below(rng, 30);
    std::vector<std::int64_t> vals(n);
    for (auto& v : vals) v = static_cast<std::int64_t>(uniform_below(rng, 100)) - 50;
    dynpred::detail::AddressableMaxHeap heap(vals);
    for (int step = 0; step < 100; ++step) {
      const std::size_t key = uniform_below(rng, n);
      const auto nv = static_cast<std::int64_t>(uniform_below(rng, 200)) - 100;
      vals[key] = nv;
      heap.update_key(key, nv);
      const auto want = *std::max_element(vals.begin(), vals.end());
      CHECK(heap.top().first == want);
      CHECK(heap.value_of(key) == nv);
    }
  }
}

TEST_CASE("erickson_oracle basics") {
  Base one(Matrix{{5}});
  auto r1 = erickson_oracle(one);
  CHECK(r1.value == 5);
  CHECK(r1.i == 0);
  CHECK(r1.j == 0);

  Base m22(Matrix{{1, 2}, {3, 4}});
  auto r2 = erickson_oracle(m22);
  CHECK(r2.value == 4);
  CHECK(r2.i == 1);
  CHECK(r2.j == 1);

  // Ties resolve to the lexicographically smallest cell.
  Base tie(Matrix{{7, 7}, {7, 7}});
  auto r3 = erickson_oracle(tie);
  CHECK(r3.i == 0);
  CHECK(r3.j == 0);

  m22.apply(row_request(0));
  m22.apply(col_request(1));
  m22.apply(row_request(0));
  CHECK(m22.entry(0, 1) == 2 + 2 + 1);
  CHECK(erickson_oracle(m22).value == 5);
  CHECK_THROWS_AS(m22.apply(row_request(7)), std::out_of_range);
}

TEST_CASE("qopt: heap snapshots start at predicted row maxima") {
  harness::GenSpec spec{6, 30, 0, 0, 902};
  auto wl = harness::gen_erickson(spec);
  SolverCore core(wl.instance, wl.rhohat, HeapMode::full);
  Base pred(wl.instance);
  for (std::size_t t = 1; t <= wl.rhohat.size(); ++t) {
    pred.apply(wl.rhohat[t - 1]);
    for (std::size_t i = 0; i < 6; ++i) {
      std::int64_t want = pred.entry(i, 0);
      for (std::size_t j = 1; j < 6; ++j) want = std::max(want, pred.entry(i, j));
      CHECK(core.row_heap(t, i).top().first == want);
    }
  }
}

TEST_CASE("qopt tracks the oracle; corrected keys equal the error set") {
  Rng rng(903);
  for (int it = 0; it < 30; ++it) {
    const std::size_t d = static_cast<std::size_t>(uniform_below(rng, 9));
    const std::size_t k = static_cast<std::size_t>(uniform_below(rng, 5));
    harness::GenSpec spec{3 + uniform_below(rng, 27), 30 + uniform_below(rng, 270), d,
                          k, 18000 + static_cast<std::uint64_t>(it)};
    auto wl = harness::gen_erickson(spec);
    REQUIRE(wl.certificate_ok());

    Qopt qopt(wl.instance, wl.rhohat);
    Base oracle(wl.instance);
    for (std::size_t t = 1; t <= wl.rho.size(); ++t) {
      const auto& r = wl.rho[t - 1];
      oracle.apply(r);
      qopt.apply(t, r);
      CHECK(qopt.query() == erickson_oracle(oracle).value);

      // Error sets obey the paper's bound and the corrected-key count is
      // exactly the opposite-axis error set (when the fast path was taken).
      CHECK(qopt.stats().err_rows <= 4 * k + 2 * d);
      CHECK(qopt.stats().err_cols <= 4 * k + 2 * d);
      if (r.is_update() && qopt.stats().corrected_keys > 0) {
        if (r.payload.axis == Payload::Axis::row)
          CHECK(qopt.stats().corrected_keys == qopt.stats().err_cols);
        else
          CHECK(qopt.stats().corrected_keys == qopt.stats().err_rows);
      }
    }
  }
}

TEST_CASE("qopt increments by one when the argmax line is hit") {
  Matrix m{{10, 0}, {0, 0}};
  Qopt qopt(m, {row_request(0), row_request(0)});
  Base oracle(m);
  qopt.apply(1, row_request(0));
  oracle.apply(row_request(0));
  CHECK(qopt.query() == 11);
  CHECK(qopt.stats().corrected_keys == 0);  // fast path, no heap work
}

TEST_CASE("uopt equals the oracle; d* stays within twice the delay") {
  Rng rng(904);
  for (int it = 0; it < 30; ++it) {
    const std::size_t d = static_cast<std::size_t>(uniform_below(rng, 9));
    const std::size_t k = static_cast<std::size_t>(uniform_below(rng, 4));
    harness::GenSpec spec{3 + uniform_below(rng, 27), 30 + uniform_below(rng, 270), d,
                          k, 19000 + static_cast<std::uint64_t>(it)};
    auto wl = harness::gen_erickson(spec);

    Uopt uopt(wl.instance, wl.rhohat);
    Base oracle(wl.instance);
    for (std::size_t t = 1; t <= wl.rho.size(); ++t) {
      const auto& r = wl.rho[t - 1];
      oracle.apply(r);
      uopt.apply(t, r);
      if (!r.is_query()) continue;
      CHECK(uopt.query(t) == erickson_oracle(oracle).value);
      if (k == 0) {
        REQUIRE(uopt.stats().dstar.has_value());
        CHECK(*uopt.stats().dstar <= std::max<std::size_t>(1, 2 * d));
      }
    }
  }
}

TEST_CASE("uopt with garbage prediction falls back to a full scan") {
  harness::GenSpec spec{8, 60, 0, 0, 905};
  auto wl = harness::gen_erickson(spec);
  harness::GenSpec other{8, 60, 0, 0, 906};
  auto junk = harness::gen_erickson(other);

  Uopt uopt(wl.instance, junk.rhohat);
  Base oracle(wl.instance);
  for (std::size_t t = 1; t <= wl.rho.size(); ++t) {
    const auto& r = wl.rho[t - 1];
    oracle.apply(r);
    uopt.apply(t, r);
    if (r.is_query()) CHECK(uopt.query(t) == erickson_oracle(oracle).value);
  }
}

TEST_CASE("lazy heap mode gives identical answers") {
  harness::GenSpec spec{10, 120, 3, 1, 907};
  auto wl = harness::gen_erickson(spec);
  Qopt full(wl.instance, wl.rhohat, HeapMode::full);
  Qopt lazy(wl.instance, wl.rhohat, HeapMode::lazy);
  Uopt ufull(wl.instance, wl.rhohat, HeapMode::full);
  Uopt ulazy(wl.instance, wl.rhohat, HeapMode::lazy);
  for (std::size_t t = 1; t <= wl.rho.size(); ++t) {
    const auto& r = wl.rho[t - 1];
    full.apply(t, r);
    lazy.apply(t, r);
    ufull.apply(t, r);
    ulazy.apply(t, r);
    CHECK(full.query() == lazy.query());
    if (r.is_query()) CHECK(ufull.query(t) == ulazy.query(t));
  }
}

TEST_CASE("entry identity between actual and predicted matrices") {
  harness::GenSpec spec{9, 100, 4, 2, 908};
  auto wl = harness::gen_erickson(spec);
  SolverCore core(wl.instance, wl.rhohat, HeapMode::lazy);
  Base actual(wl.instance);
  Rng rng(909);
  for (std::size_t t = 1; t <= wl.rho.size(); ++t) {
    actual.apply(wl.rho[t - 1]);
    core.ingest(t, wl.rho[t - 1]);
    const std::size_t i = uniform_below(rng, 9);
    const std::size_t j = uniform_below(rng, 9);
    CHECK(actual.entry(i, j) ==
          core.predicted_entry(t, i, j) + core.row_diff(i) + core.col_diff(j));
  }
}
