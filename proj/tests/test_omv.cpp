#include <catch2/catch_amalgamated.hpp>

#include "dynpred/core/rng.hpp"
#include "dynpred/omv/bit_accurate.hpp"
#include "dynpred/omv/bool_matrix.hpp"
#include "dynpred/omv/eh_solver.hpp"
#include "dynpred/omv/sparse.hpp"

#include <sstream>

using namespace dynpred;
using namespace dynpred::omv;

namespace {

BitString random_bits(Rng& rng, std::size_t n) {
  BitString v(n);
  for (auto& b : v) b = coin(rng) ? 1 : 0;
  return v;
}

IntVector naive_product(const BoolMatrix& m, const BitString& v) {
  IntVector y(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k)
      if (m.get(i, k) && v[k]) ++y[i];
  return y;
}

}  // namespace

TEST_CASE("bool_mv basics") {
  auto id = BoolMatrix::identity(3);
  CHECK(bool_mv(id, bits_from_string("010")) == bits_from_string("010"));

  BoolMatrix ones(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) ones.set(i, j, true);
  CHECK(bool_mv(ones, bits_from_string("00")) == bits_from_string("00"));

  BoolMatrix m(2, 2);
  m.set(0, 0, true);
  m.set(1, 0, true);
  m.set(1, 1, true);
  CHECK(bool_mv(m, bits_from_string("10")) == bits_from_string("11"));

  CHECK_THROWS_AS(bool_mv(m, bits_from_string("100")), std::invalid_argument);
}

TEST_CASE("oumv_round equals the triple loop") {
  Rng rng(90001);
  auto zero_u = BitString(4, 0);
  auto m = BoolMatrix::random(4, 4, rng);
  CHECK_FALSE(oumv_round(m, zero_u, random_bits(rng, 4)));

  auto id = BoolMatrix::identity(3);
  BitString e1 = bits_from_string("100");
  CHECK(oumv_round(id, e1, e1));

  for (int it = 0; it < 200; ++it) {
    auto mm = BoolMatrix::random(4, 4, rng);
    auto u = random_bits(rng, 4);
    auto v = random_bits(rng, 4);
    bool expect = false;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        expect = expect || (u[i] && mm.get(i, j) && v[j]);
    CHECK(oumv_round(mm, u, v) == expect);
  }
}

TEST_CASE("matrix file round trip") {
  Rng rng(90002);
  auto m = BoolMatrix::random(5, 7, rng);
  std::stringstream ss;
  write_matrix(ss, m);
  CHECK(read_matrix(ss) == m);
}

TEST_CASE("eh_preprocess invariants") {
  Rng rng(90003);

  // Zero predictions -> all predicted products zero.
  BoolMatrix zero(3, 3);
  auto st0 = eh_preprocess(zero, {bits_from_string("101"), bits_from_string("111")});
  for (std::size_t i = 0; i < 2; ++i)
    for (auto y : st0.predicted_product(i)) CHECK(y == 0);

  // Identity matrix -> predicted products equal the predictions as integers.
  auto id = BoolMatrix::identity(4);
  auto v = random_bits(rng, 4);
  auto st1 = eh_preprocess(id, {v});
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(st1.predicted_product(0)[i] == static_cast<std::int64_t>(v[i]));

  // Random 5x5 -> per-entry dot product oracle, and prefix sums are exact.
  auto m = BoolMatrix::random(5, 5, rng);
  auto p = random_bits(rng, 5);
  auto st2 = eh_preprocess(m, {p});
  CHECK(st2.predicted_product(0) == naive_product(m, p));
  for (std::size_t j = 0; j < 5; ++j)
    for (std::size_t a = 1; a <= 5; ++a)
      for (std::size_t b = a; b <= 5; ++b) {
        std::int64_t expect = 0;
        for (std::size_t k = a; k <= b; ++k) expect += m.get(j, k - 1) ? 1 : 0;
        CHECK(st2.row_range_sum(j, a, b) == expect);
      }
}

TEST_CASE("eh_query frozen examples") {
  // Prediction equals the online vector: arithmetic result is the
  // precomputed one, no corrections.
  Rng rng(90004);
  auto m = BoolMatrix::random(4, 4, rng);
  auto v = random_bits(rng, 4);
  auto st = eh_preprocess(m, {v});
  auto res = eh_query(st, 0, v);
  CHECK(res.corrections == 0);
  CHECK(res.arith == st.predicted_product(0));

  auto id = BoolMatrix::identity(4);
  auto st2 = eh_preprocess(id, {bits_from_string("0000")});
  auto res2 = eh_query(st2, 0, bits_from_string("0011"));
  CHECK(res2.corrections == 1);
  CHECK(res2.arith == IntVector{0, 0, 1, 1});
  CHECK(res2.bool_result == bits_from_string("0011"));

  CHECK_THROWS_AS(eh_query(st2, 1, bits_from_string("0000")), std::out_of_range);
  CHECK_THROWS_AS(eh_query(st2, 0, bits_from_string("00011")), std::invalid_argument);
}

TEST_CASE("eh_query equals the naive product, corrections equal EH") {
  Rng rng(90005);
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 1 + uniform_below(rng, 64);
    auto m = BoolMatrix::random(n, n, rng);
    auto vhat = random_bits(rng, n);
    auto v = vhat;
    for (std::size_t i = 0; i < n; ++i)
      if (uniform_below(rng, 5) == 0) v[i] ^= 1;

    auto st = eh_preprocess(m, {vhat});
    auto res = eh_query(st, 0, v);
    CHECK(res.arith == naive_product(m, v));
    for (std::size_t i = 0; i < n; ++i)
      CHECK(res.bool_result[i] == (res.arith[i] > 0 ? 1 : 0));

    const auto eh = extended_hamming(vhat, v);
    CHECK(res.corrections == eh);
    // Probe accounting is deterministic: scan + init + per-row-per-block.
    CHECK(res.probes == n * (2 + eh));
    CHECK(res.probes <= 2 * n * (1 + eh));
  }
}

TEST_CASE("sparse_partition_solve equals bool_mv") {
  Rng rng(90006);
  auto m = BoolMatrix::random(8, 8, rng);
  std::vector<BitString> queries;
  for (int i = 0; i < 10; ++i) queries.push_back(random_bits(rng, 8));

  for (double t : {1.0, 0.5, 0.17}) {
    auto out = sparse_partition_solve(m, queries, t);
    for (std::size_t q = 0; q < queries.size(); ++q)
      CHECK(out[q] == bool_mv(m, queries[q]));
  }
  CHECK(support_partition(8, 1.0).size() == 1);
  CHECK(support_partition(8, 0.1).size() == 8);  // groups of size 1
  CHECK_THROWS_AS(support_partition(8, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(support_partition(8, 1.2), std::invalid_argument);
}

TEST_CASE("bit_accurate_solve equals bool_mv") {
  Rng rng(90007);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 1 + uniform_below(rng, 6);
    auto m = BoolMatrix::random(n, n, rng);
    const std::size_t rounds = 1 + uniform_below(rng, 4);
    std::vector<TriVector> partials;
    std::vector<BitString> online;
    for (std::size_t k = 0; k < rounds; ++k) {
      auto v = random_bits(rng, n);
      TriVector p(n);
      for (std::size_t j = 0; j < n; ++j)
        p[j] = coin(rng) ? TriBit::star : static_cast<TriBit>(v[j]);
      partials.push_back(std::move(p));
      online.push_back(std::move(v));
    }
    auto res = bit_accurate_solve(m, partials, online);
    for (std::size_t k = 0; k < rounds; ++k) {
      CHECK(res.products[k] == bool_mv(m, online[k]));
      std::size_t stars = 0;
      for (auto p : partials[k])
        if (p == TriBit::star) ++stars;
      CHECK(res.round_probes[k] <= n * stars + n);
    }
  }

  // Fully specified partials: zero per-round correction work beyond init.
  auto m = BoolMatrix::identity(3);
  TriVector full{TriBit::one, TriBit::zero, TriBit::one};
  auto res = bit_accurate_solve(m, {full}, {bits_from_string("101")});
  CHECK(res.products[0] == bits_from_string("101"));
  CHECK(res.round_probes[0] == 3);  // result init only

  // A contradicted fixed bit is rejected.
  CHECK_THROWS_AS(bit_accurate_solve(m, {full}, {bits_from_string("001")}),
                  std::invalid_argument);
}
