#include <catch2/catch_amalgamated.hpp>

#include "dynpred/core/hamming.hpp"
#include "dynpred/core/rng.hpp"

using namespace dynpred;

namespace {

// Literal transcription of the recursive definition: strip the longest
// common-constant prefix run, charge 1 when it differs, recurse.
std::size_t eh_recursive(const BitString& s, const BitString& t, std::size_t from = 0) {
  if (from >= s.size()) return 0;
  std::size_t ell = from;
  while (ell + 1 < s.size() && s[ell + 1] == s[from] && t[ell + 1] == t[from]) ++ell;
  return ((s[from] + t[from]) % 2) + eh_recursive(s, t, ell + 1);
}

BitString random_bits(Rng& rng, std::size_t n) {
  BitString v(n);
  for (auto& b : v) b = coin(rng) ? 1 : 0;
  return v;
}

}  // namespace

TEST_CASE("extended_hamming on frozen examples") {
  CHECK(extended_hamming(bits_from_string("0000"), bits_from_string("0000")) == 0);
  CHECK(extended_hamming(bits_from_string("0101"), bits_from_string("1010")) == 4);
  CHECK(extended_hamming(bits_from_string("0011"), bits_from_string("0111")) == 1);
  CHECK(extended_hamming(BitString{}, BitString{}) == 0);
  CHECK_THROWS_AS(extended_hamming(bits_from_string("01"), bits_from_string("0")),
                  std::invalid_argument);
}

TEST_CASE("eh_blocks on frozen examples") {
  CHECK(eh_blocks(bits_from_string("0000"), bits_from_string("0000")).empty());

  auto b1 = eh_blocks(bits_from_string("0011"), bits_from_string("0000"));
  REQUIRE(b1.size() == 1);
  CHECK(b1[0] == EhBlock{3, 4, -1});

  auto b2 = eh_blocks(bits_from_string("10"), bits_from_string("01"));
  REQUIRE(b2.size() == 2);
  CHECK(b2[0] == EhBlock{1, 1, -1});
  CHECK(b2[1] == EhBlock{2, 2, +1});
}

TEST_CASE("eh_blocks count equals extended_hamming and blocks are exact") {
  Rng rng(0xe401);
  for (int it = 0; it < 500; ++it) {
    const std::size_t n = 1 + uniform_below(rng, 64);
    const auto s = random_bits(rng, n);
    auto t = s;
    // Mix of related and unrelated strings.
    for (std::size_t i = 0; i < n; ++i)
      if (uniform_below(rng, 4) == 0) t[i] ^= 1;
    const auto blocks = eh_blocks(s, t);
    CHECK(blocks.size() == extended_hamming(s, t));
    for (const auto& b : blocks) {
      for (std::size_t i = b.lo; i <= b.hi; ++i) {
        CHECK(s[i - 1] == s[b.lo - 1]);
        CHECK(t[i - 1] == t[b.lo - 1]);
        CHECK(s[i - 1] != t[i - 1]);
      }
      CHECK(b.sign == int(t[b.hi - 1]) - int(s[b.hi - 1]));
    }
  }
}

TEST_CASE("EH matches the recursive definition and EH <= Hamming <= L1") {
  Rng rng(0xe402);
  for (int it = 0; it < 2000; ++it) {
    const std::size_t n = uniform_below(rng, 65);
    const auto s = random_bits(rng, n);
    const auto t = random_bits(rng, n);
    const auto eh = extended_hamming(s, t);
    CHECK(eh == eh_recursive(s, t));
    const auto h = hamming(s, t);
    CHECK(eh <= h);
    // On bit-strings the Hamming distance equals the L1 distance.
    std::size_t l1 = 0;
    for (std::size_t i = 0; i < n; ++i)
      l1 += static_cast<std::size_t>(std::abs(int(s[i]) - int(t[i])));
    CHECK(h == l1);
  }
}
