#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynpred {

// Bit-strings are byte-per-bit; cheap at the sizes we care about and easy
// to slice.
using BitString = std::vector<std::uint8_t>;

inline BitString bits_from_string(const std::string& s) {
  BitString out;
  out.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit-string: expected 0/1");
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

inline std::string bits_to_string(const BitString& v) {
  std::string s;
  s.reserve(v.size());
  for (auto b : v) s.push_back(b ? '1' : '0');
  return s;
}

/// Maximal run [lo, hi] (1-based, inclusive) on which both strings are
/// constant and disagree. sign = t[hi] - s[hi], always -1 or +1.
struct EhBlock {
  std::size_t lo{0};
  std::size_t hi{0};
  int sign{0};

  friend bool operator==(const EhBlock&, const EhBlock&) = default;
};

/// The differing blocks of the extended Hamming decomposition: split both
/// strings into maximal segments where each is constant, keep the segments
/// where they disagree.
inline std::vector<EhBlock> eh_blocks(const BitString& s, const BitString& t) {
  if (s.size() != t.size())
    throw std::invalid_argument("eh_blocks: length mismatch");
  std::vector<EhBlock> blocks;
  std::size_t pos = 0;
  const std::size_t n = s.size();
  while (pos < n) {
    std::size_t end = pos;
    while (end + 1 < n && s[end + 1] == s[pos] && t[end + 1] == t[pos]) ++end;
    if (s[pos] != t[pos]) {
      blocks.push_back(EhBlock{pos + 1, end + 1,
                               static_cast<int>(t[end]) - static_cast<int>(s[end])});
    }
    pos = end + 1;
  }
  return blocks;
}

/// Extended Hamming distance: number of maximal common-constant-run blocks
/// on which the strings differ. Always <= Hamming distance.
inline std::size_t extended_hamming(const BitString& s, const BitString& t) {
  if (s.size() != t.size())
    throw std::invalid_argument("extended_hamming: length mismatch");
  std::size_t eh = 0;
  std::size_t pos = 0;
  const std::size_t n = s.size();
  while (pos < n) {
    std::size_t end = pos;
    while (end + 1 < n && s[end + 1] == s[pos] && t[end + 1] == t[pos]) ++end;
    eh += (s[pos] != t[pos]) ? 1 : 0;
    pos = end + 1;
  }
  return eh;
}

inline std::size_t hamming(const BitString& s, const BitString& t) {
  if (s.size() != t.size()) throw std::invalid_argument("hamming: length mismatch");
  std::size_t h = 0;
  for (std::size_t i = 0; i < s.size(); ++i) h += (s[i] != t[i]) ? 1 : 0;
  return h;
}

}  // namespace dynpred
