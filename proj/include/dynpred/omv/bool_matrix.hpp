#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "dynpred/core/hamming.hpp"
#include "dynpred/core/rng.hpp"

namespace dynpred::omv {

/// Row-major Boolean matrix with O(1) bit access.
class BoolMatrix {
 public:
  BoolMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), bits_(rows * cols, 0) {
    if (rows == 0 || cols == 0)
      throw std::invalid_argument("BoolMatrix: empty dimension");
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  [[nodiscard]] bool get(std::size_t i, std::size_t j) const {
    return bits_[i * cols_ + j] != 0;
  }
  void set(std::size_t i, std::size_t j, bool v) {
    bits_[i * cols_ + j] = v ? 1 : 0;
  }

  static BoolMatrix identity(std::size_t n) {
    BoolMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  static BoolMatrix random(std::size_t rows, std::size_t cols, Rng& rng,
                           double density = 0.5) {
    BoolMatrix m(rows, cols);
    const auto threshold = static_cast<std::uint64_t>(density * 1000.0);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        m.set(i, j, uniform_below(rng, 1000) < threshold);
    return m;
  }

  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

 private:
  std::size_t rows_, cols_;
  std::vector<std::uint8_t> bits_;
};

/// Matrix file format: first line "n1 n2", then n1 lines of 0/1 characters.
inline void write_matrix(std::ostream& os, const BoolMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (m.get(i, j) ? '1' : '0');
    os << '\n';
  }
}

inline BoolMatrix read_matrix(std::istream& is) {
  std::size_t n1 = 0, n2 = 0;
  if (!(is >> n1 >> n2)) throw std::runtime_error("matrix file: bad header");
  BoolMatrix m(n1, n2);
  for (std::size_t i = 0; i < n1; ++i) {
    std::string row;
    if (!(is >> row) || row.size() != n2)
      throw std::runtime_error("matrix file: bad row");
    for (std::size_t j = 0; j < n2; ++j) {
      if (row[j] != '0' && row[j] != '1')
        throw std::runtime_error("matrix file: expected 0/1");
      m.set(i, j, row[j] == '1');
    }
  }
  return m;
}

/// Vector streams: one 0/1 line per round.
inline std::vector<BitString> read_vector_stream(std::istream& is) {
  std::vector<BitString> out;
  std::string line;
  while (is >> line) out.push_back(bits_from_string(line));
  return out;
}

inline void write_vector_stream(std::ostream& os, const std::vector<BitString>& vs) {
  for (const auto& v : vs) os << bits_to_string(v) << '\n';
}

/// Naive Boolean matrix-vector product, the baseline every solver is checked
/// against.
inline BitString bool_mv(const BoolMatrix& m, const BitString& v) {
  if (v.size() != m.cols()) throw std::invalid_argument("bool_mv: dimension mismatch");
  BitString out(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k)
      if (m.get(i, k) && v[k]) {
        out[i] = 1;
        break;
      }
  return out;
}

/// One OuMv round: u^T M v over the Boolean semiring.
inline bool oumv_round(const BoolMatrix& m, const BitString& u, const BitString& v) {
  if (u.size() != m.rows() || v.size() != m.cols())
    throw std::invalid_argument("oumv_round: dimension mismatch");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!u[i]) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.get(i, j) && v[j]) return true;
  }
  return false;
}

/// Vector pairs of an OuMv instance against a fixed matrix.
struct OuMvInstance {
  BoolMatrix M;
  std::vector<std::pair<BitString, BitString>> pairs;

  [[nodiscard]] bool well_formed() const {
    for (const auto& [u, v] : pairs)
      if (u.size() != M.rows() || v.size() != M.cols()) return false;
    return true;
  }
};

inline OuMvInstance random_oumv(std::size_t n, std::size_t rounds, Rng& rng) {
  OuMvInstance inst{BoolMatrix::random(n, n, rng), {}};
  for (std::size_t k = 0; k < rounds; ++k) {
    BitString u(n), v(n);
    for (auto& b : u) b = coin(rng) ? 1 : 0;
    for (auto& b : v) b = coin(rng) ? 1 : 0;
    inst.pairs.emplace_back(std::move(u), std::move(v));
  }
  return inst;
}

}  // namespace dynpred::omv
