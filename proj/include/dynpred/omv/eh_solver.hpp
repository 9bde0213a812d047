#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dynpred/core/hamming.hpp"
#include "dynpred/omv/bool_matrix.hpp"

namespace dynpred::omv {

using IntVector = std::vector<std::int64_t>;

/// Pluggable multiplier for the preprocessing product M * (vhat_1 .. vhat_r);
/// returns one integer vector per prediction. The default is the naive
/// product; a fast multiplier can be swapped in behind the same signature.
using MatMul = std::function<std::vector<IntVector>(const BoolMatrix&,
                                                    const std::vector<BitString>&)>;

inline std::vector<IntVector> naive_matmul(const BoolMatrix& m,
                                           const std::vector<BitString>& vs) {
  std::vector<IntVector> out;
  out.reserve(vs.size());
  for (const auto& v : vs) {
    IntVector y(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t k = 0; k < m.cols(); ++k)
        if (m.get(i, k) && v[k]) ++y[i];
    out.push_back(std::move(y));
  }
  return out;
}

/// Precomputed state of the extended-Hamming round solver: the predicted
/// arithmetic products yhat_i and per-row prefix sums over columns, so a
/// column range [a, b] of row j sums in O(1).
class EhState {
 public:
  EhState(BoolMatrix m, std::vector<BitString> predictions,
          const MatMul& matmul = naive_matmul)
      : m_(std::move(m)), predictions_(std::move(predictions)) {
    for (const auto& p : predictions_)
      if (p.size() != m_.cols())
        throw std::invalid_argument("eh_preprocess: prediction dimension mismatch");
    yhat_ = matmul(m_, predictions_);
    row_prefix_.assign(m_.rows(), std::vector<std::int64_t>(m_.cols() + 1, 0));
    for (std::size_t i = 0; i < m_.rows(); ++i)
      for (std::size_t k = 0; k < m_.cols(); ++k)
        row_prefix_[i][k + 1] = row_prefix_[i][k] + (m_.get(i, k) ? 1 : 0);
  }

  [[nodiscard]] const BoolMatrix& matrix() const { return m_; }
  [[nodiscard]] std::size_t rounds() const { return predictions_.size(); }
  [[nodiscard]] const BitString& prediction(std::size_t i) const {
    return predictions_[i];
  }
  [[nodiscard]] const IntVector& predicted_product(std::size_t i) const {
    return yhat_[i];
  }

  /// Sum of M[j][a..b], 1-based inclusive column range.
  [[nodiscard]] std::int64_t row_range_sum(std::size_t j, std::size_t a,
                                           std::size_t b) const {
    return row_prefix_[j][b] - row_prefix_[j][a - 1];
  }

 private:
  BoolMatrix m_;
  std::vector<BitString> predictions_;
  std::vector<IntVector> yhat_;
  std::vector<std::vector<std::int64_t>> row_prefix_;
};

inline EhState eh_preprocess(const BoolMatrix& m,
                             const std::vector<BitString>& predictions,
                             const MatMul& matmul = naive_matmul) {
  return EhState(m, predictions, matmul);
}

struct EhQueryResult {
  IntVector arith;
  BitString bool_result;
  std::size_t corrections{0};  // number of EH blocks patched
  std::uint64_t probes{0};     // work counter, <= n*(1 + corrections) + O(n)
};

/// One OMv round from the predicted product: start at yhat_i, patch only the
/// extended-Hamming blocks between the prediction and the online vector.
inline EhQueryResult eh_query(const EhState& state, std::size_t round,
                              const BitString& v) {
  if (round >= state.rounds()) throw std::out_of_range("eh_query: round index");
  if (v.size() != state.matrix().cols())
    throw std::invalid_argument("eh_query: dimension mismatch");

  const std::size_t n_rows = state.matrix().rows();
  const std::size_t n_cols = state.matrix().cols();
  EhQueryResult res;
  const auto blocks = eh_blocks(state.prediction(round), v);
  res.corrections = blocks.size();
  res.probes = n_cols;  // block scan

  res.arith = state.predicted_product(round);
  res.probes += n_rows;  // result init
  for (std::size_t j = 0; j < n_rows; ++j) {
    for (const auto& b : blocks) {
      res.arith[j] += b.sign * state.row_range_sum(j, b.lo, b.hi);
      ++res.probes;
    }
  }
  res.bool_result.resize(n_rows);
  for (std::size_t j = 0; j < n_rows; ++j) res.bool_result[j] = res.arith[j] > 0;
  return res;
}

}  // namespace dynpred::omv
