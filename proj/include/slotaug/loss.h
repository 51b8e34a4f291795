// Copyright 2026 The slotaug Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLOTAUG_LOSS_H_
#define SLOTAUG_LOSS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "slotaug/error.h"
#include "slotaug/loss_kernels.h"

namespace slotaug {

// Label smoothing parameter used when none is given.
inline constexpr double kDefaultEpsilon = 0.1;

// Dense row-major matrix; one row per target position, one column per
// vocabulary entry.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  double &operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<double> &data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Per-position training targets. Positions outside smoothed_positions are
// one-hot on the gold id; smoothed positions put 1 - epsilon on the gold id
// and epsilon / (vocab_size - 1) on every other id.
struct TargetDistribution {
  Matrix probabilities;
  std::vector<std::size_t> gold_ids;
  std::vector<std::size_t> smoothed_positions;  // sorted, unique
  double epsilon = 0.0;

  std::size_t length() const { return probabilities.rows(); }
  std::size_t vocab_size() const { return probabilities.cols(); }
  bool is_smoothed(std::size_t position) const;
};

// Throws kVocabTooSmall, kInvalidEpsilon, or kInvalidArgument for ids or
// positions out of range. Duplicate smoothed positions are merged.
TargetDistribution build_targets(std::span<const std::size_t> target_ids,
                                 std::span<const std::size_t> smoothed_positions,
                                 std::size_t vocab_size,
                                 double epsilon = kDefaultEpsilon);

// Checks that every row is a probability vector: entries in [0, 1], sum
// within tolerance of 1. Throws kInvalidArgument naming the first bad row.
void check_prediction_matrix(const Matrix &predictions,
                             double tolerance = 1e-9);

// -sum_i sum_v target[i][v] * log(pred[i][v]), natural log, summed over
// positions. Throws kShapeMismatch, or kNonFinite when a prediction is zero
// where the target has mass.
double modified_ls_ce(const Matrix &predictions,
                      const TargetDistribution &targets,
                      const LossKernels &kernels = active_kernels());

// modified_ls_ce divided by the number of positions (0 for no positions).
double mean_modified_ls_ce(const Matrix &predictions,
                           const TargetDistribution &targets,
                           const LossKernels &kernels = active_kernels());

Matrix softmax_rows(const Matrix &logits,
                    const LossKernels &kernels = active_kernels());

// modified_ls_ce(softmax_rows(logits), targets).
double loss_from_logits(const Matrix &logits, const TargetDistribution &targets,
                        const LossKernels &kernels = active_kernels());

// Gradient of loss_from_logits: softmax(logits[i]) - targets[i] per row.
Matrix grad_wrt_logits(const Matrix &logits, const TargetDistribution &targets,
                       const LossKernels &kernels = active_kernels());

}  // namespace slotaug

#endif  // SLOTAUG_LOSS_H_
