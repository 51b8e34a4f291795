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

#include "slotaug/loss.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "slotaug/error.h"

namespace slotaug {
namespace {

void check_shapes(const Matrix &m, const TargetDistribution &targets,
                  const char *what) {
  if (m.rows() != targets.length() || m.cols() != targets.vocab_size()) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(what) + " is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", targets are " +
                    std::to_string(targets.length()) + "x" +
                    std::to_string(targets.vocab_size()));
  }
}

}  // namespace

bool TargetDistribution::is_smoothed(std::size_t position) const {
  return std::binary_search(smoothed_positions.begin(),
                            smoothed_positions.end(), position);
}

TargetDistribution build_targets(std::span<const std::size_t> target_ids,
                                 std::span<const std::size_t> smoothed_positions,
                                 std::size_t vocab_size, double epsilon) {
  if (vocab_size < 2) {
    throw Error(ErrorCode::kVocabTooSmall,
                "vocab_size must be >= 2, got " + std::to_string(vocab_size));
  }
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::kInvalidEpsilon,
                "epsilon must be in [0, 1), got " + std::to_string(epsilon));
  }
  for (std::size_t id : target_ids) {
    if (id >= vocab_size) {
      throw Error(ErrorCode::kInvalidArgument,
                  "target id " + std::to_string(id) + " >= vocab_size " +
                      std::to_string(vocab_size));
    }
  }

  TargetDistribution out;
  out.epsilon = epsilon;
  out.gold_ids.assign(target_ids.begin(), target_ids.end());
  out.smoothed_positions.assign(smoothed_positions.begin(),
                                smoothed_positions.end());
  std::sort(out.smoothed_positions.begin(), out.smoothed_positions.end());
  out.smoothed_positions.erase(
      std::unique(out.smoothed_positions.begin(), out.smoothed_positions.end()),
      out.smoothed_positions.end());
  if (!out.smoothed_positions.empty() &&
      out.smoothed_positions.back() >= target_ids.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "smoothed position " +
                    std::to_string(out.smoothed_positions.back()) +
                    " beyond target length " +
                    std::to_string(target_ids.size()));
  }

  const double gold_mass = 1.0 - epsilon;
  const double off_mass = epsilon / static_cast<double>(vocab_size - 1);
  out.probabilities = Matrix(target_ids.size(), vocab_size);
  for (std::size_t i = 0; i < target_ids.size(); ++i) {
    auto row = out.probabilities.row(i);
    if (epsilon > 0.0 && out.is_smoothed(i)) {
      std::fill(row.begin(), row.end(), off_mass);
      row[target_ids[i]] = gold_mass;
    } else {
      row[target_ids[i]] = 1.0;
    }
  }
  return out;
}

void check_prediction_matrix(const Matrix &predictions, double tolerance) {
  const LossKernels &k = active_kernels();
  for (std::size_t i = 0; i < predictions.rows(); ++i) {
    auto row = predictions.row(i);
    for (double p : row) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "row " + std::to_string(i) + " has entry " +
                        std::to_string(p) + " outside [0, 1]");
      }
    }
    const double total = k.sum(row.data(), row.size());
    if (std::abs(total - 1.0) > tolerance) {
      throw Error(ErrorCode::kInvalidArgument,
                  "row " + std::to_string(i) + " sums to " +
                      std::to_string(total));
    }
  }
}

double modified_ls_ce(const Matrix &predictions,
                      const TargetDistribution &targets,
                      const LossKernels &kernels) {
  check_shapes(predictions, targets, "prediction matrix");
  double total = 0.0;
  for (std::size_t i = 0; i < predictions.rows(); ++i) {
    bool nonfinite = false;
    total -= kernels.xlogy_sum(targets.probabilities.row(i).data(),
                               predictions.row(i).data(), predictions.cols(),
                               &nonfinite);
    if (nonfinite) {
      throw Error(ErrorCode::kNonFinite,
                  "zero prediction under positive target mass at position " +
                      std::to_string(i));
    }
  }
  return total;
}

double mean_modified_ls_ce(const Matrix &predictions,
                           const TargetDistribution &targets,
                           const LossKernels &kernels) {
  const double total = modified_ls_ce(predictions, targets, kernels);
  return targets.length() == 0 ? 0.0
                               : total / static_cast<double>(targets.length());
}

Matrix softmax_rows(const Matrix &logits, const LossKernels &kernels) {
  Matrix out(logits.rows(), logits.cols());
  if (logits.cols() == 0) return out;
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    kernels.softmax(logits.row(i).data(), out.row(i).data(), logits.cols());
  }
  return out;
}

double loss_from_logits(const Matrix &logits, const TargetDistribution &targets,
                        const LossKernels &kernels) {
  check_shapes(logits, targets, "logit matrix");
  return modified_ls_ce(softmax_rows(logits, kernels), targets, kernels);
}

Matrix grad_wrt_logits(const Matrix &logits, const TargetDistribution &targets,
                       const LossKernels &kernels) {
  check_shapes(logits, targets, "logit matrix");
  Matrix grad = softmax_rows(logits, kernels);
  for (std::size_t i = 0; i < grad.rows(); ++i) {
    kernels.subtract(grad.row(i).data(), targets.probabilities.row(i).data(),
                     grad.row(i).data(), grad.cols());
  }
  return grad;
}

}  // namespace slotaug
