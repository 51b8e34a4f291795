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

#include <algorithm>
#include <cmath>

#include "slotaug/loss_kernels.h"

namespace slotaug {
namespace scalar {

double xlogy_sum(const double *t, const double *p, std::size_t n,
                 bool *nonfinite) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i] == 0.0) continue;
    if (!(p[i] > 0.0)) {
      *nonfinite = true;
      continue;
    }
    acc += t[i] * std::log(p[i]);
  }
  return acc;
}

void softmax(const double *x, double *out, std::size_t n) {
  const double peak = *std::max_element(x, x + n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::exp(x[i] - peak);
    total += out[i];
  }
  for (std::size_t i = 0; i < n; ++i) out[i] /= total;
}

void subtract(const double *a, const double *b, double *out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

double sum(const double *x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

}  // namespace scalar
}  // namespace slotaug
