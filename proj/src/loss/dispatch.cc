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

#include <cstdlib>
#include <string_view>

#include "slotaug/loss_kernels.h"

namespace slotaug {

const LossKernels &scalar_kernels() {
  static const LossKernels table{"scalar", &scalar::xlogy_sum,
                                 &scalar::softmax, &scalar::subtract,
                                 &scalar::sum};
  return table;
}

const LossKernels *avx2_kernels() {
#if defined(SLOTAUG_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  static const LossKernels table{"avx2", &avx2::xlogy_sum, &avx2::softmax,
                                 &avx2::subtract, &avx2::sum};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const LossKernels &active_kernels() {
  static const LossKernels &chosen = []() -> const LossKernels & {
    const char *env = std::getenv("SLOTAUG_KERNELS");
    const std::string_view request = env ? env : "";
    if (request == "scalar") return scalar_kernels();
    if (const LossKernels *wide = avx2_kernels()) return *wide;
    return scalar_kernels();
  }();
  return chosen;
}

std::vector<const LossKernels *> available_kernels() {
  std::vector<const LossKernels *> tables{&scalar_kernels()};
  if (const LossKernels *wide = avx2_kernels()) tables.push_back(wide);
  return tables;
}

}  // namespace slotaug
