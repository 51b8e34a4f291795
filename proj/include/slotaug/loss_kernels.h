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

#ifndef SLOTAUG_LOSS_KERNELS_H_
#define SLOTAUG_LOSS_KERNELS_H_

#include <cstddef>
#include <vector>

namespace slotaug {

// Row kernels behind the loss. Every table computes the same functions; the
// scalar table is the reference and the vector tables are tested against it.
struct LossKernels {
  const char *name;

  // sum_i t[i] * log(p[i]) over entries with t[i] != 0. Sets *nonfinite when
  // such an entry has p[i] <= 0; those entries are left out of the sum.
  double (*xlogy_sum)(const double *t, const double *p, std::size_t n,
                      bool *nonfinite);

  // Numerically stable softmax of x into out. n >= 1.
  void (*softmax)(const double *x, double *out, std::size_t n);

  // out[i] = a[i] - b[i].
  void (*subtract)(const double *a, const double *b, double *out,
                   std::size_t n);

  double (*sum)(const double *x, std::size_t n);
};

const LossKernels &scalar_kernels();

// Null unless the AVX2 table was compiled in and the CPU supports AVX2+FMA.
const LossKernels *avx2_kernels();

// The table selected at first use: the widest supported one, overridable
// with SLOTAUG_KERNELS=scalar|avx2.
const LossKernels &active_kernels();

// Every table usable on this machine, scalar first.
std::vector<const LossKernels *> available_kernels();

namespace scalar {
double xlogy_sum(const double *t, const double *p, std::size_t n,
                 bool *nonfinite);
void softmax(const double *x, double *out, std::size_t n);
void subtract(const double *a, const double *b, double *out, std::size_t n);
double sum(const double *x, std::size_t n);
}  // namespace scalar

#if defined(SLOTAUG_HAVE_AVX2)
namespace avx2 {
double xlogy_sum(const double *t, const double *p, std::size_t n,
                 bool *nonfinite);
void softmax(const double *x, double *out, std::size_t n);
void subtract(const double *a, const double *b, double *out, std::size_t n);
double sum(const double *x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace slotaug

#endif  // SLOTAUG_LOSS_KERNELS_H_
