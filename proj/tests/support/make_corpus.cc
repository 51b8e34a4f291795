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

// Writes one of the synthetic corpora to disk.
//   make_corpus toy|snips|atis|round_trip N SEED OUT_DIR

#include <cstdlib>
#include <iostream>
#include <string>

#include "slotaug/corpus.h"
#include "synthetic.h"

int main(int argc, char **argv) {
  using namespace slotaug;
  if (argc != 5) {
    std::cerr << "usage: make_corpus toy|snips|atis|round_trip N SEED OUT_DIR\n";
    return 2;
  }
  const std::string kind = argv[1];
  const std::size_t n = std::strtoull(argv[2], nullptr, 10);
  const std::uint64_t seed = std::strtoull(argv[3], nullptr, 10);
  Dataset d;
  if (kind == "toy") {
    d = testing::toy_corpus(n, seed);
  } else if (kind == "snips") {
    d = testing::snips_like_corpus(n, seed);
  } else if (kind == "atis") {
    d = testing::atis_like_corpus(n, seed);
  } else if (kind == "round_trip") {
    d = testing::round_trip_corpus(n, seed);
  } else {
    std::cerr << "unknown corpus kind " << kind << '\n';
    return 2;
  }
  write_dataset(d, argv[4]);
  return 0;
}
