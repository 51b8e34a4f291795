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

#ifndef SLOTAUG_METRICS_H_
#define SLOTAUG_METRICS_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "slotaug/corpus.h"

namespace slotaug {

struct DiversityReport {
  double word_diversity = 0.0;     // percent
  double originality_delex = 0.0;  // percent
  std::set<std::string> new_word_types;
  std::size_t novel_pattern_count = 0;
  std::size_t augmented_count = 0;
  std::size_t original_types = 0;
};

// 100 * |types(augmented) \ types(original)| / |types(original)|.
// Throws kEmptyAugmented or kEmptyOriginal.
double word_diversity(const Dataset &augmented, const Dataset &original);

// Utterance with every slot value collapsed to its bare type token.
Tokens delexicalize_for_metrics(const Utterance &u);

// 100 * (# augmented utterances whose delexicalized form is absent from the
// original delexicalized set) / (# augmented). Throws kEmptyAugmented.
double originality_delex(const Dataset &augmented, const Dataset &original);

// Both metrics plus the supporting sets. An empty augmented set yields a
// zero report instead of throwing.
DiversityReport diversity_report(const Dataset &augmented,
                                 const Dataset &original);

struct EntityCounts {
  std::size_t true_positives = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;

  double precision() const;
  double recall() const;
  double f1() const;
};

struct F1Report {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  EntityCounts totals;
  std::map<std::string, EntityCounts> per_type;
};

// Entity-level scores over exact (type, span) matches, as in conlleval.
// Throws kAlignmentMismatch when utterance or token counts differ.
F1Report entity_f1(const Dataset &predicted, const Dataset &gold);

// Human-readable tables.
void print_f1_report(std::ostream &out, const F1Report &report);
void print_diversity_report(std::ostream &out, const DiversityReport &report);

// "key<TAB>value" files.
void write_f1_tsv(const F1Report &report, const std::filesystem::path &path);
void write_diversity_tsv(const DiversityReport &report,
                         const std::filesystem::path &path);

}  // namespace slotaug

#endif  // SLOTAUG_METRICS_H_
