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

#include "slotaug/metrics.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <unordered_set>

namespace slotaug {
namespace {

std::unordered_set<std::string> word_types(const Dataset &d) {
  std::unordered_set<std::string> types;
  for (const Utterance &u : d.utterances) {
    types.insert(u.tokens.begin(), u.tokens.end());
  }
  return types;
}

std::string format_fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return buffer;
}

double ratio(std::size_t numerator, std::size_t denominator) {
  return denominator == 0 ? 0.0
                          : static_cast<double>(numerator) /
                                static_cast<double>(denominator);
}

std::ofstream open_for_write(const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

}  // namespace

double word_diversity(const Dataset &augmented, const Dataset &original) {
  if (augmented.empty()) {
    throw Error(ErrorCode::kEmptyAugmented, "augmented dataset is empty");
  }
  const auto original_types = word_types(original);
  if (original_types.empty()) {
    throw Error(ErrorCode::kEmptyOriginal, "original dataset has no words");
  }
  std::size_t fresh = 0;
  for (const std::string &type : word_types(augmented)) {
    if (!original_types.count(type)) ++fresh;
  }
  return 100.0 * ratio(fresh, original_types.size());
}

Tokens delexicalize_for_metrics(const Utterance &u) {
  const SlotFrame frame = extract_frame(u);
  Tokens out;
  std::size_t i = 0;
  for (const SlotSpan &slot : frame.slots) {
    out.insert(out.end(), u.tokens.begin() + i, u.tokens.begin() + slot.begin);
    out.push_back(slot.type);
    i = slot.end;
  }
  out.insert(out.end(), u.tokens.begin() + i, u.tokens.end());
  return out;
}

namespace {

std::size_t count_novel_patterns(const Dataset &augmented,
                                 const Dataset &original) {
  std::unordered_set<std::string> patterns;
  for (const Utterance &u : original.utterances) {
    patterns.insert(join_tokens(delexicalize_for_metrics(u)));
  }
  std::size_t novel = 0;
  for (const Utterance &u : augmented.utterances) {
    if (!patterns.count(join_tokens(delexicalize_for_metrics(u)))) ++novel;
  }
  return novel;
}

}  // namespace

double originality_delex(const Dataset &augmented, const Dataset &original) {
  if (augmented.empty()) {
    throw Error(ErrorCode::kEmptyAugmented, "augmented dataset is empty");
  }
  return 100.0 * ratio(count_novel_patterns(augmented, original),
                       augmented.size());
}

DiversityReport diversity_report(const Dataset &augmented,
                                 const Dataset &original) {
  DiversityReport report;
  report.augmented_count = augmented.size();
  const auto original_types = word_types(original);
  report.original_types = original_types.size();
  if (augmented.empty()) return report;

  for (const std::string &type : word_types(augmented)) {
    if (!original_types.count(type)) report.new_word_types.insert(type);
  }
  report.word_diversity = word_diversity(augmented, original);
  report.novel_pattern_count = count_novel_patterns(augmented, original);
  report.originality_delex =
      100.0 * ratio(report.novel_pattern_count, augmented.size());
  return report;
}

double EntityCounts::precision() const { return ratio(true_positives, predicted); }
double EntityCounts::recall() const { return ratio(true_positives, gold); }
double EntityCounts::f1() const {
  const double p = precision();
  const double r = recall();
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

F1Report entity_f1(const Dataset &predicted, const Dataset &gold) {
  if (predicted.size() != gold.size()) {
    throw Error(ErrorCode::kAlignmentMismatch,
                std::to_string(predicted.size()) + " predicted vs " +
                    std::to_string(gold.size()) + " gold utterances");
  }
  F1Report report;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const Utterance &p = predicted.utterances[i];
    const Utterance &g = gold.utterances[i];
    if (p.size() != g.size()) {
      throw Error(ErrorCode::kAlignmentMismatch,
                  "utterance " + std::to_string(i + 1) + ": " +
                      std::to_string(p.size()) + " predicted vs " +
                      std::to_string(g.size()) + " gold tokens");
    }
    const auto pred_slots = extract_frame(p).slots;
    const auto gold_slots = extract_frame(g).slots;
    for (const SlotSpan &s : pred_slots) {
      ++report.per_type[s.type].predicted;
      ++report.totals.predicted;
    }
    for (const SlotSpan &s : gold_slots) {
      ++report.per_type[s.type].gold;
      ++report.totals.gold;
    }
    // Both lists are sorted by begin and spans do not overlap, so a merge
    // walk finds every exact match.
    std::size_t a = 0, b = 0;
    while (a < pred_slots.size() && b < gold_slots.size()) {
      const SlotSpan &x = pred_slots[a];
      const SlotSpan &y = gold_slots[b];
      if (x.begin == y.begin) {
        if (x.end == y.end && x.type == y.type) {
          ++report.per_type[x.type].true_positives;
          ++report.totals.true_positives;
        }
        ++a;
        ++b;
      } else if (x.begin < y.begin) {
        ++a;
      } else {
        ++b;
      }
    }
  }
  report.precision = report.totals.precision();
  report.recall = report.totals.recall();
  report.f1 = report.totals.f1();
  return report;
}

void print_f1_report(std::ostream &out, const F1Report &report) {
  out << "entities: gold " << report.totals.gold << ", predicted "
      << report.totals.predicted << ", correct "
      << report.totals.true_positives << '\n';
  out << "precision " << format_fixed(report.precision, 4) << "  recall "
      << format_fixed(report.recall, 4) << "  F1 " << format_fixed(report.f1, 4)
      << '\n';
  std::size_t width = 4;
  for (const auto &[type, counts] : report.per_type) {
    width = std::max(width, type.size());
  }
  for (const auto &[type, counts] : report.per_type) {
    out << "  " << type << std::string(width - type.size() + 2, ' ')
        << "P " << format_fixed(counts.precision(), 4) << "  R "
        << format_fixed(counts.recall(), 4) << "  F1 "
        << format_fixed(counts.f1(), 4) << "  (" << counts.gold << " gold)\n";
  }
}

void print_diversity_report(std::ostream &out, const DiversityReport &report) {
  out << "augmented utterances  " << report.augmented_count << '\n';
  out << "word diversity        " << format_fixed(report.word_diversity, 2)
      << "%  (" << report.new_word_types.size() << " new of "
      << report.original_types << " original types)\n";
  out << "originality (delex)   " << format_fixed(report.originality_delex, 2)
      << "%  (" << report.novel_pattern_count << " novel patterns)\n";
}

void write_f1_tsv(const F1Report &report, const std::filesystem::path &path) {
  auto out = open_for_write(path);
  out << "precision\t" << format_fixed(report.precision, 6) << '\n';
  out << "recall\t" << format_fixed(report.recall, 6) << '\n';
  out << "f1\t" << format_fixed(report.f1, 6) << '\n';
  out << "gold_entities\t" << report.totals.gold << '\n';
  out << "predicted_entities\t" << report.totals.predicted << '\n';
  out << "correct_entities\t" << report.totals.true_positives << '\n';
  for (const auto &[type, counts] : report.per_type) {
    out << "f1." << type << '\t' << format_fixed(counts.f1(), 6) << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

void write_diversity_tsv(const DiversityReport &report,
                         const std::filesystem::path &path) {
  auto out = open_for_write(path);
  out << "augmented_count\t" << report.augmented_count << '\n';
  out << "word_diversity\t" << format_fixed(report.word_diversity, 6) << '\n';
  out << "originality_delex\t" << format_fixed(report.originality_delex, 6)
      << '\n';
  out << "new_word_types\t" << report.new_word_types.size() << '\n';
  out << "novel_pattern_count\t" << report.novel_pattern_count << '\n';
  out << "original_word_types\t" << report.original_types << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

}  // namespace slotaug
