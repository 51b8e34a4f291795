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

#include "slotaug/filter.h"

#include <algorithm>
#include <fstream>

namespace slotaug {
namespace {

// Lowercases candidate tokens; nullopt if any token is unusable as corpus
// text (empty, whitespace, sentinel).
std::optional<Tokens> normalize(const GenerationCandidate &candidate) {
  if (candidate.tokens.empty()) return std::nullopt;
  Tokens tokens;
  tokens.reserve(candidate.tokens.size());
  for (const std::string &token : candidate.tokens) {
    if (!is_valid_token(token)) return std::nullopt;
    tokens.push_back(to_lower(token));
  }
  return tokens;
}

Rejection reject(RejectReason reason, std::string detail) {
  return Rejection{reason, std::move(detail)};
}

bool matches_at(const Tokens &tokens, std::size_t at, const Tokens &needle) {
  if (at + needle.size() > tokens.size()) return false;
  return std::equal(needle.begin(), needle.end(), tokens.begin() + at);
}

bool any_claimed(const std::vector<bool> &claimed, std::size_t begin,
                 std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    if (claimed[i]) return true;
  }
  return false;
}

}  // namespace

const char *reject_reason_name(RejectReason reason) {
  switch (reason) {
    case RejectReason::kContextMismatch: return "context_mismatch";
    case RejectReason::kEmptyValue: return "empty_value";
    case RejectReason::kMissingValue: return "missing_value";
    case RejectReason::kExtraValue: return "extra_value";
    case RejectReason::kDuplicate: return "duplicate";
    case RejectReason::kMalformed: return "malformed";
  }
  return "unknown";
}

void FilterReport::record(const FilterOutcome &outcome) {
  if (const auto *rejection = std::get_if<Rejection>(&outcome)) {
    record(rejection->reason);
  } else {
    record_accepted();
  }
}

std::size_t FilterReport::total() const {
  std::size_t sum = accepted_;
  for (std::size_t count : rejected_) sum += count;
  return sum;
}

void FilterReport::merge(const FilterReport &other) {
  accepted_ += other.accepted_;
  for (std::size_t i = 0; i < kNumRejectReasons; ++i) {
    rejected_[i] += other.rejected_[i];
  }
}

std::vector<std::pair<std::string, std::size_t>> FilterReport::rows() const {
  std::vector<std::pair<std::string, std::size_t>> out;
  out.emplace_back("accepted", accepted_);
  for (std::size_t i = 0; i < kNumRejectReasons; ++i) {
    out.emplace_back(std::string("rejected_") +
                         reject_reason_name(static_cast<RejectReason>(i)),
                     rejected_[i]);
  }
  return out;
}

void FilterReport::write_tsv(const std::filesystem::path &path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  for (const auto &[name, count] : rows()) out << name << '\t' << count << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

FilterOutcome filter_value_candidate(const GenerationCandidate &candidate,
                                     const AugmentationInput &input,
                                     std::size_t rank) {
  if (input.mode != Mode::kValue || !input.chosen_slot) {
    throw Error(ErrorCode::kInvalidArgument,
                "filter_value_candidate needs a value-mode input");
  }
  auto tokens = normalize(candidate);
  if (!tokens) {
    return reject(RejectReason::kMalformed, "candidate has unusable tokens");
  }
  const std::size_t left = input.region_begin;
  const std::size_t right = input.text.size() - input.region_end;
  if (tokens->size() < left + right ||
      !std::equal(input.text.begin(), input.text.begin() + left,
                  tokens->begin()) ||
      !std::equal(input.text.begin() + input.region_end, input.text.end(),
                  tokens->end() - right)) {
    return reject(RejectReason::kContextMismatch,
                  "context differs from '" + join_tokens(input.text) + "'");
  }
  const std::size_t value_len = tokens->size() - left - right;
  if (value_len == 0) {
    return reject(RejectReason::kEmptyValue, "no value between the contexts");
  }

  const SlotSpan &slot = input.chosen();
  const Tokens &source_tags = input.source.tags;
  Utterance u;
  u.tokens = std::move(*tokens);
  u.intent = input.source.intent;
  u.tags.assign(source_tags.begin(), source_tags.begin() + slot.begin);
  u.tags.push_back(begin_tag(slot.type));
  for (std::size_t i = 1; i < value_len; ++i) u.tags.push_back(inside_tag(slot.type));
  u.tags.insert(u.tags.end(), source_tags.begin() + slot.end,
                source_tags.end());
  if (!is_valid_utterance(u)) {
    return reject(RejectReason::kMalformed, "projected labels are not valid BIO");
  }

  AugmentedExample example;
  example.utterance = std::move(u);
  example.provenance = {Mode::kValue, input.source_id, slot.type,
                        candidate.backend_id, rank};
  return example;
}

DictionaryScanner::DictionaryScanner(const SlotDictionary &dict) {
  for (SlotDictionary::Entry &entry : dict.longest_first()) {
    if (entry.value.empty()) continue;
    by_first_[entry.value.front()].push_back(std::move(entry));
  }
}

std::optional<DictionaryScanner::Match> DictionaryScanner::find_unclaimed(
    const Tokens &tokens, const std::vector<bool> &claimed) const {
  for (std::size_t s = 0; s < tokens.size(); ++s) {
    if (claimed[s]) continue;
    auto it = by_first_.find(tokens[s]);
    if (it == by_first_.end()) continue;
    for (const SlotDictionary::Entry &entry : it->second) {
      const std::size_t e = s + entry.value.size();
      if (matches_at(tokens, s, entry.value) && !any_claimed(claimed, s, e)) {
        return Match{entry.type, s, e};
      }
    }
  }
  return std::nullopt;
}

FilterOutcome filter_context_candidate(const GenerationCandidate &candidate,
                                       const SlotFrame &frame,
                                       const DictionaryScanner &scanner,
                                       Provenance provenance) {
  auto tokens = normalize(candidate);
  if (!tokens) {
    return reject(RejectReason::kMalformed, "candidate has unusable tokens");
  }
  const std::size_t n = tokens->size();
  std::vector<bool> claimed(n, false);
  SlotFrame matched;
  matched.intent = frame.intent;
  for (const SlotSpan &slot : frame.slots) {
    std::optional<std::size_t> found;
    for (std::size_t s = 0; !slot.value.empty() && s + slot.value.size() <= n;
         ++s) {
      if (matches_at(*tokens, s, slot.value) &&
          !any_claimed(claimed, s, s + slot.value.size())) {
        found = s;
        break;
      }
    }
    if (!found) {
      return reject(RejectReason::kMissingValue,
                    slot.type + "=" + slot.value_string());
    }
    const std::size_t end = *found + slot.value.size();
    std::fill(claimed.begin() + *found, claimed.begin() + end, true);
    matched.slots.push_back({slot.type, slot.value, *found, end});
  }

  if (auto extra = scanner.find_unclaimed(*tokens, claimed)) {
    return reject(RejectReason::kExtraValue,
                  extra->type + "=" +
                      join_tokens(Tokens(tokens->begin() + extra->begin,
                                         tokens->begin() + extra->end)));
  }

  std::sort(matched.slots.begin(), matched.slots.end(),
            [](const SlotSpan &a, const SlotSpan &b) { return a.begin < b.begin; });
  Utterance u;
  u.tags = render_bio(matched, n);
  u.tokens = std::move(*tokens);
  u.intent = frame.intent;
  if (!is_valid_utterance(u)) {
    return reject(RejectReason::kMalformed, "projected labels are not valid BIO");
  }

  provenance.mode = Mode::kContext;
  if (provenance.backend_id.empty()) provenance.backend_id = candidate.backend_id;
  return AugmentedExample{std::move(u), std::move(provenance)};
}

FilterOutcome filter_context_candidate(const GenerationCandidate &candidate,
                                       const SlotFrame &frame,
                                       const SlotDictionary &dict,
                                       Provenance provenance) {
  return filter_context_candidate(candidate, frame, DictionaryScanner(dict),
                                  std::move(provenance));
}

FilterOutcome filter_context_candidate(const GenerationCandidate &candidate,
                                       const AugmentationInput &input,
                                       const DictionaryScanner &scanner,
                                       std::size_t rank) {
  if (input.mode != Mode::kContext) {
    throw Error(ErrorCode::kInvalidArgument,
                "filter_context_candidate needs a context-mode input");
  }
  Provenance provenance{Mode::kContext, input.source_id, {},
                        candidate.backend_id, rank};
  return filter_context_candidate(candidate, input.frame, scanner,
                                  std::move(provenance));
}

DuplicateIndex::DuplicateIndex(const Dataset &seed) {
  for (const Utterance &u : seed.utterances) insert(u);
}

std::string DuplicateIndex::key(const Utterance &u) {
  return join_tokens(u.tokens) + '\x1f' + join_tokens(u.tags);
}

bool DuplicateIndex::insert(const Utterance &u) {
  return keys_.insert(key(u)).second;
}

bool DuplicateIndex::contains(const Utterance &u) const {
  return keys_.count(key(u)) > 0;
}

std::vector<AugmentedExample> dedupe(const std::vector<AugmentedExample> &examples,
                                     const Dataset &against,
                                     std::size_t *removed) {
  DuplicateIndex index(against);
  std::vector<AugmentedExample> kept;
  for (const AugmentedExample &example : examples) {
    if (index.insert(example.utterance)) kept.push_back(example);
  }
  if (removed) *removed = examples.size() - kept.size();
  return kept;
}

}  // namespace slotaug
