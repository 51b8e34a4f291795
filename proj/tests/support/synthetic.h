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

// Deterministic synthetic corpora for tests. The public ATIS/Snips files are
// not redistributed here; these stand in with the same shape and sizes.

#ifndef SLOTAUG_TESTS_SUPPORT_SYNTHETIC_H_
#define SLOTAUG_TESTS_SUPPORT_SYNTHETIC_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slotaug/corpus.h"
#include "slotaug/generator.h"

namespace slotaug::testing {

inline constexpr std::size_t kAtisTrainSize = 4478;
inline constexpr std::size_t kSnipsTrainSize = 13084;

// The single utterance of the running restaurant example.
Utterance table1_utterance();
// Same sentence with "this evening" as the time range.
Utterance table1_evening_utterance();

// Template-based restaurant/weather/music corpus.
Dataset toy_corpus(std::size_t n, std::uint64_t seed);
// Seven Snips-style intents.
Dataset snips_like_corpus(std::size_t n, std::uint64_t seed);
// Flight-domain corpus.
Dataset atis_like_corpus(std::size_t n, std::uint64_t seed);

// Slot values guaranteed absent from every synthetic corpus above, keyed by
// the slot types those corpora use.
MockLexiconGenerator::Lexicon disjoint_lexicon();

// Random utterances whose context words never occur inside a slot value and
// whose slot values share no tokens with each other: the setting in which
// both filters can recover gold labels from surface text alone.
Dataset round_trip_corpus(std::size_t n, std::uint64_t seed);

// Arbitrary valid BIO tag sequences over a tiny type inventory.
Tokens random_bio_tags(std::size_t length, std::uint64_t seed);
Dataset random_bio_corpus(std::size_t max_utterances, std::size_t max_tokens,
                          std::uint64_t seed);

}  // namespace slotaug::testing

#endif  // SLOTAUG_TESTS_SUPPORT_SYNTHETIC_H_
