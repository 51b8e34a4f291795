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

#ifndef SLOTAUG_PIPELINE_H_
#define SLOTAUG_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "slotaug/corpus.h"
#include "slotaug/filter.h"
#include "slotaug/generator.h"
#include "slotaug/loss.h"
#include "slotaug/metrics.h"
#include "slotaug/transform.h"

namespace slotaug {

struct BackendConfig {
  std::string kind = "mock";  // mock | echo | http
  std::string endpoint;
  long timeout_ms = 30000;
  std::size_t max_parallel = 4;
  std::size_t max_retries = 3;
  std::filesystem::path lexicon;    // mock: slot_type<TAB>value
  std::filesystem::path templates;  // mock: context templates
};

struct PipelineConfig {
  Mode mode = Mode::kValue;
  // Augmented examples wanted per source utterance.
  double ratio = 1.0;
  // Recorded in the manifest and used when training pairs are exported.
  double epsilon = kDefaultEpsilon;
  std::size_t candidates_per_input = 3;
  std::uint64_t seed = 0;
  std::size_t max_length = 64;
  // Full sweeps over the inputs before giving up on the quota.
  std::size_t max_passes = 3;
  // Requests handed to the generator at once.
  std::size_t batch_size = 32;
  bool dedupe = true;
  // Value mode: one random slot per utterance instead of every slot.
  bool sample_slots = false;
  std::filesystem::path descriptions;
  BackendConfig backend;
};

// Throws kInvalidEpsilon or kInvalidConfig.
void validate_config(const PipelineConfig &config);

// Applies one "key = value" setting. Throws kInvalidConfig on unknown keys
// or unparsable values.
void set_config_value(PipelineConfig &config, const std::string &key,
                      const std::string &value);

// Reads "key = value" lines ('#' starts a comment) on top of base.
PipelineConfig load_config(const std::filesystem::path &path,
                           PipelineConfig base = {});

// "key<TAB>value" lines describing a run, without timestamps.
std::string render_manifest(const PipelineConfig &config,
                            const std::string &backend_id,
                            std::size_t source_size, std::size_t quota,
                            std::size_t accepted);

SlotDescriptionMap load_descriptions(const PipelineConfig &config);

// Builds the configured backend. The mock falls back to the slot dictionary
// of `data` when no lexicon file is given.
std::unique_ptr<Generator> make_generator(const BackendConfig &backend,
                                          const Dataset &data,
                                          const SlotDescriptionMap &descriptions);

struct AugmentationRun {
  std::vector<AugmentedExample> examples;
  FilterReport filter;
  DiversityReport diversity;
  std::string backend_id;
  std::size_t quota = 0;
  std::size_t inputs = 0;
  std::size_t requests = 0;
  std::size_t generation_failures = 0;
  std::size_t skipped_no_slots = 0;
  std::size_t passes = 0;
  std::vector<std::string> warnings;

  bool quota_met() const { return examples.size() >= quota; }
  Dataset augmented(const std::string &name = "augmented") const;
};

// ceil(ratio * n).
std::size_t augmentation_quota(double ratio, std::size_t n);

// Generates, filters and dedupes until ceil(ratio * |d|) examples are
// accepted or the inputs are exhausted. Inputs are visited in a seeded
// order and results are committed in that order, so a deterministic backend
// gives a deterministic run. Falling short of the quota adds an
// "InsufficientAcceptedData" warning.
AugmentationRun run_augmentation(const Dataset &d, const PipelineConfig &config,
                                 Generator &generator,
                                 const SlotDescriptionMap &descriptions);

// Writes augmented/ (three-file corpus plus provenance.tsv),
// filter_report.tsv, diversity_report.tsv and run_manifest under dir.
void write_run(const AugmentationRun &run, const PipelineConfig &config,
               std::size_t source_size, const std::filesystem::path &dir);

// provenance.tsv: "index<TAB>mode<TAB>source_id<TAB>slot_type<TAB>backend
// <TAB>rank" per example, with "-" for an empty slot type, after one
// '#'-prefixed header line.
void write_provenance(const std::vector<Provenance> &provenance,
                      const std::filesystem::path &path);
std::vector<Provenance> read_provenance(const std::filesystem::path &path);

// Concatenation, a then b.
Dataset mix(const Dataset &a, const Dataset &b);
std::vector<AugmentedExample> mix(const std::vector<AugmentedExample> &a,
                                  const std::vector<AugmentedExample> &b);

}  // namespace slotaug

#endif  // SLOTAUG_PIPELINE_H_
