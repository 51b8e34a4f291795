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

#include "slotaug/pipeline.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "slotaug/random.h"

namespace slotaug {
namespace {

std::string trim(const std::string &text) {
  const char *space = " \t\r\n";
  const auto first = text.find_first_not_of(space);
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(space);
  return text.substr(first, last - first + 1);
}

std::string format_number(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

[[noreturn]] void bad_value(const std::string &key, const std::string &value) {
  throw Error(ErrorCode::kInvalidConfig,
              "invalid value '" + value + "' for '" + key + "'");
}

double parse_double(const std::string &key, const std::string &value) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    bad_value(key, value);
  }
  return out;
}

std::uint64_t parse_uint(const std::string &key, const std::string &value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    bad_value(key, value);
  }
  return out;
}

bool parse_bool(const std::string &key, const std::string &value) {
  const std::string v = to_lower(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad_value(key, value);
}

}  // namespace

void validate_config(const PipelineConfig &config) {
  if (!(config.epsilon >= 0.0 && config.epsilon < 1.0)) {
    throw Error(ErrorCode::kInvalidEpsilon,
                "epsilon must be in [0, 1), got " +
                    format_number(config.epsilon));
  }
  if (!(config.ratio > 0.0) || !std::isfinite(config.ratio)) {
    throw Error(ErrorCode::kInvalidConfig,
                "ratio must be positive, got " + format_number(config.ratio));
  }
  if (config.candidates_per_input == 0) {
    throw Error(ErrorCode::kInvalidConfig, "candidates_per_input must be >= 1");
  }
  if (config.max_length == 0 || config.max_passes == 0 ||
      config.batch_size == 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "max_length, max_passes and batch_size must be >= 1");
  }
  const std::string &kind = config.backend.kind;
  if (kind != "mock" && kind != "echo" && kind != "http") {
    throw Error(ErrorCode::kInvalidConfig,
                "backend must be mock, echo or http, got '" + kind + "'");
  }
  if (kind == "http" && config.backend.endpoint.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "http backend needs an endpoint");
  }
}

void set_config_value(PipelineConfig &config, const std::string &key,
                      const std::string &value) {
  if (key == "mode") {
    try {
      config.mode = parse_mode(value);
    } catch (const Error &) {
      bad_value(key, value);
    }
  } else if (key == "ratio") {
    config.ratio = parse_double(key, value);
  } else if (key == "epsilon") {
    config.epsilon = parse_double(key, value);
  } else if (key == "candidates_per_input") {
    config.candidates_per_input = parse_uint(key, value);
  } else if (key == "seed") {
    config.seed = parse_uint(key, value);
  } else if (key == "max_length") {
    config.max_length = parse_uint(key, value);
  } else if (key == "max_passes") {
    config.max_passes = parse_uint(key, value);
  } else if (key == "batch_size") {
    config.batch_size = parse_uint(key, value);
  } else if (key == "dedupe") {
    config.dedupe = parse_bool(key, value);
  } else if (key == "sample_slots") {
    config.sample_slots = parse_bool(key, value);
  } else if (key == "descriptions") {
    config.descriptions = value;
  } else if (key == "backend") {
    config.backend.kind = value;
  } else if (key == "endpoint") {
    config.backend.endpoint = value;
  } else if (key == "timeout_ms") {
    config.backend.timeout_ms = static_cast<long>(parse_uint(key, value));
  } else if (key == "max_parallel") {
    config.backend.max_parallel = parse_uint(key, value);
  } else if (key == "max_retries") {
    config.backend.max_retries = parse_uint(key, value);
  } else if (key == "lexicon") {
    config.backend.lexicon = value;
  } else if (key == "templates") {
    config.backend.templates = value;
  } else {
    throw Error(ErrorCode::kInvalidConfig, "unknown config key '" + key + "'");
  }
}

PipelineConfig load_config(const std::filesystem::path &path,
                           PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidConfig,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected key = value");
    }
    set_config_value(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

std::string render_manifest(const PipelineConfig &config,
                            const std::string &backend_id,
                            std::size_t source_size, std::size_t quota,
                            std::size_t accepted) {
  std::ostringstream out;
  out << "mode\t" << mode_name(config.mode) << '\n'
      << "ratio\t" << format_number(config.ratio) << '\n'
      << "epsilon\t" << format_number(config.epsilon) << '\n'
      << "candidates_per_input\t" << config.candidates_per_input << '\n'
      << "seed\t" << config.seed << '\n'
      << "max_length\t" << config.max_length << '\n'
      << "max_passes\t" << config.max_passes << '\n'
      << "dedupe\t" << (config.dedupe ? "true" : "false") << '\n'
      << "sample_slots\t" << (config.sample_slots ? "true" : "false") << '\n'
      << "backend\t" << config.backend.kind << '\n'
      << "backend_id\t" << backend_id << '\n'
      << "source_size\t" << source_size << '\n'
      << "quota\t" << quota << '\n'
      << "accepted\t" << accepted << '\n';
  return out.str();
}

SlotDescriptionMap load_descriptions(const PipelineConfig &config) {
  if (config.descriptions.empty()) return SlotDescriptionMap{};
  return SlotDescriptionMap::load(config.descriptions);
}

std::unique_ptr<Generator> make_generator(const BackendConfig &backend,
                                          const Dataset &data,
                                          const SlotDescriptionMap &descriptions) {
  if (backend.kind == "echo") return std::make_unique<EchoGenerator>();
  if (backend.kind == "http") {
    HttpGeneratorOptions options;
    options.endpoint = backend.endpoint;
    options.timeout = std::chrono::milliseconds(backend.timeout_ms);
    options.max_parallel = backend.max_parallel;
    options.max_retries = backend.max_retries;
    return std::make_unique<HttpGenerator>(options);
  }
  if (backend.kind != "mock") {
    throw Error(ErrorCode::kInvalidConfig, "unknown backend '" + backend.kind + "'");
  }
  auto lexicon = backend.lexicon.empty()
                     ? MockLexiconGenerator::lexicon_from_dictionary(
                           build_slot_dictionary(data))
                     : MockLexiconGenerator::load_lexicon(backend.lexicon);
  std::vector<std::string> templates;
  if (!backend.templates.empty()) {
    templates = MockLexiconGenerator::load_templates(backend.templates);
  }
  return std::make_unique<MockLexiconGenerator>(std::move(lexicon),
                                                std::move(templates),
                                                descriptions);
}

Dataset AugmentationRun::augmented(const std::string &name) const {
  Dataset d;
  d.name = name;
  d.utterances.reserve(examples.size());
  for (const AugmentedExample &example : examples) {
    d.utterances.push_back(example.utterance);
  }
  return d;
}

std::size_t augmentation_quota(double ratio, std::size_t n) {
  const double exact = ratio * static_cast<double>(n);
  const double nearest = std::round(exact);
  // Absorb representation error such as 0.3 * 10 = 3.0000000000000004.
  if (std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(exact));
}

AugmentationRun run_augmentation(const Dataset &d, const PipelineConfig &config,
                                 Generator &generator,
                                 const SlotDescriptionMap &descriptions) {
  validate_config(config);
  if (d.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot augment an empty dataset");
  }

  AugmentationRun run;
  run.backend_id = generator.id();
  run.quota = augmentation_quota(config.ratio, d.size());

  std::vector<AugmentationInput> inputs;
  Rng slot_rng(config.seed ^ 0x5eed5107ULL);
  for (std::size_t id = 0; id < d.size(); ++id) {
    const Utterance &u = d.utterances[id];
    if (config.mode == Mode::kContext) {
      inputs.push_back(make_context_input(u, descriptions, id));
      continue;
    }
    if (extract_frame(u).slots.empty()) {
      ++run.skipped_no_slots;
      continue;
    }
    if (config.sample_slots) {
      inputs.push_back(sample_value_input(u, descriptions, slot_rng, id));
    } else {
      for (auto &input : enumerate_value_inputs(u, descriptions, id)) {
        inputs.push_back(std::move(input));
      }
    }
  }
  run.inputs = inputs.size();

  const auto order = seeded_permutation(inputs.size(), config.seed);
  std::optional<DictionaryScanner> scanner;
  if (config.mode == Mode::kContext) scanner.emplace(build_slot_dictionary(d));
  DuplicateIndex seen;
  if (config.dedupe) seen = DuplicateIndex(d);

  bool done = run.quota == 0 || inputs.empty();
  for (std::size_t pass = 0; pass < config.max_passes && !done; ++pass) {
    const std::size_t accepted_before = run.examples.size();
    for (std::size_t start = 0; start < order.size() && !done;
         start += config.batch_size) {
      const std::size_t stop = std::min(order.size(), start + config.batch_size);
      std::vector<GenerationRequest> requests;
      requests.reserve(stop - start);
      for (std::size_t pos = start; pos < stop; ++pos) {
        const AugmentationInput &input = inputs[order[pos]];
        GenerationRequest request;
        request.input_text = input.text;
        request.num_candidates = config.candidates_per_input;
        request.max_length = config.max_length;
        request.seed = config.seed + pass * order.size() + pos;
        request.source_hint = input.source.tokens;
        requests.push_back(std::move(request));
      }

      const auto outcomes = generator.generate_batch(requests);
      for (std::size_t k = 0; k < outcomes.size() && !done; ++k) {
        ++run.requests;
        const GenerationOutcome &outcome = outcomes[k];
        if (!outcome.ok()) {
          ++run.generation_failures;
          continue;
        }
        const AugmentationInput &input = inputs[order[start + k]];
        for (std::size_t rank = 0; rank < outcome.candidates.size(); ++rank) {
          const GenerationCandidate &candidate = outcome.candidates[rank];
          FilterOutcome filtered =
              config.mode == Mode::kValue
                  ? filter_value_candidate(candidate, input, rank)
                  : filter_context_candidate(candidate, input, *scanner, rank);
          if (!accepted(filtered)) {
            run.filter.record(filtered);
            continue;
          }
          auto &example = std::get<AugmentedExample>(filtered);
          if (config.dedupe && !seen.insert(example.utterance)) {
            run.filter.record(RejectReason::kDuplicate);
            continue;
          }
          run.filter.record_accepted();
          run.examples.push_back(std::move(example));
          break;
        }
        done = run.examples.size() >= run.quota;
      }
    }
    ++run.passes;
    if (run.examples.size() == accepted_before) break;
  }

  if (!run.quota_met()) {
    run.warnings.push_back("InsufficientAcceptedData: accepted " +
                           std::to_string(run.examples.size()) + " of quota " +
                           std::to_string(run.quota));
  }
  run.diversity = diversity_report(run.augmented(), d);
  return run;
}

void write_provenance(const std::vector<Provenance> &provenance,
                      const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << "#index\tmode\tsource_id\tslot_type\tbackend\trank\n";
  for (std::size_t i = 0; i < provenance.size(); ++i) {
    const Provenance &p = provenance[i];
    out << i << '\t' << mode_name(p.mode) << '\t' << p.source_id << '\t'
        << (p.slot_type.empty() ? "-" : p.slot_type) << '\t' << p.backend_id
        << '\t' << p.candidate_rank << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

std::vector<Provenance> read_provenance(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<Provenance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 6) {
      throw Error(ErrorCode::kInvalidConfig,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected 6 fields");
    }
    Provenance p;
    p.mode = parse_mode(fields[1]);
    p.source_id = parse_uint("source_id", fields[2]);
    p.slot_type = fields[3] == "-" ? "" : fields[3];
    p.backend_id = fields[4];
    p.candidate_rank = parse_uint("rank", fields[5]);
    out.push_back(std::move(p));
  }
  return out;
}

void write_run(const AugmentationRun &run, const PipelineConfig &config,
               std::size_t source_size, const std::filesystem::path &dir) {
  const auto corpus_dir = dir / "augmented";
  write_dataset(run.augmented(), corpus_dir);
  std::vector<Provenance> provenance;
  provenance.reserve(run.examples.size());
  for (const AugmentedExample &example : run.examples) {
    provenance.push_back(example.provenance);
  }
  write_provenance(provenance, corpus_dir / "provenance.tsv");
  run.filter.write_tsv(dir / "filter_report.tsv");
  write_diversity_tsv(run.diversity, dir / "diversity_report.tsv");

  std::ofstream manifest(dir / "run_manifest", std::ios::binary | std::ios::trunc);
  manifest << render_manifest(config, run.backend_id, source_size, run.quota,
                              run.examples.size());
  if (!manifest) {
    throw Error(ErrorCode::kIo, "cannot write " + (dir / "run_manifest").string());
  }
}

Dataset mix(const Dataset &a, const Dataset &b) {
  Dataset out;
  if (a.name.empty() || b.name.empty()) {
    out.name = a.name.empty() ? b.name : a.name;
  } else {
    out.name = a.name + "+" + b.name;
  }
  out.utterances.reserve(a.size() + b.size());
  out.utterances.insert(out.utterances.end(), a.utterances.begin(),
                        a.utterances.end());
  out.utterances.insert(out.utterances.end(), b.utterances.begin(),
                        b.utterances.end());
  return out;
}

std::vector<AugmentedExample> mix(const std::vector<AugmentedExample> &a,
                                  const std::vector<AugmentedExample> &b) {
  std::vector<AugmentedExample> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace slotaug
