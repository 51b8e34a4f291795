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

#include "slotaug/cli.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slotaug/corpus.h"
#include "slotaug/loss.h"
#include "slotaug/metrics.h"
#include "slotaug/pipeline.h"
#include "slotaug/transform.h"

namespace slotaug {
namespace {

bool is_usage_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
    case ErrorCode::kNonFinite:
    case ErrorCode::kShapeMismatch:
      return false;
    default:
      return true;
  }
}

struct AugmentArgs {
  std::string data_dir;
  std::string out_dir;
  std::string config;
  std::string mode;
  std::string backend;
  std::string endpoint;
  std::string descriptions;
  std::string lexicon;
  std::string templates;
  double ratio = 0.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::size_t candidates = 0;
  std::size_t max_length = 0;
  std::size_t max_passes = 0;
  std::size_t max_parallel = 0;
  long timeout_ms = 0;
  bool no_dedupe = false;
  bool sample_slots = false;
};

int run_augment(const AugmentArgs &args, const CLI::App &cmd, std::ostream &out,
                std::ostream &err) {
  PipelineConfig config;
  if (!args.config.empty()) config = load_config(args.config);
  auto given = [&](const char *flag) { return cmd.count(flag) > 0; };
  if (given("--mode")) config.mode = parse_mode(args.mode);
  if (given("--backend")) config.backend.kind = args.backend;
  if (given("--endpoint")) config.backend.endpoint = args.endpoint;
  if (given("--descriptions")) config.descriptions = args.descriptions;
  if (given("--lexicon")) config.backend.lexicon = args.lexicon;
  if (given("--templates")) config.backend.templates = args.templates;
  if (given("--ratio")) config.ratio = args.ratio;
  if (given("--epsilon")) config.epsilon = args.epsilon;
  if (given("--seed")) config.seed = args.seed;
  if (given("--candidates")) config.candidates_per_input = args.candidates;
  if (given("--max-length")) config.max_length = args.max_length;
  if (given("--max-passes")) config.max_passes = args.max_passes;
  if (given("--max-parallel")) config.backend.max_parallel = args.max_parallel;
  if (given("--timeout-ms")) config.backend.timeout_ms = args.timeout_ms;
  if (args.no_dedupe) config.dedupe = false;
  if (args.sample_slots) config.sample_slots = true;
  if (config.backend.kind == "http" && config.backend.endpoint.empty()) {
    if (const char *env = std::getenv("SLOTAUG_ENDPOINT")) {
      config.backend.endpoint = env;
    }
  }
  validate_config(config);

  const Dataset data = parse_dataset(args.data_dir);
  const SlotDescriptionMap descriptions = load_descriptions(config);
  auto generator = make_generator(config.backend, data, descriptions);
  const AugmentationRun run =
      run_augmentation(data, config, *generator, descriptions);
  write_run(run, config, data.size(), args.out_dir);

  out << "mode " << mode_name(config.mode) << ", backend " << run.backend_id
      << '\n';
  out << "source utterances " << data.size() << ", inputs " << run.inputs
      << ", requests " << run.requests << ", generation failures "
      << run.generation_failures << '\n';
  out << "accepted " << run.examples.size() << " of quota " << run.quota
      << '\n';
  for (const auto &[name, count] : run.filter.rows()) {
    out << "  " << name << '\t' << count << '\n';
  }
  print_diversity_report(out, run.diversity);
  out << "run directory " << args.out_dir << '\n';
  for (const std::string &warning : run.warnings) {
    err << "warning: " << warning << '\n';
  }
  return kExitOk;
}

int run_split(const std::string &data_dir, const std::string &fraction_text,
              std::uint64_t seed, const std::string &out_dir,
              std::ostream &out) {
  const Fraction fraction = Fraction::parse(fraction_text);
  const Dataset data = parse_dataset(data_dir);
  const Dataset part = split_dataset(data, fraction, seed);
  write_dataset(part, out_dir);
  out << "split " << data.size() << " -> " << part.size() << " utterances ("
      << fraction.numerator << "/" << fraction.denominator << ", seed " << seed
      << ") into " << out_dir << '\n';
  return kExitOk;
}

int run_eval(const std::string &pred_dir, const std::string &gold_dir,
             const std::string &out_file, std::ostream &out) {
  const F1Report report =
      entity_f1(parse_dataset(pred_dir), parse_dataset(gold_dir));
  print_f1_report(out, report);
  if (!out_file.empty()) write_f1_tsv(report, out_file);
  return kExitOk;
}

int run_diversity(const std::string &augmented_dir,
                  const std::string &original_dir, const std::string &out_file,
                  std::ostream &out) {
  const DiversityReport report = diversity_report(
      parse_dataset(augmented_dir), parse_dataset(original_dir));
  print_diversity_report(out, report);
  if (!out_file.empty()) write_diversity_tsv(report, out_file);
  return kExitOk;
}

int run_mix(const std::vector<std::string> &inputs, const std::string &out_dir,
            std::ostream &out) {
  Dataset mixed;
  std::vector<Provenance> provenance;
  bool all_have_provenance = true;
  for (const std::string &dir : inputs) {
    const Dataset d = parse_dataset(dir);
    const auto prov_path = std::filesystem::path(dir) / "provenance.tsv";
    if (all_have_provenance && std::filesystem::exists(prov_path)) {
      auto rows = read_provenance(prov_path);
      if (rows.size() != d.size()) {
        throw Error(ErrorCode::kInvalidArgument,
                    prov_path.string() + " has " + std::to_string(rows.size()) +
                        " rows for " + std::to_string(d.size()) +
                        " utterances");
      }
      provenance.insert(provenance.end(), rows.begin(), rows.end());
    } else {
      all_have_provenance = false;
    }
    mixed = mix(mixed, d);
  }
  write_dataset(mixed, out_dir);
  if (all_have_provenance) {
    write_provenance(provenance, std::filesystem::path(out_dir) / "provenance.tsv");
  }
  out << "mixed " << inputs.size() << " corpora into " << mixed.size()
      << " utterances at " << out_dir << '\n';
  return kExitOk;
}

int run_validate(const std::string &data_dir, std::ostream &out) {
  const Dataset d = parse_dataset(data_dir);
  const SlotDictionary dict = build_slot_dictionary(d);
  std::set<std::string> intents;
  std::size_t slots = 0;
  for (const Utterance &u : d.utterances) {
    intents.insert(u.intent);
    slots += extract_frame(u).slots.size();
  }
  out << data_dir << ": ok\n"
      << "  utterances  " << d.size() << '\n'
      << "  intents     " << intents.size() << '\n'
      << "  slot types  " << dict.num_types() << '\n'
      << "  slots       " << slots << '\n';
  return kExitOk;
}

int run_pairs(const std::string &data_dir, const std::string &mode_text,
              const std::string &descriptions_path, const std::string &out_dir,
              std::ostream &out) {
  const Mode mode = parse_mode(mode_text);
  SlotDescriptionMap descriptions;
  if (!descriptions_path.empty()) {
    descriptions = SlotDescriptionMap::load(descriptions_path);
  }
  const TrainingPairSet set =
      make_training_pairs(parse_dataset(data_dir), mode, descriptions);
  write_training_pairs(set.pairs, out_dir);
  out << "wrote " << set.pairs.size() << " " << mode_name(mode)
      << "-mode training pairs to " << out_dir;
  if (set.skipped_no_slots > 0) {
    out << " (" << set.skipped_no_slots << " slotless utterances skipped)";
  }
  out << '\n';
  return kExitOk;
}

// Probe file: {"vocab_size": V, "epsilon": e, "examples": [{"logits":
// [[...V reals] per position], "targets": [ids], "smoothed": [positions]}]}.
// Epsilon defaults to 0.1 and "smoothed" to none.
int run_loss(const std::string &probes_path, const std::string &out_file,
             std::ostream &out) {
  using Json = nlohmann::ordered_json;
  std::ifstream in(probes_path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + probes_path);
  Json probes = Json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (probes.is_discarded() || !probes.is_object() ||
      !probes.contains("examples") || !probes["examples"].is_array() ||
      !probes.contains("vocab_size")) {
    throw Error(ErrorCode::kInvalidArgument,
                probes_path + ": expected an object with vocab_size and examples");
  }
  Json result;
  try {
    const auto vocab = probes["vocab_size"].get<std::size_t>();
    const double epsilon = probes.value("epsilon", kDefaultEpsilon);
    result["kernels"] = active_kernels().name;
    result["epsilon"] = epsilon;
    result["losses"] = Json::array();
    result["mean_losses"] = Json::array();
    for (const Json &example : probes["examples"]) {
      const auto rows = example.at("logits").get<std::vector<std::vector<double>>>();
      const auto ids = example.at("targets").get<std::vector<std::size_t>>();
      const auto smoothed =
          example.value("smoothed", std::vector<std::size_t>{});
      Matrix logits(rows.size(), vocab);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != vocab) {
          throw Error(ErrorCode::kShapeMismatch,
                      "logit row has " + std::to_string(rows[i].size()) +
                          " entries, vocab_size is " + std::to_string(vocab));
        }
        std::copy(rows[i].begin(), rows[i].end(), logits.row(i).begin());
      }
      const TargetDistribution targets =
          build_targets(ids, smoothed, vocab, epsilon);
      const double loss = loss_from_logits(logits, targets);
      result["losses"].push_back(loss);
      result["mean_losses"].push_back(ids.empty() ? 0.0 : loss / ids.size());
    }
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::kInvalidArgument, probes_path + ": " + e.what());
  }
  const std::string text = result.dump(2) + "\n";
  if (out_file.empty()) {
    out << text;
  } else {
    std::ofstream file(out_file, std::ios::binary | std::ios::trunc);
    if (!(file << text)) throw Error(ErrorCode::kIo, "cannot write " + out_file);
    out << "wrote " << result["losses"].size() << " losses to " << out_file
        << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"Slot-filling data augmentation toolkit", "slotaug"};
  app.require_subcommand(1);

  AugmentArgs aug;
  auto *augment = app.add_subcommand("augment", "Run an augmentation pipeline");
  augment->add_option("--data-dir", aug.data_dir, "Source corpus")->required();
  augment->add_option("--out-dir", aug.out_dir, "Run directory")->required();
  augment->add_option("--config", aug.config, "key = value config file");
  augment->add_option("--mode", aug.mode, "value | context")
      ->check(CLI::IsMember({"value", "context"}));
  augment->add_option("--backend", aug.backend, "mock | echo | http")
      ->check(CLI::IsMember({"mock", "echo", "http"}));
  augment->add_option("--endpoint", aug.endpoint,
                      "Generation service URL (default: $SLOTAUG_ENDPOINT)");
  augment->add_option("--descriptions", aug.descriptions,
                      "slot_type<TAB>description file");
  augment->add_option("--lexicon", aug.lexicon,
                      "Mock backend values, slot_type<TAB>value");
  augment->add_option("--templates", aug.templates,
                      "Mock backend context templates, one per line");
  augment->add_option("--ratio", aug.ratio, "Augmented examples per source utterance");
  augment->add_option("--epsilon", aug.epsilon, "Label smoothing parameter");
  augment->add_option("--seed", aug.seed, "Random seed");
  augment->add_option("--candidates", aug.candidates, "Candidates per input");
  augment->add_option("--max-length", aug.max_length, "Maximum generated tokens");
  augment->add_option("--max-passes", aug.max_passes, "Sweeps over the inputs");
  augment->add_option("--max-parallel", aug.max_parallel,
                      "HTTP requests in flight");
  augment->add_option("--timeout-ms", aug.timeout_ms, "HTTP timeout");
  augment->add_flag("--no-dedupe", aug.no_dedupe, "Keep duplicate examples");
  augment->add_flag("--sample-slots", aug.sample_slots,
                    "Value mode: one random slot per utterance");

  std::string data_dir, out_dir, fraction;
  std::uint64_t seed = 0;
  auto *split = app.add_subcommand("split", "Seeded random subset of a corpus");
  split->add_option("--data-dir", data_dir, "Source corpus")->required();
  split->add_option("--fraction", fraction, "Fraction such as 1/40 or 0.1")
      ->required();
  split->add_option("--seed", seed, "Random seed");
  split->add_option("--out-dir", out_dir, "Output corpus")->required();

  std::string pred_dir, gold_dir, out_file;
  auto *eval = app.add_subcommand("eval", "Entity-level F1 of predictions");
  eval->add_option("--pred-dir", pred_dir, "Predicted corpus")->required();
  eval->add_option("--gold-dir", gold_dir, "Gold corpus")->required();
  eval->add_option("--out", out_file, "key<TAB>value report file");

  std::string augmented_dir, original_dir;
  auto *diversity = app.add_subcommand("diversity", "Diversity of augmented data");
  diversity->add_option("--augmented-dir", augmented_dir, "Augmented corpus")
      ->required();
  diversity->add_option("--original-dir", original_dir, "Original corpus")
      ->required();
  diversity->add_option("--out", out_file, "key<TAB>value report file");

  std::vector<std::string> mix_inputs;
  auto *mix_cmd = app.add_subcommand("mix", "Concatenate corpora");
  mix_cmd->add_option("--in", mix_inputs, "Input corpora, in order")
      ->required()
      ->delimiter(',');
  mix_cmd->add_option("--out-dir", out_dir, "Output corpus")->required();

  auto *validate = app.add_subcommand("validate", "Check a corpus");
  validate->add_option("--data-dir", data_dir, "Corpus")->required();

  std::string mode_text, descriptions_path;
  auto *pairs = app.add_subcommand("pairs", "Export generator training pairs");
  pairs->add_option("--data-dir", data_dir, "Corpus")->required();
  pairs->add_option("--mode", mode_text, "value | context")
      ->required()
      ->check(CLI::IsMember({"value", "context"}));
  pairs->add_option("--descriptions", descriptions_path,
                    "slot_type<TAB>description file");
  pairs->add_option("--out-dir", out_dir, "Output directory")->required();

  std::string probes_path;
  auto *loss = app.add_subcommand(
      "loss", "Evaluate the training loss on exported logit probes");
  loss->add_option("--probes", probes_path, "Probe JSON file")->required();
  loss->add_option("--out", out_file, "Write results here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    const CLI::App *failed = &app;
    for (const CLI::App *sub : app.get_subcommands()) failed = sub;
    err << failed->help();
    return kExitUsage;
  }

  try {
    if (augment->parsed()) return run_augment(aug, *augment, out, err);
    if (split->parsed()) return run_split(data_dir, fraction, seed, out_dir, out);
    if (eval->parsed()) return run_eval(pred_dir, gold_dir, out_file, out);
    if (diversity->parsed()) {
      return run_diversity(augmented_dir, original_dir, out_file, out);
    }
    if (mix_cmd->parsed()) return run_mix(mix_inputs, out_dir, out);
    if (validate->parsed()) return run_validate(data_dir, out);
    if (loss->parsed()) return run_loss(probes_path, out_file, out);
    if (pairs->parsed()) {
      return run_pairs(data_dir, mode_text, descriptions_path, out_dir, out);
    }
  } catch (const CorpusError &e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kIo ? kExitFailure : kExitUsage;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return is_usage_error(e.code()) ? kExitUsage : kExitFailure;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace slotaug
