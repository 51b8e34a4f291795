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

#include <algorithm>
#include <filesystem>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "slotaug/cli.h"
#include "slotaug/corpus.h"
#include "slotaug/pipeline.h"
#include "synthetic.h"
#include "temp_dir.h"

namespace slotaug {
namespace {

using testing::TempDir;
using testing::read_file;

const std::filesystem::path kToy =
    std::filesystem::path(SLOTAUG_SOURCE_DIR) / "data" / "toy";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::initializer_list<std::string> args) {
  std::vector<std::string> storage = {"slotaug"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char *> argv;
  for (const auto &a : storage) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string p(const std::filesystem::path &path) { return path.string(); }

}  // namespace

TEST_CASE("shipped toy corpus is the synthetic toy corpus") {
  CHECK(parse_dataset(kToy).utterances == testing::toy_corpus(50, 7).utterances);
}

TEST_CASE("augment on the toy corpus") {
  TempDir dir;
  const Result r = run({"augment", "--data-dir", p(kToy), "--mode", "value",
                        "--backend", "mock", "--lexicon", p(kToy / "lexicon.tsv"),
                        "--descriptions", p(kToy / "descriptions.tsv"),
                        "--out-dir", p(dir / "run")});
  CHECK_MESSAGE(r.code == kExitOk, r.err);
  for (const char *f : {"filter_report.tsv", "diversity_report.tsv", "run_manifest",
                        "augmented/seq.in", "augmented/seq.out", "augmented/label",
                        "augmented/provenance.tsv"}) {
    CAPTURE(f);
    CHECK(std::filesystem::exists(dir / "run" / f));
  }
  CHECK(parse_dataset(dir / "run" / "augmented").size() == 50);
  CHECK(r.out.find("accepted 50 of quota 50") != std::string::npos);

  // Reports parse back as key<TAB>value lines.
  std::istringstream report(read_file(dir / "run" / "filter_report.tsv"));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(report, line)) {
    CHECK(line.find('\t') != std::string::npos);
    ++rows;
  }
  CHECK(rows == 7);
}

TEST_CASE("config file with flag overrides") {
  TempDir dir;
  testing::write_file(dir / "run.conf",
                      "mode = value\nratio = 0.5\nlexicon = " +
                          p(kToy / "lexicon.tsv") + "\n");
  Result r = run({"augment", "--data-dir", p(kToy), "--config", p(dir / "run.conf"),
                  "--out-dir", p(dir / "a")});
  CHECK_MESSAGE(r.code == kExitOk, r.err);
  CHECK(parse_dataset(dir / "a/augmented").size() == 25);
  r = run({"augment", "--data-dir", p(kToy), "--config", p(dir / "run.conf"),
           "--ratio", "0.2", "--out-dir", p(dir / "b")});
  CHECK_MESSAGE(r.code == kExitOk, r.err);
  CHECK(parse_dataset(dir / "b/augmented").size() == 10);
}

TEST_CASE("echo backend warns about an unmet quota") {
  TempDir dir;
  const Result r = run({"augment", "--data-dir", p(kToy), "--backend", "echo",
                        "--out-dir", p(dir.path())});
  CHECK(r.code == kExitOk);
  CHECK(r.err.find("InsufficientAcceptedData") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  TempDir dir;
  Result r = run({"augment", "--out-dir", p(dir.path())});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("--data-dir") != std::string::npos);
  CHECK(r.err.find("Usage") != std::string::npos);

  r = run({"augment", "--data-dir", p(kToy), "--epsilon", "1.5", "--out-dir",
           p(dir.path())});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("InvalidEpsilon") != std::string::npos);

  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"augment", "--data-dir", p(kToy), "--mode", "both", "--out-dir",
             p(dir.path())}).code == kExitUsage);
  CHECK(run({"split", "--data-dir", p(kToy), "--fraction", "0", "--out-dir",
             p(dir / "s")}).code == kExitUsage);
  // http without any endpoint.
  CHECK(run({"augment", "--data-dir", p(kToy), "--backend", "http", "--out-dir",
             p(dir.path())}).code == kExitUsage);
}

TEST_CASE("help exits 0") {
  const Result r = run({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("augment") != std::string::npos);
  CHECK(run({"split", "--help"}).code == kExitOk);
}

TEST_CASE("split") {
  TempDir dir;
  const Dataset atis = testing::atis_like_corpus(testing::kAtisTrainSize, 0);
  write_dataset(atis, dir / "atis");
  for (const auto &[fraction, expected] :
       std::vector<std::pair<std::string, std::size_t>>{{"1/40", 111}, {"1/10", 447}}) {
    const auto out = dir / ("split" + std::to_string(expected));
    const Result r = run({"split", "--data-dir", p(dir / "atis"), "--fraction",
                          fraction, "--seed", "1", "--out-dir", p(out)});
    CHECK_MESSAGE(r.code == kExitOk, r.err);
    for (const char *f : {"seq.in", "seq.out", "label"}) {
      const std::string text = read_file(out / f);
      CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) ==
            expected);
    }
  }
}

TEST_CASE("eval, diversity, validate") {
  Result r = run({"eval", "--pred-dir", p(kToy), "--gold-dir", p(kToy)});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("F1 1.0000") != std::string::npos);

  TempDir dir;
  r = run({"diversity", "--augmented-dir", p(kToy), "--original-dir", p(kToy),
           "--out", p(dir / "d.tsv")});
  CHECK(r.code == kExitOk);
  const std::string d = read_file(dir / "d.tsv");
  CHECK(d.find("word_diversity\t0.000000") != std::string::npos);
  CHECK(d.find("originality_delex\t0.000000") != std::string::npos);

  r = run({"validate", "--data-dir", p(kToy)});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("utterances  50") != std::string::npos);

  testing::write_file(dir / "bad/seq.in", "a b\nc d\n");
  testing::write_file(dir / "bad/seq.out", "O O\nO I-x\n");
  testing::write_file(dir / "bad/label", "x\nx\n");
  r = run({"validate", "--data-dir", p(dir / "bad")});
  CHECK(r.code != kExitOk);
  CHECK(r.err.find("seq.out:2") != std::string::npos);
  CHECK(r.err.find("position 2") != std::string::npos);

  r = run({"validate", "--data-dir", p(dir / "missing")});
  CHECK(r.code == kExitFailure);
}

TEST_CASE("mix keeps provenance") {
  TempDir dir;
  REQUIRE(run({"augment", "--data-dir", p(kToy), "--lexicon", p(kToy / "lexicon.tsv"),
               "--out-dir", p(dir / "v")}).code == kExitOk);
  REQUIRE(run({"augment", "--data-dir", p(kToy), "--mode", "context", "--templates",
               p(kToy / "templates.txt"), "--out-dir", p(dir / "c")}).code == kExitOk);
  Result r = run({"mix", "--in", p(dir / "v/augmented") + "," + p(dir / "c/augmented"),
                  "--out-dir", p(dir / "m")});
  CHECK_MESSAGE(r.code == kExitOk, r.err);
  const auto v = read_provenance(dir / "v/augmented/provenance.tsv");
  const auto c = read_provenance(dir / "c/augmented/provenance.tsv");
  const auto m = read_provenance(dir / "m/provenance.tsv");
  REQUIRE(m.size() == v.size() + c.size());
  CHECK(m.front() == v.front());
  CHECK(m.back() == c.back());
  CHECK(parse_dataset(dir / "m").size() == m.size());

  // Mixing with an original corpus: no provenance file.
  r = run({"mix", "--in", p(kToy), "--in", p(dir / "v/augmented"), "--out-dir",
           p(dir / "train")});
  CHECK(r.code == kExitOk);
  CHECK(parse_dataset(dir / "train").size() == 100);
  CHECK_FALSE(std::filesystem::exists(dir / "train/provenance.tsv"));
}

TEST_CASE("pairs export") {
  TempDir dir;
  const Result r = run({"pairs", "--data-dir", p(kToy), "--mode", "value",
                        "--out-dir", p(dir.path())});
  CHECK_MESSAGE(r.code == kExitOk, r.err);
  const std::string inputs = read_file(dir / "inputs.txt");
  const std::string targets = read_file(dir / "targets.txt");
  CHECK(std::count(inputs.begin(), inputs.end(), '\n') ==
        std::count(targets.begin(), targets.end(), '\n'));
  CHECK(inputs.find(" _ city _") != std::string::npos);
}

TEST_CASE("loss on exported probes") {
  TempDir dir;
  testing::write_file(dir / "probes.json", R"({
    "vocab_size": 3, "epsilon": 0.1,
    "examples": [
      {"logits": [[0, 0, 0]], "targets": [0]},
      {"logits": [[1, 2, 3], [0, 0, 5]], "targets": [2, 1], "smoothed": [1]}
    ]})");
  const Result r = run({"loss", "--probes", p(dir / "probes.json")});
  REQUIRE_MESSAGE(r.code == kExitOk, r.err);
  CHECK(r.out.find("\"losses\"") != std::string::npos);
  CHECK(r.out.find("1.0986122886681") != std::string::npos);  // log 3

  testing::write_file(dir / "bad.json", R"({"vocab_size": 3, "examples": [{"logits": [[1]], "targets": [0]}]})");
  CHECK(run({"loss", "--probes", p(dir / "bad.json")}).code != kExitOk);
  testing::write_file(dir / "junk.json", "[1, 2");
  CHECK(run({"loss", "--probes", p(dir / "junk.json")}).code == kExitUsage);
}

}  // namespace slotaug
