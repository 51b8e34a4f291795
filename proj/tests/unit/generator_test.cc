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

#include "doctest.h"
#include "slotaug/generator.h"
#include "slotaug/transform.h"
#include "synthetic.h"
#include "temp_dir.h"

namespace slotaug {
namespace {

using Lexicon = MockLexiconGenerator::Lexicon;

GenerationRequest request(std::string_view text, std::size_t n = 1,
                          std::optional<std::uint64_t> seed = std::nullopt) {
  GenerationRequest r;
  r.input_text = split_tokens(text);
  r.num_candidates = n;
  r.seed = seed;
  return r;
}

std::string first(const std::vector<GenerationCandidate> &c) {
  REQUIRE_FALSE(c.empty());
  return join_tokens(c[0].tokens);
}

}  // namespace

TEST_CASE("mock value substitution") {
  MockLexiconGenerator gen(Lexicon{{"city", {"san francisco"}}});
  CHECK(first(gen.generate(
            request("book a table somewhere in _ city _ for this evening"))) ==
        "book a table somewhere in san francisco for this evening");
  CHECK(gen.id() == "mock-lexicon");
}

TEST_CASE("mock value candidates rotate through the lexicon") {
  MockLexiconGenerator gen(Lexicon{{"city", {"a", "b", "c"}}});
  const auto three = gen.generate(request("in _ city _", 3, 0));
  REQUIRE(three.size() == 3);
  CHECK(join_tokens(three[0].tokens) == "in a");
  CHECK(join_tokens(three[1].tokens) == "in b");
  CHECK(join_tokens(three[2].tokens) == "in c");
  // More candidates than values: capped at the lexicon size.
  CHECK(gen.generate(request("in _ city _", 5, 0)).size() == 3);
  // The seed picks the starting value.
  CHECK(first(gen.generate(request("in _ city _", 1, 4))) == "in b");
  // Unseeded requests advance a per-type counter.
  MockLexiconGenerator fresh(Lexicon{{"city", {"a", "b"}}});
  CHECK(first(fresh.generate(request("in _ city _"))) == "in a");
  CHECK(first(fresh.generate(request("in _ city _"))) == "in b");
  CHECK(first(fresh.generate(request("in _ city _"))) == "in a");
}

TEST_CASE("mock generation is deterministic for a fixed seed") {
  MockLexiconGenerator a(testing::disjoint_lexicon());
  MockLexiconGenerator b(testing::disjoint_lexicon());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto req = request("play a _ music item _ by _ artist _", 1, seed);
    // Two sentinel pairs is not a value input.
    CHECK_THROWS_AS(a.generate(req), GenerationError);
    const auto ok = request("play a song by _ artist _", 2, seed);
    const auto x = a.generate(ok);
    const auto y = b.generate(ok);
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i].tokens == y[i].tokens);
  }
}

TEST_CASE("mock errors") {
  MockLexiconGenerator gen(Lexicon{{"city", {"paris"}}});
  try {
    gen.generate(request("at _ time range _"));
    FAIL("expected UnknownSlotType");
  } catch (const GenerationError &e) {
    CHECK(e.kind() == GenerationErrorKind::kUnknownSlotType);
  }
  CHECK_THROWS_AS(gen.generate(request("")), GenerationError);
  CHECK_THROWS_AS(gen.generate(request("in _ city _", 0)), GenerationError);
  CHECK_THROWS_AS(MockLexiconGenerator(Lexicon{{"city", {}}}), Error);

  // Batches isolate per-request failures.
  const std::vector<GenerationRequest> batch = {
      request("in _ city _"), request("at _ time range _"), request("to _ city _")};
  const auto outcomes = gen.generate_batch(batch);
  REQUIRE(outcomes.size() == 3);
  CHECK(outcomes[0].ok());
  CHECK(outcomes[1].error == GenerationErrorKind::kUnknownSlotType);
  CHECK(outcomes[2].ok());
}

TEST_CASE("mock honours slot descriptions") {
  SlotDescriptionMap descs;
  descs.set("city", "destination");
  MockLexiconGenerator gen(Lexicon{{"city", {"oslo"}}}, {}, descs);
  CHECK(first(gen.generate(request("to _ destination _"))) == "to oslo");
  CHECK_THROWS_AS(gen.generate(request("to _ city _")), GenerationError);
}

TEST_CASE("mock context templates") {
  const SlotFrame frame = extract_frame(testing::table1_evening_utterance());
  const Tokens input = serialize_frame(frame, {});
  MockLexiconGenerator gen({}, {"i want <city> at <time_range>",
                                "<time_range> in <city> please",
                                "weather in <city>"});
  GenerationRequest r;
  r.input_text = input;
  r.num_candidates = 2;
  r.seed = 0;
  const auto out = gen.generate(r);
  REQUIRE(out.size() == 2);
  CHECK(join_tokens(out[0].tokens) == "i want new york city at this evening");
  CHECK(join_tokens(out[1].tokens) == "this evening in new york city please");

  // No template matches: echo the source utterance.
  MockLexiconGenerator bare({});
  r.source_hint = testing::table1_evening_utterance().tokens;
  CHECK(bare.generate(r)[0].tokens == r.source_hint);
  // ...or, without a source, the frame values.
  r.source_hint.clear();
  CHECK(first(bare.generate(r)) == "new york city this evening");
}

TEST_CASE("mock truncates to max_length") {
  MockLexiconGenerator gen(Lexicon{{"city", {"new york city"}}});
  auto r = request("fly to _ city _ now");
  r.max_length = 3;
  CHECK(first(gen.generate(r)) == "fly to new");
}

TEST_CASE("echo generator") {
  EchoGenerator echo;
  auto r = request("in _ city _");
  CHECK(first(echo.generate(r)) == "in _ city _");
  r.source_hint = split_tokens("in boston");
  CHECK(first(echo.generate(r)) == "in boston");
}

TEST_CASE("lexicon and template files") {
  testing::TempDir dir;
  testing::write_file(dir / "lex.tsv",
                      "# type\tvalue\ncity\tLa Paz\ncity\toslo\n\ntime_range\tnoon\n");
  testing::write_file(dir / "t.txt", "i want <city>\n\n<city> at <time_range>\n");
  const auto lex = MockLexiconGenerator::load_lexicon(dir / "lex.tsv");
  CHECK(lex.at("city") == std::vector<std::string>{"la paz", "oslo"});
  CHECK(lex.at("time_range") == std::vector<std::string>{"noon"});
  CHECK(MockLexiconGenerator::load_templates(dir / "t.txt").size() == 2);
  testing::write_file(dir / "bad.tsv", "city oslo\n");
  CHECK_THROWS_AS(MockLexiconGenerator::load_lexicon(dir / "bad.tsv"), Error);

  SlotDictionary dict;
  dict.add("city", "boston");
  CHECK(MockLexiconGenerator::lexicon_from_dictionary(dict).at("city") ==
        std::vector<std::string>{"boston"});
}

}  // namespace slotaug
