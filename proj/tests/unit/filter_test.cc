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
#include <map>

#include "doctest.h"
#include "slotaug/filter.h"
#include "slotaug/random.h"
#include "synthetic.h"
#include "temp_dir.h"

namespace slotaug {
namespace {

GenerationCandidate cand(std::string_view text) {
  return {split_tokens(text), "test"};
}

AugmentationInput city_input() {
  const Utterance u = testing::table1_evening_utterance();
  return delexicalize_value(u, extract_frame(u), 0, {});
}

RejectReason reason_of(const FilterOutcome &o) {
  REQUIRE(std::holds_alternative<Rejection>(o));
  return std::get<Rejection>(o).reason;
}

const Utterance &accepted_utterance(const FilterOutcome &o) {
  REQUIRE(std::holds_alternative<AugmentedExample>(o));
  return std::get<AugmentedExample>(o).utterance;
}

std::multiset<std::pair<std::string, std::string>> slot_multiset(
    const SlotFrame &f) {
  std::multiset<std::pair<std::string, std::string>> out;
  for (const SlotSpan &s : f.slots) out.emplace(s.type, s.value_string());
  return out;
}

// Three-utterance corpus for dictionary scans.
Dataset three_utterances() {
  Dataset d;
  d.utterances.push_back(testing::table1_utterance());
  d.utterances.push_back({split_tokens("weather in boston tonight"),
                          split_tokens("O O B-city B-time_range"), "GetWeather"});
  d.utterances.push_back({split_tokens("play adele"), split_tokens("O B-artist"),
                          "PlayMusic"});
  return d;
}

}  // namespace

TEST_CASE("value filter accepts a new value and projects its tags") {
  const auto out = filter_value_candidate(
      cand("book a table somewhere in san francisco for this evening"),
      city_input(), 2);
  const Utterance &u = accepted_utterance(out);
  CHECK(join_tokens(u.tags) ==
        "O O O O O B-city I-city O B-time_range I-time_range");
  CHECK(u.intent == "BookRestaurant");
  const auto &prov = std::get<AugmentedExample>(out).provenance;
  CHECK(prov.mode == Mode::kValue);
  CHECK(prov.slot_type == "city");
  CHECK(prov.candidate_rank == 2);
  CHECK(prov.backend_id == "test");
}

TEST_CASE("value filter identity") {
  const Utterance src = testing::table1_evening_utterance();
  const auto out = filter_value_candidate({src.tokens, "echo"}, city_input());
  CHECK(accepted_utterance(out) == src);
}

TEST_CASE("value filter rejections") {
  const auto in = city_input();
  CHECK(reason_of(filter_value_candidate(
            cand("please book a table in san francisco for this evening"), in)) ==
        RejectReason::kContextMismatch);
  CHECK(reason_of(filter_value_candidate(
            cand("book a table somewhere in boston for this morning"), in)) ==
        RejectReason::kContextMismatch);
  CHECK(reason_of(filter_value_candidate(cand("book a table"), in)) ==
        RejectReason::kContextMismatch);
  CHECK(reason_of(filter_value_candidate(
            cand("book a table somewhere in for this evening"), in)) ==
        RejectReason::kEmptyValue);
  CHECK(reason_of(filter_value_candidate(
            cand("book a table somewhere in _ city _ for this evening"), in)) ==
        RejectReason::kMalformed);
  CHECK(reason_of(filter_value_candidate({{}, "x"}, in)) == RejectReason::kMalformed);
}

TEST_CASE("value filter with a slot at the edges") {
  const Utterance whole{{"boston"}, {"B-city"}, "x"};
  const auto in = enumerate_value_inputs(whole, {})[0];
  const auto out = filter_value_candidate(cand("la paz"), in);
  CHECK(join_tokens(accepted_utterance(out).tags) == "B-city I-city");

  const Utterance tail{{"fly", "to", "boston"}, {"O", "O", "B-city"}, "x"};
  const auto t = enumerate_value_inputs(tail, {})[0];
  CHECK(join_tokens(accepted_utterance(filter_value_candidate(cand("fly to oslo"), t))
                        .tags) == "O O B-city");
  CHECK(reason_of(filter_value_candidate(cand("fly to"), t)) == RejectReason::kEmptyValue);
}

TEST_CASE("context filter") {
  const Dataset d = three_utterances();
  const SlotDictionary dict = build_slot_dictionary(d);
  const SlotFrame frame = extract_frame(d.utterances[0]);

  SUBCASE("identity") {
    const auto out = filter_context_candidate({d.utterances[0].tokens, "e"}, frame, dict);
    CHECK(accepted_utterance(out) == d.utterances[0]);
  }
  SUBCASE("rephrased") {
    const auto out = filter_context_candidate(
        cand("for tomorrow i need a table in new york city"), frame, dict);
    const Utterance &u = accepted_utterance(out);
    CHECK(join_tokens(u.tags) == "O B-time_range O O O O O B-city I-city I-city");
    CHECK(slot_multiset(extract_frame(u)) == slot_multiset(frame));
  }
  SUBCASE("missing value") {
    CHECK(reason_of(filter_context_candidate(cand("a table for tomorrow"), frame,
                                             dict)) == RejectReason::kMissingValue);
  }
  SUBCASE("extra value") {
    SlotFrame city_only = frame;
    city_only.slots.resize(1);
    const auto out = filter_context_candidate(
        cand("a table in new york city for tomorrow"), city_only, dict);
    CHECK(reason_of(out) == RejectReason::kExtraValue);
    CHECK(std::get<Rejection>(out).detail == "time_range=tomorrow");
  }
  SUBCASE("repeated value needs two occurrences") {
    SlotFrame twice;
    twice.intent = "x";
    twice.slots = {{"city", {"boston"}, 0, 1}, {"city", {"boston"}, 1, 2}};
    CHECK(reason_of(filter_context_candidate(cand("to boston"), twice, dict)) ==
          RejectReason::kMissingValue);
    const auto ok = filter_context_candidate(cand("boston or boston"), twice, dict);
    CHECK(join_tokens(accepted_utterance(ok).tags) == "B-city O B-city");
  }
  SUBCASE("dictionary values inside a matched region are not extra") {
    SlotDictionary nested = dict;
    nested.add("city", "york");
    CHECK(std::holds_alternative<AugmentedExample>(filter_context_candidate(
        cand("new york city tomorrow"), frame, nested)));
  }
}

TEST_CASE("dictionary scanner prefers the longest entry") {
  SlotDictionary dict;
  dict.add("state", "new york");
  dict.add("city", "new york city");
  const DictionaryScanner scanner(dict);
  const Tokens t = split_tokens("in new york city");
  auto m = scanner.find_unclaimed(t, std::vector<bool>(t.size(), false));
  REQUIRE(m);
  CHECK(m->type == "city");
  CHECK(m->begin == 1);
  CHECK(m->end == 4);
  std::vector<bool> claimed(t.size(), false);
  claimed[3] = true;
  m = scanner.find_unclaimed(t, claimed);
  REQUIRE(m);
  CHECK(m->type == "state");
}

TEST_CASE("filter report") {
  FilterReport report;
  report.record_accepted();
  report.record(RejectReason::kDuplicate);
  report.record(FilterOutcome{Rejection{RejectReason::kEmptyValue, ""}});
  CHECK(report.total() == 3);
  FilterReport other;
  other.record(RejectReason::kDuplicate);
  report.merge(other);
  CHECK(report.rejected(RejectReason::kDuplicate) == 2);
  const auto rows = report.rows();
  REQUIRE(rows.size() == 1 + kNumRejectReasons);
  CHECK(rows[0] == std::pair<std::string, std::size_t>{"accepted", 1});
  testing::TempDir dir;
  report.write_tsv(dir / "r.tsv");
  CHECK(testing::read_file(dir / "r.tsv") ==
        "accepted\t1\nrejected_context_mismatch\t0\nrejected_empty_value\t1\n"
        "rejected_missing_value\t0\nrejected_extra_value\t0\n"
        "rejected_duplicate\t2\nrejected_malformed\t0\n");
}

TEST_CASE("dedupe") {
  const Utterance a = testing::table1_utterance();
  Utterance b = a;
  b.tags.assign(b.tokens.size(), "O");  // same tokens, different tags
  Utterance c{{"hello"}, {"O"}, "greet"};
  Dataset original;
  original.utterances.push_back(a);

  const std::vector<AugmentedExample> examples = {
      {a, {}}, {b, {Mode::kValue, 1}}, {c, {Mode::kValue, 2}}, {c, {Mode::kValue, 3}}};
  std::size_t removed = 0;
  const auto kept = dedupe(examples, original, &removed);
  CHECK(removed == 2);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].utterance == b);
  CHECK(kept[1].provenance.source_id == 2);  // first occurrence survives
}

TEST_CASE("dedupe matches a quadratic oracle") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    // Tiny vocabularies force plenty of collisions.
    Rng rng(seed);
    auto random_utt = [&] {
      Utterance u;
      const std::size_t len = 1 + rng.uniform(2);
      for (std::size_t i = 0; i < len; ++i) {
        u.tokens.push_back(rng.uniform(2) ? "x" : "y");
      }
      u.tags = testing::random_bio_tags(len, rng.uniform(3));
      u.intent = rng.uniform(2) ? "i" : "j";  // not part of the key
      return u;
    };
    Dataset original;
    for (int i = 0; i < 3; ++i) original.utterances.push_back(random_utt());
    std::vector<AugmentedExample> examples;
    for (int i = 0; i < 15; ++i) {
      examples.push_back({random_utt(), {Mode::kValue, static_cast<std::size_t>(i)}});
    }

    auto same = [](const Utterance &x, const Utterance &y) {
      return x.tokens == y.tokens && x.tags == y.tags;
    };
    std::vector<AugmentedExample> expected;
    for (std::size_t i = 0; i < examples.size(); ++i) {
      bool dup = false;
      for (const Utterance &o : original.utterances) dup |= same(o, examples[i].utterance);
      for (std::size_t j = 0; j < i; ++j) dup |= same(examples[j].utterance, examples[i].utterance);
      if (!dup) expected.push_back(examples[i]);
    }
    CHECK(dedupe(examples, original) == expected);
  }
}

TEST_CASE("accepted value outputs preserve context and stay BIO-valid") {
  const Dataset d = testing::toy_corpus(200, 5);
  MockLexiconGenerator gen(testing::disjoint_lexicon());
  std::size_t checked = 0;
  for (std::size_t id = 0; id < d.size(); ++id) {
    const Utterance &src = d.utterances[id];
    for (const auto &in : enumerate_value_inputs(src, {}, id)) {
      GenerationRequest req;
      req.input_text = in.text;
      req.num_candidates = 2;
      req.seed = id;
      for (const auto &c : gen.generate(req)) {
        const auto out = filter_value_candidate(c, in);
        const Utterance &u = accepted_utterance(out);
        CHECK(is_valid_utterance(u));
        // Dropping the new value from the output and the old value from the
        // source leaves the same tokens.
        const SlotSpan &old = in.chosen();
        Tokens src_ctx = src.tokens;
        src_ctx.erase(src_ctx.begin() + old.begin, src_ctx.begin() + old.end);
        const std::size_t new_len = u.size() - (src.size() - (old.end - old.begin));
        Tokens out_ctx = u.tokens;
        out_ctx.erase(out_ctx.begin() + old.begin,
                      out_ctx.begin() + old.begin + new_len);
        CHECK(out_ctx == src_ctx);
        ++checked;
      }
    }
  }
  CHECK(checked > 200);
}

TEST_CASE("accepted context outputs carry the input frame") {
  const Dataset d = testing::round_trip_corpus(200, 8);
  const SlotDictionary dict = build_slot_dictionary(d);
  const DictionaryScanner scanner(dict);
  Rng rng(1);
  for (std::size_t id = 0; id < d.size(); ++id) {
    const auto in = make_context_input(d.utterances[id], {}, id);
    // Shuffle the frame values around fresh context words.
    std::vector<Tokens> pieces;
    for (const SlotSpan &s : in.frame.slots) pieces.push_back(s.value);
    rng.shuffle(pieces);
    Tokens text = {"so"};
    for (const Tokens &p : pieces) {
      text.insert(text.end(), p.begin(), p.end());
      text.push_back("then");
    }
    const auto out = filter_context_candidate({text, "t"}, in, scanner);
    const Utterance &u = accepted_utterance(out);
    CHECK(is_valid_utterance(u));
    CHECK(slot_multiset(extract_frame(u)) == slot_multiset(in.frame));
    CHECK(u.intent == d.utterances[id].intent);
  }
}

}  // namespace slotaug
