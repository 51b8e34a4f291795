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

#include "slotaug/corpus.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <tuple>

#include "slotaug/random.h"

namespace slotaug {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

std::vector<std::string> read_lines(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CorpusError(ErrorCode::kIo, "cannot open " + path.string(),
                      path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw CorpusError(ErrorCode::kIo, "read failed: " + path.string(),
                      path.string());
  }
  const std::string content = buffer.str();

  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t stop = content.find('\n', start);
    if (stop == std::string::npos) stop = content.size();
    std::string line = content.substr(start, stop - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = stop + 1;
  }
  return lines;
}

void write_lines(const std::filesystem::path &path,
                 const std::vector<std::string> &lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw CorpusError(ErrorCode::kIo, "cannot write " + path.string(),
                      path.string());
  }
  for (const std::string &line : lines) out << line << '\n';
  out.flush();
  if (!out) {
    throw CorpusError(ErrorCode::kIo, "write failed: " + path.string(),
                      path.string());
  }
}

}  // namespace

std::string SlotSpan::value_string() const { return join_tokens(value); }

void SlotDictionary::add(const std::string &type, const std::string &value) {
  entries_[type].insert(value);
}

bool SlotDictionary::contains(const std::string &type,
                              const std::string &value) const {
  auto it = entries_.find(type);
  return it != entries_.end() && it->second.count(value) > 0;
}

std::vector<SlotDictionary::Entry> SlotDictionary::longest_first() const {
  std::vector<Entry> all;
  for (const auto &[type, values] : entries_) {
    for (const std::string &value : values) {
      all.push_back({type, split_tokens(value)});
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const Entry &a, const Entry &b) {
    if (a.value.size() != b.value.size()) return a.value.size() > b.value.size();
    return std::tie(a.value, a.type) < std::tie(b.value, b.type);
  });
  return all;
}

std::optional<ParsedTag> parse_tag(std::string_view tag) {
  if (tag == kOutsideTag) return ParsedTag{TagKind::kOutside, {}};
  if (tag.size() < 3 || tag[1] != '-') return std::nullopt;
  ParsedTag parsed;
  if (tag[0] == 'B') {
    parsed.kind = TagKind::kBegin;
  } else if (tag[0] == 'I') {
    parsed.kind = TagKind::kInside;
  } else {
    return std::nullopt;
  }
  parsed.type = std::string(tag.substr(2));
  return parsed;
}

std::string begin_tag(std::string_view type) {
  return "B-" + std::string(type);
}

std::string inside_tag(std::string_view type) {
  return "I-" + std::string(type);
}

std::optional<std::size_t> find_bio_violation(const Tokens &tags) {
  std::optional<std::string> open;  // type of the run covering tags[i-1]
  for (std::size_t i = 0; i < tags.size(); ++i) {
    auto parsed = parse_tag(tags[i]);
    if (!parsed) return i;
    switch (parsed->kind) {
      case TagKind::kOutside:
        open.reset();
        break;
      case TagKind::kBegin:
        open = parsed->type;
        break;
      case TagKind::kInside:
        if (!open || *open != parsed->type) return i;
        break;
    }
  }
  return std::nullopt;
}

bool is_valid_token(std::string_view token) {
  if (token.empty() || token == kSentinel) return false;
  return std::none_of(token.begin(), token.end(), is_space);
}

void validate_utterance(const Utterance &u) {
  if (u.tokens.empty()) {
    throw CorpusError(ErrorCode::kEmptyUtterance, "utterance has no tokens");
  }
  if (u.tokens.size() != u.tags.size()) {
    throw CorpusError(ErrorCode::kTokenTagLengthMismatch,
                      std::to_string(u.tokens.size()) + " tokens vs " +
                          std::to_string(u.tags.size()) + " tags");
  }
  for (std::size_t i = 0; i < u.tokens.size(); ++i) {
    if (!is_valid_token(u.tokens[i])) {
      throw CorpusError(ErrorCode::kInvalidToken,
                        "invalid token '" + u.tokens[i] + "'", {}, 0, i + 1);
    }
  }
  if (auto bad = find_bio_violation(u.tags)) {
    throw CorpusError(ErrorCode::kMalformedBioTag,
                      "malformed BIO tag '" + u.tags[*bad] + "'", {}, 0,
                      *bad + 1);
  }
}

bool is_valid_utterance(const Utterance &u) {
  try {
    validate_utterance(u);
    return true;
  } catch (const CorpusError &) {
    return false;
  }
}

Tokens split_tokens(std::string_view text) {
  Tokens tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::string join_tokens(const Tokens &tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

Dataset parse_dataset(const std::filesystem::path &dir) {
  const auto in_path = dir / "seq.in";
  const auto out_path = dir / "seq.out";
  const auto label_path = dir / "label";
  const auto words = read_lines(in_path);
  const auto tags = read_lines(out_path);
  const auto labels = read_lines(label_path);
  if (words.size() != tags.size() || words.size() != labels.size()) {
    throw CorpusError(ErrorCode::kLineCountMismatch,
                      "seq.in has " + std::to_string(words.size()) +
                          " lines, seq.out " + std::to_string(tags.size()) +
                          ", label " + std::to_string(labels.size()),
                      dir.string());
  }

  Dataset d;
  d.name = dir.filename().string();
  if (d.name.empty()) d.name = dir.parent_path().filename().string();
  d.utterances.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    Utterance u;
    for (const std::string &token : split_tokens(words[i])) {
      u.tokens.push_back(to_lower(token));
    }
    u.tags = split_tokens(tags[i]);
    u.intent = labels[i];
    try {
      validate_utterance(u);
    } catch (const CorpusError &e) {
      const bool tag_error = e.code() == ErrorCode::kMalformedBioTag;
      const auto file = tag_error ? out_path : in_path;
      std::string detail = e.what();
      detail.erase(0, detail.find(": ") + 2);  // drop the code prefix
      throw CorpusError(e.code(),
                        detail + " at " + file.string() +
                            ":" + std::to_string(i + 1) +
                            (e.position() ? ", position " +
                                                std::to_string(e.position())
                                          : std::string()),
                        file.string(), i + 1, e.position());
    }
    d.utterances.push_back(std::move(u));
  }
  return d;
}

void write_dataset(const Dataset &d, const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw CorpusError(ErrorCode::kIo,
                      "cannot create " + dir.string() + ": " + ec.message(),
                      dir.string());
  }
  std::vector<std::string> words, tags, labels;
  words.reserve(d.size());
  tags.reserve(d.size());
  labels.reserve(d.size());
  for (const Utterance &u : d.utterances) {
    words.push_back(join_tokens(u.tokens));
    tags.push_back(join_tokens(u.tags));
    labels.push_back(u.intent);
  }
  write_lines(dir / "seq.in", words);
  write_lines(dir / "seq.out", tags);
  write_lines(dir / "label", labels);
}

SlotFrame extract_frame(const Utterance &u) {
  SlotFrame frame;
  frame.intent = u.intent;
  for (std::size_t i = 0; i < u.tags.size(); ++i) {
    auto parsed = parse_tag(u.tags[i]);
    if (!parsed || parsed->kind == TagKind::kOutside) continue;
    if (parsed->kind == TagKind::kInside && !frame.slots.empty() &&
        frame.slots.back().end == i && frame.slots.back().type == parsed->type) {
      frame.slots.back().end = i + 1;
      frame.slots.back().value.push_back(u.tokens[i]);
      continue;
    }
    // B- opens a run; a stray I- (only possible on unvalidated input) does
    // too, matching conlleval.
    frame.slots.push_back({parsed->type, {u.tokens[i]}, i, i + 1});
  }
  return frame;
}

Tokens render_bio(const SlotFrame &frame, std::size_t length) {
  Tokens tags(length, std::string(kOutsideTag));
  for (const SlotSpan &slot : frame.slots) {
    for (std::size_t i = slot.begin; i < slot.end && i < length; ++i) {
      tags[i] = i == slot.begin ? begin_tag(slot.type) : inside_tag(slot.type);
    }
  }
  return tags;
}

Fraction Fraction::parse(std::string_view text) {
  auto fail = [&]() -> Fraction {
    throw Error(ErrorCode::kInvalidFraction,
                "expected a fraction in (0, 1], got '" + std::string(text) +
                    "'");
  };
  auto parse_uint = [&](std::string_view digits) {
    std::uint64_t value = 0;
    if (digits.empty()) fail();
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) fail();
    return value;
  };

  Fraction f;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    f.numerator = parse_uint(text.substr(0, slash));
    f.denominator = parse_uint(text.substr(slash + 1));
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view decimals = text.substr(dot + 1);
    if (decimals.empty() || decimals.size() > 18) fail();
    f.denominator = 1;
    for (std::size_t i = 0; i < decimals.size(); ++i) f.denominator *= 10;
    std::uint64_t w = whole.empty() ? 0 : parse_uint(whole);
    if (w > 1) fail();
    f.numerator = w * f.denominator + parse_uint(decimals);
  } else {
    f.numerator = parse_uint(text);
    f.denominator = 1;
  }
  if (f.denominator == 0 || f.numerator == 0 || f.numerator > f.denominator) {
    fail();
  }
  return f;
}

std::size_t Fraction::apply_floor(std::size_t n) const {
  unsigned __int128 product = static_cast<unsigned __int128>(n) * numerator;
  return static_cast<std::size_t>(product / denominator);
}

Dataset split_dataset(const Dataset &d, Fraction fraction, std::uint64_t seed) {
  if (fraction.denominator == 0 || fraction.numerator == 0 ||
      fraction.numerator > fraction.denominator) {
    throw Error(ErrorCode::kInvalidFraction,
                std::to_string(fraction.numerator) + "/" +
                    std::to_string(fraction.denominator) +
                    " is outside (0, 1]");
  }
  const std::size_t count = fraction.apply_floor(d.size());
  if (count == 0) {
    throw Error(ErrorCode::kEmptyResult,
                "floor(" + std::to_string(d.size()) + " * " +
                    std::to_string(fraction.numerator) + "/" +
                    std::to_string(fraction.denominator) + ") is 0");
  }
  const auto order = seeded_permutation(d.size(), seed);
  Dataset out;
  out.name = d.name;
  out.utterances.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.utterances.push_back(d.utterances[order[i]]);
  }
  return out;
}

SlotDictionary build_slot_dictionary(const Dataset &d) {
  SlotDictionary dict;
  for (const Utterance &u : d.utterances) {
    for (const SlotSpan &slot : extract_frame(u).slots) {
      dict.add(slot.type, slot.value_string());
    }
  }
  return dict;
}

}  // namespace slotaug
