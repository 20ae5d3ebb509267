// Copyright 2026 The rankenum Authors
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

#include <random>
#include <string>

#include "doctest.h"
#include "rankenum/errors.hpp"
#include "rankenum/transducer.hpp"
#include "support.hpp"

using namespace rankenum;
using namespace rankenum::testing;

TEST_CASE("utf8 round trip on random scalar values") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint32_t> cp(0, 0x10FFFF);
  for (int i = 0; i < 200; ++i) {
    std::u32string s;
    while (s.size() < 20) {
      const char32_t c = cp(rng);
      if (c >= 0xD800 && c <= 0xDFFF) continue;
      s.push_back(c);
    }
    CHECK(DecodeUtf8(EncodeUtf8(s)) == s);
  }
  CHECK(EncodeUtf8(U'γ') == "\xCE\xB3");
}

TEST_CASE("utf8 decoder rejects malformed input") {
  CHECK_THROWS_AS(DecodeUtf8("\xC0\x80"), ParseError);          // overlong
  CHECK_THROWS_AS(DecodeUtf8("\xED\xA0\x80"), ParseError);      // surrogate
  CHECK_THROWS_AS(DecodeUtf8("\xF4\x90\x80\x80"), ParseError);  // above U+10FFFF
  CHECK_THROWS_AS(DecodeUtf8("ab\xE2\x82"), ParseError);        // truncated
  CHECK_THROWS_AS(DecodeUtf8("\x80"), ParseError);              // stray continuation
  try {
    DecodeUtf8("ab\xFF");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("byte offset 2") != std::string::npos);
  }
}

TEST_CASE("document symbols outside the alphabet report their position") {
  const auto t = LoadInt64Fixture("regex_spanner.json");
  try {
    t.ValidateDocument(Document::FromUtf8("cbxa"));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
    CHECK(std::string(e.what()).find("U+0078") != std::string::npos);
  }
}

TEST_CASE("annotation example output is produced") {
  const auto t = LoadInt64Fixture("annotation.json");
  const auto outs = BruteForceOutputs(t, Document::FromUtf8("abaabc"));
  const MarkerId gamma = 1, delta = 2;
  const std::vector<TupleEntry> want{{gamma, 2}, {delta, 3}, {delta, 6}};
  bool found = false;
  for (const auto& o : outs) found = found || o.entries == want;
  CHECK(found);
  // Each position: unmarked, or its one marked option.
  CHECK(outs.size() == 64);
}

TEST_CASE("brute force rejects long documents and ambiguous transducers") {
  const auto par = LoadInt64Fixture("parallel_ambiguous.json");
  CHECK_THROWS_AS(BruteForceOutputs(par, Document::FromUtf8("a")), AmbiguityDetected);
  const auto det = LoadInt64Fixture("deterministic.json");
  CHECK_THROWS_AS(BruteForceOutputs(det, Document::FromUtf8("ab"), 1), SizeBoundExceeded);
}

TEST_CASE("unambiguity checker on fixtures") {
  const auto par = CheckUnambiguous(LoadInt64Fixture("parallel_ambiguous.json"), 4);
  CHECK_FALSE(par.unambiguous);
  CHECK(par.document == U"a");
  CHECK(par.run1 != par.run2);
  CHECK(CheckUnambiguous(LoadInt64Fixture("deterministic.json"), 8).unambiguous);
  CHECK(CheckUnambiguous(LoadInt64Fixture("regex_spanner.json"), 9).unambiguous);
  CHECK(CheckUnambiguous(LoadInt64Fixture("email.json"), 7).unambiguous);
  CHECK(CheckUnambiguous(LoadInt64Fixture("scaling.json"), 7).unambiguous);
}

TEST_CASE("unambiguity checker agrees with brute force") {
  std::mt19937_64 rng(99);
  int ambiguous = 0;
  for (int iter = 0; iter < 300; ++iter) {
    auto t = RandomTransducer(rng, 4, 2, 2);
    // Duplicate a transition with another target to provoke ambiguity.
    if (!t.transitions.empty() && iter % 2 == 0) {
      auto x = t.transitions[static_cast<std::size_t>(Uniform(rng, 0, static_cast<std::int64_t>(t.transitions.size()) - 1))];
      x.to = static_cast<StateId>(Uniform(rng, 0, t.num_states() - 1));
      t.transitions.push_back(x);
    }
    const auto w = CheckUnambiguous(t, 5);
    if (!w.unambiguous) {
      ++ambiguous;
      CHECK_THROWS_AS(BruteForceOutputs(t, Document(w.document)), AmbiguityDetected);
      continue;
    }
    // No document up to the bound may expose two runs with one output.
    for (int k = 0; k < 20; ++k) {
      const auto d = RandomDocument(rng, t.alphabet, static_cast<std::size_t>(Uniform(rng, 0, 5)));
      CHECK_NOTHROW(BruteForceOutputs(t, d));
    }
  }
  CHECK(ambiguous > 0);
}

TEST_CASE("single final state normalization keeps the output set") {
  std::mt19937_64 rng(4);
  for (int iter = 0; iter < 200; ++iter) {
    const auto t = RandomTransducer(rng);
    const auto n = NormalizeSingleFinal(t);
    REQUIRE(n.finals.size() == 1);
    for (const auto& x : n.transitions) CHECK(x.from != n.finals[0]);
    for (int k = 0; k < 5; ++k) {
      const auto d = RandomDocument(rng, t.alphabet, static_cast<std::size_t>(Uniform(rng, 1, 6)));
      CHECK(AsPairs(BruteForceOutputs(t, d)) == AsPairs(BruteForceOutputs(n, d)));
    }
  }
  const auto det = LoadInt64Fixture("scaling.json");
  const auto once = NormalizeSingleFinal(det);
  const auto twice = NormalizeSingleFinal(once);
  CHECK(twice.state_names == once.state_names);
  CHECK(twice.transitions.size() == once.transitions.size());
}

TEST_CASE("validate rejects inconsistent transducers") {
  auto t = LoadInt64Fixture("deterministic.json");
  t.transitions[0].to = 17;
  CHECK_THROWS_AS(t.Validate(), std::invalid_argument);
  t = LoadInt64Fixture("deterministic.json");
  t.empty_marker = 9;
  CHECK_THROWS_AS(t.Validate(), std::invalid_argument);
}
