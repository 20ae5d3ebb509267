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

// JSON transducers, UTF-8 documents, n-sum sort inputs and NDJSON results.
//
// Transducer file:
//   {"group": "int64" | "bigint" | "lex:D",
//    "alphabet": ["a", "b"] or "ab",
//    "markers": ["_", "x"], "empty_marker": "_",
//    "states": ["q0", "q1"], "initial": "q0", "finals": ["q1"],
//    "transitions": [{"from": "q0", "symbol": "a", "weight": 1,
//                     "marker": "x", "to": "q1"}]}
//
// Weights are JSON integers (int64), integers or decimal strings (bigint), or
// arrays of D integers (lex:D).

#ifndef RANKENUM_IO_HPP_
#define RANKENUM_IO_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rankenum/group.hpp"
#include "rankenum/nsum.hpp"
#include "rankenum/transducer.hpp"

namespace rankenum {

struct GroupSpec {
  enum class Kind { kInt64, kBigInt, kLex };
  Kind kind = Kind::kInt64;
  int dim = 0;  // lex only
  std::string ToString() const;
};

GroupSpec ParseGroupSpec(std::string_view text);

using AnyTransducer = std::variant<CostTransducer<Int64>, CostTransducer<BigInt>, CostTransducer<LexVector>>;

// Throws ParseError; messages name the line and field of the offending entry.
AnyTransducer ParseTransducer(std::string_view json_text);
AnyTransducer LoadTransducerFile(const std::string& path);

template <OrderedAbelianGroup G>
std::string TransducerToJson(const CostTransducer<G>& t, const GroupSpec& group);

std::string ReadTextFile(const std::string& path);

// A single trailing line break is dropped unless '\n' is in the alphabet.
Document DocumentFromText(std::string_view bytes, const std::u32string& alphabet);
Document LoadDocumentFile(const std::string& path, const std::u32string& alphabet);

std::string WeightToJson(const Int64& w);
std::string WeightToJson(const BigInt& w);
std::string WeightToJson(const LexVector& w);

// {"rank":k,"tuple":[["marker",position],...],"weight":...}
template <OrderedAbelianGroup G>
std::string NdjsonLine(std::int64_t rank, const OutputTuple<G>& out, const std::vector<std::string>& markers);

// {"group": ..., "basis": [...], "bound": n, "sums": [[...], ...]}
struct SortInput {
  GroupSpec group;
  std::variant<GeneratorBasis<Int64>, GeneratorBasis<BigInt>, GeneratorBasis<LexVector>> basis;
  NSumBatch sums;
};

SortInput ParseSortInput(std::string_view json_text);

}  // namespace rankenum

#endif  // RANKENUM_IO_HPP_
