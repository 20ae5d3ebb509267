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

// Cost transducers: NFAs whose transitions carry a symbol, a group weight and
// a marker. An accepting run on a document outputs the (marker, position)
// pairs of its non-empty markers, and weighs the sum of its transitions.

#ifndef RANKENUM_TRANSDUCER_HPP_
#define RANKENUM_TRANSDUCER_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rankenum/errors.hpp"
#include "rankenum/group.hpp"

namespace rankenum {

using Symbol = char32_t;
using StateId = std::int32_t;
using MarkerId = std::int32_t;

inline constexpr MarkerId kNoMarker = -1;

// Throws ParseError carrying the byte offset of the first malformed sequence.
std::u32string DecodeUtf8(std::string_view bytes);
std::string EncodeUtf8(std::u32string_view symbols);
std::string EncodeUtf8(Symbol c);

struct Document {
  std::u32string symbols;

  Document() = default;
  explicit Document(std::u32string s) : symbols(std::move(s)) {}
  static Document FromUtf8(std::string_view bytes) { return Document(DecodeUtf8(bytes)); }
  std::size_t size() const { return symbols.size(); }
  // 1-based, as positions are.
  Symbol at(std::size_t i) const { return symbols[i - 1]; }
};

template <OrderedAbelianGroup G>
struct Transition {
  StateId from = 0;
  Symbol symbol = 0;
  G weight{};
  MarkerId marker = 0;
  StateId to = 0;
};

struct TupleEntry {
  MarkerId marker = kNoMarker;
  std::int64_t position = 0;
  friend auto operator<=>(const TupleEntry&, const TupleEntry&) = default;
  friend bool operator==(const TupleEntry&, const TupleEntry&) = default;
};

template <OrderedAbelianGroup G>
struct OutputTuple {
  std::vector<TupleEntry> entries;
  G weight{};
  friend bool operator==(const OutputTuple&, const OutputTuple&) = default;
};

template <OrderedAbelianGroup G>
class CostTransducer {
 public:
  std::vector<std::string> state_names;
  std::u32string alphabet;  // sorted, unique
  std::vector<std::string> markers;
  MarkerId empty_marker = 0;
  StateId initial = 0;
  std::vector<StateId> finals;  // sorted, unique
  std::vector<Transition<G>> transitions;

  int num_states() const { return static_cast<int>(state_names.size()); }
  bool is_final(StateId q) const { return std::binary_search(finals.begin(), finals.end(), q); }

  // Index of c in the alphabet, or -1.
  int SymbolIndex(Symbol c) const {
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), c);
    return (it != alphabet.end() && *it == c) ? static_cast<int>(it - alphabet.begin()) : -1;
  }

  void Validate() const {
    const int n = num_states();
    auto state_ok = [n](StateId q) { return q >= 0 && q < n; };
    if (n == 0) throw std::invalid_argument("transducer has no states");
    if (!std::is_sorted(alphabet.begin(), alphabet.end()) ||
        std::adjacent_find(alphabet.begin(), alphabet.end()) != alphabet.end()) {
      throw std::invalid_argument("alphabet must be sorted and duplicate free");
    }
    if (empty_marker < 0 || empty_marker >= static_cast<MarkerId>(markers.size())) {
      throw std::invalid_argument("empty marker is not a declared marker");
    }
    if (!state_ok(initial)) throw std::invalid_argument("initial state out of range");
    for (StateId f : finals) {
      if (!state_ok(f)) throw std::invalid_argument("final state out of range");
    }
    if (!std::is_sorted(finals.begin(), finals.end())) throw std::invalid_argument("finals must be sorted");
    for (std::size_t i = 0; i < transitions.size(); ++i) {
      const auto& t = transitions[i];
      if (!state_ok(t.from) || !state_ok(t.to)) {
        throw std::invalid_argument("transition " + std::to_string(i) + ": state out of range");
      }
      if (SymbolIndex(t.symbol) < 0) {
        throw std::invalid_argument("transition " + std::to_string(i) + ": symbol not in alphabet");
      }
      if (t.marker < 0 || t.marker >= static_cast<MarkerId>(markers.size())) {
        throw std::invalid_argument("transition " + std::to_string(i) + ": undeclared marker");
      }
    }
  }

  // Throws ParseError with the 1-based position of the first foreign symbol.
  void ValidateDocument(const Document& d) const {
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (SymbolIndex(d.symbols[i]) < 0) {
        throw ParseError("document symbol U+" + HexCode(d.symbols[i]) + " at position " +
                             std::to_string(i + 1) + " is not in the alphabet",
                         static_cast<std::int64_t>(i + 1));
      }
    }
  }

  // Transition ids grouped by (from, symbol index), in id order.
  std::vector<std::vector<int>> TransitionsByStateSymbol() const {
    std::vector<std::vector<int>> index(static_cast<std::size_t>(num_states()) * alphabet.size());
    for (std::size_t i = 0; i < transitions.size(); ++i) {
      const auto& t = transitions[i];
      index[static_cast<std::size_t>(t.from) * alphabet.size() + SymbolIndex(t.symbol)].push_back(static_cast<int>(i));
    }
    return index;
  }

 private:
  static std::string HexCode(Symbol c) {
    std::ostringstream os;
    os << std::hex << std::uppercase << static_cast<std::uint32_t>(c);
    std::string s = os.str();
    return std::string(s.size() < 4 ? 4 - s.size() : 0, '0') + s;
  }
};

// Adds a fresh final state q_f without outgoing transitions and copies every
// transition entering a former final state onto q_f. Transducers already in
// this shape are returned unchanged.
template <OrderedAbelianGroup G>
CostTransducer<G> NormalizeSingleFinal(const CostTransducer<G>& t) {
  if (t.finals.size() == 1 && t.finals[0] != t.initial) {
    const StateId f = t.finals[0];
    const bool has_out = std::any_of(t.transitions.begin(), t.transitions.end(),
                                     [f](const Transition<G>& tr) { return tr.from == f; });
    if (!has_out) return t;
  }
  CostTransducer<G> out = t;
  std::string name = "q_f";
  while (std::find(out.state_names.begin(), out.state_names.end(), name) != out.state_names.end()) name += "'";
  const StateId qf = static_cast<StateId>(out.state_names.size());
  out.state_names.push_back(name);
  for (const auto& tr : t.transitions) {
    if (t.is_final(tr.to)) {
      Transition<G> dup = tr;
      dup.to = qf;
      out.transitions.push_back(dup);
    }
  }
  out.finals = {qf};
  return out;
}

template <OrderedAbelianGroup G>
std::string DescribeRun(const CostTransducer<G>& t, const std::vector<int>& run) {
  std::string s = t.state_names[static_cast<std::size_t>(t.initial)];
  for (int id : run) {
    s += " -[t" + std::to_string(id) + "]-> " +
         t.state_names[static_cast<std::size_t>(t.transitions[static_cast<std::size_t>(id)].to)];
  }
  return s;
}

// Exhaustive scan over all accepting runs. Throws AmbiguityDetected when two
// accepting runs produce the same output tuple.
template <OrderedAbelianGroup G>
std::vector<OutputTuple<G>> BruteForceOutputs(const CostTransducer<G>& t, const Document& d,
                                              std::size_t max_len = 12) {
  if (d.size() > max_len) {
    throw SizeBoundExceeded("document longer than the brute-force bound " + std::to_string(max_len));
  }
  t.ValidateDocument(d);
  const auto index = t.TransitionsByStateSymbol();
  const std::size_t sigma = t.alphabet.size();
  std::map<std::vector<TupleEntry>, std::pair<G, std::vector<int>>> found;
  std::vector<int> run;
  std::vector<TupleEntry> entries;

  auto dfs = [&](auto&& self, StateId q, std::size_t i, G weight) -> void {
    if (i == d.size()) {
      if (!t.is_final(q)) return;
      auto [it, inserted] = found.try_emplace(entries, weight, run);
      if (!inserted) {
        throw AmbiguityDetected("two accepting runs share an output: [" + DescribeRun(t, it->second.second) +
                                "] and [" + DescribeRun(t, run) + "]");
      }
      return;
    }
    const int a = t.SymbolIndex(d.symbols[i]);
    for (int id : index[static_cast<std::size_t>(q) * sigma + static_cast<std::size_t>(a)]) {
      const auto& tr = t.transitions[static_cast<std::size_t>(id)];
      const bool marked = tr.marker != t.empty_marker;
      run.push_back(id);
      if (marked) entries.push_back({tr.marker, static_cast<std::int64_t>(i + 1)});
      self(self, tr.to, i + 1, weight + tr.weight);
      if (marked) entries.pop_back();
      run.pop_back();
    }
  };
  dfs(dfs, t.initial, 0, G{});

  std::vector<OutputTuple<G>> out;
  out.reserve(found.size());
  for (auto& [e, wr] : found) out.push_back({e, wr.first});
  return out;
}

struct AmbiguityWitness {
  bool unambiguous = true;
  std::u32string document;
  std::vector<int> run1;  // transition ids
  std::vector<int> run2;
};

// Searches the self-product of t (synchronized on symbol and marker) for two
// distinct accepting runs with equal output on a document of length at most
// max_len. Breadth-first, so a reported witness is as short as possible.
template <OrderedAbelianGroup G>
AmbiguityWitness CheckUnambiguous(const CostTransducer<G>& t, std::size_t max_len) {
  const int n = t.num_states();
  const auto index = t.TransitionsByStateSymbol();
  const std::size_t sigma = t.alphabet.size();
  auto key = [n](int p1, int p2, int div) { return (p1 * n + p2) * 2 + div; };
  const int total = n * n * 2;
  struct Parent {
    int prev = -1;
    int t1 = -1;
    int t2 = -1;
    int depth = -1;
  };
  std::vector<Parent> parent(static_cast<std::size_t>(total));
  std::deque<int> queue;
  const int start = key(t.initial, t.initial, 0);
  parent[static_cast<std::size_t>(start)].depth = 0;
  queue.push_back(start);
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    const int div = cur % 2;
    const int p1 = (cur / 2) / n;
    const int p2 = (cur / 2) % n;
    const Parent& here = parent[static_cast<std::size_t>(cur)];
    if (div == 1 && t.is_final(p1) && t.is_final(p2)) {
      AmbiguityWitness w;
      w.unambiguous = false;
      for (int k = cur; k != start;) {
        const Parent& pk = parent[static_cast<std::size_t>(k)];
        w.run1.push_back(pk.t1);
        w.run2.push_back(pk.t2);
        w.document.push_back(t.transitions[static_cast<std::size_t>(pk.t1)].symbol);
        k = pk.prev;
      }
      std::reverse(w.run1.begin(), w.run1.end());
      std::reverse(w.run2.begin(), w.run2.end());
      std::reverse(w.document.begin(), w.document.end());
      return w;
    }
    if (static_cast<std::size_t>(here.depth) >= max_len) continue;
    for (std::size_t a = 0; a < sigma; ++a) {
      const auto& l1 = index[static_cast<std::size_t>(p1) * sigma + a];
      const auto& l2 = index[static_cast<std::size_t>(p2) * sigma + a];
      for (int i1 : l1) {
        for (int i2 : l2) {
          const auto& x = t.transitions[static_cast<std::size_t>(i1)];
          const auto& y = t.transitions[static_cast<std::size_t>(i2)];
          if (x.marker != y.marker) continue;
          const int next = key(x.to, y.to, (div == 1 || i1 != i2) ? 1 : 0);
          Parent& pn = parent[static_cast<std::size_t>(next)];
          if (pn.depth >= 0) continue;
          pn = {cur, i1, i2, here.depth + 1};
          queue.push_back(next);
        }
      }
    }
  }
  return {};
}

}  // namespace rankenum

#endif  // RANKENUM_TRANSDUCER_HPP_
