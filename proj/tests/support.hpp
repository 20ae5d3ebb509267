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

// Random instances and independent oracles shared by the tests.

#ifndef RANKENUM_TESTS_SUPPORT_HPP_
#define RANKENUM_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rankenum/group.hpp"
#include "rankenum/io.hpp"
#include "rankenum/product_dag.hpp"
#include "rankenum/transducer.hpp"

namespace rankenum::testing {

inline std::string DataPath(const std::string& name) { return std::string(RANKENUM_DATA_DIR) + "/" + name; }

inline CostTransducer<Int64> LoadInt64Fixture(const std::string& name) {
  return std::get<CostTransducer<Int64>>(LoadTransducerFile(DataPath(name)));
}

inline std::int64_t Uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Random transducer with at most one transition per (state, symbol, marker),
// which makes every run determined by its document and output.
inline CostTransducer<Int64> RandomTransducer(std::mt19937_64& rng, int max_states = 5, int max_symbols = 3,
                                              int max_markers = 3, std::int64_t wmin = -3, std::int64_t wmax = 3,
                                              double density = 0.45) {
  CostTransducer<Int64> t;
  const int nq = static_cast<int>(Uniform(rng, 1, max_states));
  const int ns = static_cast<int>(Uniform(rng, 1, max_symbols));
  const int nm = static_cast<int>(Uniform(rng, 1, max_markers));
  for (int q = 0; q < nq; ++q) t.state_names.push_back("q" + std::to_string(q));
  for (int s = 0; s < ns; ++s) t.alphabet.push_back(static_cast<Symbol>(U'a' + s));
  t.markers.push_back("_");
  for (int m = 1; m < nm; ++m) t.markers.push_back("m" + std::to_string(m));
  t.empty_marker = 0;
  t.initial = 0;
  for (int q = 0; q < nq; ++q) {
    if (Uniform(rng, 0, 2) == 0) t.finals.push_back(q);
  }
  if (t.finals.empty()) t.finals.push_back(static_cast<StateId>(Uniform(rng, 0, nq - 1)));
  std::bernoulli_distribution coin(density);
  for (int q = 0; q < nq; ++q) {
    for (int s = 0; s < ns; ++s) {
      for (int m = 0; m < nm; ++m) {
        if (!coin(rng)) continue;
        Transition<Int64> x;
        x.from = q;
        x.symbol = t.alphabet[static_cast<std::size_t>(s)];
        x.weight = Int64(Uniform(rng, wmin, wmax));
        x.marker = m;
        x.to = static_cast<StateId>(Uniform(rng, 0, nq - 1));
        t.transitions.push_back(x);
      }
    }
  }
  return t;
}

inline Document RandomDocument(std::mt19937_64& rng, const std::u32string& alphabet, std::size_t len) {
  Document d;
  for (std::size_t i = 0; i < len; ++i) {
    d.symbols.push_back(alphabet[static_cast<std::size_t>(Uniform(rng, 0, static_cast<std::int64_t>(alphabet.size()) - 1))]);
  }
  return d;
}

// Random DAG on nodes 0..n-1 with source 0 and sink n-1.
inline LabeledWeightedDag<Int64> RandomDag(std::mt19937_64& rng, int n, double density, std::int64_t wmin = -5,
                                          std::int64_t wmax = 5, int max_parallel = 2) {
  LabeledWeightedDag<Int64> g;
  g.AddNodes(n);
  std::bernoulli_distribution coin(density);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!coin(rng)) continue;
      const int copies = static_cast<int>(Uniform(rng, 1, max_parallel));
      for (int c = 0; c < copies; ++c) {
        EdgeLabel lab;
        if (Uniform(rng, 0, 1) == 1) lab = EdgeLabel{static_cast<MarkerId>(Uniform(rng, 1, 3)), v};
        g.AddEdge(u, v, Int64(Uniform(rng, wmin, wmax)), lab);
      }
    }
  }
  g.SetEndpoints(0, n - 1);
  g.Finalize();
  return g;
}

struct OraclePath {
  std::vector<EdgeId> edges;
  std::int64_t weight = 0;
  std::vector<TupleEntry> label;
};

// Every source-to-sink path by DFS, sorted by (weight, label).
template <class Graph>
std::vector<OraclePath> AllPaths(const Graph& g, std::size_t cap = 2000000) {
  std::vector<OraclePath> out;
  if (g.empty() || g.source() < 0) return out;
  OraclePath cur;
  auto dfs = [&](auto&& self, NodeId v) -> void {
    if (out.size() >= cap) return;
    if (v == g.sink()) {
      out.push_back(cur);
      return;
    }
    for (EdgeId e : g.out_edges(v)) {
      cur.edges.push_back(e);
      cur.weight += g.weight(e).value();
      const bool lab = !g.label(e).empty();
      if (lab) cur.label.push_back(g.label(e).entry());
      self(self, g.dst(e));
      if (lab) cur.label.pop_back();
      cur.weight -= g.weight(e).value();
      cur.edges.pop_back();
    }
  };
  dfs(dfs, g.source());
  std::sort(out.begin(), out.end(), [](const OraclePath& a, const OraclePath& b) {
    return std::tie(a.weight, a.label, a.edges) < std::tie(b.weight, b.label, b.edges);
  });
  return out;
}

// Number of source-to-sink paths, by dynamic programming.
template <class Graph>
std::size_t CountPaths(const Graph& g) {
  if (g.empty() || g.source() < 0) return 0;
  std::vector<std::size_t> ways(static_cast<std::size_t>(g.num_nodes()), 0);
  ways[static_cast<std::size_t>(g.sink())] = 1;
  for (NodeId v = g.num_nodes() - 1; v >= 0; --v) {
    for (EdgeId e : g.out_edges(v)) ways[static_cast<std::size_t>(v)] += ways[static_cast<std::size_t>(g.dst(e))];
  }
  return ways[static_cast<std::size_t>(g.source())];
}

inline std::vector<std::pair<std::int64_t, std::vector<TupleEntry>>> AsPairs(
    const std::vector<OutputTuple<Int64>>& outs) {
  std::vector<std::pair<std::int64_t, std::vector<TupleEntry>>> v;
  for (const auto& o : outs) v.emplace_back(o.weight.value(), o.entries);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace rankenum::testing

#endif  // RANKENUM_TESTS_SUPPORT_HPP_
