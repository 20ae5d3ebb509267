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

// Weighted DAG whose source-to-sink paths are the accepting runs of a
// transducer on a document, and its shortest-path tree toward the sink.

#ifndef RANKENUM_PRODUCT_DAG_HPP_
#define RANKENUM_PRODUCT_DAG_HPP_

#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankenum/errors.hpp"
#include "rankenum/group.hpp"
#include "rankenum/transducer.hpp"

namespace rankenum {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

struct EdgeLabel {
  MarkerId marker = kNoMarker;
  std::int32_t position = 0;
  bool empty() const { return marker == kNoMarker; }
  TupleEntry entry() const { return {marker, position}; }
};

// Node ids are a topological order: every edge satisfies src < dst.
template <OrderedAbelianGroup G>
class LabeledWeightedDag {
 public:
  struct NodeInfo {
    StateId state = -1;
    std::int32_t layer = 0;
  };

  NodeId AddNode(StateId state = -1, std::int32_t layer = 0) {
    nodes_.push_back({state, layer});
    return static_cast<NodeId>(nodes_.size() - 1);
  }
  void AddNodes(std::size_t count) { nodes_.resize(nodes_.size() + count); }
  void Reserve(std::size_t nodes, std::size_t edges) {
    nodes_.reserve(nodes);
    src_.reserve(edges);
    dst_.reserve(edges);
    weight_.reserve(edges);
    label_.reserve(edges);
  }
  void SetNodeInfo(NodeId v, NodeInfo info) { nodes_[static_cast<std::size_t>(v)] = info; }

  EdgeId AddEdge(NodeId src, NodeId dst, G weight, EdgeLabel label = {}) {
    if (src < 0 || dst >= num_nodes() || src >= dst) {
      throw std::invalid_argument("edge violates node order");
    }
    src_.push_back(src);
    dst_.push_back(dst);
    weight_.push_back(std::move(weight));
    label_.push_back(label);
    finalized_ = false;
    return static_cast<EdgeId>(src_.size() - 1);
  }

  void SetEndpoints(NodeId source, NodeId sink) {
    source_ = source;
    sink_ = sink;
  }

  // Builds the out-adjacency; within a node, edges appear by ascending id.
  void Finalize() {
    offsets_.assign(nodes_.size() + 1, 0);
    for (NodeId s : src_) ++offsets_[static_cast<std::size_t>(s) + 1];
    for (std::size_t v = 0; v < nodes_.size(); ++v) offsets_[v + 1] += offsets_[v];
    out_.assign(src_.size(), 0);
    // Fill using offsets_[v] as a cursor, then shift the cursors back.
    for (std::size_t e = 0; e < src_.size(); ++e) {
      out_[static_cast<std::size_t>(offsets_[static_cast<std::size_t>(src_[e])]++)] = static_cast<EdgeId>(e);
    }
    for (std::size_t v = nodes_.size(); v > 0; --v) offsets_[v] = offsets_[v - 1];
    offsets_[0] = 0;
    finalized_ = true;
  }

  bool empty() const { return nodes_.empty(); }
  NodeId num_nodes() const { return static_cast<NodeId>(nodes_.size()); }
  EdgeId num_edges() const { return static_cast<EdgeId>(src_.size()); }
  NodeId source() const { return source_; }
  NodeId sink() const { return sink_; }
  const NodeInfo& node(NodeId v) const { return nodes_[static_cast<std::size_t>(v)]; }
  NodeId src(EdgeId e) const { return src_[static_cast<std::size_t>(e)]; }
  NodeId dst(EdgeId e) const { return dst_[static_cast<std::size_t>(e)]; }
  const G& weight(EdgeId e) const { return weight_[static_cast<std::size_t>(e)]; }
  const EdgeLabel& label(EdgeId e) const { return label_[static_cast<std::size_t>(e)]; }
  std::span<const EdgeId> out_edges(NodeId v) const {
    if (!finalized_) throw std::logic_error("graph not finalized");
    const auto b = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v)]);
    const auto e = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v) + 1]);
    return {out_.data() + b, e - b};
  }
  bool finalized() const { return finalized_; }

 private:
  std::vector<NodeInfo> nodes_;
  std::vector<NodeId> src_;
  std::vector<NodeId> dst_;
  std::vector<G> weight_;
  std::vector<EdgeLabel> label_;
  std::vector<EdgeId> offsets_;
  std::vector<EdgeId> out_;
  NodeId source_ = -1;
  NodeId sink_ = -1;
  bool finalized_ = false;
};

// Node (q, i) gets id i * |Q| + q. Requires exactly one final state.
template <OrderedAbelianGroup G>
LabeledWeightedDag<G> BuildProductDag(const CostTransducer<G>& t, const Document& d) {
  if (t.finals.size() != 1) throw PreconditionViolation("transducer must have a single final state");
  t.ValidateDocument(d);
  const std::size_t nq = static_cast<std::size_t>(t.num_states());
  const std::size_t n = d.size();
  if ((n + 1) * nq > static_cast<std::size_t>(INT32_MAX)) throw std::length_error("product DAG too large");

  std::vector<std::vector<int>> by_symbol(t.alphabet.size());
  for (std::size_t i = 0; i < t.transitions.size(); ++i) {
    by_symbol[static_cast<std::size_t>(t.SymbolIndex(t.transitions[i].symbol))].push_back(static_cast<int>(i));
  }

  std::size_t num_edges = 0;
  for (std::size_t i = 1; i <= n; ++i) num_edges += by_symbol[static_cast<std::size_t>(t.SymbolIndex(d.at(i)))].size();
  LabeledWeightedDag<G> g;
  g.Reserve((n + 1) * nq, num_edges);
  g.AddNodes((n + 1) * nq);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t q = 0; q < nq; ++q) {
      g.SetNodeInfo(static_cast<NodeId>(i * nq + q), {static_cast<StateId>(q), static_cast<std::int32_t>(i)});
    }
  }
  for (std::size_t i = 1; i <= n; ++i) {
    const auto& list = by_symbol[static_cast<std::size_t>(t.SymbolIndex(d.at(i)))];
    for (int id : list) {
      const auto& tr = t.transitions[static_cast<std::size_t>(id)];
      EdgeLabel label;
      if (tr.marker != t.empty_marker) label = {tr.marker, static_cast<std::int32_t>(i)};
      g.AddEdge(static_cast<NodeId>((i - 1) * nq + static_cast<std::size_t>(tr.from)),
                static_cast<NodeId>(i * nq + static_cast<std::size_t>(tr.to)), tr.weight, label);
    }
  }
  g.SetEndpoints(static_cast<NodeId>(t.initial), static_cast<NodeId>(n * nq + static_cast<std::size_t>(t.finals[0])));
  g.Finalize();
  return g;
}

// Keeps the nodes reachable from the source and co-reachable to the sink,
// preserving their relative order. No path means an empty graph.
template <OrderedAbelianGroup G>
LabeledWeightedDag<G> Prune(const LabeledWeightedDag<G>& g) {
  LabeledWeightedDag<G> out;
  if (g.empty() || g.source() < 0 || g.sink() < 0) return out;
  const NodeId nv = g.num_nodes();
  std::vector<char> fwd(static_cast<std::size_t>(nv), 0);
  std::vector<char> bwd(static_cast<std::size_t>(nv), 0);
  fwd[static_cast<std::size_t>(g.source())] = 1;
  for (NodeId v = 0; v < nv; ++v) {
    if (!fwd[static_cast<std::size_t>(v)]) continue;
    for (EdgeId e : g.out_edges(v)) fwd[static_cast<std::size_t>(g.dst(e))] = 1;
  }
  if (!fwd[static_cast<std::size_t>(g.sink())]) return out;
  bwd[static_cast<std::size_t>(g.sink())] = 1;
  for (NodeId v = nv - 1; v >= 0; --v) {
    for (EdgeId e : g.out_edges(v)) {
      if (bwd[static_cast<std::size_t>(g.dst(e))]) {
        bwd[static_cast<std::size_t>(v)] = 1;
        break;
      }
    }
  }
  std::size_t keep_nodes = 0, keep_edges = 0;
  for (NodeId v = 0; v < nv; ++v) {
    const auto vi = static_cast<std::size_t>(v);
    fwd[vi] = static_cast<char>(fwd[vi] && bwd[vi]);
    keep_nodes += static_cast<std::size_t>(fwd[vi]);
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    keep_edges += static_cast<std::size_t>(fwd[static_cast<std::size_t>(g.src(e))] && fwd[static_cast<std::size_t>(g.dst(e))]);
  }
  out.Reserve(keep_nodes, keep_edges);
  std::vector<NodeId> remap(static_cast<std::size_t>(nv), -1);
  for (NodeId v = 0; v < nv; ++v) {
    if (fwd[static_cast<std::size_t>(v)] && bwd[static_cast<std::size_t>(v)]) {
      remap[static_cast<std::size_t>(v)] = out.AddNode(g.node(v).state, g.node(v).layer);
    }
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const NodeId a = remap[static_cast<std::size_t>(g.src(e))];
    const NodeId b = remap[static_cast<std::size_t>(g.dst(e))];
    if (a >= 0 && b >= 0) out.AddEdge(a, b, g.weight(e), g.label(e));
  }
  out.SetEndpoints(remap[static_cast<std::size_t>(g.source())], remap[static_cast<std::size_t>(g.sink())]);
  out.Finalize();
  return out;
}

// Shortest paths toward the sink with the tree label beta_v stored implicitly:
// first_labeled[v] is the first node on v's tree path whose parent edge
// carries a label, so labels can be read off in time linear in their length.
template <OrderedAbelianGroup G>
struct ShortestPathTree {
  std::vector<G> dist;
  std::vector<EdgeId> parent_edge;  // -1 at the sink
  std::vector<NodeId> next;         // tree successor, -1 at the sink
  std::vector<NodeId> first_labeled;

  const G& distance(NodeId v) const { return dist[static_cast<std::size_t>(v)]; }

  // Appends the labels of the tree path from v up to (excluding the edges
  // leaving) `stop`, or up to the sink when stop < 0. Returns the number of
  // label entries emitted.
  std::size_t AppendTreeLabel(const LabeledWeightedDag<G>& g, NodeId v, NodeId stop,
                              std::vector<TupleEntry>& out) const {
    std::size_t emitted = 0;
    NodeId a = first_labeled[static_cast<std::size_t>(v)];
    while (a >= 0 && (stop < 0 || a < stop)) {
      out.push_back(g.label(parent_edge[static_cast<std::size_t>(a)]).entry());
      ++emitted;
      a = first_labeled[static_cast<std::size_t>(next[static_cast<std::size_t>(a)])];
    }
    return emitted;
  }
};

template <OrderedAbelianGroup G>
ShortestPathTree<G> ComputeShortestPathTree(const LabeledWeightedDag<G>& g) {
  if (g.empty()) throw NoPaths();
  const auto nv = static_cast<std::size_t>(g.num_nodes());
  ShortestPathTree<G> tree;
  tree.dist.assign(nv, G{});
  tree.parent_edge.assign(nv, -1);
  tree.next.assign(nv, -1);
  tree.first_labeled.assign(nv, -1);
  const NodeId sink = g.sink();
  for (NodeId v = g.num_nodes() - 1; v >= 0; --v) {
    if (v == sink) continue;
    EdgeId best = -1;
    G best_w{};
    for (EdgeId e : g.out_edges(v)) {
      const NodeId u = g.dst(e);
      if (u != sink && tree.parent_edge[static_cast<std::size_t>(u)] < 0) continue;  // cannot reach sink
      G cand = g.weight(e) + tree.dist[static_cast<std::size_t>(u)];
      if (best < 0 || cand < best_w) {
        best = e;
        best_w = std::move(cand);
      }
    }
    if (best < 0) continue;
    const auto vi = static_cast<std::size_t>(v);
    tree.parent_edge[vi] = best;
    tree.dist[vi] = std::move(best_w);
    tree.next[vi] = g.dst(best);
    tree.first_labeled[vi] = g.label(best).empty() ? tree.first_labeled[static_cast<std::size_t>(g.dst(best))] : v;
  }
  if (g.source() != sink && tree.parent_edge[static_cast<std::size_t>(g.source())] < 0) throw NoPaths();
  return tree;
}

template <OrderedAbelianGroup G>
void WriteDot(const LabeledWeightedDag<G>& g, std::ostream& os, const std::vector<std::string>& state_names = {},
              const std::vector<std::string>& marker_names = {}) {
  os << "digraph product {\n  rankdir=LR;\n";
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const auto& info = g.node(v);
    os << "  n" << v << " [label=\"";
    if (info.state >= 0 && static_cast<std::size_t>(info.state) < state_names.size()) {
      os << state_names[static_cast<std::size_t>(info.state)];
    } else {
      os << info.state;
    }
    os << "," << info.layer << "\"";
    if (v == g.source() || v == g.sink()) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    os << "  n" << g.src(e) << " -> n" << g.dst(e) << " [label=\"" << g.weight(e);
    const auto& l = g.label(e);
    if (!l.empty()) {
      os << " ";
      if (static_cast<std::size_t>(l.marker) < marker_names.size()) {
        os << marker_names[static_cast<std::size_t>(l.marker)];
      } else {
        os << l.marker;
      }
      os << "@" << l.position;
    }
    os << "\"];\n";
  }
  os << "}\n";
}

}  // namespace rankenum

#endif  // RANKENUM_PRODUCT_DAG_HPP_
