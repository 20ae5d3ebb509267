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

// Implicit heap of all source-to-sink paths (Eppstein). Each non-tree edge
// ("sidetrack") e costs delta(e) = w(e) + d(dst) - d(src) >= 0 over staying on
// the shortest-path tree. Heap nodes live in one arena:
//
//   H_out(v): v's cheapest sidetrack as root, the others heapified beneath it.
//   H_T(v):   H_out(v)'s root inserted into H_T(next(v)) by path copying.
//
// Heap edges (left, right, out) cost delta(y) - delta(x); the cross edge of a
// node x leads to the heap root of dst(e(x)) and costs that root's delta.

#ifndef RANKENUM_EPPSTEIN_HPP_
#define RANKENUM_EPPSTEIN_HPP_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rankenum/errors.hpp"
#include "rankenum/group.hpp"
#include "rankenum/nsum.hpp"
#include "rankenum/product_dag.hpp"

namespace rankenum {

template <OrderedAbelianGroup G>
class EppsteinDag {
 public:
  static constexpr int kMaxOutDegree = 4;
  static constexpr std::int32_t kNone = -1;

  struct HeapNode {
    EdgeId sidetrack = -1;
    std::int32_t left = kNone;
    std::int32_t right = kNone;
    std::int32_t out = kNone;
    std::int32_t rank = 1;
  };

  struct Arc {
    std::int32_t target = kNone;  // heap node
    std::int32_t slot = -1;       // D_G edge id
    bool cross = false;
  };

  EppsteinDag(std::shared_ptr<const LabeledWeightedDag<G>> graph, std::shared_ptr<const ShortestPathTree<G>> tree)
      : graph_(std::move(graph)), tree_(std::move(tree)) {
    if (graph_->empty()) return;
    Build();
  }

  bool has_paths() const { return !graph_->empty(); }
  const LabeledWeightedDag<G>& graph() const { return *graph_; }
  const ShortestPathTree<G>& tree() const { return *tree_; }
  const std::shared_ptr<const LabeledWeightedDag<G>>& graph_ptr() const { return graph_; }

  const G& delta(EdgeId e) const { return delta_[static_cast<std::size_t>(e)]; }
  bool is_sidetrack(EdgeId e) const { return sidetrack_[static_cast<std::size_t>(e)] != 0; }

  std::int32_t num_heap_nodes() const { return static_cast<std::int32_t>(nodes_.size()); }
  const HeapNode& heap_node(std::int32_t x) const { return nodes_[static_cast<std::size_t>(x)]; }
  const G& node_delta(std::int32_t x) const { return delta(heap_node(x).sidetrack); }
  std::int32_t heap_root(NodeId v) const { return heap_root_[static_cast<std::size_t>(v)]; }

  // The distinguished root r, outside the node arena.
  std::int32_t root() const { return num_heap_nodes(); }
  std::int64_t num_edge_slots() const { return 4 * (static_cast<std::int64_t>(nodes_.size()) + 1); }
  // Edges and nodes of D_G reachable from r (r included).
  std::int64_t num_edges() const { return num_edges_; }
  std::int64_t num_nodes() const { return num_reachable_; }

  // Outgoing D_G edges of x in branch order: left, right, out, cross.
  int Arcs(std::int32_t x, Arc out[kMaxOutDegree]) const {
    int k = 0;
    if (x == root()) {
      const std::int32_t z = graph_->empty() ? kNone : heap_root(graph_->source());
      if (z != kNone) out[k++] = {z, 4 * x + 3, true};
      return k;
    }
    const HeapNode& h = heap_node(x);
    if (h.left != kNone) out[k++] = {h.left, 4 * x + 0, false};
    if (h.right != kNone) out[k++] = {h.right, 4 * x + 1, false};
    if (h.out != kNone) out[k++] = {h.out, 4 * x + 2, false};
    const std::int32_t z = heap_root(graph_->dst(h.sidetrack));
    if (z != kNone) out[k++] = {z, 4 * x + 3, true};
    return k;
  }

  G ArcWeight(std::int32_t x, const Arc& a) const {
    if (a.cross) return node_delta(a.target);
    return node_delta(a.target) - node_delta(x);
  }

 private:
  bool Less(std::int32_t a, std::int32_t b) const {
    const EdgeId ea = nodes_[static_cast<std::size_t>(a)].sidetrack;
    const EdgeId eb = nodes_[static_cast<std::size_t>(b)].sidetrack;
    const G& da = delta(ea);
    const G& db = delta(eb);
    if (da < db) return true;
    if (db < da) return false;
    return ea < eb;
  }
  std::int32_t Rank(std::int32_t x) const { return x == kNone ? 0 : nodes_[static_cast<std::size_t>(x)].rank; }

  // Persistent leftist merge; never mutates existing nodes.
  std::int32_t Merge(std::int32_t a, std::int32_t b) {
    if (a == kNone) return b;
    if (b == kNone) return a;
    if (Less(b, a)) std::swap(a, b);
    HeapNode copy = nodes_[static_cast<std::size_t>(a)];
    copy.right = Merge(copy.right, b);
    if (Rank(copy.left) < Rank(copy.right)) std::swap(copy.left, copy.right);
    copy.rank = Rank(copy.right) + 1;
    nodes_.push_back(copy);
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  void Build() {
    const LabeledWeightedDag<G>& g = *graph_;
    const ShortestPathTree<G>& t = *tree_;
    const auto ne = static_cast<std::size_t>(g.num_edges());
    delta_.assign(ne, G{});
    sidetrack_.assign(ne, 0);
    auto reaches = [&](NodeId v) { return v == g.sink() || t.parent_edge[static_cast<std::size_t>(v)] >= 0; };
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const NodeId u = g.src(e);
      const NodeId v = g.dst(e);
      if (!reaches(u) || !reaches(v) || t.parent_edge[static_cast<std::size_t>(u)] == e) continue;
      delta_[static_cast<std::size_t>(e)] = g.weight(e) + t.distance(v) - t.distance(u);
      sidetrack_[static_cast<std::size_t>(e)] = 1;
    }
    heap_root_.assign(static_cast<std::size_t>(g.num_nodes()), kNone);
    nodes_.reserve(ne + static_cast<std::size_t>(g.num_nodes()) * 4);
    std::vector<std::int32_t> own;
    for (NodeId v = g.num_nodes() - 1; v >= 0; --v) {
      if (!reaches(v)) continue;
      const std::int32_t below = (v == g.sink()) ? kNone : heap_root(t.next[static_cast<std::size_t>(v)]);
      own.clear();
      for (EdgeId e : g.out_edges(v)) {
        if (!is_sidetrack(e)) continue;
        nodes_.push_back({e, kNone, kNone, kNone, 1});
        own.push_back(static_cast<std::int32_t>(nodes_.size() - 1));
      }
      if (own.empty()) {
        heap_root_[static_cast<std::size_t>(v)] = below;
        continue;
      }
      auto min_it = std::min_element(own.begin(), own.end(), [this](auto a, auto b) { return Less(a, b); });
      std::iter_swap(own.begin(), min_it);
      const std::int32_t outroot = own[0];
      // Heapify the rest as an implicit binary heap, then link children.
      auto greater = [this](auto a, auto b) { return Less(b, a); };
      std::make_heap(own.begin() + 1, own.end(), greater);
      const std::size_t rest = own.size() - 1;
      for (std::size_t i = 0; i < rest; ++i) {
        HeapNode& h = nodes_[static_cast<std::size_t>(own[1 + i])];
        if (2 * i + 1 < rest) h.left = own[1 + 2 * i + 1];
        if (2 * i + 2 < rest) h.right = own[1 + 2 * i + 2];
      }
      nodes_[static_cast<std::size_t>(outroot)].out = rest > 0 ? own[1] : kNone;
      heap_root_[static_cast<std::size_t>(v)] = Merge(outroot, below);
    }
    // Count edges over nodes reachable from r; path copying leaves some
    // superseded nodes behind in the arena.
    std::vector<char> seen(nodes_.size() + 1, 0);
    std::vector<std::int32_t> stack = {root()};
    seen[static_cast<std::size_t>(root())] = 1;
    Arc arcs[kMaxOutDegree];
    num_edges_ = 0;
    num_reachable_ = 0;
    while (!stack.empty()) {
      const std::int32_t x = stack.back();
      stack.pop_back();
      ++num_reachable_;
      const int k = Arcs(x, arcs);
      num_edges_ += k;
      for (int i = 0; i < k; ++i) {
        if (!seen[static_cast<std::size_t>(arcs[i].target)]) {
          seen[static_cast<std::size_t>(arcs[i].target)] = 1;
          stack.push_back(arcs[i].target);
        }
      }
    }
  }

  std::shared_ptr<const LabeledWeightedDag<G>> graph_;
  std::shared_ptr<const ShortestPathTree<G>> tree_;
  std::vector<G> delta_;
  std::vector<char> sidetrack_;
  std::vector<HeapNode> nodes_;
  std::vector<std::int32_t> heap_root_;
  std::int64_t num_edges_ = 0;
  std::int64_t num_reachable_ = 0;
};

// Per-path coefficient vectors over the distinct edge weights g_1 < ... < g_t:
// the weight of every source-to-sink path is the n-sum sum_i alpha_i g_i.
template <OrderedAbelianGroup G>
class PathCoefficients {
 public:
  explicit PathCoefficients(const EppsteinDag<G>& dag) {
    const auto& g = dag.graph();
    for (EdgeId e = 0; e < g.num_edges(); ++e) basis_.generators.push_back(g.weight(e));
    auto& gens = basis_.generators;
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    if (gens.empty()) gens.push_back(G{});
    t_ = static_cast<int>(gens.size());
    widx_.resize(static_cast<std::size_t>(g.num_edges()));
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      widx_[static_cast<std::size_t>(e)] =
          static_cast<std::int32_t>(std::lower_bound(gens.begin(), gens.end(), g.weight(e)) - gens.begin());
    }
    if (g.empty()) return;
    const auto& tree = dag.tree();
    cnt_.assign(static_cast<std::size_t>(g.num_nodes()) * static_cast<std::size_t>(t_), 0);
    for (NodeId v = g.num_nodes() - 1; v >= 0; --v) {
      const EdgeId pe = tree.parent_edge[static_cast<std::size_t>(v)];
      if (pe < 0) continue;
      const NodeId u = tree.next[static_cast<std::size_t>(v)];
      for (int j = 0; j < t_; ++j) cnt_[Idx(v, j)] = cnt_[Idx(u, j)];
      ++cnt_[Idx(v, widx_[static_cast<std::size_t>(pe)])];
    }
    bound_ = g.num_nodes();
  }

  int t() const { return t_; }
  std::int64_t bound() const { return bound_; }
  const GeneratorBasis<G>& basis() const { return basis_; }
  std::int32_t weight_index(EdgeId e) const { return widx_[static_cast<std::size_t>(e)]; }
  std::int32_t tree_count(NodeId v, int j) const { return cnt_[Idx(v, j)]; }

  // out += sign * (coefficient vector of delta(e)).
  void AddDelta(const LabeledWeightedDag<G>& g, EdgeId e, int sign, std::int32_t* out) const {
    const NodeId a = g.src(e);
    const NodeId b = g.dst(e);
    for (int j = 0; j < t_; ++j) out[j] += sign * (cnt_[Idx(b, j)] - cnt_[Idx(a, j)]);
    out[widx_[static_cast<std::size_t>(e)]] += sign;
  }

 private:
  std::size_t Idx(NodeId v, int j) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(t_) + static_cast<std::size_t>(j);
  }

  GeneratorBasis<G> basis_;
  int t_ = 0;
  std::int64_t bound_ = 1;
  std::vector<std::int32_t> widx_;
  std::vector<std::int32_t> cnt_;
};

using CursorId = std::int32_t;

// Fixed-width integer rows in stable chunks; rows never move once written.
class RowArena {
 public:
  explicit RowArena(int width = 0) : width_(width) {}
  void set_width(int width) { width_ = width; }
  std::int32_t* AppendRow() {
    if (width_ == 0) return nullptr;
    if (chunks_.empty() || used_ == kRowsPerChunk) {
      chunks_.push_back(std::make_unique<std::int32_t[]>(static_cast<std::size_t>(kRowsPerChunk) * static_cast<std::size_t>(width_)));
      used_ = 0;
    }
    return chunks_.back().get() + static_cast<std::size_t>(used_++) * static_cast<std::size_t>(width_);
  }
  std::int32_t* Row(std::size_t i) {
    return chunks_[i / kRowsPerChunk].get() + (i % kRowsPerChunk) * static_cast<std::size_t>(width_);
  }
  const std::int32_t* Row(std::size_t i) const {
    return chunks_[i / kRowsPerChunk].get() + (i % kRowsPerChunk) * static_cast<std::size_t>(width_);
  }

 private:
  static constexpr int kRowsPerChunk = 4096;
  int width_;
  int used_ = 0;
  std::vector<std::unique_ptr<std::int32_t[]>> chunks_;
};

// Append-only arena of path cursors. A cursor is an r-path of the Eppstein DAG
// stored as one cell; cells share prefixes, so child and parent moves are O(1).
template <OrderedAbelianGroup G>
class CursorSpace {
 public:
  struct Cell {
    CursorId heap_parent = -1;
    CursorId below = -1;        // cell whose node is the previous induced node
    std::int32_t node = -1;     // last induced D_G node; -1 at the root r
    NodeId owner = -1;          // graph node whose heap holds `node`
    std::int32_t via_slot = -1; // D_G edge that produced this cell
    G weight{};                 // accumulated D_G edge weight
  };

  explicit CursorSpace(const EppsteinDag<G>& dag, const PathCoefficients<G>* coeffs = nullptr,
                       WorkMeter* meter = nullptr)
      : dag_(&dag), coeffs_(coeffs), meter_(meter), vec_(coeffs == nullptr ? 0 : coeffs->t()) {}

  const EppsteinDag<G>& dag() const { return *dag_; }
  std::size_t size() const { return cells_.size(); }
  const Cell& cell(CursorId c) const { return cells_[static_cast<std::size_t>(c)]; }

  CursorId Root() {
    if (!dag_->has_paths()) throw NoPaths();
    Cell cell;
    cell.owner = dag_->graph().source();
    cells_.push_back(cell);
    if (coeffs_ != nullptr) {
      std::int32_t* v = vec_.AppendRow();
      for (int j = 0; j < coeffs_->t(); ++j) v[j] = coeffs_->tree_count(cell.owner, j);
    }
    Tick();
    return static_cast<CursorId>(cells_.size() - 1);
  }

  int OutDegree(CursorId c) const {
    typename EppsteinDag<G>::Arc arcs[EppsteinDag<G>::kMaxOutDegree];
    return dag_->Arcs(NodeOf(c), arcs);
  }

  CursorId Child(CursorId c, int branch) {
    typename EppsteinDag<G>::Arc arcs[EppsteinDag<G>::kMaxOutDegree];
    const int k = dag_->Arcs(NodeOf(c), arcs);
    if (branch < 0 || branch >= k) throw std::out_of_range("cursor branch out of range");
    return Extend(c, arcs[branch]);
  }

  // Creates every child of c in branch order; returns how many.
  int Expand(CursorId c, CursorId out[EppsteinDag<G>::kMaxOutDegree]) {
    typename EppsteinDag<G>::Arc arcs[EppsteinDag<G>::kMaxOutDegree];
    const int k = dag_->Arcs(NodeOf(c), arcs);
    for (int i = 0; i < k; ++i) out[i] = Extend(c, arcs[i]);
    return k;
  }

  CursorId Parent(CursorId c) const {
    const CursorId p = cell(c).heap_parent;
    if (p < 0) throw std::out_of_range("cursor is at the root");
    return p;
  }

  const G& eppstein_weight(CursorId c) const { return cell(c).weight; }
  G Weight(CursorId c) const { return dag_->tree().distance(dag_->graph().source()) + cell(c).weight; }
  std::int32_t via_slot(CursorId c) const { return cell(c).via_slot; }

  // alpha vector of the denoted path (requires coefficient tracking).
  const std::int32_t* Coefficients(CursorId c) const {
    return vec_.Row(static_cast<std::size_t>(c));
  }
  bool tracks_coefficients() const { return coeffs_ != nullptr; }

  // x_1..x_k, root first.
  std::vector<std::int32_t> InducedNodes(CursorId c) const {
    std::vector<std::int32_t> nodes;
    for (CursorId f = c; f >= 0 && cell(f).node >= 0; f = cell(f).below) nodes.push_back(cell(f).node);
    std::reverse(nodes.begin(), nodes.end());
    return nodes;
  }

  // Materializes the output tuple; `steps` counts label concatenations.
  void Label(CursorId c, std::vector<TupleEntry>& out, std::size_t* steps = nullptr) const {
    const auto& g = dag_->graph();
    const auto& tree = dag_->tree();
    frames_.clear();
    for (CursorId f = c; f >= 0 && cell(f).node >= 0; f = cell(f).below) frames_.push_back(f);
    std::size_t count = 0;
    NodeId at = g.source();
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
      const Cell& f = cell(*it);
      const EdgeId e = dag_->heap_node(f.node).sidetrack;
      count += tree.AppendTreeLabel(g, f.owner, g.src(e), out) + 1;
      if (!g.label(e).empty()) out.push_back(g.label(e).entry());
      at = g.dst(e);
    }
    count += tree.AppendTreeLabel(g, at, -1, out) + 1;
    if (steps != nullptr) *steps += count;
  }

  std::vector<TupleEntry> Label(CursorId c) const {
    std::vector<TupleEntry> out;
    Label(c, out);
    return out;
  }

  // Graph edges of the denoted path, for tests.
  std::vector<EdgeId> PathEdges(CursorId c) const {
    const auto& g = dag_->graph();
    const auto& tree = dag_->tree();
    std::vector<CursorId> frames;
    for (CursorId f = c; f >= 0 && cell(f).node >= 0; f = cell(f).below) frames.push_back(f);
    std::vector<EdgeId> path;
    NodeId at = g.source();
    auto walk_tree = [&](NodeId to) {
      while (at != to) {
        path.push_back(tree.parent_edge[static_cast<std::size_t>(at)]);
        at = tree.next[static_cast<std::size_t>(at)];
      }
    };
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
      const EdgeId e = dag_->heap_node(cell(*it).node).sidetrack;
      walk_tree(g.src(e));
      path.push_back(e);
      at = g.dst(e);
    }
    walk_tree(g.sink());
    return path;
  }

 private:
  std::int32_t NodeOf(CursorId c) const {
    const std::int32_t x = cell(c).node;
    return x < 0 ? dag_->root() : x;
  }

  void Tick() {
    if (meter_ != nullptr) meter_->Charge();
  }

  CursorId Extend(CursorId c, const typename EppsteinDag<G>::Arc& arc) {
    const Cell& p = cell(c);
    const std::int32_t x = NodeOf(c);
    Cell child;
    child.heap_parent = c;
    child.node = arc.target;
    child.via_slot = arc.slot;
    child.weight = p.weight + dag_->ArcWeight(x, arc);
    if (arc.cross) {
      child.below = c;
      child.owner = (p.node < 0) ? dag_->graph().source()
                                 : dag_->graph().dst(dag_->heap_node(p.node).sidetrack);
    } else {
      child.below = p.below;
      child.owner = p.owner;
    }
    cells_.push_back(std::move(child));
    if (coeffs_ != nullptr) {
      std::int32_t* v = vec_.AppendRow();
      const std::int32_t* from = vec_.Row(static_cast<std::size_t>(c));
      std::copy(from, from + coeffs_->t(), v);
      const auto& g = dag_->graph();
      coeffs_->AddDelta(g, dag_->heap_node(arc.target).sidetrack, 1, v);
      if (!arc.cross) coeffs_->AddDelta(g, dag_->heap_node(x).sidetrack, -1, v);
    }
    Tick();
    return static_cast<CursorId>(cells_.size() - 1);
  }

  const EppsteinDag<G>* dag_;
  const PathCoefficients<G>* coeffs_;
  WorkMeter* meter_;
  std::deque<Cell> cells_;
  RowArena vec_;
  mutable std::vector<CursorId> frames_;
};

}  // namespace rankenum

#endif  // RANKENUM_EPPSTEIN_HPP_
