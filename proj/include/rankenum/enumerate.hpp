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

// Ranked enumeration of s-to-sink paths.
//
// SimpleEnumerator: best-first traversal of the Eppstein heap. Popped cursors
// push their children onto a FIFO per arriving arc slot; an auxiliary min-heap
// holds the front of every non-empty FIFO.
//
// EpochEnumerator: emits ranks (K/2, K] from a pre-sorted buffer while a
// coroutine selects and sorts the 2K smallest paths for the next epoch, paced
// to a fixed number of work units per output.

#ifndef RANKENUM_ENUMERATE_HPP_
#define RANKENUM_ENUMERATE_HPP_

#include <algorithm>
#include <boost/coroutine2/coroutine.hpp>
#include <boost/coroutine2/protected_fixedsize_stack.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rankenum/eppstein.hpp"
#include "rankenum/errors.hpp"
#include "rankenum/group.hpp"
#include "rankenum/nsum.hpp"
#include "rankenum/nsum_sort.hpp"
#include "rankenum/product_dag.hpp"
#include "rankenum/transducer.hpp"

namespace rankenum {

struct BestFirstStats {
  std::uint64_t pops = 0;
  std::size_t aux_heap = 0;
  std::size_t max_aux_heap = 0;
};

// Best-first traversal over a cursor space; pops cursors in (weight, id) order.
template <OrderedAbelianGroup G>
class BestFirst {
 public:
  explicit BestFirst(CursorSpace<G>& space, WorkMeter* meter = nullptr)
      : space_(&space), meter_(meter) {
    const auto slots = static_cast<std::size_t>(space.dag().num_edge_slots());
    head_.assign(slots, -1);
    tail_.assign(slots, -1);
    if (space.dag().has_paths()) Push(space.Root());
  }

  std::optional<CursorId> Pop() {
    if (heap_.empty()) return std::nullopt;
    std::pop_heap(heap_.begin(), heap_.end(), Greater{space_});
    const CursorId c = heap_.back();
    heap_.pop_back();
    Charge();
    const std::int32_t slot = space_->via_slot(c);
    if (slot >= 0) {
      const auto s = static_cast<std::size_t>(slot);
      head_[s] = Next(c);
      if (head_[s] < 0) {
        tail_[s] = -1;
      } else {
        Push(head_[s]);
      }
    }
    CursorId kids[EppsteinDag<G>::kMaxOutDegree];
    const int k = space_->Expand(c, kids);
    for (int i = 0; i < k; ++i) Append(kids[i]);
    ++stats_.pops;
    return c;
  }

  bool empty() const { return heap_.empty(); }
  const BestFirstStats& stats() const { return stats_; }

 private:
  struct Greater {
    const CursorSpace<G>* space;
    bool operator()(CursorId a, CursorId b) const {
      const G& wa = space->eppstein_weight(a);
      const G& wb = space->eppstein_weight(b);
      if (wb < wa) return true;
      if (wa < wb) return false;
      return a > b;
    }
  };

  CursorId& Next(CursorId c) {
    const auto i = static_cast<std::size_t>(c);
    if (next_.size() <= i) next_.resize(std::max(i + 1, next_.size() * 2), -1);
    return next_[i];
  }

  void Push(CursorId c) {
    heap_.push_back(c);
    std::push_heap(heap_.begin(), heap_.end(), Greater{space_});
    Charge();
    stats_.aux_heap = heap_.size();
    stats_.max_aux_heap = std::max(stats_.max_aux_heap, heap_.size());
  }

  void Append(CursorId c) {
    const auto s = static_cast<std::size_t>(space_->via_slot(c));
    Next(c) = -1;
    if (tail_[s] < 0) {
      head_[s] = tail_[s] = c;
      Push(c);
      return;
    }
    if (space_->eppstein_weight(c) < space_->eppstein_weight(tail_[s])) {
      throw std::logic_error("edge list weights decreased on insertion");
    }
    Next(tail_[s]) = c;
    tail_[s] = c;
  }

  void Charge() {
    if (meter_ != nullptr) meter_->Charge();
  }

  CursorSpace<G>* space_;
  WorkMeter* meter_;
  std::vector<CursorId> heap_;
  std::vector<CursorId> head_, tail_, next_;
  BestFirstStats stats_;
};

// The k smallest r-paths, ties broken by discovery order; returned in
// discovery (cursor id) order.
template <OrderedAbelianGroup G>
std::vector<CursorId> SelectKSmallest(CursorSpace<G>& space, std::int64_t k, WorkMeter* meter = nullptr) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::vector<CursorId> out;
  BestFirst<G> bf(space, meter);
  while (static_cast<std::int64_t>(out.size()) < k) {
    auto c = bf.Pop();
    if (!c) break;
    out.push_back(*c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <OrderedAbelianGroup G>
class PathEnumerator {
 public:
  virtual ~PathEnumerator() = default;
  virtual bool Next(OutputTuple<G>& out) = 0;
  virtual std::int64_t emitted() const = 0;
};

template <OrderedAbelianGroup G>
class SimpleEnumerator : public PathEnumerator<G> {
 public:
  explicit SimpleEnumerator(std::shared_ptr<const EppsteinDag<G>> dag, std::int64_t limit = -1,
                            WorkMeter* meter = nullptr)
      : dag_(std::move(dag)), limit_(limit), space_(*dag_, nullptr, meter), bf_(space_, meter) {}

  std::optional<CursorId> NextCursor() {
    if (limit_ >= 0 && emitted_ >= limit_) return std::nullopt;
    auto c = bf_.Pop();
    if (c) ++emitted_;
    return c;
  }

  bool Next(OutputTuple<G>& out) override {
    auto c = NextCursor();
    if (!c) return false;
    out.entries.clear();
    space_.Label(*c, out.entries);
    out.weight = space_.Weight(*c);
    return true;
  }

  std::int64_t emitted() const override { return emitted_; }
  const CursorSpace<G>& space() const { return space_; }
  const BestFirstStats& stats() const { return bf_.stats(); }
  std::size_t aux_heap_size() const { return bf_.stats().aux_heap; }
  // |edges(D_G)| + 1.
  std::int64_t aux_heap_bound() const { return dag_->num_edges() + 1; }

 private:
  std::shared_ptr<const EppsteinDag<G>> dag_;
  std::int64_t limit_;
  std::int64_t emitted_ = 0;
  CursorSpace<G> space_;
  BestFirst<G> bf_;
};

struct EpochOptions {
  std::int64_t n = 0;     // first epoch size; 0 means |V(G)|
  double safety = 4.0;    // multiplier on the calibrated work estimate
  bool paced = true;      // false: compute each epoch synchronously on demand
  SortBackend backend = SortBackend::kAuto;
  SortOptions sort;
};

struct EpochInfo {
  int epoch = 0;
  std::int64_t first_rank = 0;  // 1-based, inclusive
  std::int64_t last_rank = 0;
  std::uint64_t budget = 0;     // work units granted per output
  std::uint64_t work = 0;       // units spent preparing the next epoch
  bool underrun = false;
};

template <OrderedAbelianGroup G>
class EpochEnumerator : public PathEnumerator<G> {
  using Coro = boost::coroutines2::coroutine<void>;

 public:
  EpochEnumerator(std::shared_ptr<const EppsteinDag<G>> dag, std::int64_t limit = -1, EpochOptions opts = {})
      : dag_(std::move(dag)), limit_(limit), opts_(opts) {
    if (!dag_->has_paths() || limit_ == 0) return;
    coeffs_ = std::make_unique<PathCoefficients<G>>(*dag_);
    n_ = opts_.n > 0 ? opts_.n : std::max<std::int64_t>(1, dag_->graph().num_nodes());
    WorkMeter pre;
    cur_ = ComputeBatch(Cap(n_), &pre);
    c_hat_ = static_cast<double>(pre.total()) / static_cast<double>(std::max<std::size_t>(1, cur_.sorted.size()));
    preprocessing_work_ = pre.total();
    epochs_.push_back({1, 1, static_cast<std::int64_t>(cur_.sorted.size()), 0, 0, false});
    MaybeStartNext();
  }

  bool Next(OutputTuple<G>& out) override {
    if (limit_ >= 0 && emitted_ >= limit_) return false;
    if (!cur_.space) return false;
    if (pos_ >= cur_.sorted.size() && !Advance()) return false;
    const CursorId c = cur_.sorted[pos_++];
    out.entries.clear();
    cur_.space->Label(c, out.entries);
    out.weight = cur_.space->Weight(c);
    ++emitted_;
    if (job_ && *job_) (*job_)();
    return true;
  }

  std::int64_t emitted() const override { return emitted_; }
  int epoch() const { return static_cast<int>(epochs_.size()); }
  std::int64_t n() const { return n_; }
  const std::vector<EpochInfo>& epochs() const { return epochs_; }
  int underruns() const { return underruns_; }
  std::uint64_t preprocessing_work() const { return preprocessing_work_; }
  double calibrated_cost() const { return c_hat_; }
  const PathCoefficients<G>* coefficients() const { return coeffs_.get(); }

 private:
  struct Batch {
    std::unique_ptr<CursorSpace<G>> space;
    std::vector<CursorId> sorted;
  };

  std::int64_t Cap(std::int64_t k) const { return limit_ < 0 ? k : std::min(k, limit_); }

  Batch ComputeBatch(std::int64_t k, WorkMeter* meter) {
    Batch b;
    b.space = std::make_unique<CursorSpace<G>>(*dag_, coeffs_.get(), meter);
    const auto ids = SelectKSmallest(*b.space, k, meter);
    const int t = coeffs_->t();
    NSumBatch x(t, coeffs_->bound());
    x.Reserve(ids.size());
    std::vector<std::int64_t> row(static_cast<std::size_t>(t));
    for (CursorId c : ids) {
      const std::int32_t* a = b.space->Coefficients(c);
      std::copy(a, a + t, row.begin());
      x.Add(row);
    }
    SortOptions so = opts_.sort;
    so.meter = meter;
    // Stable: equal weights keep discovery order, matching SimpleEnumerator.
    const auto perm = SortNSums(x, coeffs_->basis(), opts_.backend, so);
    b.sorted.reserve(ids.size());
    for (std::size_t i : perm) b.sorted.push_back(ids[i]);
    return b;
  }

  void MaybeStartNext() {
    const auto have = static_cast<std::int64_t>(cur_.sorted.size());
    next_k_ = 0;
    job_.reset();
    // Fewer paths than requested, or the limit is reached: nothing further.
    if (have < cur_k_requested()) return;
    const std::int64_t k = Cap(2 * have);
    if (k <= have) return;
    next_k_ = k;
    const std::size_t remaining = cur_.sorted.size() - pos_;
    const double est = opts_.safety * c_hat_ * static_cast<double>(k);
    budget_ = static_cast<std::uint64_t>(std::ceil(est / static_cast<double>(std::max<std::size_t>(1, remaining))));
    budget_ = std::max<std::uint64_t>(budget_, 1);
    epochs_.back().budget = budget_;
    job_meter_ = WorkMeter();
    if (!opts_.paced) return;
    job_meter_.SetHook([this] { (*yield_)(); }, budget_);
    job_.emplace(boost::coroutines2::protected_fixedsize_stack(8 << 20), [this, k](typename Coro::push_type& yield) {
      yield_ = &yield;
      next_ = ComputeBatch(k, &job_meter_);
      job_meter_.ClearHook();
    });
  }

  std::int64_t cur_k_requested() const {
    return epochs_.size() == 1 ? Cap(n_) : last_k_;
  }

  bool Advance() {
    if (next_k_ == 0) return false;
    if (job_ && *job_) {
      ++underruns_;
      epochs_.back().underrun = true;
      job_meter_.SetQuantum(std::numeric_limits<std::uint64_t>::max());
      while (*job_) (*job_)();
    } else if (!opts_.paced) {
      next_ = ComputeBatch(next_k_, &job_meter_);
    }
    job_.reset();
    epochs_.back().work = job_meter_.total();
    c_hat_ = std::max(c_hat_, static_cast<double>(job_meter_.total()) / static_cast<double>(next_k_));
    const std::size_t prev = cur_.sorted.size();
    last_k_ = next_k_;
    cur_ = std::move(next_);
    next_ = Batch();
    pos_ = prev;
    if (cur_.sorted.size() <= prev) {
      next_k_ = 0;
      return false;
    }
    epochs_.push_back({static_cast<int>(epochs_.size()) + 1, static_cast<std::int64_t>(prev) + 1,
                       static_cast<std::int64_t>(cur_.sorted.size()), 0, 0, false});
    MaybeStartNext();
    return true;
  }

  std::shared_ptr<const EppsteinDag<G>> dag_;
  std::int64_t limit_;
  EpochOptions opts_;
  std::unique_ptr<PathCoefficients<G>> coeffs_;
  std::int64_t n_ = 0;
  std::int64_t emitted_ = 0;
  Batch cur_, next_;
  std::size_t pos_ = 0;
  std::int64_t next_k_ = 0;
  std::int64_t last_k_ = 0;
  std::uint64_t budget_ = 1;
  double c_hat_ = 1.0;
  std::uint64_t preprocessing_work_ = 0;
  int underruns_ = 0;
  std::vector<EpochInfo> epochs_;
  WorkMeter job_meter_;
  typename Coro::push_type* yield_ = nullptr;
  std::optional<typename Coro::pull_type> job_;
};

enum class Algorithm { kSimple, kEpoch };

inline Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "simple") return Algorithm::kSimple;
  if (name == "epoch") return Algorithm::kEpoch;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

inline std::string_view AlgorithmName(Algorithm a) { return a == Algorithm::kSimple ? "simple" : "epoch"; }

struct EnumerationOptions {
  Algorithm algorithm = Algorithm::kSimple;
  std::int64_t limit = -1;  // negative: unbounded
  EpochOptions epoch;
};

struct PreprocessingInfo {
  std::int64_t product_nodes = 0;
  std::int64_t product_edges = 0;
  std::int64_t nodes = 0;       // after pruning
  std::int64_t edges = 0;
  std::int64_t heap_nodes = 0;  // Eppstein DAG, reachable from the root
  std::int64_t heap_edges = 0;
};

// Transducer-level façade: normalize, build the product DAG, prune, shortest
// path tree, Eppstein DAG, then enumerate.
template <OrderedAbelianGroup G>
class RankedEnumeration {
 public:
  RankedEnumeration(const CostTransducer<G>& t, const Document& d, const EnumerationOptions& opts = {})
      : opts_(opts) {
    t.Validate();
    t.ValidateDocument(d);
    if (d.size() == 0) {
      // The only run on the empty document is the empty one.
      empty_doc_accepts_ = t.is_final(t.initial);
      return;
    }
    const auto norm = NormalizeSingleFinal(t);
    auto full = BuildProductDag(norm, d);
    info_.product_nodes = full.num_nodes();
    info_.product_edges = full.num_edges();
    auto graph = std::make_shared<LabeledWeightedDag<G>>(Prune(full));
    info_.nodes = graph->num_nodes();
    info_.edges = graph->num_edges();
    std::shared_ptr<ShortestPathTree<G>> tree;
    if (graph->empty()) {
      tree = std::make_shared<ShortestPathTree<G>>();
    } else {
      tree = std::make_shared<ShortestPathTree<G>>(ComputeShortestPathTree(*graph));
    }
    dag_ = std::make_shared<EppsteinDag<G>>(graph, tree);
    info_.heap_nodes = dag_->num_nodes();
    info_.heap_edges = dag_->num_edges();
    if (opts.algorithm == Algorithm::kSimple) {
      auto e = std::make_unique<SimpleEnumerator<G>>(dag_, opts.limit);
      simple_ = e.get();
      impl_ = std::move(e);
    } else {
      auto e = std::make_unique<EpochEnumerator<G>>(dag_, opts.limit, opts.epoch);
      epoch_ = e.get();
      impl_ = std::move(e);
    }
  }

  bool Next(OutputTuple<G>& out) {
    if (impl_) {
      if (!impl_->Next(out)) return false;
      ++emitted_;
      return true;
    }
    if (!empty_doc_accepts_ || emitted_ > 0 || opts_.limit == 0) return false;
    out.entries.clear();
    out.weight = G{};
    ++emitted_;
    return true;
  }

  std::vector<OutputTuple<G>> Collect() {
    std::vector<OutputTuple<G>> all;
    OutputTuple<G> o;
    while (Next(o)) all.push_back(o);
    return all;
  }

  std::int64_t emitted() const { return emitted_; }
  const PreprocessingInfo& info() const { return info_; }
  const EppsteinDag<G>* dag() const { return dag_.get(); }
  const SimpleEnumerator<G>* simple() const { return simple_; }
  const EpochEnumerator<G>* epoch() const { return epoch_; }

 private:
  EnumerationOptions opts_;
  PreprocessingInfo info_;
  bool empty_doc_accepts_ = false;
  std::int64_t emitted_ = 0;
  std::shared_ptr<EppsteinDag<G>> dag_;
  std::unique_ptr<PathEnumerator<G>> impl_;
  SimpleEnumerator<G>* simple_ = nullptr;
  EpochEnumerator<G>* epoch_ = nullptr;
};

}  // namespace rankenum

#endif  // RANKENUM_ENUMERATE_HPP_
