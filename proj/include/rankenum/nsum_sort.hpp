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

// Sorting N n-sums over t generators.
//
//   baseline  evaluate, then a stable comparison sort
//   radix     int64 generators of O(log(N + n)) bits: evaluate and radix sort
//   rounding  dedup -> tag ties -> sample-and-LP bucketing -> LP-guided
//             ordering inside buckets -> insertion sort -> verify, with
//             bounded restarts and a baseline fallback
//
// Every backend returns a stable sort of the input.

#ifndef RANKENUM_NSUM_SORT_HPP_
#define RANKENUM_NSUM_SORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "rankenum/errors.hpp"
#include "rankenum/feasibility.hpp"
#include "rankenum/group.hpp"
#include "rankenum/nsum.hpp"
#include "rankenum/rounding.hpp"

namespace rankenum {

enum class SortBackend { kAuto, kBaseline, kRadix, kRounding };

inline std::string_view BackendName(SortBackend b) {
  switch (b) {
    case SortBackend::kAuto:
      return "auto";
    case SortBackend::kBaseline:
      return "baseline";
    case SortBackend::kRadix:
      return "radix";
    case SortBackend::kRounding:
      return "rounding";
  }
  return "?";
}

inline SortBackend ParseBackend(std::string_view name) {
  if (name == "auto") return SortBackend::kAuto;
  if (name == "baseline") return SortBackend::kBaseline;
  if (name == "radix") return SortBackend::kRadix;
  if (name == "rounding") return SortBackend::kRounding;
  throw std::invalid_argument("unknown sort backend '" + std::string(name) + "'");
}

struct SortParams {
  double c = 1.0;                    // sampling exponent: p = 1 / log^c N
  std::size_t bucket_stride = 0;     // 0 means ceil(log^(c+3) N)
  std::size_t small_input_threshold = 4096;
  int attempts = 3;
  double work_cap = 8.0;             // per-attempt comparisons, in units of t * N
};

struct SortOptions {
  SortParams params;
  std::uint64_t seed = 0;
  WorkMeter* meter = nullptr;
};

struct SortReport {
  SortBackend requested = SortBackend::kAuto;
  SortBackend used = SortBackend::kBaseline;
  std::uint64_t comparisons = 0;
  int attempts = 0;
  int restarts = 0;
  bool fell_back = false;
  std::string fallback_reason;
  std::size_t distinct = 0;
  std::size_t buckets = 0;
  std::size_t repaired = 0;
  std::size_t insertion_moves = 0;
};

namespace nsum_internal {

struct AttemptAborted {
  std::string reason;
};

template <class T>
struct BudgetedLess {
  ComparisonCounter* counter;
  std::uint64_t limit;
  bool operator()(const T& a, const T& b) const {
    counter->Add();
    if (counter->count() > limit) throw AttemptAborted{"comparison budget exceeded"};
    return a < b;
  }
};

inline double Log2N(std::size_t n) { return std::max(1.0, std::log2(static_cast<double>(std::max<std::size_t>(n, 2)))); }

}  // namespace nsum_internal

template <OrderedAbelianGroup G>
std::vector<G> EvaluateAll(const NSumBatch& x, const GeneratorBasis<G>& basis, WorkMeter* meter = nullptr) {
  std::vector<G> out;
  out.reserve(x.size());
  if (x.size() == 0) return out;
  if (static_cast<std::size_t>(x.dimension()) != basis.size()) throw std::invalid_argument("n-sums and basis differ in dimension");
  std::int64_t max_coeff = 0;
  bool negative = false;
  for (auto v : x.raw()) {
    max_coeff = std::max(max_coeff, v);
    negative = negative || v < 0;
  }
  const bool use_table = !negative && max_coeff <= static_cast<std::int64_t>(4 * x.size() + 4096);
  if (use_table && max_coeff > 0) {
    PrecomputeTable<G> table(basis, max_coeff);
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(table.Eval(x[i]));
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(NSumEvalDirect(x[i], basis));
  }
  if (meter != nullptr) meter->Charge(x.size());
  return out;
}

// Stable comparison sort of evaluated values.
template <class T>
std::vector<std::size_t> SortBaseline(const std::vector<T>& values, ComparisonCounter& counter) {
  std::vector<std::size_t> perm(values.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    counter.Add();
    return values[a] < values[b];
  });
  return perm;
}

inline int RadixBitBudget(std::size_t n_items, std::int64_t bound) {
  const double total = static_cast<double>(n_items) + static_cast<double>(std::max<std::int64_t>(bound, 0)) + 2.0;
  return std::min(62, 3 * static_cast<int>(std::ceil(std::log2(total))));
}

inline bool RadixApplicable(const NSumBatch& x, const GeneratorBasis<Int64>& basis) {
  const int bits = RadixBitBudget(x.size(), x.bound());
  const std::int64_t limit = std::int64_t{1} << bits;
  for (const auto& g : basis.generators) {
    if (g.value() >= limit || g.value() <= -limit) return false;
  }
  return true;
}

// Remark-style radix path for small integer generators.
inline std::vector<std::size_t> SortRadixSmallInts(const NSumBatch& x, const GeneratorBasis<Int64>& basis,
                                                   WorkMeter* meter = nullptr) {
  if (!RadixApplicable(x, basis)) {
    throw PreconditionViolation("generator magnitude exceeds the radix bit budget");
  }
  const auto values = EvaluateAll(x, basis, meter);
  std::vector<std::int64_t> keys(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) keys[i] = values[i].value();
  return RadixSortInt64(keys, meter);
}

struct DedupResult {
  // Representatives (smallest input index of each distinct vector), ascending.
  std::vector<std::size_t> representative;
  // Distinct-vector id of every input, numbered as `representative`.
  std::vector<std::uint32_t> group;
  std::vector<std::size_t> multiplicity;
};

// LSD radix over coordinates; equal vectors merge into one group.
inline DedupResult DedupVectors(const NSumBatch& x, WorkMeter* meter = nullptr) {
  const std::size_t n = x.size();
  const int t = x.dimension();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::int64_t> keys(n);
  for (int j = t - 1; j >= 0; --j) {
    for (std::size_t k = 0; k < n; ++k) keys[k] = x[order[k]][static_cast<std::size_t>(j)];
    const auto step = RadixSortInt64(keys, meter);
    std::vector<std::size_t> next(n);
    for (std::size_t k = 0; k < n; ++k) next[k] = order[step[k]];
    order.swap(next);
  }
  DedupResult out;
  out.group.assign(n, 0);
  std::vector<std::size_t> rep_of_run;
  std::vector<std::uint32_t> run_of(n);
  for (std::size_t k = 0; k < n; ++k) {
    const bool fresh = k == 0 || !std::equal(x[order[k]].begin(), x[order[k]].end(), x[order[k - 1]].begin());
    if (fresh) rep_of_run.push_back(order[k]);  // stable: the smallest index comes first
    run_of[order[k]] = static_cast<std::uint32_t>(rep_of_run.size() - 1);
  }
  std::vector<std::size_t> run_order(rep_of_run.size());
  std::iota(run_order.begin(), run_order.end(), std::size_t{0});
  std::sort(run_order.begin(), run_order.end(), [&](std::size_t a, std::size_t b) { return rep_of_run[a] < rep_of_run[b]; });
  std::vector<std::uint32_t> renum(rep_of_run.size());
  for (std::size_t k = 0; k < run_order.size(); ++k) {
    renum[run_order[k]] = static_cast<std::uint32_t>(k);
    out.representative.push_back(rep_of_run[run_order[k]]);
  }
  out.multiplicity.assign(rep_of_run.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    out.group[i] = renum[run_of[i]];
    ++out.multiplicity[out.group[i]];
  }
  if (meter != nullptr) meter->Charge(n);
  return out;
}

// Pairwise-distinct values x_k with their integer coefficient vectors h_k over
// the extended basis (last coordinate is the tag).
template <OrderedAbelianGroup G>
struct DistinctInstance {
  int d = 0;
  std::vector<std::int64_t> h;
  std::vector<Tagged<G>> x;
  std::size_t size() const { return x.size(); }
  std::span<const std::int64_t> row(std::size_t k) const {
    return {h.data() + k * static_cast<std::size_t>(d), static_cast<std::size_t>(d)};
  }
};

struct BucketPartition {
  std::vector<std::size_t> sample;      // sorted ascending by value
  std::size_t stride = 1;
  std::vector<std::size_t> boundaries;  // sample[j * stride]
  std::vector<std::uint32_t> bucket_of;
  std::vector<std::vector<std::size_t>> buckets;
  std::size_t repaired = 0;
  std::size_t num_buckets() const { return boundaries.size(); }
};

namespace nsum_internal {

template <OrderedAbelianGroup G>
std::vector<Fraction> ApproximateValues(const DistinctInstance<G>& inst, const RationalVector& g, WorkMeter* meter) {
  mpz_class den = 1;
  for (const auto& q : g.x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> p(g.x.size());
  bool small = true;
  for (std::size_t j = 0; j < g.x.size(); ++j) {
    const mpq_class s = g.x[j] * den;
    p[j] = s.get_num();
    small = small && mpz_sizeinbase(p[j].get_mpz_t(), 2) <= 40;
  }
  std::vector<Fraction> out(inst.size());
  std::vector<long> ps(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) ps[j] = small ? p[j].get_si() : 0;
  for (std::size_t k = 0; k < inst.size(); ++k) {
    auto h = inst.row(k);
    if (small) {
      __int128 s = 0;
      for (std::size_t j = 0; j < h.size(); ++j) s += static_cast<__int128>(ps[j]) * h[j];
      const bool neg = s < 0;
      unsigned __int128 u = neg ? static_cast<unsigned __int128>(-s) : static_cast<unsigned __int128>(s);
      const auto lo = static_cast<std::uint64_t>(u);
      const auto hi = static_cast<std::uint64_t>(u >> 64);
      mpz_class v = hi;
      v <<= 64;
      v += mpz_class(lo);
      out[k].num = neg ? mpz_class(-v) : v;
    } else {
      mpz_class s = 0;
      for (std::size_t j = 0; j < h.size(); ++j) s += p[j] * static_cast<long>(h[j]);
      out[k].num = s;
    }
    out[k].den = den;
  }
  if (meter != nullptr) meter->Charge(inst.size());
  return out;
}

inline void AddDifference(InequalitySystem& sys, std::span<const std::int64_t> hi, std::span<const std::int64_t> lo,
                          Relation rel) {
  std::vector<std::int64_t> v(hi.size());
  bool nonzero = false;
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = hi[j] - lo[j];
    nonzero = nonzero || v[j] != 0;
  }
  if (!nonzero) {
    if (rel == Relation::kEqZero) return;
    throw std::logic_error("strict constraint on a zero vector");
  }
  sys.Add(std::move(v), rel);
}

// Sampled difference pairs, sorted by their group value; consecutive
// relations are recorded (true = strictly less).
template <OrderedAbelianGroup G>
struct SortedDifferences {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<char> strict_step;
};

template <OrderedAbelianGroup G>
SortedDifferences<G> SortDifferences(const DistinctInstance<G>& inst, std::vector<std::pair<std::size_t, std::size_t>> pairs,
                                     ComparisonCounter& counter, std::uint64_t limit) {
  std::vector<Tagged<G>> diff(pairs.size());
  for (std::size_t a = 0; a < pairs.size(); ++a) diff[a] = inst.x[pairs[a].first] - inst.x[pairs[a].second];
  std::vector<std::size_t> idx(pairs.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  BudgetedLess<Tagged<G>> less{&counter, limit};
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return less(diff[a], diff[b]); });
  SortedDifferences<G> out;
  out.pairs.reserve(pairs.size());
  for (std::size_t a : idx) out.pairs.push_back(pairs[a]);
  out.strict_step.assign(idx.size(), 0);
  for (std::size_t a = 1; a < idx.size(); ++a) out.strict_step[a] = less(diff[idx[a - 1]], diff[idx[a]]) ? 1 : 0;
  return out;
}

// Chain constraints <g, d_{a} - d_{a-1}> >= 1 (or = 0) over sorted pairs.
template <OrderedAbelianGroup G>
void AddChain(InequalitySystem& sys, const DistinctInstance<G>& inst, const SortedDifferences<G>& sd) {
  const auto d = static_cast<std::size_t>(inst.d);
  std::vector<std::int64_t> prev(d), cur(d);
  for (std::size_t a = 0; a < sd.pairs.size(); ++a) {
    auto hi = inst.row(sd.pairs[a].first);
    auto lo = inst.row(sd.pairs[a].second);
    for (std::size_t j = 0; j < d; ++j) cur[j] = hi[j] - lo[j];
    if (a > 0) AddDifference(sys, cur, prev, sd.strict_step[a] ? Relation::kGeOne : Relation::kEqZero);
    prev.swap(cur);
  }
}

}  // namespace nsum_internal

// First phase: sample, order the sample, fit an approximate weight vector,
// and split all elements into value-contiguous buckets.
template <OrderedAbelianGroup G>
BucketPartition Phase1Partition(const DistinctInstance<G>& inst, const SortParams& params, int t, std::mt19937_64& rng,
                                ComparisonCounter& counter, std::uint64_t limit, WorkMeter* meter = nullptr) {
  using nsum_internal::AttemptAborted;
  const std::size_t n = inst.size();
  BucketPartition part;
  part.bucket_of.assign(n, 0);
  if (n == 0) return part;
  nsum_internal::BudgetedLess<Tagged<G>> less{&counter, limit};
  const double logn = nsum_internal::Log2N(n);
  const double logc = std::pow(logn, params.c);

  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (less(inst.x[i], inst.x[lo])) lo = i;
    if (less(inst.x[hi], inst.x[i])) hi = i;
  }
  std::bernoulli_distribution coin(std::min(1.0, 1.0 / logc));
  for (std::size_t i = 0; i < n; ++i) {
    if (i == lo || i == hi || coin(rng)) part.sample.push_back(i);
  }
  std::sort(part.sample.begin(), part.sample.end(),
            [&](std::size_t a, std::size_t b) { return less(inst.x[a], inst.x[b]); });

  InequalitySystem sys;
  sys.dim = inst.d;
  for (std::size_t k = 1; k < part.sample.size(); ++k) {
    nsum_internal::AddDifference(sys, inst.row(part.sample[k]), inst.row(part.sample[k - 1]), Relation::kGeOne);
  }
  if (n >= 2) {
    const auto s = static_cast<std::size_t>(std::ceil(static_cast<double>(t) * static_cast<double>(n) / logc));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(s);
    while (pairs.size() < s) {
      const std::size_t a = pick(rng);
      const std::size_t b = pick(rng);
      if (a != b) pairs.emplace_back(a, b);
    }
    // Label queries: the sign of every sampled difference.
    for (const auto& [a, b] : pairs) {
      const bool neg = less(inst.x[a], inst.x[b]);
      nsum_internal::AddDifference(sys, inst.row(a), inst.row(b), neg ? Relation::kLeMinusOne : Relation::kGeOne);
    }
    auto sd = nsum_internal::SortDifferences(inst, std::move(pairs), counter, limit);
    nsum_internal::AddChain(sys, inst, sd);
  }
  FeasibilityOptions fo;
  fo.meter = meter;
  const RationalVector g = SolveFeasibility(sys, fo);
  const auto approx = nsum_internal::ApproximateValues(inst, g, meter);
  const auto order = RoundAndRadixSort(approx, BitBudget(approx), meter);

  part.stride = params.bucket_stride > 0 ? params.bucket_stride
                                         : static_cast<std::size_t>(std::ceil(std::pow(logn, params.c + 3.0)));
  for (std::size_t k = 0; k < part.sample.size(); k += part.stride) part.boundaries.push_back(part.sample[k]);
  const std::size_t buckets = part.boundaries.size();
  std::vector<std::int32_t> boundary_id(n, -1);
  for (std::size_t j = 0; j < buckets; ++j) boundary_id[part.boundaries[j]] = static_cast<std::int32_t>(j);

  auto in_bucket = [&](std::size_t i, std::size_t j) {
    if (j > 0 && less(inst.x[i], inst.x[part.boundaries[j]])) return false;
    if (j + 1 < buckets && !less(inst.x[i], inst.x[part.boundaries[j + 1]])) return false;
    return true;
  };
  std::size_t cur = 0;
  for (std::size_t i : order) {
    if (boundary_id[i] >= 0) {
      cur = static_cast<std::size_t>(boundary_id[i]);
      part.bucket_of[i] = static_cast<std::uint32_t>(cur);
      continue;
    }
    std::size_t j = cur;
    if (!in_bucket(i, j)) {
      ++part.repaired;
      if (j > 0 && in_bucket(i, j - 1)) {
        j = j - 1;
      } else if (j + 1 < buckets && in_bucket(i, j + 1)) {
        j = j + 1;
      } else {
        // Largest j with boundary_j <= x_i; boundary_0 is the minimum.
        std::size_t a = 0, b = buckets;
        while (b - a > 1) {
          const std::size_t mid = (a + b) / 2;
          if (less(inst.x[i], inst.x[part.boundaries[mid]])) {
            b = mid;
          } else {
            a = mid;
          }
        }
        j = a;
      }
    }
    part.bucket_of[i] = static_cast<std::uint32_t>(j);
  }
  part.buckets.assign(buckets, {});
  for (std::size_t i = 0; i < n; ++i) part.buckets[part.bucket_of[i]].push_back(i);
  return part;
}

// Second phase: fit a weight vector on within-bucket differences, order all
// elements by (bucket, approximate value, index), then insertion sort each
// bucket with true comparisons.
template <OrderedAbelianGroup G>
std::vector<std::size_t> Phase2SortBuckets(const DistinctInstance<G>& inst, const BucketPartition& part,
                                           const SortParams& params, int t, std::mt19937_64& rng,
                                           ComparisonCounter& counter, std::uint64_t limit, WorkMeter* meter = nullptr,
                                           std::size_t* moves = nullptr) {
  const std::size_t n = inst.size();
  nsum_internal::BudgetedLess<Tagged<G>> less{&counter, limit};
  const double logc = std::pow(nsum_internal::Log2N(n), params.c);

  std::vector<double> weight(part.num_buckets(), 0.0);
  bool any = false;
  for (std::size_t j = 0; j < part.num_buckets(); ++j) {
    const double z = static_cast<double>(part.buckets[j].size());
    if (z >= 2) {
      weight[j] = z * z;
      any = true;
    }
  }
  InequalitySystem sys;
  sys.dim = inst.d;
  if (any) {
    const auto s = static_cast<std::size_t>(std::ceil(static_cast<double>(t) * static_cast<double>(n) / logc));
    std::discrete_distribution<std::size_t> bucket(weight.begin(), weight.end());
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(s);
    while (pairs.size() < s) {
      const auto& members = part.buckets[bucket(rng)];
      std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
      const std::size_t a = pick(rng);
      const std::size_t b = pick(rng);
      if (a != b) pairs.emplace_back(members[a], members[b]);
    }
    auto sd = nsum_internal::SortDifferences(inst, std::move(pairs), counter, limit);
    nsum_internal::AddChain(sys, inst, sd);
  }
  FeasibilityOptions fo;
  fo.meter = meter;
  const RationalVector g = SolveFeasibility(sys, fo);
  const auto approx = nsum_internal::ApproximateValues(inst, g, meter);
  const auto by_value = RoundAndRadixSort(approx, BitBudget(approx), meter);
  auto perm = CountingSortBy(by_value, part.bucket_of, static_cast<std::uint32_t>(part.num_buckets()), meter);

  std::size_t moved = 0;
  std::size_t begin = 0;
  while (begin < n) {
    std::size_t end = begin;
    const std::uint32_t j = part.bucket_of[perm[begin]];
    while (end < n && part.bucket_of[perm[end]] == j) ++end;
    for (std::size_t a = begin + 1; a < end; ++a) {
      const std::size_t item = perm[a];
      std::size_t b = a;
      while (b > begin && less(inst.x[item], inst.x[perm[b - 1]])) {
        perm[b] = perm[b - 1];
        --b;
        ++moved;
      }
      perm[b] = item;
    }
    if (meter != nullptr) meter->Charge(end - begin);
    begin = end;
  }
  if (moves != nullptr) *moves += moved;
  return perm;
}

// Accepts `candidate` if it sorts `values` strictly increasingly; otherwise
// runs `attempt(k)` for k = 1..attempts (each may throw AttemptAborted) and
// falls back to a baseline sort. The result is always correct.
template <class T, class Attempt>
std::vector<std::size_t> VerifyAndRetry(const std::vector<T>& values, std::vector<std::size_t> candidate,
                                        Attempt&& attempt, int attempts, ComparisonCounter& counter,
                                        SortReport* report) {
  auto verify = [&](const std::vector<std::size_t>& perm) {
    if (perm.size() != values.size()) return false;
    std::vector<char> seen(values.size(), 0);
    for (std::size_t i : perm) {
      if (i >= values.size() || seen[i]) return false;
      seen[i] = 1;
    }
    for (std::size_t k = 1; k < perm.size(); ++k) {
      counter.Add();
      if (!(values[perm[k - 1]] < values[perm[k]])) return false;
    }
    return true;
  };
  if (!candidate.empty() || values.empty()) {
    if (verify(candidate)) return candidate;
    if (report != nullptr) report->fallback_reason = "candidate permutation failed verification";
  }
  for (int k = 1; k <= attempts; ++k) {
    if (report != nullptr) {
      ++report->attempts;
      if (k > 1) ++report->restarts;
    }
    try {
      auto perm = attempt(k);
      if (verify(perm)) return perm;
      if (report != nullptr) report->fallback_reason = "attempt output failed verification";
    } catch (const nsum_internal::AttemptAborted& e) {
      if (report != nullptr) report->fallback_reason = e.reason;
    }
  }
  if (report != nullptr) report->fell_back = true;
  return SortBaseline(values, counter);
}

namespace nsum_internal {

template <OrderedAbelianGroup G>
std::vector<std::size_t> RoundingSort(const NSumBatch& x, const GeneratorBasis<G>& basis, const SortOptions& opts,
                                      ComparisonCounter& counter, SortReport& report) {
  const std::size_t n = x.size();
  WorkMeter* meter = opts.meter;
  const auto dedup = DedupVectors(x, meter);
  const std::size_t m = dedup.representative.size();
  report.distinct = m;

  DistinctInstance<G> inst;
  inst.d = x.dimension() + 1;
  inst.x.reserve(m);
  inst.h.reserve(m * static_cast<std::size_t>(inst.d));
  {
    NSumBatch reps(x.dimension(), x.bound());
    reps.Reserve(m);
    for (std::size_t r : dedup.representative) reps.Add(x[r]);
    const auto values = EvaluateAll(reps, basis, meter);
    for (std::size_t k = 0; k < m; ++k) {
      inst.x.push_back({values[k], static_cast<std::int64_t>(k) + 1});
      auto row = reps[k];
      inst.h.insert(inst.h.end(), row.begin(), row.end());
      inst.h.push_back(static_cast<std::int64_t>(k) + 1);
    }
  }

  const int t = std::max(1, x.dimension());
  const auto cap = static_cast<std::uint64_t>(opts.params.work_cap * static_cast<double>(t) * static_cast<double>(m)) + 64;
  std::mt19937_64 rng(opts.seed);
  auto attempt = [&](int) {
    const std::uint64_t limit = counter.count() + cap;
    auto part = Phase1Partition(inst, opts.params, t, rng, counter, limit, meter);
    report.buckets = part.num_buckets();
    report.repaired += part.repaired;
    return Phase2SortBuckets(inst, part, opts.params, t, rng, counter, limit, meter, &report.insertion_moves);
  };
  const auto perm_u = VerifyAndRetry(inst.x, {}, attempt, opts.params.attempts, counter, &report);

  // Expand multiplicities; equal group values across distinct vectors are
  // merged back into input order.
  std::vector<std::vector<std::size_t>> members(m);
  for (std::size_t i = 0; i < n; ++i) members[dedup.group[i]].push_back(i);
  std::vector<std::size_t> perm;
  perm.reserve(n);
  std::size_t run_start = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t u = perm_u[k];
    if (k > 0) {
      counter.Add();
      if (inst.x[perm_u[k - 1]].value < inst.x[u].value) {
        if (perm.size() - run_start > members[perm_u[k - 1]].size()) {
          std::sort(perm.begin() + static_cast<std::ptrdiff_t>(run_start), perm.end());
        }
        run_start = perm.size();
      }
    }
    perm.insert(perm.end(), members[u].begin(), members[u].end());
  }
  std::sort(perm.begin() + static_cast<std::ptrdiff_t>(run_start), perm.end());
  return perm;
}

}  // namespace nsum_internal

// Stable sort of the evaluated n-sums; returns input indices in sorted order.
template <OrderedAbelianGroup G>
std::vector<std::size_t> SortNSums(const NSumBatch& x, const GeneratorBasis<G>& basis, SortBackend backend,
                                   const SortOptions& opts = {}, SortReport* report = nullptr) {
  SortReport local;
  SortReport& rep = report != nullptr ? *report : local;
  rep = SortReport();
  rep.requested = backend;
  ComparisonCounter counter;
  counter.AttachMeter(opts.meter);
  const std::size_t n = x.size();
  if (n > 0 && static_cast<std::size_t>(x.dimension()) != basis.size()) {
    throw std::invalid_argument("n-sums and basis differ in dimension");
  }

  SortBackend chosen = backend;
  if (backend == SortBackend::kAuto) {
    chosen = SortBackend::kBaseline;
    if (n >= opts.params.small_input_threshold) {
      if constexpr (std::is_same_v<G, Int64>) {
        chosen = RadixApplicable(x, basis) ? SortBackend::kRadix : SortBackend::kRounding;
      } else if constexpr (!std::is_same_v<G, BigInt>) {
        chosen = SortBackend::kRounding;
      }
    }
  }
  if (chosen == SortBackend::kRounding && n < opts.params.small_input_threshold) {
    chosen = SortBackend::kBaseline;
    rep.fallback_reason = "input below the small-input threshold";
  }

  std::vector<std::size_t> perm;
  switch (chosen) {
    case SortBackend::kRadix:
      if constexpr (std::is_same_v<G, Int64>) {
        perm = SortRadixSmallInts(x, basis, opts.meter);
      } else {
        throw PreconditionViolation("radix backend requires int64 weights");
      }
      break;
    case SortBackend::kRounding:
      perm = nsum_internal::RoundingSort(x, basis, opts, counter, rep);
      break;
    default:
      perm = SortBaseline(EvaluateAll(x, basis, opts.meter), counter);
      break;
  }
  rep.used = rep.fell_back ? SortBackend::kBaseline : chosen;
  rep.comparisons = counter.count();
  return perm;
}

}  // namespace rankenum

#endif  // RANKENUM_NSUM_SORT_HPP_
