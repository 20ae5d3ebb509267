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

#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "rankenum/nsum_sort.hpp"
#include "support.hpp"

using namespace rankenum;
using namespace rankenum::testing;

namespace {

template <class G>
std::vector<G> Values(const NSumBatch& x, const GeneratorBasis<G>& basis) {
  std::vector<G> v;
  for (std::size_t i = 0; i < x.size(); ++i) v.push_back(NSumEvalDirect(x[i], basis));
  return v;
}

template <class G>
std::vector<std::size_t> StableOracle(const NSumBatch& x, const GeneratorBasis<G>& basis) {
  const auto v = Values(x, basis);
  std::vector<std::size_t> p(v.size());
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::stable_sort(p.begin(), p.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  return p;
}

NSumBatch RandomBatch(std::mt19937_64& rng, int t, std::size_t n, std::int64_t bound) {
  NSumBatch x(t, bound);
  std::vector<std::int64_t> row(static_cast<std::size_t>(t));
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t left = bound;
    for (auto& c : row) {
      c = Uniform(rng, 0, std::min<std::int64_t>(left, bound / t + 1));
      left -= c;
    }
    x.Add(row);
  }
  return x;
}

SortOptions Forced(std::uint64_t seed) {
  SortOptions o;
  o.seed = seed;
  o.params.small_input_threshold = 0;
  return o;
}

template <class G>
DistinctInstance<G> MakeInstance(const NSumBatch& x, const GeneratorBasis<G>& basis) {
  DistinctInstance<G> inst;
  inst.d = x.dimension() + 1;
  const auto v = Values(x, basis);
  for (std::size_t k = 0; k < x.size(); ++k) {
    inst.x.push_back({v[k], static_cast<std::int64_t>(k) + 1});
    const auto row = x[k];
    inst.h.insert(inst.h.end(), row.begin(), row.end());
    inst.h.push_back(static_cast<std::int64_t>(k) + 1);
  }
  return inst;
}

}  // namespace

TEST_CASE("integer example") {
  NSumBatch x(1, 3);
  x.Add(std::vector<std::int64_t>{3});
  x.Add(std::vector<std::int64_t>{1});
  x.Add(std::vector<std::int64_t>{2});
  const GeneratorBasis<Int64> basis{{Int64(1)}};
  for (auto b : {SortBackend::kAuto, SortBackend::kBaseline, SortBackend::kRadix, SortBackend::kRounding}) {
    CHECK(SortNSums(x, basis, b) == std::vector<std::size_t>{1, 2, 0});
    CHECK(SortNSums(x, basis, b, Forced(1)) == std::vector<std::size_t>{1, 2, 0});
  }
}

TEST_CASE("all-equal sums give the identity") {
  NSumBatch x(2, 4);
  for (int i = 0; i < 50; ++i) x.Add(std::vector<std::int64_t>{1, 2});
  const GeneratorBasis<Int64> basis{{Int64(5), Int64(-2)}};
  std::vector<std::size_t> id(50);
  std::iota(id.begin(), id.end(), std::size_t{0});
  for (auto b : {SortBackend::kBaseline, SortBackend::kRadix, SortBackend::kRounding}) {
    CHECK(SortNSums(x, basis, b, Forced(2)) == id);
  }
  // Distinct vectors with equal values keep their input order.
  NSumBatch y(2, 4);
  y.Add(std::vector<std::int64_t>{0, 0});
  y.Add(std::vector<std::int64_t>{2, 0});
  y.Add(std::vector<std::int64_t>{0, 1});
  y.Add(std::vector<std::int64_t>{1, 0});
  const GeneratorBasis<Int64> eq{{Int64(1), Int64(2)}};
  CHECK(SortNSums(y, eq, SortBackend::kRounding, Forced(3)) == std::vector<std::size_t>{0, 3, 1, 2});
}

TEST_CASE("lexicographic pairs with three generators match baseline") {
  std::mt19937_64 rng(71);
  const GeneratorBasis<LexVector> basis{{LexVector{1, -3}, LexVector{0, 7}, LexVector{1, 2}}};
  const auto x = RandomBatch(rng, 3, 10000, 60);
  SortReport rep;
  SortOptions o;
  o.seed = 9;
  const auto perm = SortNSums(x, basis, SortBackend::kRounding, o, &rep);
  CHECK(perm == StableOracle(x, basis));
  CHECK(rep.used == SortBackend::kRounding);
  CHECK_FALSE(rep.fell_back);
  CHECK(rep.distinct <= x.size());
}

TEST_CASE("rounding backend on random small instances") {
  std::mt19937_64 rng(72);
  for (int iter = 0; iter < 60; ++iter) {
    const int t = static_cast<int>(Uniform(rng, 1, 4));
    GeneratorBasis<Int64> basis;
    for (int j = 0; j < t; ++j) basis.generators.push_back(Int64(Uniform(rng, -20, 20)));
    const auto x = RandomBatch(rng, t, static_cast<std::size_t>(Uniform(rng, 1, 400)), Uniform(rng, 1, 30));
    const auto want = StableOracle(x, basis);
    CHECK(SortNSums(x, basis, SortBackend::kRounding, Forced(rng())) == want);
    CHECK(SortNSums(x, basis, SortBackend::kRadix) == want);
    CHECK(SortNSums(x, basis, SortBackend::kBaseline) == want);
  }
}

TEST_CASE("big integer generators") {
  std::mt19937_64 rng(73);
  const GeneratorBasis<BigInt> basis{{BigInt("123456789012345678901234567890"), BigInt(-7), BigInt("-99999999999999999999")}};
  const auto x = RandomBatch(rng, 3, 500, 12);
  CHECK(SortNSums(x, basis, SortBackend::kRounding, Forced(4)) == StableOracle(x, basis));
  CHECK(SortNSums(x, basis, SortBackend::kAuto) == StableOracle(x, basis));
  CHECK_THROWS_AS(SortNSums(x, basis, SortBackend::kRadix), PreconditionViolation);
}

TEST_CASE("dedup merges equal vectors") {
  NSumBatch x(2, 5);
  x.Add(std::vector<std::int64_t>{1, 2});
  x.Add(std::vector<std::int64_t>{0, 1});
  x.Add(std::vector<std::int64_t>{1, 2});
  const auto d = DedupVectors(x);
  CHECK(d.representative == std::vector<std::size_t>{0, 1});
  CHECK(d.group == std::vector<std::uint32_t>{0, 1, 0});
  CHECK(d.multiplicity == std::vector<std::size_t>{2, 1});

  std::mt19937_64 rng(74);
  const auto y = RandomBatch(rng, 3, 2000, 6);
  const auto e = DedupVectors(y);
  std::set<std::vector<std::int64_t>> uniq;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto row = y[i];
    uniq.insert(std::vector<std::int64_t>(row.begin(), row.end()));
    const auto rep = y[e.representative[e.group[i]]];
    CHECK(std::equal(row.begin(), row.end(), rep.begin(), rep.end()));
  }
  CHECK(e.representative.size() == uniq.size());
  CHECK(std::accumulate(e.multiplicity.begin(), e.multiplicity.end(), std::size_t{0}) == y.size());
  NSumBatch distinct(1, 10);
  for (std::int64_t i = 0; i < 5; ++i) distinct.Add(std::vector<std::int64_t>{i});
  const auto f = DedupVectors(distinct);
  CHECK(f.representative == std::vector<std::size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("radix backend") {
  std::mt19937_64 rng(75);
  const GeneratorBasis<Int64> basis{{Int64(3), Int64(5)}};
  const auto x = RandomBatch(rng, 2, 1000, 10);
  CHECK(SortNSums(x, basis, SortBackend::kRadix) == StableOracle(x, basis));
  NSumBatch one(2, 10);
  one.Add(std::vector<std::int64_t>{1, 1});
  CHECK(SortNSums(one, basis, SortBackend::kRadix) == std::vector<std::size_t>{0});
  NSumBatch neg(1, 5);
  for (std::int64_t c : {2, 5, 0, 3}) neg.Add(std::vector<std::int64_t>{c});
  CHECK(SortNSums(neg, GeneratorBasis<Int64>{{Int64(-2)}}, SortBackend::kRadix) ==
        std::vector<std::size_t>{1, 3, 0, 2});
  const GeneratorBasis<Int64> huge{{Int64(std::int64_t{1} << 40)}};
  CHECK_FALSE(RadixApplicable(neg, huge));
  CHECK_THROWS_AS(SortRadixSmallInts(neg, huge), PreconditionViolation);
}

TEST_CASE("phase one buckets respect their boundaries") {
  std::mt19937_64 rng(76);
  for (int iter = 0; iter < 20; ++iter) {
    const GeneratorBasis<Int64> basis{{Int64(Uniform(rng, -50, 50)), Int64(Uniform(rng, -50, 50)), Int64(17)}};
    const auto x = RandomBatch(rng, 3, 3000, 40);
    const auto inst = MakeInstance(x, basis);
    SortParams p;
    p.bucket_stride = static_cast<std::size_t>(Uniform(rng, 2, 30));
    ComparisonCounter counter;
    const auto part = Phase1Partition(inst, p, 3, rng, counter, std::numeric_limits<std::uint64_t>::max());
    REQUIRE(part.num_buckets() >= 1);
    for (std::size_t j = 0; j < part.num_buckets(); ++j) {
      for (std::size_t i : part.buckets[j]) {
        CHECK(part.bucket_of[i] == j);
        CHECK(inst.x[part.boundaries[j]] <= inst.x[i]);
        if (j + 1 < part.num_buckets()) CHECK(inst.x[i] < inst.x[part.boundaries[j + 1]]);
      }
    }
    std::size_t moves = 0;
    const auto perm = Phase2SortBuckets(inst, part, p, 3, rng, counter, std::numeric_limits<std::uint64_t>::max(),
                                        nullptr, &moves);
    std::vector<std::size_t> want(inst.size());
    std::iota(want.begin(), want.end(), std::size_t{0});
    std::sort(want.begin(), want.end(), [&](std::size_t a, std::size_t b) { return inst.x[a] < inst.x[b]; });
    CHECK(perm == want);
  }
}

TEST_CASE("one generator leaves little for insertion sort") {
  std::mt19937_64 rng(77);
  NSumBatch x(1, 1000);
  for (std::int64_t i = 0; i < 500; ++i) x.Add(std::vector<std::int64_t>{Uniform(rng, 0, 1000)});
  SortReport rep;
  const auto perm = SortNSums(x, GeneratorBasis<Int64>{{Int64(3)}}, SortBackend::kRounding, Forced(5), &rep);
  CHECK(perm == StableOracle(x, GeneratorBasis<Int64>{{Int64(3)}}));
  CHECK(rep.insertion_moves < x.size());
}

TEST_CASE("verify and retry") {
  const std::vector<Int64> v{Int64(4), Int64(1), Int64(3)};
  ComparisonCounter c;
  int calls = 0;
  auto attempt = [&](int) {
    ++calls;
    return std::vector<std::size_t>{0, 1, 2};
  };
  const auto ok = VerifyAndRetry(v, {1, 2, 0}, attempt, 3, c, nullptr);
  CHECK(ok == std::vector<std::size_t>{1, 2, 0});
  CHECK(c.count() == 2);
  CHECK(calls == 0);
  SortReport rep;
  const auto fixed = VerifyAndRetry(v, {0, 1, 2}, attempt, 3, c, &rep);
  CHECK(fixed == std::vector<std::size_t>{1, 2, 0});
  CHECK(calls == 3);
  CHECK(rep.fell_back);
  CHECK(rep.restarts == 2);
}

TEST_CASE("exhausted comparison budget falls back to baseline") {
  std::mt19937_64 rng(78);
  const GeneratorBasis<Int64> basis{{Int64(7), Int64(-3), Int64(11)}};
  const auto x = RandomBatch(rng, 3, 5000, 50);
  SortOptions o;
  o.seed = 1;
  o.params.work_cap = 0.0;
  SortReport rep;
  CHECK(SortNSums(x, basis, SortBackend::kRounding, o, &rep) == StableOracle(x, basis));
  CHECK(rep.fell_back);
  CHECK(rep.used == SortBackend::kBaseline);
  CHECK(rep.attempts == o.params.attempts);
  CHECK_FALSE(rep.fallback_reason.empty());
}

TEST_CASE("small inputs use the baseline and report why") {
  NSumBatch x(1, 3);
  x.Add(std::vector<std::int64_t>{1});
  SortReport rep;
  SortNSums(x, GeneratorBasis<Int64>{{Int64(1)}}, SortBackend::kRounding, {}, &rep);
  CHECK(rep.used == SortBackend::kBaseline);
  CHECK(rep.fallback_reason == "input below the small-input threshold");
  CHECK(ParseBackend("radix") == SortBackend::kRadix);
  CHECK_THROWS_AS(ParseBackend("quick"), std::invalid_argument);
}
