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

#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "rankenum/rounding.hpp"

using namespace rankenum;

namespace {

Fraction F(long n, long d) { return Fraction{mpz_class(n), mpz_class(d)}; }

mpq_class Q(const Fraction& f) {
  mpq_class q(f.num, f.den);
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("floor conversion examples") {
  CHECK(FloorScaled(F(1, 2), 2) == 32);
  CHECK(FloorScaled(F(2, 3), 2) == 42);
  CHECK(FloorScaled(F(1, 2), 5) == FloorScaled(F(2, 4), 5));
  CHECK(FloorScaled(F(-1, 2), 2) == -32);
  CHECK(BitLength(mpz_class(0)) == 0);
  CHECK(BitLength(mpz_class(-8)) == 4);
  CHECK(BitBudget({F(3, 4), F(-17, 2)}) == 5);
}

TEST_CASE("radix sorts are stable and match std::stable_sort") {
  std::mt19937_64 rng(61);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<std::int64_t> keys(1 + rng() % 2000);
    const std::int64_t span = iter % 2 == 0 ? 10 : std::numeric_limits<std::int64_t>::max() / 2;
    std::uniform_int_distribution<std::int64_t> d(-span, span);
    for (auto& k : keys) k = d(rng);
    std::vector<std::size_t> want(keys.size());
    std::iota(want.begin(), want.end(), std::size_t{0});
    std::stable_sort(want.begin(), want.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    CHECK(RadixSortInt64(keys) == want);
    std::vector<mpz_class> big(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) big[i] = mpz_class(static_cast<long>(keys[i])) * mpz_class("1000000000000000000000");
    CHECK(RadixSortBig(big) == want);
  }
  CHECK(RadixSortInt64({}).empty());
}

TEST_CASE("counting sort keeps the given order within a key") {
  const std::vector<std::size_t> order{3, 0, 2, 1};
  const std::vector<std::uint32_t> key{1, 0, 1, 0};
  CHECK(CountingSortBy(order, key, 2) == std::vector<std::size_t>{3, 1, 0, 2});
}

TEST_CASE("random rationals sort like exact comparison") {
  std::mt19937_64 rng(62);
  std::uniform_int_distribution<long> num(-(1L << 62), (1L << 62));
  std::uniform_int_distribution<long> den(1, (1L << 62));
  std::vector<Fraction> v(10000);
  for (auto& f : v) f = F(num(rng), den(rng));
  // Some exact duplicates in other forms.
  for (std::size_t i = 0; i < 100; ++i) v[i + 100] = Fraction{v[i].num * 3, v[i].den * 3};
  const std::size_t b = BitBudget(v);
  CHECK(b <= 64);
  const auto perm = RoundAndRadixSort(v, b);
  std::vector<std::size_t> want(v.size());
  std::iota(want.begin(), want.end(), std::size_t{0});
  std::stable_sort(want.begin(), want.end(), [&](std::size_t a, std::size_t c) { return Q(v[a]) < Q(v[c]); });
  CHECK(perm == want);
}

TEST_CASE("strict order and equality survive the conversion") {
  std::mt19937_64 rng(63);
  for (int iter = 0; iter < 20000; ++iter) {
    const int bits = 1 + static_cast<int>(rng() % 20);
    const long hi = (1L << bits) - 1;
    std::uniform_int_distribution<long> num(-hi, hi), den(1, hi);
    const Fraction a = F(num(rng), den(rng));
    const Fraction c = iter % 4 == 0 ? Fraction{a.num * 2, a.den * 2} : F(num(rng), den(rng));
    const std::size_t b = BitBudget({a, c});
    const auto fa = FloorScaled(a, b);
    const auto fc = FloorScaled(c, b);
    const auto qa = Q(a), qc = Q(c);
    if (qa < qc) CHECK(fa < fc);
    if (qa == qc) CHECK(fa == fc);
    if (qc < qa) CHECK(fc < fa);
  }
}
