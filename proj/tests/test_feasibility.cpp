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

#include "doctest.h"
#include "rankenum/feasibility.hpp"

using namespace rankenum;

TEST_CASE("one-dimensional systems") {
  InequalitySystem s;
  s.dim = 1;
  s.Add({1}, Relation::kLeMinusOne);
  const auto x = SolveFeasibility(s);
  CHECK(Satisfies(s, x));
  CHECK(x.x[0] <= -1);
  s.Add({1}, Relation::kGeOne);
  CHECK_THROWS_AS(SolveFeasibility(s), Infeasible);
}

TEST_CASE("equalities are respected exactly") {
  InequalitySystem s;
  s.dim = 3;
  s.Add({1, -1, 0}, Relation::kEqZero);
  s.Add({0, 1, 2}, Relation::kGeOne);
  s.Add({1, 0, -3}, Relation::kLeMinusOne);
  const auto x = SolveFeasibility(s);
  CHECK(Satisfies(s, x));
  CHECK(x.x[0] == x.x[1]);
  InequalitySystem bad;
  bad.dim = 2;
  bad.Add({1, 0}, Relation::kEqZero);
  bad.Add({2, 0}, Relation::kGeOne);
  CHECK_THROWS_AS(SolveFeasibility(bad), Infeasible);
}

TEST_CASE("empty system is trivially feasible") {
  InequalitySystem s;
  s.dim = 4;
  const auto x = SolveFeasibility(s);
  CHECK(x.x.size() == 4);
  CHECK(Satisfies(s, x));
}

TEST_CASE("systems from a hidden point are solved exactly") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<std::int64_t> coef(-6, 6);
  for (int iter = 0; iter < 300; ++iter) {
    const int d = 1 + static_cast<int>(rng() % 4);
    std::vector<std::int64_t> hidden(static_cast<std::size_t>(d));
    for (auto& v : hidden) v = coef(rng);
    InequalitySystem s;
    s.dim = d;
    const int rows = 1 + static_cast<int>(rng() % 40);
    for (int r = 0; r < rows; ++r) {
      std::vector<std::int64_t> h(static_cast<std::size_t>(d));
      std::int64_t dot = 0;
      for (int j = 0; j < d; ++j) {
        h[static_cast<std::size_t>(j)] = coef(rng);
        dot += h[static_cast<std::size_t>(j)] * hidden[static_cast<std::size_t>(j)];
      }
      if (dot == 0) {
        s.Add(h, Relation::kEqZero);
      } else {
        s.Add(h, dot < 0 ? Relation::kLeMinusOne : Relation::kGeOne);
      }
    }
    for (bool exact : {false, true}) {
      FeasibilityOptions o;
      o.exact_only = exact;
      const auto x = SolveFeasibility(s, o);
      CHECK(Satisfies(s, x));
    }
  }
}

TEST_CASE("contradictory random systems are reported infeasible") {
  std::mt19937_64 rng(52);
  std::uniform_int_distribution<std::int64_t> coef(-5, 5);
  for (int iter = 0; iter < 100; ++iter) {
    const int d = 1 + static_cast<int>(rng() % 3);
    InequalitySystem s;
    s.dim = d;
    std::vector<std::int64_t> h(static_cast<std::size_t>(d));
    for (auto& v : h) v = coef(rng);
    if (std::all_of(h.begin(), h.end(), [](std::int64_t v) { return v == 0; })) h[0] = 1;
    s.Add(h, Relation::kGeOne);
    for (auto& v : h) v = -v;
    s.Add(h, Relation::kGeOne);
    CHECK_THROWS_AS(SolveFeasibility(s), Infeasible);
  }
}

TEST_CASE("facet bits and solution size") {
  InequalitySystem s;
  s.dim = 2;
  s.Add({1023, -1}, Relation::kGeOne);
  CHECK(s.FacetBits() >= 10);
  const auto x = SolveFeasibility(s);
  CHECK(Satisfies(s, x));
  CHECK(x.MaxBits() < 64);
}
