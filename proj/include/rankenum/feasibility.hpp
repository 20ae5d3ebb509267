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

// Rational feasibility for small-dimensional systems of the form
// <x, h> <= -1, <x, h> = 0, <x, h> >= 1 with integer h.

#ifndef RANKENUM_FEASIBILITY_HPP_
#define RANKENUM_FEASIBILITY_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rankenum/errors.hpp"
#include "rankenum/group.hpp"

namespace rankenum {

enum class Relation { kLeMinusOne, kEqZero, kGeOne };

struct Constraint {
  std::vector<std::int64_t> h;
  Relation rel = Relation::kGeOne;
};

struct InequalitySystem {
  int dim = 0;
  std::vector<Constraint> rows;

  void Add(std::vector<std::int64_t> h, Relation rel) { rows.push_back({std::move(h), rel}); }
  // Largest encoding length (bits) of a single constraint.
  std::size_t FacetBits() const;
};

struct RationalVector {
  std::vector<mpq_class> x;
  // Largest numerator or denominator bit length.
  std::size_t MaxBits() const;
};

struct FeasibilityOptions {
  bool exact_only = false;
  WorkMeter* meter = nullptr;
};

struct FeasibilityStats {
  bool float_path = false;
  int rounds = 0;
  std::size_t working_set = 0;
  std::size_t equalities_rank = 0;
};

// Exact substitution check.
bool Satisfies(const InequalitySystem& system, const RationalVector& x);

// Returns a point satisfying every constraint exactly; throws Infeasible.
//
// Equalities are eliminated through an integer nullspace basis. The remaining
// strict rows a.z <= -1 are handled by a cutting-plane max-margin LP: a
// floating-point pass proposes an integer point that is accepted only after
// exact verification, with an exact rational simplex behind it.
RationalVector SolveFeasibility(const InequalitySystem& system, const FeasibilityOptions& options = {},
                                FeasibilityStats* stats = nullptr);

}  // namespace rankenum

#endif  // RANKENUM_FEASIBILITY_HPP_
