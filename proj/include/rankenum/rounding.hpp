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

// Stable LSD radix sorts and the floor conversion of bounded rationals to
// integers that keeps their order.

#ifndef RANKENUM_ROUNDING_HPP_
#define RANKENUM_ROUNDING_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rankenum/group.hpp"

namespace rankenum {

// num/den with den > 0; not necessarily in lowest terms.
struct Fraction {
  mpz_class num;
  mpz_class den = 1;
};

std::size_t BitLength(const mpz_class& v);

// Max bit length over all numerators and denominators.
std::size_t BitBudget(const std::vector<Fraction>& values);

// floor(num * 4^(b+1) / den).
mpz_class FloorScaled(const Fraction& v, std::size_t b);

// Stable sorts; each returns the permutation (indices in sorted order).
std::vector<std::size_t> RadixSortInt64(const std::vector<std::int64_t>& keys, WorkMeter* meter = nullptr);
std::vector<std::size_t> RadixSortBig(const std::vector<mpz_class>& keys, WorkMeter* meter = nullptr);
// Stable counting sort of `order` by small non-negative keys.
std::vector<std::size_t> CountingSortBy(const std::vector<std::size_t>& order, const std::vector<std::uint32_t>& key,
                                        std::uint32_t key_range, WorkMeter* meter = nullptr);

// Converts each value with FloorScaled(., b) and radix sorts. Values of at
// most b bits keep their strict order and equal values tie.
std::vector<std::size_t> RoundAndRadixSort(const std::vector<Fraction>& values, std::size_t b,
                                           WorkMeter* meter = nullptr);

}  // namespace rankenum

#endif  // RANKENUM_ROUNDING_HPP_
