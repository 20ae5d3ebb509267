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

#include "rankenum/rounding.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace rankenum {

namespace {

constexpr int kDigitBits = 16;
constexpr std::size_t kBuckets = std::size_t{1} << kDigitBits;

// LSD passes over `words` 64-bit words per key, least significant word first.
std::vector<std::size_t> LsdSort(const std::vector<std::uint64_t>& data, std::size_t words, std::size_t n,
                                 WorkMeter* meter) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::size_t> next(n);
  std::vector<std::size_t> count(kBuckets);
  for (std::size_t w = 0; w < words; ++w) {
    for (int shift = 0; shift < 64; shift += kDigitBits) {
      std::fill(count.begin(), count.end(), 0);
      for (std::size_t i = 0; i < n; ++i) ++count[(data[i * words + w] >> shift) & (kBuckets - 1)];
      if (meter != nullptr) meter->Charge(n);
      if (std::find(count.begin(), count.end(), n) != count.end()) continue;  // digit constant
      std::size_t sum = 0;
      for (auto& c : count) {
        const std::size_t k = c;
        c = sum;
        sum += k;
      }
      for (std::size_t i : order) next[count[(data[i * words + w] >> shift) & (kBuckets - 1)]++] = i;
      order.swap(next);
      if (meter != nullptr) meter->Charge(n);
    }
  }
  return order;
}

}  // namespace

std::size_t BitLength(const mpz_class& v) { return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

std::size_t BitBudget(const std::vector<Fraction>& values) {
  std::size_t b = 1;
  for (const auto& f : values) b = std::max({b, BitLength(f.num), BitLength(f.den)});
  return b;
}

mpz_class FloorScaled(const Fraction& v, std::size_t b) {
  if (v.den <= 0) throw std::invalid_argument("fraction denominator must be positive");
  mpz_class scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), v.num.get_mpz_t(), 2 * (b + 1));
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), v.den.get_mpz_t());
  return q;
}

std::vector<std::size_t> RadixSortInt64(const std::vector<std::int64_t>& keys, WorkMeter* meter) {
  std::vector<std::uint64_t> data(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    data[i] = static_cast<std::uint64_t>(keys[i]) ^ (std::uint64_t{1} << 63);
  }
  return LsdSort(data, 1, keys.size(), meter);
}

std::vector<std::size_t> RadixSortBig(const std::vector<mpz_class>& keys, WorkMeter* meter) {
  const std::size_t n = keys.size();
  if (n == 0) return {};
  mpz_class lo = *std::min_element(keys.begin(), keys.end());
  std::vector<mpz_class> shifted(n);
  std::size_t words = 1;
  for (std::size_t i = 0; i < n; ++i) {
    shifted[i] = keys[i] - lo;
    words = std::max(words, (BitLength(shifted[i]) + 63) / 64);
  }
  std::vector<std::uint64_t> data(n * words, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t count = 0;
    mpz_export(&data[i * words], &count, -1, sizeof(std::uint64_t), 0, 0, shifted[i].get_mpz_t());
  }
  if (meter != nullptr) meter->Charge(n);
  return LsdSort(data, words, n, meter);
}

std::vector<std::size_t> CountingSortBy(const std::vector<std::size_t>& order, const std::vector<std::uint32_t>& key,
                                        std::uint32_t key_range, WorkMeter* meter) {
  std::vector<std::size_t> count(static_cast<std::size_t>(key_range) + 1, 0);
  for (std::size_t i : order) ++count[key[i] + 1];
  for (std::size_t k = 1; k < count.size(); ++k) count[k] += count[k - 1];
  std::vector<std::size_t> out(order.size());
  for (std::size_t i : order) out[count[key[i]]++] = i;
  if (meter != nullptr) meter->Charge(order.size());
  return out;
}

std::vector<std::size_t> RoundAndRadixSort(const std::vector<Fraction>& values, std::size_t b, WorkMeter* meter) {
  std::vector<mpz_class> keys(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) keys[i] = FloorScaled(values[i], b);
  if (meter != nullptr) meter->Charge(values.size());
  return RadixSortBig(keys, meter);
}

}  // namespace rankenum
