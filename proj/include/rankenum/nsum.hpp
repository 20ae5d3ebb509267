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

// n-sums: integer combinations sum_i alpha_i g_i over a fixed generator basis.

#ifndef RANKENUM_NSUM_HPP_
#define RANKENUM_NSUM_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rankenum/group.hpp"

namespace rankenum {

template <OrderedAbelianGroup G>
struct GeneratorBasis {
  std::vector<G> generators;
  std::size_t size() const { return generators.size(); }
};

struct NSum {
  std::vector<std::int64_t> coeffs;
  std::int64_t bound = 0;
};

// N coefficient vectors of dimension t stored row-major.
class NSumBatch {
 public:
  NSumBatch() = default;
  NSumBatch(int t, std::int64_t bound) : t_(t), bound_(bound) {}

  int dimension() const { return t_; }
  std::int64_t bound() const { return bound_; }
  std::size_t size() const { return t_ == 0 ? 0 : coeffs_.size() / static_cast<std::size_t>(t_); }

  void Reserve(std::size_t n) { coeffs_.reserve(n * static_cast<std::size_t>(t_)); }
  void Add(std::span<const std::int64_t> alpha) {
    if (static_cast<int>(alpha.size()) != t_) throw std::invalid_argument("n-sum dimension mismatch");
    coeffs_.insert(coeffs_.end(), alpha.begin(), alpha.end());
  }
  std::span<const std::int64_t> operator[](std::size_t i) const {
    return {coeffs_.data() + i * static_cast<std::size_t>(t_), static_cast<std::size_t>(t_)};
  }
  std::span<std::int64_t> mutable_row(std::size_t i) {
    return {coeffs_.data() + i * static_cast<std::size_t>(t_), static_cast<std::size_t>(t_)};
  }
  const std::vector<std::int64_t>& raw() const { return coeffs_; }

  static NSumBatch FromSums(std::span<const NSum> sums) {
    if (sums.empty()) return NSumBatch();
    NSumBatch batch(static_cast<int>(sums[0].coeffs.size()), sums[0].bound);
    batch.Reserve(sums.size());
    for (const NSum& s : sums) {
      if (s.coeffs.size() != sums[0].coeffs.size() || s.bound != sums[0].bound) {
        throw std::invalid_argument("n-sums do not share one basis and bound");
      }
      batch.Add(s.coeffs);
    }
    return batch;
  }

 private:
  int t_ = 0;
  std::int64_t bound_ = 0;
  std::vector<std::int64_t> coeffs_;
};

// table(k, i) = k * g_i for 1 <= k <= n.
template <OrderedAbelianGroup G>
class PrecomputeTable {
 public:
  PrecomputeTable(const GeneratorBasis<G>& basis, std::int64_t n) : n_(n), t_(basis.size()) {
    if (n <= 0) throw std::invalid_argument("precompute table needs n >= 1");
    if (t_ == 0) throw std::invalid_argument("empty generator basis");
    table_.reserve(static_cast<std::size_t>(n) * t_);
    table_.insert(table_.end(), basis.generators.begin(), basis.generators.end());
    for (std::int64_t k = 2; k <= n; ++k) {
      const std::size_t prev = static_cast<std::size_t>(k - 2) * t_;
      for (std::size_t i = 0; i < t_; ++i) table_.push_back(table_[prev + i] + basis.generators[i]);
    }
  }

  std::int64_t n() const { return n_; }
  std::size_t t() const { return t_; }
  // k in [1, n], i in [0, t).
  const G& at(std::int64_t k, std::size_t i) const {
    return table_[static_cast<std::size_t>(k - 1) * t_ + i];
  }

  G Eval(std::span<const std::int64_t> alpha) const {
    if (alpha.size() != t_) throw std::invalid_argument("n-sum dimension mismatch");
    G sum{};
    for (std::size_t i = 0; i < t_; ++i) {
      const std::int64_t a = alpha[i];
      if (a == 0) continue;
      if (a < 0 || a > n_) throw std::invalid_argument("coefficient outside precompute table range");
      sum = sum + at(a, i);
    }
    return sum;
  }

 private:
  std::int64_t n_;
  std::size_t t_;
  std::vector<G> table_;
};

template <OrderedAbelianGroup G>
G NSumEval(const NSum& s, const PrecomputeTable<G>& table) {
  if (s.bound > table.n()) throw std::invalid_argument("n-sum bound exceeds table");
  return table.Eval(s.coeffs);
}

// Direct evaluation without a table; accepts negative coefficients.
template <OrderedAbelianGroup G>
G NSumEvalDirect(std::span<const std::int64_t> alpha, const GeneratorBasis<G>& basis) {
  G sum{};
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] != 0) sum = sum + Multiply(alpha[i], basis.generators[i]);
  }
  return sum;
}

template <OrderedAbelianGroup G>
struct Distinctified {
  NSumBatch sums;
  GeneratorBasis<Tagged<G>> basis;
};

// Appends coefficient k (1-based input index) on the extra generator (0, 1).
template <OrderedAbelianGroup G>
Distinctified<G> Distinctify(const NSumBatch& sums, const GeneratorBasis<G>& basis) {
  if (sums.size() > 0 && static_cast<std::size_t>(sums.dimension()) != basis.size()) {
    throw std::invalid_argument("n-sums and basis differ in dimension");
  }
  const int t = static_cast<int>(basis.size());
  Distinctified<G> out{NSumBatch(t + 1, sums.bound() + static_cast<std::int64_t>(sums.size())), {}};
  out.basis.generators.reserve(basis.size() + 1);
  for (const G& g : basis.generators) out.basis.generators.push_back({g, 0});
  out.basis.generators.push_back({G{}, 1});
  out.sums.Reserve(sums.size());
  std::vector<std::int64_t> row(static_cast<std::size_t>(t) + 1);
  for (std::size_t k = 0; k < sums.size(); ++k) {
    auto src = sums[k];
    std::copy(src.begin(), src.end(), row.begin());
    row[static_cast<std::size_t>(t)] = static_cast<std::int64_t>(k) + 1;
    out.sums.Add(row);
  }
  return out;
}

template <OrderedAbelianGroup G>
Distinctified<G> Distinctify(std::span<const NSum> sums, const GeneratorBasis<G>& basis) {
  return Distinctify(NSumBatch::FromSums(sums), basis);
}

}  // namespace rankenum

#endif  // RANKENUM_NSUM_HPP_
