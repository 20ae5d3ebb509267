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

// Ordered abelian groups used as weight domains, plus comparison and
// work accounting shared by the enumeration and sorting code.

#ifndef RANKENUM_GROUP_HPP_
#define RANKENUM_GROUP_HPP_

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rankenum {

// The zero element is the value-initialized G{}.
template <class G>
concept OrderedAbelianGroup =
    std::regular<G> && std::totally_ordered<G> &&
    requires(const G& a, const G& b) {
      { a + b } -> std::convertible_to<G>;
      { a - b } -> std::convertible_to<G>;
      { -a } -> std::convertible_to<G>;
    };

namespace internal {

inline std::int64_t CheckedAdd(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("int64 weight overflow");
  }
  return r;
}

inline std::int64_t CheckedSub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw std::overflow_error("int64 weight overflow");
  }
  return r;
}

inline std::int64_t CheckedMul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("int64 weight overflow");
  }
  return r;
}

}  // namespace internal

// (Z, +, <) with overflow detection.
class Int64 {
 public:
  constexpr Int64() = default;
  constexpr Int64(std::int64_t v) : v_(v) {}  // NOLINT: implicit by design

  constexpr std::int64_t value() const { return v_; }

  friend Int64 operator+(Int64 a, Int64 b) {
    return Int64(internal::CheckedAdd(a.v_, b.v_));
  }
  friend Int64 operator-(Int64 a, Int64 b) {
    return Int64(internal::CheckedSub(a.v_, b.v_));
  }
  friend Int64 operator-(Int64 a) { return Int64(internal::CheckedSub(0, a.v_)); }
  Int64& operator+=(Int64 b) { return *this = *this + b; }

  friend constexpr bool operator==(Int64, Int64) = default;
  friend constexpr auto operator<=>(Int64, Int64) = default;

  friend std::ostream& operator<<(std::ostream& os, Int64 a) { return os << a.v_; }

 private:
  std::int64_t v_ = 0;
};

// Arbitrary precision integers.
class BigInt {
 public:
  BigInt() = default;
  BigInt(std::int64_t v) : v_(static_cast<long>(v)) {}  // NOLINT
  explicit BigInt(mpz_class v) : v_(std::move(v)) {}
  explicit BigInt(const std::string& decimal) : v_(decimal, 10) {}

  const mpz_class& value() const { return v_; }
  std::string ToString() const { return v_.get_str(); }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    return BigInt(mpz_class(a.v_ + b.v_));
  }
  friend BigInt operator-(const BigInt& a, const BigInt& b) {
    return BigInt(mpz_class(a.v_ - b.v_));
  }
  friend BigInt operator-(const BigInt& a) { return BigInt(mpz_class(-a.v_)); }
  BigInt& operator+=(const BigInt& b) {
    v_ += b.v_;
    return *this;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigInt& a) { return os << a.v_.get_str(); }

 private:
  mpz_class v_;
};

// Z^d under lexicographic order. Missing trailing coordinates read as zero,
// so the empty vector is the identity for every d.
class LexVector {
 public:
  LexVector() = default;
  explicit LexVector(std::vector<std::int64_t> coords) : c_(std::move(coords)) {}
  LexVector(std::initializer_list<std::int64_t> coords) : c_(coords) {}

  std::size_t dimension() const { return c_.size(); }
  std::int64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<std::int64_t>& coords() const { return c_; }

  friend LexVector operator+(const LexVector& a, const LexVector& b) {
    std::vector<std::int64_t> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = internal::CheckedAdd(a[i], b[i]);
    return LexVector(std::move(r));
  }
  friend LexVector operator-(const LexVector& a, const LexVector& b) {
    std::vector<std::int64_t> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = internal::CheckedSub(a[i], b[i]);
    return LexVector(std::move(r));
  }
  friend LexVector operator-(const LexVector& a) { return LexVector() - a; }

  friend std::strong_ordering operator<=>(const LexVector& a, const LexVector& b) {
    const std::size_t d = std::max(a.c_.size(), b.c_.size());
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i] != b[i]) return a[i] < b[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }
  friend bool operator==(const LexVector& a, const LexVector& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const LexVector& a) {
    os << '[';
    for (std::size_t i = 0; i < a.c_.size(); ++i) os << (i ? "," : "") << a.c_[i];
    return os << ']';
  }

 private:
  std::vector<std::int64_t> c_;
};

// G x Z ordered lexicographically; the tag breaks ties between equal values.
template <OrderedAbelianGroup G>
struct Tagged {
  G value{};
  std::int64_t tag = 0;

  friend Tagged operator+(const Tagged& a, const Tagged& b) {
    return {a.value + b.value, internal::CheckedAdd(a.tag, b.tag)};
  }
  friend Tagged operator-(const Tagged& a, const Tagged& b) {
    return {a.value - b.value, internal::CheckedSub(a.tag, b.tag)};
  }
  friend Tagged operator-(const Tagged& a) { return Tagged{} - a; }
  friend bool operator==(const Tagged& a, const Tagged& b) {
    return a.value == b.value && a.tag == b.tag;
  }
  friend std::strong_ordering operator<=>(const Tagged& a, const Tagged& b) {
    if (a.value < b.value) return std::strong_ordering::less;
    if (b.value < a.value) return std::strong_ordering::greater;
    return a.tag <=> b.tag;
  }
};

// k * g by doubling; k >= 0.
template <OrderedAbelianGroup G>
G Multiply(std::int64_t k, const G& g) {
  if (k < 0) return -Multiply(-k, g);
  G result{};
  G base = g;
  while (k > 0) {
    if (k & 1) result = result + base;
    k >>= 1;
    if (k > 0) base = base + base;
  }
  return result;
}

template <OrderedAbelianGroup G>
std::string ToString(const G& g) {
  std::ostringstream os;
  os << g;
  return os.str();
}

// Counts work units: heap operations, group comparisons, cursor moves.
// An optional hook fires every `quantum` units; the epoch enumerator uses it
// to suspend its background job.
class WorkMeter {
 public:
  void Charge(std::uint64_t units = 1) {
    total_ += units;
    if (hook_) {
      pending_ += units;
      if (pending_ >= quantum_) {
        pending_ = 0;
        hook_();
      }
    }
  }
  std::uint64_t total() const { return total_; }
  void SetHook(std::function<void()> hook, std::uint64_t quantum) {
    hook_ = std::move(hook);
    quantum_ = std::max<std::uint64_t>(quantum, 1);
    pending_ = 0;
  }
  void SetQuantum(std::uint64_t quantum) { quantum_ = std::max<std::uint64_t>(quantum, 1); }
  void ClearHook() { hook_ = nullptr; }

 private:
  std::uint64_t total_ = 0;
  std::uint64_t pending_ = 0;
  std::uint64_t quantum_ = 1;
  std::function<void()> hook_;
};

class ComparisonCounter {
 public:
  void Add(std::uint64_t n = 1) {
    count_ += n;
    if (meter_ != nullptr) meter_->Charge(n);
  }
  std::uint64_t count() const { return count_; }
  void Reset() { count_ = 0; }
  void AttachMeter(WorkMeter* meter) { meter_ = meter; }
  WorkMeter* meter() const { return meter_; }

 private:
  std::uint64_t count_ = 0;
  WorkMeter* meter_ = nullptr;
};

template <class T>
struct CountingLess {
  ComparisonCounter* counter;
  bool operator()(const T& a, const T& b) const {
    counter->Add();
    return a < b;
  }
};

template <class T>
std::strong_ordering CountedCompare(ComparisonCounter& counter, const T& a, const T& b) {
  counter.Add();
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

static_assert(OrderedAbelianGroup<Int64>);
static_assert(OrderedAbelianGroup<BigInt>);
static_assert(OrderedAbelianGroup<LexVector>);
static_assert(OrderedAbelianGroup<Tagged<Int64>>);

}  // namespace rankenum

#endif  // RANKENUM_GROUP_HPP_
