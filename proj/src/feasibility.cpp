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

#include "rankenum/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>

#include "rankenum/rounding.hpp"

namespace rankenum {

namespace {

using Int128 = __int128;

// ---------------------------------------------------------------------------
// Dense tableau simplex: maximize c.x s.t. A x <= b, x >= 0, b >= 0.

template <class T>
bool Positive(const T& v, const T& eps) {
  return v > eps;
}

template <class T>
std::optional<std::vector<T>> Maximize(const std::vector<std::vector<T>>& a, const std::vector<T>& b,
                                       const std::vector<T>& c, const T& eps, bool bland, WorkMeter* meter) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  const std::size_t cols = n + m + 1;
  const std::size_t rhs = n + m;
  std::vector<std::vector<T>> tab(m + 1, std::vector<T>(cols, T(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab[i][j] = a[i][j];
    tab[i][n + i] = T(1);
    tab[i][rhs] = b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) tab[m][j] = -c[j];

  std::size_t iterations = 0;
  std::size_t degenerate = 0;
  while (true) {
    const bool use_bland = bland || degenerate > 2 * (n + 8);
    std::size_t enter = cols;
    for (std::size_t j = 0; j < rhs; ++j) {
      if (Positive(T(-tab[m][j]), eps)) {
        if (enter == cols || (!use_bland && tab[m][j] < tab[m][enter])) enter = j;
        if (use_bland) break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    T best_ratio(0);
    for (std::size_t i = 0; i < m; ++i) {
      if (!Positive(tab[i][enter], eps)) continue;
      T ratio = tab[i][rhs] / tab[i][enter];
      if (leave == m || ratio < best_ratio || (!(best_ratio < ratio) && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) return std::nullopt;  // unbounded
    if (!Positive(best_ratio, eps)) ++degenerate;
    // Pivot.
    const T pivot = tab[leave][enter];
    for (std::size_t j = 0; j < cols; ++j) tab[leave][j] /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const T factor = tab[i][enter];
      if (factor == T(0)) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (tab[leave][j] != T(0)) tab[i][j] -= factor * tab[leave][j];
      }
    }
    basis[leave] = enter;
    if (meter != nullptr) meter->Charge(m + 1);
    if (++iterations > 50000) throw std::runtime_error("simplex iteration limit");
  }
  std::vector<T> x(n, T(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] = tab[i][rhs];
  }
  return x;
}

// ---------------------------------------------------------------------------
// Integer helpers.

void MakePrimitive(std::vector<mpz_class>& v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1) {
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

bool FitsInt64(const mpz_class& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

std::vector<std::int64_t> NormalizedKey(const std::vector<std::int64_t>& h) {
  std::int64_t g = 0;
  for (auto x : h) g = std::gcd(g, x < 0 ? -x : x);
  std::vector<std::int64_t> key = h;
  if (g == 0) return key;
  bool negate = false;
  for (auto x : h) {
    if (x != 0) {
      negate = x < 0;
      break;
    }
  }
  for (auto& x : key) x = (negate ? -x : x) / g;
  return key;
}

// Integer basis (as columns) of {x : E x = 0}; identity when E is empty.
std::vector<std::vector<mpz_class>> NullspaceBasis(const std::vector<const std::vector<std::int64_t>*>& eq, int d,
                                                   std::size_t* rank_out) {
  std::vector<std::vector<mpz_class>> ech;
  std::vector<int> piv;
  std::vector<std::vector<std::int64_t>> seen;
  for (const auto* row : eq) {
    if (static_cast<int>(ech.size()) == d) break;
    std::vector<mpz_class> v(static_cast<std::size_t>(d));
    bool nonzero = false;
    for (int j = 0; j < d; ++j) {
      v[static_cast<std::size_t>(j)] = static_cast<long>((*row)[static_cast<std::size_t>(j)]);
      nonzero = nonzero || (*row)[static_cast<std::size_t>(j)] != 0;
    }
    if (!nonzero) continue;
    for (std::size_t k = 0; k < ech.size(); ++k) {
      const auto c = static_cast<std::size_t>(piv[k]);
      if (v[c] == 0) continue;
      const mpz_class f = v[c];
      const mpz_class p = ech[k][c];
      for (int j = 0; j < d; ++j) {
        v[static_cast<std::size_t>(j)] = p * v[static_cast<std::size_t>(j)] - f * ech[k][static_cast<std::size_t>(j)];
      }
      MakePrimitive(v);
    }
    int lead = -1;
    for (int j = 0; j < d; ++j) {
      if (v[static_cast<std::size_t>(j)] != 0) {
        lead = j;
        break;
      }
    }
    if (lead < 0) continue;
    ech.push_back(std::move(v));
    piv.push_back(lead);
  }
  *rank_out = ech.size();
  std::vector<std::vector<mpz_class>> basis;
  if (ech.empty()) {
    for (int j = 0; j < d; ++j) {
      std::vector<mpz_class> e(static_cast<std::size_t>(d), 0);
      e[static_cast<std::size_t>(j)] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  // Reduced row echelon form over the rationals.
  const std::size_t r = ech.size();
  std::vector<std::vector<mpq_class>> rref(r, std::vector<mpq_class>(static_cast<std::size_t>(d)));
  for (std::size_t k = 0; k < r; ++k) {
    for (int j = 0; j < d; ++j) rref[k][static_cast<std::size_t>(j)] = ech[k][static_cast<std::size_t>(j)];
  }
  for (std::size_t k = 0; k < r; ++k) {
    const auto c = static_cast<std::size_t>(piv[k]);
    const mpq_class p = rref[k][c];
    for (auto& x : rref[k]) x /= p;
    for (std::size_t o = 0; o < r; ++o) {
      if (o == k || rref[o][c] == 0) continue;
      const mpq_class f = rref[o][c];
      for (int j = 0; j < d; ++j) rref[o][static_cast<std::size_t>(j)] -= f * rref[k][static_cast<std::size_t>(j)];
    }
  }
  std::vector<char> is_pivot(static_cast<std::size_t>(d), 0);
  for (int c : piv) is_pivot[static_cast<std::size_t>(c)] = 1;
  for (int f = 0; f < d; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<mpq_class> x(static_cast<std::size_t>(d), 0);
    x[static_cast<std::size_t>(f)] = 1;
    for (std::size_t k = 0; k < r; ++k) x[static_cast<std::size_t>(piv[k])] = -rref[k][static_cast<std::size_t>(f)];
    mpz_class l = 1;
    for (const auto& q : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> xi(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      const mpq_class s = x[static_cast<std::size_t>(j)] * l;
      xi[static_cast<std::size_t>(j)] = s.get_num();
    }
    MakePrimitive(xi);
    basis.push_back(std::move(xi));
  }
  return basis;
}

// Strict rows in reduced coordinates: a.z <= -1.
struct Reduced {
  int r = 0;
  std::vector<std::int64_t> a;  // row-major, r per row
  std::vector<std::int64_t> norm;
  std::size_t rows() const { return norm.size(); }
  const std::int64_t* row(std::size_t i) const { return a.data() + i * static_cast<std::size_t>(r); }
};

std::vector<std::size_t> InitialWorkingSet(std::size_t m, int r) {
  const std::size_t k = std::min<std::size_t>(m, static_cast<std::size_t>(4 * r + 4));
  std::vector<std::size_t> w;
  for (std::size_t i = 0; i < k; ++i) w.push_back(i * m / k);
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

// LP over the working set: variables z+ (r), z- (r), lambda.
template <class T>
void BuildLp(const Reduced& red, const std::vector<std::size_t>& work, bool normalize,
             std::vector<std::vector<T>>& a, std::vector<T>& b, std::vector<T>& c) {
  const int r = red.r;
  const std::size_t n = static_cast<std::size_t>(2 * r + 1);
  a.clear();
  b.clear();
  for (std::size_t i : work) {
    std::vector<T> row(n, T(0));
    const std::int64_t* ai = red.row(i);
    const T scale = normalize ? T(static_cast<double>(red.norm[i])) : T(1);
    for (int j = 0; j < r; ++j) {
      row[static_cast<std::size_t>(j)] = T(static_cast<long>(ai[j])) / scale;
      row[static_cast<std::size_t>(r + j)] = -row[static_cast<std::size_t>(j)];
    }
    row[n - 1] = normalize ? T(1) : T(static_cast<long>(red.norm[i]));
    a.push_back(std::move(row));
    b.push_back(T(0));
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<T> row(n, T(0));
    row[j] = T(1);
    a.push_back(std::move(row));
    b.push_back(T(1));
  }
  c.assign(n, T(0));
  c[n - 1] = T(1);
}

template <>
void BuildLp<double>(const Reduced& red, const std::vector<std::size_t>& work, bool normalize,
                     std::vector<std::vector<double>>& a, std::vector<double>& b, std::vector<double>& c) {
  const int r = red.r;
  const std::size_t n = static_cast<std::size_t>(2 * r + 1);
  a.clear();
  b.clear();
  for (std::size_t i : work) {
    std::vector<double> row(n, 0.0);
    const std::int64_t* ai = red.row(i);
    const double scale = normalize ? static_cast<double>(red.norm[i]) : 1.0;
    for (int j = 0; j < r; ++j) {
      row[static_cast<std::size_t>(j)] = static_cast<double>(ai[j]) / scale;
      row[static_cast<std::size_t>(r + j)] = -row[static_cast<std::size_t>(j)];
    }
    row[n - 1] = normalize ? 1.0 : static_cast<double>(red.norm[i]);
    a.push_back(std::move(row));
    b.push_back(0.0);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> row(n, 0.0);
    row[j] = 1.0;
    a.push_back(std::move(row));
    b.push_back(1.0);
  }
  c.assign(n, 0.0);
  c[n - 1] = 1.0;
}

void AddRows(std::vector<std::size_t>& work, std::vector<char>& in_work, std::vector<std::pair<double, std::size_t>>& cand,
             std::size_t limit) {
  std::sort(cand.begin(), cand.end(), [](const auto& x, const auto& y) {
    return x.first > y.first || (x.first == y.first && x.second < y.second);
  });
  for (std::size_t k = 0; k < cand.size() && k < limit; ++k) {
    work.push_back(cand[k].second);
    in_work[cand[k].second] = 1;
  }
}

// Floating-point cutting planes; returns an integer z with a.z <= -1 for all
// rows (verified exactly) or nothing.
std::optional<std::vector<std::int64_t>> FloatSolve(const Reduced& red, std::vector<std::size_t>& work,
                                                    std::vector<char>& in_work, WorkMeter* meter, int* rounds,
                                                    std::vector<double>* last_z) {
  const int r = red.r;
  const std::size_t m = red.rows();
  const std::size_t batch = static_cast<std::size_t>(std::max(8, 2 * r + 2));
  std::vector<std::vector<double>> a;
  std::vector<double> b, c;
  std::vector<std::pair<double, std::size_t>> cand;
  int rounding_failures = 0;
  for (int round = 0; round < 25; ++round) {
    ++*rounds;
    BuildLp<double>(red, work, true, a, b, c);
    auto sol = Maximize<double>(a, b, c, 1e-12, false, meter);
    if (!sol) return std::nullopt;
    const double lambda = (*sol)[static_cast<std::size_t>(2 * r)];
    if (!(lambda > 1e-13)) return std::nullopt;
    std::vector<double> z(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) {
      z[static_cast<std::size_t>(j)] = (*sol)[static_cast<std::size_t>(j)] - (*sol)[static_cast<std::size_t>(r + j)];
    }
    *last_z = z;
    cand.clear();
    for (std::size_t i = 0; i < m; ++i) {
      if (in_work[i]) continue;
      const std::int64_t* ai = red.row(i);
      double s = 0;
      for (int j = 0; j < r; ++j) s += static_cast<double>(ai[j]) * z[static_cast<std::size_t>(j)];
      const double slack = s / static_cast<double>(red.norm[i]) + 0.5 * lambda;
      if (slack > 0) cand.emplace_back(slack, i);
    }
    if (meter != nullptr) meter->Charge(m);
    if (!cand.empty()) {
      AddRows(work, in_work, cand, batch);
      continue;
    }
    const double scale = std::ceil(4.0 / lambda);
    if (!(scale < 1e15)) return std::nullopt;
    std::vector<std::int64_t> zi(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) zi[static_cast<std::size_t>(j)] = std::llround(scale * z[static_cast<std::size_t>(j)]);
    cand.clear();
    for (std::size_t i = 0; i < m; ++i) {
      const std::int64_t* ai = red.row(i);
      Int128 s = 0;
      for (int j = 0; j < r; ++j) s += static_cast<Int128>(ai[j]) * zi[static_cast<std::size_t>(j)];
      if (s > -1 && !in_work[i]) cand.emplace_back(static_cast<double>(s), i);
      if (s > -1 && in_work[i]) return std::nullopt;  // float error on a working row
    }
    if (cand.empty()) return zi;
    // Rows the float LP already satisfies but the rounded point misses: the
    // margin is below double precision, so hand over to the exact pass.
    if (++rounding_failures >= 2) return std::nullopt;
    AddRows(work, in_work, cand, batch);
  }
  return std::nullopt;
}

// Exact cutting planes over the rationals; returns z with a.z <= -1.
std::vector<mpq_class> ExactSolve(const Reduced& red, std::vector<std::size_t>& work, std::vector<char>& in_work,
                                  WorkMeter* meter, int* rounds) {
  const int r = red.r;
  const std::size_t m = red.rows();
  const std::size_t batch = static_cast<std::size_t>(std::max(8, 2 * r + 2));
  std::vector<std::vector<mpq_class>> a;
  std::vector<mpq_class> b, c;
  std::vector<std::pair<double, std::size_t>> cand;
  while (true) {
    ++*rounds;
    BuildLp<mpq_class>(red, work, false, a, b, c);
    auto sol = Maximize<mpq_class>(a, b, c, mpq_class(0), true, meter);
    if (!sol) throw std::logic_error("bounded LP reported unbounded");
    const mpq_class lambda = (*sol)[static_cast<std::size_t>(2 * r)];
    if (lambda <= 0) throw Infeasible();
    std::vector<mpq_class> z(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) {
      z[static_cast<std::size_t>(j)] =
          ((*sol)[static_cast<std::size_t>(j)] - (*sol)[static_cast<std::size_t>(r + j)]) / lambda;
    }
    mpz_class den = 1;
    for (const auto& q : z) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> p(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) {
      const mpq_class s = z[static_cast<std::size_t>(j)] * den;
      p[static_cast<std::size_t>(j)] = s.get_num();
    }
    cand.clear();
    const mpz_class neg_den = -den;
    for (std::size_t i = 0; i < m; ++i) {
      const std::int64_t* ai = red.row(i);
      mpz_class s = 0;
      for (int j = 0; j < r; ++j) s += p[static_cast<std::size_t>(j)] * static_cast<long>(ai[j]);
      if (s > neg_den) {
        if (in_work[i]) throw std::logic_error("exact LP point violates a working row");
        const mpq_class excess(s + den, den);
        cand.emplace_back(excess.get_d() / static_cast<double>(red.norm[i]), i);
      }
    }
    if (meter != nullptr) meter->Charge(m);
    if (cand.empty()) return z;
    AddRows(work, in_work, cand, batch);
  }
}

}  // namespace

std::size_t InequalitySystem::FacetBits() const {
  std::size_t best = 0;
  for (const auto& row : rows) {
    std::size_t bits = 2;
    for (auto v : row.h) bits += BitLength(mpz_class(static_cast<long>(v))) + 1;
    best = std::max(best, bits);
  }
  return best;
}

std::size_t RationalVector::MaxBits() const {
  std::size_t b = 0;
  for (const auto& q : x) {
    mpq_class c = q;
    c.canonicalize();
    b = std::max({b, BitLength(c.get_num()), BitLength(c.get_den())});
  }
  return b;
}

bool Satisfies(const InequalitySystem& system, const RationalVector& x) {
  if (static_cast<int>(x.x.size()) != system.dim) return false;
  mpz_class den = 1;
  for (const auto& q : x.x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> p(x.x.size());
  for (std::size_t j = 0; j < x.x.size(); ++j) {
    const mpq_class s = x.x[j] * den;
    p[j] = s.get_num();
  }
  for (const auto& row : system.rows) {
    mpz_class s = 0;
    for (std::size_t j = 0; j < row.h.size(); ++j) s += p[j] * static_cast<long>(row.h[j]);
    switch (row.rel) {
      case Relation::kLeMinusOne:
        if (s > -den) return false;
        break;
      case Relation::kEqZero:
        if (s != 0) return false;
        break;
      case Relation::kGeOne:
        if (s < den) return false;
        break;
    }
  }
  return true;
}

RationalVector SolveFeasibility(const InequalitySystem& system, const FeasibilityOptions& options,
                                FeasibilityStats* stats) {
  const int d = system.dim;
  for (const auto& row : system.rows) {
    if (static_cast<int>(row.h.size()) != d) throw std::invalid_argument("constraint dimension mismatch");
  }
  FeasibilityStats local;
  FeasibilityStats& st = stats != nullptr ? *stats : local;
  st = FeasibilityStats();

  std::vector<const std::vector<std::int64_t>*> eq;
  {
    std::vector<std::vector<std::int64_t>> keys;
    for (const auto& row : system.rows) {
      if (row.rel == Relation::kEqZero) eq.push_back(&row.h);
    }
    // Identical equalities add nothing; drop them cheaply first.
    std::vector<std::pair<std::vector<std::int64_t>, const std::vector<std::int64_t>*>> tagged;
    tagged.reserve(eq.size());
    for (const auto* h : eq) tagged.emplace_back(NormalizedKey(*h), h);
    std::sort(tagged.begin(), tagged.end());
    tagged.erase(std::unique(tagged.begin(), tagged.end(),
                             [](const auto& x, const auto& y) { return x.first == y.first; }),
                 tagged.end());
    eq.clear();
    for (const auto& [k, h] : tagged) eq.push_back(h);
  }
  const auto basis = NullspaceBasis(eq, d, &st.equalities_rank);
  const int r = static_cast<int>(basis.size());

  // Reduced strict rows, all oriented as a.z <= -1.
  Reduced red;
  red.r = r;
  {
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& row : system.rows) {
      if (row.rel == Relation::kEqZero) continue;
      const long sign = row.rel == Relation::kLeMinusOne ? 1 : -1;
      std::vector<std::int64_t> a(static_cast<std::size_t>(r));
      bool nonzero = false;
      for (int k = 0; k < r; ++k) {
        mpz_class s = 0;
        for (int j = 0; j < d; ++j) s += basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] * static_cast<long>(row.h[static_cast<std::size_t>(j)]);
        s *= sign;
        if (!FitsInt64(s) || abs(s) > (mpz_class(1) << 52)) throw std::overflow_error("reduced constraint too large");
        a[static_cast<std::size_t>(k)] = s.get_si();
        nonzero = nonzero || s != 0;
      }
      if (!nonzero) throw Infeasible();
      rows.push_back(std::move(a));
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    for (auto& a : rows) {
      std::int64_t norm = 0;
      for (auto v : a) norm += v < 0 ? -v : v;
      red.a.insert(red.a.end(), a.begin(), a.end());
      red.norm.push_back(norm);
    }
  }

  std::vector<mpq_class> z(static_cast<std::size_t>(r), 0);
  if (red.rows() > 0) {
    if (r == 0) throw Infeasible();
    std::vector<std::size_t> work = InitialWorkingSet(red.rows(), r);
    std::vector<char> in_work(red.rows(), 0);
    for (std::size_t i : work) in_work[i] = 1;
    std::optional<std::vector<std::int64_t>> zi;
    std::vector<double> last_z;
    if (!options.exact_only) zi = FloatSolve(red, work, in_work, options.meter, &st.rounds, &last_z);
    if (zi) {
      st.float_path = true;
      for (int j = 0; j < r; ++j) z[static_cast<std::size_t>(j)] = static_cast<long>((*zi)[static_cast<std::size_t>(j)]);
    } else {
      if (!last_z.empty()) {
        // Restart from the rows that were tightest at the last float point.
        std::vector<std::pair<double, std::size_t>> tight;
        for (std::size_t i : work) {
          const std::int64_t* ai = red.row(i);
          double v = 0;
          for (int j = 0; j < r; ++j) v += static_cast<double>(ai[j]) * last_z[static_cast<std::size_t>(j)];
          tight.emplace_back(v / static_cast<double>(red.norm[i]), i);
        }
        std::fill(in_work.begin(), in_work.end(), 0);
        work = InitialWorkingSet(red.rows(), r);
        for (std::size_t i : work) in_work[i] = 1;
        std::vector<std::pair<double, std::size_t>> keep;
        for (const auto& [v, i] : tight) {
          if (!in_work[i]) keep.emplace_back(v, i);
        }
        AddRows(work, in_work, keep, static_cast<std::size_t>(4 * r + 4));
      }
      z = ExactSolve(red, work, in_work, options.meter, &st.rounds);
    }
    st.working_set = work.size();
  }

  RationalVector out;
  out.x.assign(static_cast<std::size_t>(d), 0);
  for (int k = 0; k < r; ++k) {
    for (int j = 0; j < d; ++j) {
      out.x[static_cast<std::size_t>(j)] += z[static_cast<std::size_t>(k)] * basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    }
  }
  for (auto& q : out.x) q.canonicalize();
  if (!Satisfies(system, out)) throw std::logic_error("feasibility solution failed exact verification");
  return out;
}

}  // namespace rankenum
