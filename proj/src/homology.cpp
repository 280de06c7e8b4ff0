// Copyright 2026 The configprod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "configprod/homology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace configprod {

namespace {

struct Overflow : std::runtime_error {
  Overflow() : std::runtime_error("int64 overflow") {}
};

// a - f * b with overflow detection
std::int64_t sub_mul(std::int64_t a, std::int64_t f, std::int64_t b) {
  std::int64_t p, r;
  if (__builtin_mul_overflow(f, b, &p) || __builtin_sub_overflow(a, p, &r)) throw Overflow();
  return r;
}
BigInt sub_mul(const BigInt& a, const BigInt& f, const BigInt& b) { return a - f * b; }

bool is_unit(std::int64_t v) { return v == 1 || v == -1; }
bool is_unit(const BigInt& v) { return v == 1 || v == -1; }

template <class Int>
using Column = std::vector<std::pair<std::uint32_t, Int>>;

// c2 <- c2 - f * c, both sorted by row
template <class Int>
void axpy(Column<Int>& c2, const Int& f, const Column<Int>& c, std::vector<std::uint32_t>& new_rows,
          std::vector<std::uint32_t>& gone_rows) {
  Column<Int> out;
  out.reserve(c2.size() + c.size());
  std::size_t i = 0, j = 0;
  while (i < c2.size() || j < c.size()) {
    if (j == c.size() || (i < c2.size() && c2[i].first < c[j].first)) {
      out.push_back(std::move(c2[i++]));
    } else if (i == c2.size() || c[j].first < c2[i].first) {
      out.emplace_back(c[j].first, sub_mul(Int(0), f, c[j].second));
      new_rows.push_back(c[j].first);
      ++j;
    } else {
      Int v = sub_mul(c2[i].second, f, c[j].second);
      if (v != 0)
        out.emplace_back(c2[i].first, std::move(v));
      else
        gone_rows.push_back(c2[i].first);
      ++i;
      ++j;
    }
  }
  c2 = std::move(out);
}

template <class Int>
SnfResult eliminate(const SparseIntMatrix& m) {
  const auto ncols = static_cast<std::size_t>(m.cols);
  std::vector<Column<Int>> cols(ncols);
  std::vector<std::vector<std::uint32_t>> row_cols(m.rows);
  std::vector<std::uint32_t> row_count(m.rows, 0);
  for (std::size_t c = 0; c < ncols; ++c) {
    for (const auto& [r, v] : m.col[c]) {
      if (v == 0) continue;
      cols[c].emplace_back(r, Int(v));
      row_cols[r].push_back(static_cast<std::uint32_t>(c));
      ++row_count[r];
    }
  }
  std::vector<bool> dead(ncols, false);
  SnfResult res;
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<std::uint32_t> order;
    for (std::size_t c = 0; c < ncols; ++c)
      if (!dead[c] && !cols[c].empty()) order.push_back(static_cast<std::uint32_t>(c));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return cols[a].size() < cols[b].size(); });
    for (auto c : order) {
      if (dead[c] || cols[c].empty()) continue;
      // unit entry whose row is shortest
      std::size_t best = cols[c].size();
      for (std::size_t k = 0; k < cols[c].size(); ++k)
        if (is_unit(cols[c][k].second) &&
            (best == cols[c].size() || row_count[cols[c][k].first] < row_count[cols[c][best].first]))
          best = k;
      if (best == cols[c].size()) continue;
      const std::uint32_t r = cols[c][best].first;
      const Int u = cols[c][best].second;
      const Column<Int> pivot = cols[c];
      std::vector<std::uint32_t> touched = row_cols[r];
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      for (auto c2 : touched) {
        if (c2 == c || dead[c2]) continue;
        auto it = std::lower_bound(cols[c2].begin(), cols[c2].end(), r,
                                   [](const auto& e, std::uint32_t row) { return e.first < row; });
        if (it == cols[c2].end() || it->first != r) continue;
        Int f = it->second * u;  // u is its own inverse
        std::vector<std::uint32_t> new_rows, gone_rows;
        axpy(cols[c2], f, pivot, new_rows, gone_rows);
        for (auto nr : new_rows) {
          row_cols[nr].push_back(c2);
          ++row_count[nr];
        }
        for (auto gr : gone_rows) --row_count[gr];
      }
      for (const auto& e : pivot) --row_count[e.first];
      dead[c] = true;
      cols[c].clear();
      row_cols[r].clear();
      ++res.rank;
      progress = true;
    }
  }
  // dense residual on the surviving rows and columns
  std::vector<std::uint32_t> live_cols;
  std::map<std::uint32_t, std::uint32_t> live_rows;
  for (std::size_t c = 0; c < ncols; ++c)
    if (!dead[c] && !cols[c].empty()) {
      live_cols.push_back(static_cast<std::uint32_t>(c));
      for (const auto& e : cols[c]) live_rows.emplace(e.first, 0);
    }
  if (live_cols.empty()) return res;
  std::uint32_t k = 0;
  for (auto& [r, idx] : live_rows) idx = k++;
  std::vector<std::vector<BigInt>> dense(live_rows.size(), std::vector<BigInt>(live_cols.size(), 0));
  for (std::size_t j = 0; j < live_cols.size(); ++j)
    for (const auto& [r, v] : cols[live_cols[j]]) dense[live_rows.at(r)][j] = BigInt(v);
  res.dense_residual = live_rows.size() * live_cols.size();
  auto d = smith_dense(std::move(dense));
  res.rank += d.rank;
  res.torsion = std::move(d.torsion);
  return res;
}

}  // namespace

SnfResult smith_dense(std::vector<std::vector<BigInt>> a) {
  SnfResult res;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<BigInt> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero entry of the remaining block
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  // normalize into a divisibility chain
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      BigInt g = gcd(diag[i], diag[j]);
      BigInt l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  res.rank = diag.size();
  for (const auto& d : diag)
    if (d > 1) res.torsion.push_back(d);
  return res;
}

SnfResult smith_invariants(const SparseIntMatrix& m) {
  try {
    return eliminate<std::int64_t>(m);
  } catch (const Overflow&) {
    auto r = eliminate<BigInt>(m);
    r.used_bigint = true;
    return r;
  }
}

std::string HomologyGroup::str() const {
  std::ostringstream os;
  bool any = false;
  if (rank > 0) {
    os << "Z";
    if (rank > 1) os << "^" << rank;
    any = true;
  }
  for (const auto& t : torsion) {
    os << (any ? "+" : "") << "Z/" << t;
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

std::string to_string(const HomologyReport& h) {
  std::ostringstream os;
  for (std::size_t i = 0; i < h.size(); ++i) os << (i ? " " : "") << "H" << h[i].degree << "=" << h[i].str();
  return os.str();
}

void to_json(nlohmann::json& j, const HomologyGroup& g) {
  auto tors = nlohmann::json::array();
  for (const auto& t : g.torsion) tors.push_back(t.str());
  j = nlohmann::json{{"degree", g.degree}, {"rank", g.rank}, {"torsion", tors}};
}

ChainComplex normalized_chains(const CappedSSet& x, std::uint32_t top) {
  if (top > x.cap) throw std::invalid_argument("normalized_chains: top exceeds cap");
  ChainComplex c;
  c.rank.resize(top + 1);
  c.boundary.resize(top + 1);
  for (std::uint32_t n = 0; n <= top; ++n) c.rank[n] = x.size(n);
  for (std::uint32_t n = 1; n <= top; ++n) {
    auto& d = c.boundary[n];
    d.rows = x.size(n - 1);
    d.cols = x.size(n);
    d.col.resize(d.cols);
    for (std::uint64_t s = 0; s < d.cols; ++s) {
      std::map<std::uint32_t, std::int64_t> acc;
      for (std::uint32_t i = 0; i <= n; ++i) {
        Face f = x.face(n, s, i);
        if (f.mask != 0) continue;  // degenerate faces vanish
        acc[f.index] += (i % 2 == 0) ? 1 : -1;
      }
      for (const auto& [r, v] : acc)
        if (v != 0) d.col[s].emplace_back(r, v);
    }
  }
  return c;
}

void assert_boundary_squares_zero(const ChainComplex& c) {
  for (std::size_t k = 2; k < c.boundary.size(); ++k) {
    const auto& hi = c.boundary[k];
    const auto& lo = c.boundary[k - 1];
    for (std::uint64_t s = 0; s < hi.cols; ++s) {
      std::map<std::uint32_t, std::int64_t> acc;
      for (const auto& [r, v] : hi.col[s])
        for (const auto& [r2, v2] : lo.col[r]) acc[r2] += v * v2;
      for (const auto& [r, v] : acc)
        if (v != 0)
          throw std::logic_error("boundary squares to a nonzero map in degree " +
                                 std::to_string(static_cast<int>(k) + c.shift));
    }
  }
}

HomologyReport homology(const ChainComplex& c, int lo, int hi) {
  if (hi + 1 > c.top()) throw std::invalid_argument("homology: complex does not reach degree hi+1");
  assert_boundary_squares_zero(c);
  std::vector<SnfResult> snf(c.boundary.size());
  for (std::size_t k = 1; k < c.boundary.size(); ++k) snf[k] = smith_invariants(c.boundary[k]);
  HomologyReport out;
  for (int deg = lo; deg <= hi; ++deg) {
    int k = deg - c.shift;
    HomologyGroup g;
    g.degree = deg;
    if (k < 0 || k >= static_cast<int>(c.rank.size())) {
      out.push_back(g);
      continue;
    }
    std::uint64_t rk_out = k >= 1 ? snf[k].rank : 0;
    std::uint64_t rk_in = snf[k + 1].rank;
    g.rank = c.rank[k] - rk_out - rk_in;
    g.torsion = snf[k + 1].torsion;
    out.push_back(std::move(g));
  }
  return out;
}

HomologyReport homology(const CappedSSet& x, std::uint32_t top_degree) {
  if (top_degree + 1 > x.cap) throw std::invalid_argument("homology: top_degree must be below cap");
  return homology(normalized_chains(x, top_degree + 1), 0, static_cast<int>(top_degree));
}

UnionFind::UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (a < b) std::swap(a, b);
  parent_[a] = b;  // smaller id becomes the root
  return true;
}

Pi0 UnionFind::components() {
  Pi0 p;
  p.component.assign(parent_.size(), 0);
  std::vector<std::uint32_t> id(parent_.size(), kNone);
  for (std::size_t x = 0; x < parent_.size(); ++x) {
    auto r = find(x);
    if (id[r] == kNone) id[r] = p.count++;
    p.component[x] = id[r];
  }
  return p;
}

Pi0 pi0(const CappedSSet& x) {
  UnionFind uf(x.size(0));
  if (x.cap >= 1)
    for (std::uint64_t e = 0; e < x.size(1); ++e) uf.unite(x.face(1, e, 0).index, x.face(1, e, 1).index);
  return uf.components();
}

std::vector<std::string> check_simplicial_map(const CappedSSet& x, const CappedSSet& y,
                                              const SimplicialMap& f, std::size_t max_errors) {
  std::vector<std::string> errs;
  const std::uint32_t cap = std::min(x.cap, y.cap);
  if (f.image.size() < cap + 1) return {"map tables shorter than the cap"};
  for (std::uint32_t n = 0; n <= cap; ++n)
    if (f.image[n].size() != x.size(n)) return {"map table of degree " + std::to_string(n) + " has wrong size"};
  for (std::uint32_t n = 1; n <= cap && errs.size() < max_errors; ++n)
    for (std::uint64_t s = 0; s < x.size(n) && errs.size() < max_errors; ++s)
      for (std::uint32_t i = 0; i <= n; ++i) {
        Face d = x.face(n, s, i);
        std::uint32_t m = CappedSSet::base_dim(n - 1, d.mask);
        // f(d_i s) = s_mask f(z)
        Face img = f.image[m][d.index];
        Face lhs = y.apply(m, img, surjection_from_mask(n - 1, d.mask));
        Face rhs = y.face_of(n, f.image[n][s], i);
        if (!(lhs == rhs)) {
          errs.push_back("map does not commute with d" + std::to_string(i) + " on simplex " +
                         std::to_string(s) + " of degree " + std::to_string(n));
          break;
        }
      }
  return errs;
}

ChainComplex mapping_cone(const CappedSSet& x, const CappedSSet& y, const SimplicialMap& f,
                          std::uint32_t top) {
  if (top > x.cap || top + 1 > y.cap) throw std::invalid_argument("mapping_cone: caps too small");
  // relative index k holds degree k - 1: C_{k-1}(X) + C_k(Y)
  ChainComplex c;
  c.shift = -1;
  const std::uint32_t kmax = top + 1;
  c.rank.resize(kmax + 1);
  c.boundary.resize(kmax + 1);
  auto xs = [&](std::uint32_t k) -> std::uint64_t { return k == 0 ? 0 : x.size(k - 1); };
  for (std::uint32_t k = 0; k <= kmax; ++k) c.rank[k] = xs(k) + y.size(k);
  for (std::uint32_t k = 1; k <= kmax; ++k) {
    auto& d = c.boundary[k];
    d.rows = c.rank[k - 1];
    d.cols = c.rank[k];
    d.col.resize(d.cols);
    const std::uint64_t xlo = xs(k - 1);  // offset of Y inside degree k-1
    // X part: x in C_{k-1}(X) -> (-dx, f(x))
    for (std::uint64_t s = 0; s < xs(k); ++s) {
      std::map<std::uint32_t, std::int64_t> acc;
      const std::uint32_t n = k - 1;
      if (n >= 1)
        for (std::uint32_t i = 0; i <= n; ++i) {
          Face fc = x.face(n, s, i);
          if (fc.mask == 0) acc[fc.index] -= (i % 2 == 0) ? 1 : -1;
        }
      Face img = f.image[n][s];
      if (img.mask == 0) acc[static_cast<std::uint32_t>(xlo + img.index)] += 1;
      for (const auto& [r, v] : acc)
        if (v != 0) d.col[s].emplace_back(r, v);
    }
    // Y part: y in C_k(Y) -> dy
    for (std::uint64_t s = 0; s < y.size(k); ++s) {
      std::map<std::uint32_t, std::int64_t> acc;
      for (std::uint32_t i = 0; i <= k; ++i) {
        Face fc = y.face(k, s, i);
        if (fc.mask == 0) acc[static_cast<std::uint32_t>(xlo + fc.index)] += (i % 2 == 0) ? 1 : -1;
      }
      for (const auto& [r, v] : acc)
        if (v != 0) d.col[xs(k) + s].emplace_back(r, v);
    }
  }
  return c;
}

}  // namespace configprod
