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

#include "configprod/simplicial.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace configprod {

Monotone Monotone::identity(std::uint32_t n) {
  std::vector<std::uint8_t> v(n + 1);
  for (std::uint32_t i = 0; i <= n; ++i) v[i] = static_cast<std::uint8_t>(i);
  return Monotone(n, std::move(v));
}

Monotone Monotone::coface(std::uint32_t n, std::uint32_t i) {
  std::vector<std::uint8_t> v(n);
  for (std::uint32_t x = 0; x < n; ++x) v[x] = static_cast<std::uint8_t>(x < i ? x : x + 1);
  return Monotone(n, std::move(v));
}

Monotone Monotone::codegeneracy(std::uint32_t n, std::uint32_t i) {
  std::vector<std::uint8_t> v(n + 2);
  for (std::uint32_t x = 0; x <= n + 1; ++x) v[x] = static_cast<std::uint8_t>(x <= i ? x : x - 1);
  return Monotone(n, std::move(v));
}

Monotone Monotone::constant(std::uint32_t p, std::uint32_t q, std::uint32_t j) {
  return Monotone(q, std::vector<std::uint8_t>(p + 1, static_cast<std::uint8_t>(j)));
}

bool Monotone::valid() const {
  if (v.empty()) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > cod_top) return false;
    if (i > 0 && v[i] < v[i - 1]) return false;
  }
  return true;
}

bool Monotone::is_identity() const {
  if (dom_top() != cod_top) return false;
  for (std::uint32_t i = 0; i < v.size(); ++i)
    if (v[i] != i) return false;
  return true;
}

bool Monotone::is_injective() const {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] == v[i - 1]) return false;
  return true;
}

bool Monotone::is_surjective() const {
  if (v.front() != 0 || v.back() != cod_top) return false;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] + 1) return false;
  return true;
}

std::string Monotone::str() const {
  std::ostringstream os;
  os << "[" << dom_top() << "]->[" << cod_top << "]:(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << int(v[i]);
  os << ")";
  return os.str();
}

Monotone compose(const Monotone& g, const Monotone& f) {
  if (f.cod_top != g.dom_top()) throw std::invalid_argument("compose: " + g.str() + " after " + f.str());
  std::vector<std::uint8_t> v(f.v.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = g.v[f.v[i]];
  return Monotone(g.cod_top, std::move(v));
}

std::pair<Monotone, Monotone> epi_mono(const Monotone& theta) {
  std::vector<std::uint8_t> image;
  std::vector<std::uint8_t> epi(theta.v.size());
  for (std::size_t i = 0; i < theta.v.size(); ++i) {
    if (image.empty() || image.back() != theta.v[i]) image.push_back(theta.v[i]);
    epi[i] = static_cast<std::uint8_t>(image.size() - 1);
  }
  auto top = static_cast<std::uint32_t>(image.size() - 1);
  return {Monotone(top, std::move(epi)), Monotone(theta.cod_top, std::move(image))};
}

std::vector<std::uint32_t> missed(const Monotone& inj) {
  std::vector<std::uint32_t> out;
  std::size_t k = 0;
  for (std::uint32_t x = 0; x <= inj.cod_top; ++x) {
    if (k < inj.v.size() && inj.v[k] == x)
      ++k;
    else
      out.push_back(x);
  }
  return out;
}

std::uint32_t collapse_mask(const Monotone& surj) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i + 1 < surj.v.size(); ++i)
    if (surj.v[i] == surj.v[i + 1]) m |= 1u << i;
  return m;
}

Monotone surjection_from_mask(std::uint32_t n, std::uint32_t mask) {
  std::vector<std::uint8_t> v(n + 1);
  std::uint8_t cur = 0;
  v[0] = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!(mask >> i & 1u)) ++cur;
    v[i + 1] = cur;
  }
  return Monotone(cur, std::move(v));
}

std::vector<Monotone> all_monotone(std::uint32_t p, std::uint32_t q) {
  std::vector<Monotone> out;
  std::vector<std::uint8_t> v(p + 1, 0);
  while (true) {
    out.emplace_back(q, v);
    // next nondecreasing sequence in lexicographic order
    std::int64_t i = p;
    while (i >= 0 && v[i] == q) --i;
    if (i < 0) break;
    ++v[i];
    for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j <= p; ++j) v[j] = v[i];
  }
  return out;
}

std::vector<Monotone> all_monotone_surjections(std::uint32_t p, std::uint32_t q) {
  std::vector<Monotone> out;
  for (auto& m : all_monotone(p, q))
    if (m.is_surjective()) out.push_back(std::move(m));
  return out;
}

std::uint32_t CappedSSet::base_dim(std::uint32_t n, std::uint32_t mask) {
  return n - static_cast<std::uint32_t>(std::popcount(mask));
}

Face CappedSSet::face_of(std::uint32_t n, Face y, std::uint32_t i) const {
  const std::uint32_t m = base_dim(n, y.mask);
  Monotone sigma = surjection_from_mask(n, y.mask);
  Monotone theta = compose(sigma, Monotone::coface(n, i));
  if (theta.is_surjective()) return Face{y.index, collapse_mask(theta)};
  // i is a singleton block: theta = delta^j o sigma'
  const std::uint32_t j = sigma.v[i];
  std::vector<std::uint8_t> sv(theta.v.size());
  for (std::size_t x = 0; x < sv.size(); ++x) sv[x] = theta.v[x] > j ? theta.v[x] - 1 : theta.v[x];
  Monotone sigma2(m - 1, std::move(sv));
  Face dz = face(m, y.index, j);
  Monotone tau = surjection_from_mask(m - 1, dz.mask);
  return Face{dz.index, collapse_mask(compose(tau, sigma2))};
}

Face CappedSSet::apply(std::uint32_t n, Face y, const Monotone& theta) const {
  const std::uint32_t m = base_dim(n, y.mask);
  Monotone t = compose(surjection_from_mask(n, y.mask), theta);
  auto [pi, iota] = epi_mono(t);
  auto miss = missed(iota);
  Face cur{y.index, 0};
  std::uint32_t dim = m;
  for (auto it = miss.rbegin(); it != miss.rend(); ++it) {
    cur = face_of(dim, cur, *it);
    --dim;
  }
  Monotone tau = surjection_from_mask(dim, cur.mask);
  return Face{cur.index, collapse_mask(compose(tau, pi))};
}

std::vector<std::string> CappedSSet::check_identities(std::size_t max_errors) const {
  std::vector<std::string> errs;
  auto report = [&](std::string s) {
    if (errs.size() < max_errors) errs.push_back(std::move(s));
  };
  if (count.size() != cap + 1 || faces.size() != cap + 1) {
    report("shape: count/faces length differs from cap+1");
    return errs;
  }
  for (std::uint32_t n = 1; n <= cap; ++n) {
    if (faces[n].size() != count[n] * (n + 1)) {
      report("shape: face table of degree " + std::to_string(n));
      continue;
    }
    for (std::uint64_t x = 0; x < count[n]; ++x)
      for (std::uint32_t i = 0; i <= n; ++i) {
        Face f = face(n, x, i);
        std::uint32_t d = base_dim(n - 1, f.mask);
        if (f.mask >> (n - 1) != 0 || f.index >= size(d)) {
          report("face out of range at degree " + std::to_string(n));
          return errs;
        }
      }
  }
  for (std::uint32_t n = 2; n <= cap; ++n)
    for (std::uint64_t x = 0; x < count[n]; ++x)
      for (std::uint32_t j = 1; j <= n; ++j)
        for (std::uint32_t i = 0; i < j; ++i) {
          Face a = face_of(n - 1, face(n, x, j), i);
          Face b = face_of(n - 1, face(n, x, i), j - 1);
          if (!(a == b))
            report("d" + std::to_string(i) + "d" + std::to_string(j) + " != d" +
                   std::to_string(j - 1) + "d" + std::to_string(i) + " on simplex " +
                   std::to_string(x) + " of degree " + std::to_string(n));
        }
  return errs;
}

CappedSSet CappedSSet::disjoint_union(const CappedSSet& a, const CappedSSet& b) {
  if (a.cap != b.cap) throw std::invalid_argument("disjoint_union: caps differ");
  CappedSSet u;
  u.cap = a.cap;
  u.count.resize(a.cap + 1);
  u.faces.resize(a.cap + 1);
  for (std::uint32_t n = 0; n <= a.cap; ++n) {
    u.count[n] = a.count[n] + b.count[n];
    u.faces[n] = a.faces[n];
    for (Face f : b.faces[n]) {
      f.index += static_cast<std::uint32_t>(a.size(base_dim(n - 1, f.mask)));
      u.faces[n].push_back(f);
    }
  }
  return u;
}

CappedSSet boundary_of_simplex(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("boundary_of_simplex: n must be >= 1");
  CappedSSet s;
  s.cap = n - 1;
  s.count.assign(n, 0);
  s.faces.assign(n, {});
  // nondegenerate d-simplices are (d+1)-subsets of {0..n}, as bitmasks
  std::vector<std::map<std::uint32_t, std::uint32_t>> index(n);
  std::vector<std::vector<std::uint32_t>> subsets(n);
  for (std::uint32_t bits = 1; bits < (1u << (n + 1)) - 1; ++bits) {
    auto d = static_cast<std::uint32_t>(std::popcount(bits)) - 1;
    subsets[d].push_back(bits);
  }
  for (std::uint32_t d = 0; d < n; ++d) {
    std::sort(subsets[d].begin(), subsets[d].end());
    for (std::uint32_t i = 0; i < subsets[d].size(); ++i) index[d][subsets[d][i]] = i;
    s.count[d] = subsets[d].size();
  }
  for (std::uint32_t d = 1; d < n; ++d)
    for (auto bits : subsets[d]) {
      for (std::uint32_t v = 0; v <= n; ++v)
        if (bits >> v & 1u) s.faces[d].push_back(Face{index[d - 1][bits & ~(1u << v)], 0});
    }
  return s;
}

CappedSSet discrete_points(std::uint64_t k, std::uint32_t cap) {
  CappedSSet s;
  s.cap = cap;
  s.count.assign(cap + 1, 0);
  s.faces.assign(cap + 1, {});
  s.count[0] = k;
  return s;
}

}  // namespace configprod
