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

#include "configprod/sspace.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace configprod {

namespace {

void add_error(std::vector<std::string>& errs, std::size_t max, std::string s) {
  if (errs.size() < max) errs.push_back(std::move(s));
}

// Face indices to apply, in order, for an injection into [n].
std::vector<std::uint32_t> face_plan(const Monotone& inj) {
  auto miss = missed(inj);
  std::reverse(miss.begin(), miss.end());
  return miss;
}

std::uint32_t apply_faces(const DiscreteSimplicialSpace& x, std::uint32_t n, std::uint32_t e,
                          const std::vector<std::uint32_t>& plan) {
  for (auto i : plan) e = x.d(n--, e, i);
  return e;
}

Monotone edge_inclusion(std::uint32_t n, std::uint32_t j) {
  return Monotone(n, {static_cast<std::uint8_t>(j - 1), static_cast<std::uint8_t>(j)});
}

// Translates a string of one skeleton into another through the maps.
Chain translate_ref(const FinSkeleton& from, const FinSkeleton& to, const std::uint32_t* r,
                    std::uint32_t width) {
  Chain out(width);
  out[0] = r[0];
  for (std::uint32_t i = 1; i < width; ++i) out[i] = to.lookup(from.fin.mor_map[r[i]]);
  return out;
}

void fill_operators(DiscreteSimplicialSpace& x, const FinCat& c) {
  for (std::uint32_t n = 0; n <= x.cap; ++n) {
    auto& lv = x.levels[n];
    if (n >= 1) {
      lv.face.resize(static_cast<std::size_t>(lv.size) * (n + 1));
      for (std::uint32_t e = 0; e < lv.size; ++e) {
        Chain ch = lv.key.get(e);
        for (std::uint32_t i = 0; i <= n; ++i) {
          auto f = chain_face(c, ch, i);
          auto idx = x.levels[n - 1].key.find(f);
          if (idx == kNone) throw std::domain_error("nerve: face of a string is missing; composition is not associative");
          lv.face[static_cast<std::size_t>(e) * (n + 1) + i] = idx;
        }
      }
    }
    if (n < x.cap) {
      lv.degen.resize(static_cast<std::size_t>(lv.size) * (n + 1));
      for (std::uint32_t e = 0; e < lv.size; ++e) {
        Chain ch = lv.key.get(e);
        for (std::uint32_t i = 0; i <= n; ++i) {
          auto idx = x.levels[n + 1].key.find(chain_degeneracy(c, ch, i));
          if (idx == kNone) throw std::domain_error("nerve: degeneracy of a string is missing");
          lv.degen[static_cast<std::size_t>(e) * (n + 1) + i] = idx;
        }
      }
    }
  }
}

}  // namespace

std::uint32_t DiscreteSimplicialSpace::ref_vertex_size(std::uint32_t n, std::uint32_t x,
                                                       std::uint32_t i) const {
  const std::uint32_t* r = levels[n].ref.row(x);
  return base->fin.obj_size[i == 0 ? r[0] : base->fin.cat.dst(r[i])];
}

bool DiscreteSimplicialSpace::ref_arrow_is_identity(std::uint32_t n, std::uint32_t x,
                                                    std::uint32_t j) const {
  return base->fin.cat.is_identity(levels[n].ref.row(x)[j + 1]);
}

std::uint32_t DiscreteSimplicialSpace::apply(std::uint32_t n, std::uint32_t x,
                                             const Monotone& theta) const {
  auto [pi, iota] = epi_mono(theta);
  std::uint32_t dim = n;
  for (auto i : face_plan(iota)) x = d(dim--, x, i);
  for (std::uint32_t i = 0; i < pi.dom_top(); ++i)
    if (pi.v[i] == pi.v[i + 1]) x = s(dim++, x, i);
  return x;
}

std::vector<std::string> DiscreteSimplicialSpace::validate(std::size_t max_errors) const {
  std::vector<std::string> errs;
  if (!base) return {"no base"};
  if (levels.size() != cap + 1) return {"level count differs from cap+1"};
  const FinCat& bc = base->fin.cat;
  for (std::uint32_t n = 0; n <= cap; ++n) {
    const auto& lv = levels[n];
    if (lv.ref.width != n + 1 || lv.ref.size() != lv.size) add_error(errs, max_errors, "ref table shape at degree " + std::to_string(n));
    if (n >= 1 && lv.face.size() != static_cast<std::size_t>(lv.size) * (n + 1))
      add_error(errs, max_errors, "face table shape at degree " + std::to_string(n));
    if (n < cap && lv.degen.size() != static_cast<std::size_t>(lv.size) * (n + 1))
      add_error(errs, max_errors, "degeneracy table shape at degree " + std::to_string(n));
    for (auto v : lv.face)
      if (v >= levels[n - 1].size) {
        add_error(errs, max_errors, "face out of range at degree " + std::to_string(n));
        break;
      }
    for (auto v : lv.degen)
      if (v >= levels[n + 1].size) {
        add_error(errs, max_errors, "degeneracy out of range at degree " + std::to_string(n));
        break;
      }
  }
  if (!errs.empty()) return errs;
  auto where = [](const char* what, std::uint32_t n, std::uint32_t x) {
    return std::string(what) + " fails on element " + std::to_string(x) + " of degree " + std::to_string(n);
  };
  for (std::uint32_t n = 0; n <= cap && errs.size() < max_errors; ++n)
    for (std::uint32_t x = 0; x < size(n) && errs.size() < max_errors; ++x) {
      Chain r = ref(n, x);
      for (std::uint32_t i = 0; n >= 1 && i <= n; ++i)
        if (ref(n - 1, d(n, x, i)) != chain_face(bc, r, i)) add_error(errs, max_errors, where("ref o d_i", n, x));
      for (std::uint32_t i = 0; n < cap && i <= n; ++i)
        if (ref(n + 1, s(n, x, i)) != chain_degeneracy(bc, r, i)) add_error(errs, max_errors, where("ref o s_i", n, x));
      for (std::uint32_t j = 1; n >= 2 && j <= n; ++j)
        for (std::uint32_t i = 0; i < j; ++i)
          if (d(n - 1, d(n, x, j), i) != d(n - 1, d(n, x, i), j - 1)) add_error(errs, max_errors, where("d_i d_j = d_{j-1} d_i", n, x));
      if (n >= cap) continue;
      for (std::uint32_t j = 0; j <= n; ++j) {
        std::uint32_t y = s(n, x, j);
        if (d(n + 1, y, j) != x || d(n + 1, y, j + 1) != x) add_error(errs, max_errors, where("d_j s_j = d_{j+1} s_j = id", n, x));
        for (std::uint32_t i = 0; i <= n + 1 && n >= 1; ++i) {
          if (i < j && d(n + 1, y, i) != s(n - 1, d(n, x, i), j - 1)) add_error(errs, max_errors, where("d_i s_j = s_{j-1} d_i", n, x));
          if (i > j + 1 && d(n + 1, y, i) != s(n - 1, d(n, x, i - 1), j)) add_error(errs, max_errors, where("d_i s_j = s_j d_{i-1}", n, x));
        }
        if (n + 1 < cap)
          for (std::uint32_t i = 0; i <= j; ++i)
            if (s(n + 1, y, i) != s(n + 1, s(n, x, i), j + 1)) add_error(errs, max_errors, where("s_i s_j = s_{j+1} s_i", n, x));
      }
    }
  return errs;
}

std::vector<std::string> check_dss_map(const DiscreteSimplicialSpace& x,
                                       const DiscreteSimplicialSpace& y, const DssMap& f,
                                       bool over_base, std::size_t max_errors) {
  std::vector<std::string> errs;
  if (x.cap != y.cap || f.level.size() != x.cap + 1) return {"cap mismatch"};
  for (std::uint32_t n = 0; n <= x.cap; ++n) {
    if (f.level[n].size() != x.size(n)) return {"map table size at degree " + std::to_string(n)};
    for (auto v : f.level[n])
      if (v >= y.size(n)) return {"map value out of range at degree " + std::to_string(n)};
  }
  for (std::uint32_t n = 0; n <= x.cap && errs.size() < max_errors; ++n)
    for (std::uint32_t e = 0; e < x.size(n); ++e) {
      std::uint32_t fe = f.level[n][e];
      for (std::uint32_t i = 0; n >= 1 && i <= n; ++i)
        if (f.level[n - 1][x.d(n, e, i)] != y.d(n, fe, i))
          add_error(errs, max_errors, "map does not commute with d" + std::to_string(i) + " at degree " + std::to_string(n));
      for (std::uint32_t i = 0; n < x.cap && i <= n; ++i)
        if (f.level[n + 1][x.s(n, e, i)] != y.s(n, fe, i))
          add_error(errs, max_errors, "map does not commute with s" + std::to_string(i) + " at degree " + std::to_string(n));
      if (over_base && x.ref(n, e) != y.ref(n, fe))
        add_error(errs, max_errors, "map does not preserve the reference at degree " + std::to_string(n));
    }
  return errs;
}

DiscreteSimplicialSpace nerve_over_fin(const FinCatOverFin& c, std::uint32_t cap, std::uint32_t t) {
  if (t == kNone) t = c.max_size();
  auto base = std::make_shared<FinSkeleton>(fin_skeleton(t));
  std::vector<std::uint32_t> to_base(c.cat.num_morphisms());
  for (std::uint32_t m = 0; m < c.cat.num_morphisms(); ++m) {
    to_base[m] = base->lookup(c.mor_map[m]);
    if (to_base[m] == kNone) throw std::invalid_argument("nerve_over_fin: object size exceeds the base bound");
  }
  DiscreteSimplicialSpace x;
  x.cap = cap;
  x.base = base;
  x.levels.resize(cap + 1);
  FlatTable chains;
  for (std::uint32_t o = 0; o < c.cat.num_objects(); ++o) chains.data.push_back(o);
  for (std::uint32_t n = 0; n <= cap; ++n) {
    if (n > 0) chains = extend_chains(c.cat, chains);
    auto& lv = x.levels[n];
    lv.size = chains.size();
    lv.ref.width = n + 1;
    lv.ref.data.resize(chains.data.size());
    for (std::uint32_t e = 0; e < lv.size; ++e) {
      const std::uint32_t* k = chains.row(e);
      std::uint32_t* r = lv.ref.data.data() + static_cast<std::size_t>(e) * (n + 1);
      r[0] = c.obj_size[k[0]];
      for (std::uint32_t i = 1; i <= n; ++i) r[i] = to_base[k[i]];
    }
    lv.key = chains;
  }
  fill_operators(x, c.cat);
  return x;
}

DssMap reference_map(const DiscreteSimplicialSpace& nerve_c, const FinCatOverFin& other,
                     const DiscreteSimplicialSpace& nerve_fin) {
  DssMap f;
  f.level.resize(nerve_c.cap + 1);
  const FinSkeleton& sk = *nerve_fin.base;
  for (std::uint32_t n = 0; n <= nerve_c.cap; ++n) {
    const auto& lv = nerve_c.levels[n];
    f.level[n].resize(lv.size);
    Chain r(n + 1);
    for (std::uint32_t e = 0; e < lv.size; ++e) {
      const std::uint32_t* k = lv.key.row(e);
      r[0] = other.obj_size[k[0]];
      for (std::uint32_t i = 1; i <= n; ++i) r[i] = sk.lookup(other.mor_map[k[i]]);
      f.level[n][e] = nerve_fin.levels[n].key.find(r);
      if (f.level[n][e] == kNone) throw std::invalid_argument("reference_map: string outside the target nerve");
    }
  }
  return f;
}

DssMap ref_as_map(const DiscreteSimplicialSpace& x, const DiscreteSimplicialSpace& nerve_base) {
  if (x.base->t != nerve_base.base->t) throw std::invalid_argument("ref_as_map: bases differ");
  DssMap f;
  f.level.resize(x.cap + 1);
  for (std::uint32_t n = 0; n <= x.cap; ++n) {
    f.level[n].resize(x.size(n));
    for (std::uint32_t e = 0; e < x.size(n); ++e) {
      f.level[n][e] = nerve_base.levels[n].key.find(x.levels[n].ref.row(e));
      if (f.level[n][e] == kNone) throw std::invalid_argument("ref_as_map: string outside the base nerve");
    }
  }
  return f;
}

PullbackResult pullback(const DiscreteSimplicialSpace& x, const DssMap& f,
                        const DiscreteSimplicialSpace& y, const DssMap& g, RefSide side) {
  if (x.cap != y.cap) throw std::invalid_argument("pullback: caps differ");
  PullbackResult out;
  auto& w = out.space;
  w.cap = x.cap;
  w.base = side == RefSide::kLeft ? x.base : y.base;
  w.levels.resize(w.cap + 1);
  out.left.level.resize(w.cap + 1);
  out.right.level.resize(w.cap + 1);
  std::vector<FlatTable> pairs(w.cap + 1);
  auto has_keys = [](const DiscreteSimplicialSpace& s) {
    bool any = false;
    for (const auto& lv : s.levels) {
      if (lv.key.data.size() != static_cast<std::size_t>(lv.size) * lv.key.width) return false;
      any = any || !lv.key.data.empty();
    }
    return any;
  };
  const bool keyed = has_keys(x) && has_keys(y);
  for (std::uint32_t n = 0; n <= w.cap; ++n) {
    std::uint32_t zmax = 0;
    for (auto z : g.level[n]) zmax = std::max(zmax, z + 1);
    for (auto z : f.level[n]) zmax = std::max(zmax, z + 1);
    // y grouped by image, ascending within groups
    std::vector<std::uint32_t> start(zmax + 1, 0), order(y.size(n));
    for (auto z : g.level[n]) ++start[z + 1];
    std::partial_sum(start.begin(), start.end(), start.begin());
    auto fill = start;
    for (std::uint32_t e = 0; e < y.size(n); ++e) order[fill[g.level[n][e]]++] = e;
    auto& pt = pairs[n];
    pt.width = 2;
    for (std::uint32_t a = 0; a < x.size(n); ++a) {
      std::uint32_t z = f.level[n][a];
      for (std::uint32_t i = start[z]; i < start[z + 1]; ++i) pt.push(Chain{a, order[i]});
    }
    auto& lv = w.levels[n];
    lv.size = pt.size();
    const auto& src = side == RefSide::kLeft ? x.levels[n].ref : y.levels[n].ref;
    lv.ref.width = n + 1;
    lv.ref.data.reserve(static_cast<std::size_t>(lv.size) * (n + 1));
    out.left.level[n].resize(lv.size);
    out.right.level[n].resize(lv.size);
    if (keyed) lv.key.width = x.levels[n].key.width + y.levels[n].key.width;
    for (std::uint32_t e = 0; e < lv.size; ++e) {
      auto a = pt.row(e)[0], b = pt.row(e)[1];
      out.left.level[n][e] = a;
      out.right.level[n][e] = b;
      lv.ref.push(src.row(side == RefSide::kLeft ? a : b));
      if (keyed) {
        const auto wx = x.levels[n].key.width;
        lv.key.data.insert(lv.key.data.end(), x.levels[n].key.row(a), x.levels[n].key.row(a) + wx);
        lv.key.data.insert(lv.key.data.end(), y.levels[n].key.row(b), y.levels[n].key.row(b) + y.levels[n].key.width);
      }
    }
  }
  for (std::uint32_t n = 0; n <= w.cap; ++n) {
    auto& lv = w.levels[n];
    const auto& pt = pairs[n];
    if (n >= 1) lv.face.resize(static_cast<std::size_t>(lv.size) * (n + 1));
    if (n < w.cap) lv.degen.resize(static_cast<std::size_t>(lv.size) * (n + 1));
    for (std::uint32_t e = 0; e < lv.size; ++e) {
      auto a = pt.row(e)[0], b = pt.row(e)[1];
      for (std::uint32_t i = 0; n >= 1 && i <= n; ++i) {
        std::uint32_t key[2] = {x.d(n, a, i), y.d(n, b, i)};
        lv.face[static_cast<std::size_t>(e) * (n + 1) + i] = pairs[n - 1].find(key);
      }
      for (std::uint32_t i = 0; n < w.cap && i <= n; ++i) {
        std::uint32_t key[2] = {x.s(n, a, i), y.s(n, b, i)};
        lv.degen[static_cast<std::size_t>(e) * (n + 1) + i] = pairs[n + 1].find(key);
      }
    }
  }
  return out;
}

TruncationResult truncate(const DiscreteSimplicialSpace& x, std::uint32_t k) {
  if (k > x.base->t) throw std::invalid_argument("truncate: k exceeds the base bound");
  TruncationResult out;
  auto& y = out.space;
  y.cap = x.cap;
  auto base = std::make_shared<FinSkeleton>(fin_skeleton(k));
  y.base = base;
  y.levels.resize(x.cap + 1);
  out.kept.level.resize(x.cap + 1);
  std::vector<std::vector<std::uint32_t>> renumber(x.cap + 1);
  for (std::uint32_t n = 0; n <= x.cap; ++n) {
    renumber[n].assign(x.size(n), kNone);
    auto& lv = y.levels[n];
    lv.ref.width = n + 1;
    lv.key.width = x.levels[n].key.width;
    for (std::uint32_t e = 0; e < x.size(n); ++e) {
      bool keep = true;
      for (std::uint32_t i = 0; i <= n && keep; ++i) keep = x.ref_vertex_size(n, e, i) <= k;
      if (!keep) continue;
      renumber[n][e] = lv.size++;
      out.kept.level[n].push_back(e);
      lv.ref.push(translate_ref(*x.base, *base, x.levels[n].ref.row(e), n + 1));
      if (!x.levels[n].key.data.empty()) lv.key.push(x.levels[n].key.row(e));
    }
  }
  for (std::uint32_t n = 0; n <= x.cap; ++n) {
    auto& lv = y.levels[n];
    for (auto e : out.kept.level[n]) {
      for (std::uint32_t i = 0; n >= 1 && i <= n; ++i) lv.face.push_back(renumber[n - 1][x.d(n, e, i)]);
      for (std::uint32_t i = 0; n < x.cap && i <= n; ++i) lv.degen.push_back(renumber[n + 1][x.s(n, e, i)]);
    }
  }
  return out;
}

namespace {

// Positions of [n] whose vertex has size <= k.
std::vector<std::uint32_t> small_vertices(const FinSkeleton& b, const std::uint32_t* sigma,
                                          std::uint32_t n, std::uint32_t k) {
  std::vector<std::uint32_t> s;
  for (std::uint32_t i = 0; i <= n; ++i) {
    std::uint32_t o = i == 0 ? sigma[0] : b.fin.cat.dst(sigma[i]);
    if (b.fin.obj_size[o] <= k) s.push_back(i);
  }
  return s;
}

Monotone inclusion_of(const std::vector<std::uint32_t>& s, std::uint32_t n) {
  std::vector<std::uint8_t> v(s.begin(), s.end());
  return Monotone(n, std::move(v));
}

}  // namespace

TauStar tau_lower_star(const DiscreteSimplicialSpace& w, std::uint32_t t, std::uint64_t max_base) {
  const std::uint32_t k = w.base->t;
  if (k > t) throw std::invalid_argument("tau_lower_star: t below the truncation level");
  auto base = std::make_shared<FinSkeleton>(fin_skeleton(t));
  const FinCat& bc = base->fin.cat;
  const std::uint32_t cap = w.cap;
  std::vector<FlatTable> bl(cap + 1);
  for (std::uint32_t o = 0; o < bc.num_objects(); ++o) bl[0].data.push_back(o);
  for (std::uint32_t n = 1; n <= cap; ++n) {
    bl[n] = extend_chains(bc, bl[n - 1]);
    if (bl[n].size() > max_base) throw std::length_error("tau_lower_star: base level too large");
  }
  // W elements grouped by reference string
  std::vector<std::unordered_map<Chain, std::vector<std::uint32_t>, VecHash>> by_ref(cap + 1);
  for (std::uint32_t n = 0; n <= cap; ++n)
    for (std::uint32_t e = 0; e < w.size(n); ++e) by_ref[n][w.ref(n, e)].push_back(e);

  TauStar out;
  auto& y = out.space;
  y.cap = cap;
  y.base = base;
  y.levels.resize(cap + 1);
  out.sigma.resize(cap + 1);
  out.fiber.resize(cap + 1);
  std::vector<std::vector<std::uint32_t>> offset(cap + 1);
  for (std::uint32_t n = 0; n <= cap; ++n) {
    auto& lv = y.levels[n];
    lv.ref.width = n + 1;
    offset[n].resize(bl[n].size() + 1);
    for (std::uint32_t sg = 0; sg < bl[n].size(); ++sg) {
      offset[n][sg] = lv.size;
      const std::uint32_t* row = bl[n].row(sg);
      auto sv = small_vertices(*base, row, n, k);
      if (sv.empty()) {
        out.sigma[n].push_back(sg);
        out.fiber[n].push_back(kNone);
        lv.ref.push(row);
        ++lv.size;
        continue;
      }
      Chain rho = chain_apply(bc, bl[n].get(sg), inclusion_of(sv, n));
      Chain rk = translate_ref(*base, *w.base, rho.data(), static_cast<std::uint32_t>(rho.size()));
      auto it = by_ref[sv.size() - 1].find(rk);
      if (it == by_ref[sv.size() - 1].end()) continue;
      for (auto e : it->second) {
        out.sigma[n].push_back(sg);
        out.fiber[n].push_back(e);
        lv.ref.push(row);
        ++lv.size;
      }
    }
    offset[n][bl[n].size()] = lv.size;
  }
  // theta^* on (sigma, w) for theta : [p] -> [n]
  auto act = [&](std::uint32_t n, std::uint32_t e, const Monotone& theta) -> std::uint32_t {
    const std::uint32_t p = theta.dom_top();
    std::uint32_t sg = out.sigma[n][e];
    Chain s2 = chain_apply(bc, bl[n].get(sg), theta);
    std::uint32_t sg2 = bl[p].find(s2);
    std::uint32_t first = offset[p][sg2], last = offset[p][sg2 + 1];
    auto sv = small_vertices(*base, bl[n].row(sg), n, k);
    std::vector<std::uint8_t> restricted;
    for (std::uint32_t j = 0; j <= p; ++j) {
      auto pos = std::find(sv.begin(), sv.end(), theta.v[j]);
      if (pos != sv.end()) restricted.push_back(static_cast<std::uint8_t>(pos - sv.begin()));
    }
    if (restricted.empty()) return first;  // the point over sg2
    std::uint32_t w2 = w.apply(static_cast<std::uint32_t>(sv.size()) - 1, out.fiber[n][e],
                               Monotone(static_cast<std::uint32_t>(sv.size()) - 1, restricted));
    auto beg = out.fiber[p].begin() + first, end = out.fiber[p].begin() + last;
    auto it = std::lower_bound(beg, end, w2);
    if (it == end || *it != w2) throw std::logic_error("tau_lower_star: induced element missing");
    return first + static_cast<std::uint32_t>(it - beg);
  };
  for (std::uint32_t n = 0; n <= cap; ++n) {
    auto& lv = y.levels[n];
    for (std::uint32_t e = 0; e < lv.size; ++e) {
      for (std::uint32_t i = 0; n >= 1 && i <= n; ++i) lv.face.push_back(act(n, e, Monotone::coface(n, i)));
      for (std::uint32_t i = 0; n < cap && i <= n; ++i) lv.degen.push_back(act(n, e, Monotone::codegeneracy(n, i)));
    }
  }
  return out;
}

std::vector<DssMap> enumerate_maps(const DiscreteSimplicialSpace& x, const DiscreteSimplicialSpace& y,
                                   std::size_t limit) {
  if (x.cap != y.cap || x.base->t != y.base->t) throw std::invalid_argument("enumerate_maps: shapes differ");
  struct Slot {
    std::uint32_t n, e;
  };
  std::vector<Slot> slots;
  for (std::uint32_t n = 0; n <= x.cap; ++n)
    for (std::uint32_t e = 0; e < x.size(n); ++e) slots.push_back({n, e});
  // degeneracy constraints: (source element, index) with s_i(source) = e
  std::vector<std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>> degen_of(x.cap + 1);
  for (std::uint32_t n = 0; n <= x.cap; ++n) degen_of[n].resize(x.size(n));
  for (std::uint32_t n = 0; n < x.cap; ++n)
    for (std::uint32_t e = 0; e < x.size(n); ++e)
      for (std::uint32_t i = 0; i <= n; ++i) degen_of[n + 1][x.s(n, e, i)].push_back({e, i});
  std::vector<std::vector<std::vector<std::uint32_t>>> cands(x.cap + 1);
  for (std::uint32_t n = 0; n <= x.cap; ++n) {
    std::unordered_map<Chain, std::vector<std::uint32_t>, VecHash> by_ref;
    for (std::uint32_t e = 0; e < y.size(n); ++e) by_ref[y.ref(n, e)].push_back(e);
    cands[n].resize(x.size(n));
    for (std::uint32_t e = 0; e < x.size(n); ++e) {
      auto it = by_ref.find(x.ref(n, e));
      if (it != by_ref.end()) cands[n][e] = it->second;
    }
  }
  std::vector<DssMap> out;
  DssMap cur;
  cur.level.resize(x.cap + 1);
  for (std::uint32_t n = 0; n <= x.cap; ++n) cur.level[n].assign(x.size(n), kNone);
  auto fits = [&](std::uint32_t n, std::uint32_t e, std::uint32_t c) {
    for (std::uint32_t i = 0; n >= 1 && i <= n; ++i)
      if (y.d(n, c, i) != cur.level[n - 1][x.d(n, e, i)]) return false;
    for (auto [src, i] : degen_of[n][e])
      if (y.s(n - 1, cur.level[n - 1][src], i) != c) return false;
    return true;
  };
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (out.size() >= limit) return;
    if (k == slots.size()) {
      out.push_back(cur);
      return;
    }
    auto [n, e] = slots[k];
    for (auto c : cands[n][e]) {
      if (!fits(n, e, c)) continue;
      cur.level[n][e] = c;
      self(self, k + 1);
    }
    cur.level[n][e] = kNone;
  };
  rec(rec, 0);
  return out;
}

AdjunctionReport check_truncation_adjunction(const DiscreteSimplicialSpace& x,
                                             const DiscreteSimplicialSpace& w, std::uint32_t k) {
  AdjunctionReport rep;
  if (w.base->t != k) throw std::invalid_argument("check_truncation_adjunction: W must live over Fin_{<=k}");
  auto tr = truncate(x, k);
  auto ts = tau_lower_star(w, x.base->t);
  auto left = enumerate_maps(tr.space, w);
  auto right = enumerate_maps(x, ts.space);
  rep.left_maps = left.size();
  rep.right_maps = right.size();
  std::vector<std::vector<std::uint32_t>> old_to_new(x.cap + 1);
  for (std::uint32_t n = 0; n <= x.cap; ++n) {
    old_to_new[n].assign(x.size(n), kNone);
    for (std::uint32_t i = 0; i < tr.kept.level[n].size(); ++i) old_to_new[n][tr.kept.level[n][i]] = i;
  }
  const FinSkeleton& b = *ts.space.base;
  std::set<std::vector<std::vector<std::uint32_t>>> right_set;
  for (auto& f : right) right_set.insert(f.level);
  std::set<std::vector<std::vector<std::uint32_t>>> images;
  for (const auto& g : left) {
    DssMap f;
    f.level.resize(x.cap + 1);
    for (std::uint32_t n = 0; n <= x.cap; ++n)
      for (std::uint32_t e = 0; e < x.size(n); ++e) {
        Chain r = translate_ref(*x.base, b, x.levels[n].ref.row(e), n + 1);
        // locate sigma = ref(e) among the elements of tau_*W
        std::uint32_t target = kNone;
        auto sv = small_vertices(b, r.data(), n, k);
        std::uint32_t fib = kNone;
        if (!sv.empty()) {
          std::uint32_t restricted = x.apply(n, e, inclusion_of(sv, n));
          fib = g.level[sv.size() - 1][old_to_new[sv.size() - 1][restricted]];
        }
        for (std::uint32_t c = 0; c < ts.space.size(n); ++c)
          if (ts.fiber[n][c] == fib && ts.space.ref(n, c) == r) {
            target = c;
            break;
          }
        f.level[n].push_back(target);
      }
    bool ok = true;
    for (auto& lv : f.level)
      for (auto v : lv) ok = ok && v != kNone;
    if (!ok) {
      add_error(rep.errors, 8, "adjunct has no value on some element");
      continue;
    }
    auto errs = check_dss_map(x, ts.space, f, true);
    for (auto& s : errs) add_error(rep.errors, 8, "adjunct is not a map: " + s);
    if (!right_set.count(f.level)) add_error(rep.errors, 8, "adjunct missing from the enumeration");
    images.insert(f.level);
  }
  rep.bijective = rep.errors.empty() && images.size() == left.size() && left.size() == right.size();
  return rep;
}

SegalReport segal_check(const DiscreteSimplicialSpace& x) {
  SegalReport rep;
  rep.level_size.resize(x.cap + 1);
  rep.spine_count.resize(x.cap + 1);
  for (std::uint32_t n = 0; n <= x.cap; ++n) rep.level_size[n] = x.size(n);
  if (x.cap < 1) return rep;
  const std::uint32_t v = x.size(0);
  std::vector<std::uint64_t> cnt(v, 1);
  rep.spine_count[0] = v;
  rep.spine_count[1] = x.size(1);
  for (std::uint32_t n = 1; n <= x.cap; ++n) {
    std::vector<std::uint64_t> next(v, 0);
    for (std::uint32_t e = 0; e < x.size(1); ++e) next[x.d(1, e, 0)] += cnt[x.d(1, e, 1)];
    cnt = std::move(next);
    if (n >= 2) rep.spine_count[n] = std::accumulate(cnt.begin(), cnt.end(), std::uint64_t{0});
  }
  for (std::uint32_t n = 2; n <= x.cap; ++n) {
    std::vector<std::vector<std::uint32_t>> plans;
    for (std::uint32_t j = 1; j <= n; ++j) plans.push_back(face_plan(edge_inclusion(n, j)));
    FlatTable spines;
    spines.width = n;
    Chain sp(n);
    for (std::uint32_t e = 0; e < x.size(n); ++e) {
      for (std::uint32_t j = 0; j < n; ++j) sp[j] = apply_faces(x, n, e, plans[j]);
      spines.push(sp);
    }
    std::vector<std::uint32_t> idx(x.size(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
      return std::lexicographical_compare(spines.row(a), spines.row(a) + n, spines.row(b), spines.row(b) + n);
    });
    std::uint64_t dups = 0;
    for (std::size_t i = 1; i < idx.size(); ++i)
      if (std::equal(spines.row(idx[i]), spines.row(idx[i]) + n, spines.row(idx[i - 1]))) ++dups;
    if (dups) {
      rep.ok = false;
      add_error(rep.errors, 8, "spine map not injective in degree " + std::to_string(n));
    }
    if (rep.spine_count[n] != x.size(n) - dups) {
      rep.ok = false;
      add_error(rep.errors, 8, "spine map not surjective in degree " + std::to_string(n) + ": " +
                                   std::to_string(x.size(n) - dups) + " of " + std::to_string(rep.spine_count[n]));
    }
  }
  return rep;
}

ConservativeReport conservative_check(const DiscreteSimplicialSpace& x, std::size_t max_witnesses) {
  ConservativeReport rep;
  for (std::uint32_t n = 1; n <= x.cap; ++n)
    for (std::uint32_t y = 0; y < x.size(n); ++y)
      for (std::uint32_t j = 0; j < n; ++j) {
        if (!x.ref_arrow_is_identity(n, y, j)) continue;
        if (x.s(n - 1, x.d(n, y, j), j) == y) continue;
        rep.ok = false;
        ++rep.violations;
        if (rep.witnesses.size() < max_witnesses) rep.witnesses.push_back({n, y, j});
      }
  return rep;
}

ConservativeReport cartesian_along(const DiscreteSimplicialSpace& x, const Monotone& sigma,
                                   std::size_t max_witnesses) {
  if (!sigma.is_surjective()) throw std::invalid_argument("cartesian_along: not a surjection");
  ConservativeReport rep;
  const std::uint32_t p = sigma.dom_top(), q = sigma.cod_top;
  if (p > x.cap) return rep;
  std::vector<std::uint8_t> sec(q + 1);
  for (std::uint32_t i = p + 1; i-- > 0;) sec[sigma.v[i]] = static_cast<std::uint8_t>(i);
  Monotone section(p, sec);
  for (std::uint32_t y = 0; y < x.size(p); ++y) {
    bool over = true;
    for (std::uint32_t j = 0; j < p && over; ++j)
      if (sigma.v[j] == sigma.v[j + 1]) over = x.ref_arrow_is_identity(p, y, j);
    if (!over) continue;
    if (x.apply(q, x.apply(p, y, section), sigma) == y) continue;
    rep.ok = false;
    ++rep.violations;
    if (rep.witnesses.size() < max_witnesses) rep.witnesses.push_back({p, y, 0});
  }
  return rep;
}

std::vector<bool> he_edges(const DiscreteSimplicialSpace& x) {
  if (x.cap < 2) throw std::invalid_argument("he_edges: needs degree 2");
  std::unordered_map<std::uint64_t, std::uint32_t> spine;
  for (std::uint32_t e = 0; e < x.size(2); ++e)
    spine[(static_cast<std::uint64_t>(x.d(2, e, 2)) << 32) | x.d(2, e, 0)] = e;
  std::vector<std::vector<std::uint32_t>> out_edges(x.size(0));
  for (std::uint32_t e = 0; e < x.size(1); ++e) out_edges[x.d(1, e, 1)].push_back(e);
  auto composite_is_unit = [&](std::uint32_t f, std::uint32_t g, std::uint32_t at) {
    auto it = spine.find((static_cast<std::uint64_t>(f) << 32) | g);
    return it != spine.end() && x.d(2, it->second, 1) == x.s(0, at, 0);
  };
  std::vector<bool> he(x.size(1), false);
  for (std::uint32_t f = 0; f < x.size(1); ++f) {
    std::uint32_t a = x.d(1, f, 1), b = x.d(1, f, 0);
    for (auto g : out_edges[b]) {
      if (x.d(1, g, 0) != a) continue;
      if (composite_is_unit(f, g, a) && composite_is_unit(g, f, b)) {
        he[f] = true;
        break;
      }
    }
  }
  return he;
}

CompletenessReport fiberwise_complete_check(const DiscreteSimplicialSpace& x, bool use_d0) {
  CompletenessReport rep;
  auto seg = segal_check(x);
  if (!seg.ok || x.cap < 2) {
    rep.ok = rep.segal = false;
    rep.errors = seg.errors;
    if (x.cap < 2) rep.errors.push_back("fiberwise completeness needs degree 2");
    return rep;
  }
  auto he = he_edges(x);
  const FinCatOverFin& b = x.base->fin;
  const std::uint32_t side = use_d0 ? 0 : 1;
  std::vector<std::vector<std::uint32_t>> refs(x.size(0));
  for (std::uint32_t f = 0; f < x.size(1); ++f) {
    if (!he[f]) continue;
    ++rep.he_count;
    std::uint32_t m = x.levels[1].ref.row(f)[1];
    if (!b.mor_map[m].is_bijective()) {
      rep.ok = false;
      add_error(rep.errors, 8, "he edge " + std::to_string(f) + " lies over a non-invertible map");
      continue;
    }
    refs[x.d(1, f, side)].push_back(m);
  }
  for (std::uint32_t v = 0; v < x.size(0); ++v) {
    auto& r = refs[v];
    std::sort(r.begin(), r.end());
    bool dup = std::adjacent_find(r.begin(), r.end()) != r.end();
    std::uint64_t perms = 1;
    for (std::uint32_t i = 2; i <= x.ref_vertex_size(0, v, 0); ++i) perms *= i;
    if (dup || r.size() != perms) {
      rep.ok = false;
      add_error(rep.errors, 8, "he edges at vertex " + std::to_string(v) + " cover " + std::to_string(r.size()) +
                                   " of " + std::to_string(perms) + " base isomorphisms" +
                                   (dup ? " with repeats" : ""));
    }
  }
  return rep;
}

InvertibilityReport invertibility_criterion(const DiscreteSimplicialSpace& x) {
  InvertibilityReport rep;
  auto he = he_edges(x);
  for (std::uint32_t f = 0; f < x.size(1); ++f) {
    bool iso = x.base->fin.mor_map[x.levels[1].ref.row(f)[1]].is_bijective();
    rep.over_iso += iso;
    rep.he += he[f];
    if (iso != he[f]) {
      rep.agree = false;
      if (rep.disagreeing.size() < 8) rep.disagreeing.push_back(f);
    }
  }
  return rep;
}

void to_json(nlohmann::json& j, const DiscreteSimplicialSpace& x) {
  j = nlohmann::json::object();
  j["cap"] = x.cap;
  j["base"] = x.base->t;
  auto levels = nlohmann::json::array();
  for (std::uint32_t n = 0; n <= x.cap; ++n) {
    const auto& lv = x.levels[n];
    nlohmann::json l;
    l["deg"] = n;
    auto elems = nlohmann::json::array();
    for (std::uint32_t e = 0; e < lv.size; ++e) {
      if (!lv.key.data.empty())
        elems.push_back(lv.key.get(e));
      else
        elems.push_back(e);
    }
    l["elems"] = std::move(elems);
    l["ops"] = {{"face", lv.face}, {"degen", lv.degen}};
    auto ref = nlohmann::json::array();
    for (std::uint32_t e = 0; e < lv.size; ++e) ref.push_back(lv.ref.get(e));
    l["ref"] = std::move(ref);
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
}

DiscreteSimplicialSpace dss_from_json(const nlohmann::json& j) {
  DiscreteSimplicialSpace x;
  x.cap = j.at("cap").get<std::uint32_t>();
  x.base = std::make_shared<FinSkeleton>(fin_skeleton(j.at("base").get<std::uint32_t>()));
  const auto& levels = j.at("levels");
  if (levels.size() != x.cap + 1) throw std::invalid_argument("dss_from_json: level count");
  x.levels.resize(x.cap + 1);
  for (std::uint32_t n = 0; n <= x.cap; ++n) {
    const auto& l = levels.at(n);
    if (l.at("deg").get<std::uint32_t>() != n) throw std::invalid_argument("dss_from_json: levels out of order");
    auto& lv = x.levels[n];
    const auto& elems = l.at("elems");
    lv.size = static_cast<std::uint32_t>(elems.size());
    if (lv.size && elems[0].is_array()) {
      lv.key.width = static_cast<std::uint32_t>(elems[0].size());
      for (const auto& e : elems) {
        auto v = e.get<Chain>();
        if (v.size() != lv.key.width) throw std::invalid_argument("dss_from_json: ragged keys");
        lv.key.push(v);
      }
    }
    lv.face = l.at("ops").at("face").get<std::vector<std::uint32_t>>();
    lv.degen = l.at("ops").at("degen").get<std::vector<std::uint32_t>>();
    lv.ref.width = n + 1;
    for (const auto& r : l.at("ref")) {
      auto v = r.get<Chain>();
      if (v.size() != n + 1) throw std::invalid_argument("dss_from_json: ref width");
      for (std::uint32_t i = 0; i <= n; ++i) {
        std::uint32_t bound = i == 0 ? x.base->fin.cat.num_objects() : x.base->fin.cat.num_morphisms();
        if (v[i] >= bound) throw std::invalid_argument("dss_from_json: ref out of range");
      }
      lv.ref.push(v);
    }
  }
  return x;
}

}  // namespace configprod
