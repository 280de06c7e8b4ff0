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

#include "configprod/fincat.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <stdexcept>

namespace configprod {

namespace {

constexpr std::uint32_t kDenseLimit = 3000;

class ErrorSink {
 public:
  explicit ErrorSink(std::size_t max) : max_(max) {}
  bool full() const { return errs_.size() >= max_; }
  void add(std::string s) {
    if (!full()) errs_.push_back(std::move(s));
  }
  std::vector<std::string> take() { return std::move(errs_); }

 private:
  std::size_t max_;
  std::vector<std::string> errs_;
};

}  // namespace

std::uint32_t FinCat::add_object(std::string label) {
  auto o = static_cast<std::uint32_t>(ids_.size());
  ids_.push_back(kNone);
  out_.emplace_back();
  in_.emplace_back();
  obj_label_.push_back(std::move(label));
  auto m = add_morphism(o, o, "id");
  ids_[o] = m;
  return o;
}

std::uint32_t FinCat::add_morphism(std::uint32_t src, std::uint32_t dst, std::string label) {
  if (src >= ids_.size() || dst >= ids_.size()) throw std::out_of_range("add_morphism: bad endpoint");
  auto m = static_cast<std::uint32_t>(src_.size());
  src_.push_back(src);
  dst_.push_back(dst);
  mor_label_.push_back(std::move(label));
  out_[src].push_back(m);
  in_[dst].push_back(m);
  dense_.clear();
  return m;
}

void FinCat::set_composite(std::uint32_t g, std::uint32_t f, std::uint32_t h) {
  comp_[key(g, f)] = h;
  if (!dense_.empty()) dense_[static_cast<std::size_t>(g) * num_morphisms() + f] = h;
}

void FinCat::erase_composite(std::uint32_t g, std::uint32_t f) {
  comp_.erase(key(g, f));
  if (!dense_.empty()) dense_[static_cast<std::size_t>(g) * num_morphisms() + f] = kNone;
}

void FinCat::erase_morphism(std::uint32_t m) {
  if (m >= num_morphisms() || is_identity(m)) throw std::invalid_argument("erase_morphism: not a non-identity morphism");
  auto shift = [m](std::uint32_t x) { return x > m ? x - 1 : x; };
  std::unordered_map<std::uint64_t, std::uint32_t> comp;
  for (const auto& [k, h] : comp_) {
    auto g = static_cast<std::uint32_t>(k >> 32);
    auto f = static_cast<std::uint32_t>(k & 0xffffffffu);
    if (g == m || f == m || h == m) continue;
    comp[key(shift(g), shift(f))] = shift(h);
  }
  comp_ = std::move(comp);
  src_.erase(src_.begin() + m);
  dst_.erase(dst_.begin() + m);
  mor_label_.erase(mor_label_.begin() + m);
  for (auto& id : ids_) id = shift(id);
  for (auto& v : out_) v.clear();
  for (auto& v : in_) v.clear();
  for (std::uint32_t x = 0; x < num_morphisms(); ++x) {
    out_[src_[x]].push_back(x);
    in_[dst_[x]].push_back(x);
  }
  dense_.clear();
}

std::uint32_t FinCat::compose(std::uint32_t g, std::uint32_t f) const {
  if (dst_[f] != src_[g]) return kNone;
  if (is_identity(f)) return g;
  if (is_identity(g)) return f;
  if (!dense_.empty()) return dense_[static_cast<std::size_t>(g) * num_morphisms() + f];
  auto it = comp_.find(key(g, f));
  return it == comp_.end() ? kNone : it->second;
}

void FinCat::finalize() {
  dense_.clear();
  if (num_morphisms() > kDenseLimit) return;
  dense_.assign(static_cast<std::size_t>(num_morphisms()) * num_morphisms(), kNone);
  for (const auto& [k, h] : comp_)
    dense_[(k >> 32) * num_morphisms() + (k & 0xffffffffu)] = h;
}

std::vector<std::string> FinCat::validate(std::size_t max_errors) const {
  ErrorSink errs(max_errors);
  for (std::uint32_t o = 0; o < num_objects(); ++o)
    if (ids_[o] >= num_morphisms() || src_[ids_[o]] != o || dst_[ids_[o]] != o)
      errs.add("identity of object " + std::to_string(o) + " has wrong endpoints");
  for (const auto& [k, h] : comp_) {
    auto g = static_cast<std::uint32_t>(k >> 32);
    auto f = static_cast<std::uint32_t>(k & 0xffffffffu);
    if (g >= num_morphisms() || f >= num_morphisms() || h >= num_morphisms()) {
      errs.add("composition entry out of range");
      continue;
    }
    if (dst_[f] != src_[g] || src_[h] != src_[f] || dst_[h] != dst_[g])
      errs.add("composite " + std::to_string(g) + "o" + std::to_string(f) + "=" + std::to_string(h) +
               " has wrong endpoints");
  }
  for (std::uint32_t f = 0; f < num_morphisms() && !errs.full(); ++f) {
    if (is_identity(f)) continue;
    for (auto g : out_[dst_[f]]) {
      if (is_identity(g)) continue;
      auto gf = compose(g, f);
      if (gf == kNone) {
        errs.add("composite " + std::to_string(g) + "o" + std::to_string(f) + " is undefined");
        continue;
      }
      for (auto h : out_[dst_[g]]) {
        if (is_identity(h)) continue;
        auto hg = compose(h, g);
        if (hg == kNone) continue;  // reported when f = g
        auto a = compose(h, gf), b = compose(hg, f);
        if (a != b || a == kNone)
          errs.add("associativity fails on (" + std::to_string(f) + "," + std::to_string(g) + "," +
                   std::to_string(h) + ")");
      }
    }
  }
  return errs.take();
}

std::uint32_t FinCatOverFin::add_object(std::uint32_t size, std::string label) {
  obj_size.push_back(size);
  mor_map.push_back(FinMap::identity(size));
  return cat.add_object(std::move(label));
}

std::uint32_t FinCatOverFin::add_morphism(std::uint32_t src, std::uint32_t dst, FinMap f,
                                          std::string label) {
  mor_map.push_back(std::move(f));
  return cat.add_morphism(src, dst, std::move(label));
}

std::uint32_t FinCatOverFin::max_size() const {
  std::uint32_t m = 0;
  for (auto s : obj_size) m = std::max(m, s);
  return m;
}

std::vector<std::string> FinCatOverFin::validate(std::size_t max_errors) const {
  auto errs = cat.validate(max_errors);
  ErrorSink sink(max_errors > errs.size() ? max_errors - errs.size() : 0);
  for (std::uint32_t m = 0; m < cat.num_morphisms(); ++m) {
    const auto& f = mor_map[m];
    if (f.dom != obj_size[cat.src(m)] || f.cod != obj_size[cat.dst(m)] || !f.valid())
      sink.add("reference of morphism " + std::to_string(m) + " has wrong shape");
    else if (cat.is_identity(m) && !f.is_identity())
      sink.add("identity " + std::to_string(m) + " is not sent to an identity");
  }
  for (const auto& [k, h] : cat.composites()) {
    auto g = static_cast<std::uint32_t>(k >> 32);
    auto f = static_cast<std::uint32_t>(k & 0xffffffffu);
    if (g >= mor_map.size() || f >= mor_map.size() || h >= mor_map.size()) continue;
    if (mor_map[g].dom != mor_map[f].cod) continue;
    if (!(compose(mor_map[g], mor_map[f]) == mor_map[h]))
      sink.add("reference does not preserve composite " + std::to_string(g) + "o" + std::to_string(f));
  }
  for (auto& e : sink.take()) errs.push_back(std::move(e));
  return errs;
}

std::vector<std::string> check_functor(const FinCat& c, const FinCat& d, const Functor& f,
                                       std::size_t max_errors) {
  ErrorSink errs(max_errors);
  if (f.obj.size() != c.num_objects() || f.mor.size() != c.num_morphisms()) {
    errs.add("functor tables have wrong size");
    return errs.take();
  }
  for (std::uint32_t m = 0; m < c.num_morphisms(); ++m) {
    auto fm = f.mor[m];
    if (fm >= d.num_morphisms() || d.src(fm) != f.obj[c.src(m)] || d.dst(fm) != f.obj[c.dst(m)])
      errs.add("morphism " + std::to_string(m) + " is sent to a morphism with wrong endpoints");
    else if (c.is_identity(m) && !d.is_identity(fm))
      errs.add("identity " + std::to_string(m) + " is not preserved");
  }
  for (std::uint32_t x = 0; x < c.num_morphisms() && !errs.full(); ++x) {
    if (c.is_identity(x)) continue;
    for (auto y : c.out(c.dst(x))) {
      if (c.is_identity(y)) continue;
      auto yx = c.compose(y, x);
      if (yx == kNone) continue;
      if (f.mor[y] >= d.num_morphisms() || f.mor[x] >= d.num_morphisms()) continue;  // reported above
      if (d.compose(f.mor[y], f.mor[x]) != f.mor[yx])
        errs.add("composite " + std::to_string(y) + "o" + std::to_string(x) + " is not preserved");
    }
  }
  return errs.take();
}

std::uint32_t FinSkeleton::lookup(const FinMap& f) const {
  auto it = index.find(f);
  return it == index.end() ? kNone : it->second;
}

FinSkeleton fin_skeleton(std::uint32_t t) {
  FinSkeleton s;
  s.t = t;
  for (std::uint32_t a = 0; a <= t; ++a) {
    s.fin.add_object(a, std::to_string(a));
    s.index[FinMap::identity(a)] = s.fin.cat.identity(a);
  }
  for (std::uint32_t a = 0; a <= t; ++a)
    for (std::uint32_t b = 0; b <= t; ++b)
      for (auto& f : all_maps(a, b)) {
        if (a == b && f.is_identity()) continue;
        auto label = f.str();
        auto m = s.fin.add_morphism(a, b, f, std::move(label));
        s.index[s.fin.mor_map[m]] = m;
      }
  const auto& c = s.fin.cat;
  for (std::uint32_t f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f)) continue;
    for (auto g : c.out(c.dst(f))) {
      if (c.is_identity(g)) continue;
      s.fin.cat.set_composite(g, f, s.lookup(compose(s.fin.mor_map[g], s.fin.mor_map[f])));
    }
  }
  s.fin.cat.finalize();
  return s;
}

std::vector<Chain> nondegenerate_chains(const FinCat& c, std::uint32_t n) {
  std::vector<Chain> level;
  for (std::uint32_t o = 0; o < c.num_objects(); ++o) level.push_back({o});
  for (std::uint32_t k = 1; k <= n; ++k) {
    std::vector<Chain> next;
    for (const auto& ch : level) {
      std::uint32_t end = k == 1 ? ch[0] : c.dst(ch.back());
      for (auto m : c.out(end)) {
        if (c.is_identity(m)) continue;
        Chain e = ch;
        e.push_back(m);
        next.push_back(std::move(e));
      }
    }
    level = std::move(next);
  }
  return level;
}

std::uint64_t count_chains(const FinCat& c, std::uint32_t n) {
  std::vector<std::uint64_t> ways(c.num_objects(), 1);
  for (std::uint32_t k = 0; k < n; ++k) {
    std::vector<std::uint64_t> next(c.num_objects(), 0);
    for (std::uint32_t m = 0; m < c.num_morphisms(); ++m) next[c.dst(m)] += ways[c.src(m)];
    ways = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto w : ways) total += w;
  return total;
}

CappedSSet nerve(const FinCat& c, std::uint32_t cap, bool with_labels) {
  CappedSSet s;
  s.cap = cap;
  s.count.assign(cap + 1, 0);
  s.faces.assign(cap + 1, {});
  if (with_labels) s.labels.assign(cap + 1, {});
  std::vector<std::unordered_map<Chain, std::uint32_t, VecHash>> index(cap + 1);
  std::vector<Chain> level;
  for (std::uint32_t n = 0; n <= cap; ++n) {
    if (n == 0) {
      for (std::uint32_t o = 0; o < c.num_objects(); ++o) level.push_back({o});
    } else {
      std::vector<Chain> next;
      for (const auto& ch : level) {
        std::uint32_t end = n == 1 ? ch[0] : c.dst(ch.back());
        for (auto m : c.out(end)) {
          if (c.is_identity(m)) continue;
          Chain e = ch;
          e.push_back(m);
          next.push_back(std::move(e));
        }
      }
      level = std::move(next);
    }
    s.count[n] = level.size();
    for (std::uint32_t i = 0; i < level.size(); ++i) index[n][level[i]] = i;
    if (with_labels)
      for (const auto& ch : level) {
        std::string l;
        for (std::size_t i = 0; i < ch.size(); ++i)
          l += (i ? "," : "") + (i == 0 ? "o" + std::to_string(ch[0]) : c.morphism_label(ch[i]));
        s.labels[n].push_back(std::move(l));
      }
    if (n == 0) continue;
    auto& fc = s.faces[n];
    fc.reserve(level.size() * (n + 1));
    for (const auto& ch : level) {
      for (std::uint32_t i = 0; i <= n; ++i) {
        Chain f;
        std::uint32_t mask = 0;
        if (n == 1) {
          f = {i == 0 ? c.dst(ch[1]) : c.src(ch[1])};
        } else if (i == 0) {
          f.push_back(c.src(ch[2]));
          f.insert(f.end(), ch.begin() + 2, ch.end());
        } else if (i == n) {
          f.assign(ch.begin(), ch.end() - 1);
        } else {
          auto h = c.compose(ch[i + 1], ch[i]);
          if (h == kNone) throw std::domain_error("nerve: missing composite");
          f.assign(ch.begin(), ch.begin() + i);
          if (c.is_identity(h))
            mask = 1u << (i - 1);
          else
            f.push_back(h);
          f.insert(f.end(), ch.begin() + i + 2, ch.end());
        }
        auto d = static_cast<std::uint32_t>(f.size()) - 1;
        fc.push_back(Face{index[d].at(f), mask});
      }
    }
  }
  return s;
}

CommaResult comma(const FinCatOverFin& c, std::uint32_t x) {
  CommaResult r;
  const auto& cc = c.cat;
  std::unordered_map<std::uint32_t, std::uint32_t> obj_of;  // morphism into x -> comma object
  for (auto h : cc.in(x)) {
    auto o = r.comma.add_object(c.obj_size[cc.src(h)], cc.morphism_label(h));
    obj_of[h] = o;
    r.object_morphism.push_back(h);
    r.forget.obj.push_back(cc.src(h));
    r.forget.mor.push_back(cc.identity(cc.src(h)));
  }
  // (underlying u, target comma object) -> comma morphism
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> mor_of;
  for (std::uint32_t t = 0; t < r.object_morphism.size(); ++t) {
    auto ht = r.object_morphism[t];
    mor_of[{cc.identity(cc.src(ht)), t}] = r.comma.cat.identity(t);
    for (auto u : cc.in(cc.src(ht))) {
      if (cc.is_identity(u)) continue;
      auto h = cc.compose(ht, u);
      if (h == kNone) continue;
      auto m = r.comma.add_morphism(obj_of.at(h), t, c.mor_map[u], cc.morphism_label(u));
      mor_of[{u, t}] = m;
      r.forget.mor.push_back(u);
    }
  }
  auto& k = r.comma.cat;
  for (std::uint32_t f = 0; f < k.num_morphisms(); ++f) {
    if (k.is_identity(f)) continue;
    for (auto g : k.out(k.dst(f))) {
      if (k.is_identity(g)) continue;
      auto w = cc.compose(r.forget.mor[g], r.forget.mor[f]);
      if (w == kNone) continue;
      auto it = mor_of.find({w, k.dst(g)});
      if (it != mor_of.end()) k.set_composite(g, f, it->second);
    }
  }
  k.finalize();
  return r;
}

Grothendieck grothendieck(const FinCat& d, const SetFunctor& f) {
  if (f.size.size() != d.num_objects() || f.act.size() != d.num_morphisms())
    throw std::invalid_argument("grothendieck: functor tables have wrong size");
  for (std::uint32_t g = 0; g < d.num_morphisms(); ++g) {
    const auto& a = f.act[g];
    if (a.size() != f.size[d.dst(g)]) throw std::invalid_argument("grothendieck: action has wrong domain");
    for (std::uint32_t y = 0; y < a.size(); ++y) {
      if (a[y] >= f.size[d.src(g)]) throw std::invalid_argument("grothendieck: action has wrong codomain");
      if (d.is_identity(g) && a[y] != y) throw std::invalid_argument("grothendieck: identity acts nontrivially");
    }
  }
  for (std::uint32_t g1 = 0; g1 < d.num_morphisms(); ++g1)
    for (auto g2 : d.out(d.dst(g1))) {
      auto h = d.compose(g2, g1);
      if (h == kNone) throw std::invalid_argument("grothendieck: index category is not closed");
      for (std::uint32_t z = 0; z < f.size[d.dst(g2)]; ++z)
        if (f.act[h][z] != f.act[g1][f.act[g2][z]])
          throw std::invalid_argument("grothendieck: functor does not preserve composites");
    }
  Grothendieck r;
  std::vector<std::uint32_t> offset(d.num_objects() + 1, 0);
  for (std::uint32_t a = 0; a < d.num_objects(); ++a) offset[a + 1] = offset[a] + f.size[a];
  for (std::uint32_t a = 0; a < d.num_objects(); ++a)
    for (std::uint32_t x = 0; x < f.size[a]; ++x) {
      r.cat.add_object(std::to_string(a) + ":" + std::to_string(x));
      r.object.emplace_back(a, x);
      r.project.obj.push_back(a);
      r.project.mor.push_back(d.identity(a));
    }
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> mor_of;  // (g, y) -> id
  for (std::uint32_t g = 0; g < d.num_morphisms(); ++g) {
    if (d.is_identity(g)) continue;
    for (std::uint32_t y = 0; y < f.size[d.dst(g)]; ++y) {
      auto m = r.cat.add_morphism(offset[d.src(g)] + f.act[g][y], offset[d.dst(g)] + y);
      mor_of[{g, y}] = m;
      r.project.mor.push_back(g);
    }
  }
  for (const auto& [gy1, m1] : mor_of) {
    auto [g1, y] = gy1;
    auto b = d.dst(g1);
    for (auto g2 : d.out(b)) {
      if (d.is_identity(g2)) continue;
      auto h = d.compose(g2, g1);
      for (std::uint32_t z = 0; z < f.size[d.dst(g2)]; ++z) {
        if (f.act[g2][z] != y) continue;
        auto m2 = mor_of.at({g2, z});
        auto comp = d.is_identity(h) ? r.cat.identity(offset[d.dst(g2)] + z) : mor_of.at({h, z});
        r.cat.set_composite(m2, m1, comp);
      }
    }
  }
  r.cat.finalize();
  return r;
}

std::uint32_t FiniteGroup::inv(std::uint32_t a) const {
  for (std::uint32_t b = 0; b < order; ++b)
    if (mul(a, b) == 0) return b;
  throw std::logic_error("FiniteGroup::inv: no inverse");
}

FiniteGroup FiniteGroup::product(const FiniteGroup& g, const FiniteGroup& h) {
  FiniteGroup p;
  p.order = g.order * h.order;
  p.mult.assign(static_cast<std::size_t>(p.order) * p.order, 0);
  for (std::uint32_t a = 0; a < g.order; ++a)
    for (std::uint32_t b = 0; b < h.order; ++b)
      for (std::uint32_t c = 0; c < g.order; ++c)
        for (std::uint32_t d = 0; d < h.order; ++d)
          p.mult[(a * h.order + b) * p.order + c * h.order + d] = g.mul(a, c) * h.order + h.mul(b, d);
  return p;
}

std::uint32_t PermGroup::find(const FinMap& p) const {
  for (std::uint32_t i = 0; i < elems.size(); ++i)
    if (elems[i] == p) return i;
  return kNone;
}

namespace {

std::uint64_t factorial(std::uint32_t n) {
  std::uint64_t f = 1;
  for (std::uint32_t i = 2; i <= n; ++i) f *= i;
  return f;
}

void fill_table(PermGroup& g) {
  std::map<FinMap, std::uint32_t> idx;
  for (std::uint32_t i = 0; i < g.elems.size(); ++i) idx[g.elems[i]] = i;
  g.group.order = static_cast<std::uint32_t>(g.elems.size());
  g.group.mult.assign(static_cast<std::size_t>(g.group.order) * g.group.order, 0);
  for (std::uint32_t a = 0; a < g.group.order; ++a)
    for (std::uint32_t b = 0; b < g.group.order; ++b)
      g.group.mult[a * g.group.order + b] = idx.at(compose(g.elems[a], g.elems[b]));
}

}  // namespace

PermGroup perm_group(std::uint32_t degree, const std::vector<FinMap>& generators) {
  for (const auto& p : generators)
    if (p.dom != degree || p.cod != degree || !p.valid() || !p.is_bijective())
      throw std::invalid_argument("perm_group: generator " + p.str() + " is not a permutation of " +
                                  std::to_string(degree));
  const std::uint64_t bound = factorial(degree);
  std::map<FinMap, bool> seen;
  std::deque<FinMap> todo{FinMap::identity(degree)};
  seen[todo.front()] = true;
  while (!todo.empty()) {
    auto p = todo.front();
    todo.pop_front();
    for (const auto& g : generators) {
      auto q = compose(g, p);
      if (seen.emplace(q, true).second) {
        if (seen.size() > bound) throw std::invalid_argument("perm_group: closure exceeds degree!");
        todo.push_back(q);
      }
    }
  }
  PermGroup g;
  g.degree = degree;
  for (const auto& [p, _] : seen) g.elems.push_back(p);
  std::stable_partition(g.elems.begin(), g.elems.end(), [](const FinMap& p) { return p.is_identity(); });
  fill_table(g);
  return g;
}

PermGroup symmetric_group(std::uint32_t degree) {
  std::vector<FinMap> gens;
  for (auto& p : all_maps(degree, degree))
    if (p.is_bijective()) gens.push_back(p);
  return perm_group(degree, gens);
}

PermGroup product_group(const PermGroup& g, const PermGroup& h) {
  PermGroup p;
  p.degree = g.degree * h.degree;
  for (const auto& a : g.elems)
    for (const auto& b : h.elems) {
      std::vector<std::uint32_t> img(p.degree);
      for (std::uint32_t i = 1; i <= g.degree; ++i)
        for (std::uint32_t j = 1; j <= h.degree; ++j)
          img[(i - 1) * h.degree + j - 1] = (a(i) - 1) * h.degree + b(j);
      p.elems.emplace_back(p.degree, std::move(img));
    }
  fill_table(p);
  return p;
}

std::vector<std::string> check_action(const FinCatOverFin& c, const GroupAction& a,
                                      std::size_t max_errors) {
  ErrorSink errs(max_errors);
  const auto& k = c.cat;
  const auto& G = a.group;
  if (a.obj.size() != G.order || a.mor.size() != G.order) {
    errs.add("action tables have wrong size");
    return errs.take();
  }
  for (std::uint32_t g = 0; g < G.order; ++g) {
    std::vector<bool> hit_o(k.num_objects(), false), hit_m(k.num_morphisms(), false);
    for (std::uint32_t x = 0; x < k.num_objects(); ++x) {
      auto y = a.obj[g][x];
      if (y >= k.num_objects() || hit_o[y]) {
        errs.add("element " + std::to_string(g) + " does not permute objects");
        break;
      }
      hit_o[y] = true;
      if (c.obj_size[y] != c.obj_size[x]) errs.add("action changes the size of object " + std::to_string(x));
      if (g == 0 && y != x) errs.add("unit acts nontrivially on object " + std::to_string(x));
    }
    for (std::uint32_t m = 0; m < k.num_morphisms(); ++m) {
      auto n = a.mor[g][m];
      if (n >= k.num_morphisms() || hit_m[n]) {
        errs.add("element " + std::to_string(g) + " does not permute morphisms");
        break;
      }
      hit_m[n] = true;
      if (k.src(n) != a.obj[g][k.src(m)] || k.dst(n) != a.obj[g][k.dst(m)])
        errs.add("action of " + std::to_string(g) + " breaks endpoints of " + std::to_string(m));
      if (!(c.mor_map[n] == c.mor_map[m])) errs.add("action changes the reference of " + std::to_string(m));
      if (g == 0 && n != m) errs.add("unit acts nontrivially on morphism " + std::to_string(m));
    }
    if (errs.full()) return errs.take();
    for (std::uint32_t h = 0; h < G.order; ++h) {
      auto gh = G.mul(g, h);
      for (std::uint32_t x = 0; x < k.num_objects(); ++x)
        if (a.obj[gh][x] != a.obj[g][a.obj[h][x]]) {
          errs.add("action is not multiplicative on objects");
          break;
        }
      for (std::uint32_t m = 0; m < k.num_morphisms(); ++m)
        if (a.mor[gh][m] != a.mor[g][a.mor[h][m]]) {
          errs.add("action is not multiplicative on morphisms");
          break;
        }
    }
    Functor f{a.obj[g], a.mor[g]};
    for (auto& e : check_functor(k, k, f, 2)) errs.add("element " + std::to_string(g) + ": " + e);
  }
  return errs.take();
}

Semidirect semidirect(const FinCatOverFin& c, const GroupAction& a) {
  if (auto errs = check_action(c, a, 1); !errs.empty())
    throw std::invalid_argument("semidirect: incompatible action: " + errs.front());
  const auto& k = c.cat;
  const auto& G = a.group;
  const std::uint32_t M = k.num_morphisms();
  Semidirect s;
  std::vector<std::uint32_t> index(static_cast<std::size_t>(G.order) * M, kNone);
  for (std::uint32_t x = 0; x < k.num_objects(); ++x) {
    s.cat.add_object(c.obj_size[x], k.object_label(x));
    index[k.identity(x)] = s.cat.cat.identity(x);
  }
  s.phi.assign(s.cat.cat.num_morphisms(), 0);
  s.elem.assign(s.cat.cat.num_morphisms(), 0);
  for (std::uint32_t x = 0; x < k.num_objects(); ++x) s.phi[s.cat.cat.identity(x)] = k.identity(x);
  for (std::uint32_t g = 0; g < G.order; ++g) {
    auto gi = G.inv(g);
    for (std::uint32_t p = 0; p < M; ++p) {
      if (g == 0 && k.is_identity(p)) continue;
      auto y = a.obj[gi][k.dst(p)];
      auto label = k.morphism_label(p) + (G.order > 1 ? "@" + std::to_string(g) : "");
      auto m = s.cat.add_morphism(k.src(p), y, c.mor_map[p], std::move(label));
      index[static_cast<std::size_t>(g) * M + p] = m;
      s.phi.push_back(p);
      s.elem.push_back(g);
    }
  }
  auto& sc = s.cat.cat;
  for (std::uint32_t f = 0; f < sc.num_morphisms(); ++f) {
    if (sc.is_identity(f)) continue;
    for (auto h : sc.out(sc.dst(f))) {
      if (sc.is_identity(h)) continue;
      auto g = s.elem[f];
      auto w = k.compose(a.mor[g][s.phi[h]], s.phi[f]);
      if (w == kNone) continue;
      sc.set_composite(h, f, index[static_cast<std::size_t>(G.mul(g, s.elem[h])) * M + w]);
    }
  }
  sc.finalize();
  return s;
}

void to_json(nlohmann::json& j, const FinCat& c) {
  j = nlohmann::json::object();
  auto objs = nlohmann::json::array();
  for (std::uint32_t o = 0; o < c.num_objects(); ++o) objs.push_back(c.object_label(o));
  auto mors = nlohmann::json::array();
  for (std::uint32_t m = 0; m < c.num_morphisms(); ++m)
    mors.push_back({{"id", m}, {"src", c.src(m)}, {"dst", c.dst(m)}});
  std::vector<std::array<std::uint32_t, 3>> comp;
  for (const auto& [k, h] : c.composites())
    comp.push_back({static_cast<std::uint32_t>(k >> 32), static_cast<std::uint32_t>(k & 0xffffffffu), h});
  std::sort(comp.begin(), comp.end());
  auto ids = nlohmann::json::array();
  for (std::uint32_t o = 0; o < c.num_objects(); ++o) ids.push_back(c.identity(o));
  j["objects"] = objs;
  j["morphisms"] = mors;
  j["comp"] = comp;
  j["ids"] = ids;
}

FinCat fincat_from_json(const nlohmann::json& j) {
  FinCat c;
  const auto& objs = j.at("objects");
  for (const auto& o : objs) c.add_object(o.is_string() ? o.get<std::string>() : o.dump());
  const auto ids = j.at("ids").get<std::vector<std::uint32_t>>();
  if (ids.size() != c.num_objects()) throw std::invalid_argument("fincat json: ids has wrong length");
  std::unordered_map<std::uint32_t, std::uint32_t> remap;
  for (std::uint32_t o = 0; o < ids.size(); ++o) remap[ids[o]] = c.identity(o);
  for (const auto& m : j.at("morphisms")) {
    auto id = m.at("id").get<std::uint32_t>();
    if (remap.count(id)) continue;
    remap[id] = c.add_morphism(m.at("src").get<std::uint32_t>(), m.at("dst").get<std::uint32_t>());
  }
  for (const auto& e : j.at("comp")) {
    auto g = remap.at(e.at(0).get<std::uint32_t>());
    auto f = remap.at(e.at(1).get<std::uint32_t>());
    auto h = remap.at(e.at(2).get<std::uint32_t>());
    if (c.is_identity(g) || c.is_identity(f)) continue;
    c.set_composite(g, f, h);
  }
  c.finalize();
  return c;
}

std::uint32_t FlatTable::find(const std::uint32_t* key) const {
  std::uint32_t lo = 0, hi = size();
  while (lo < hi) {
    std::uint32_t mid = lo + (hi - lo) / 2;
    const std::uint32_t* r = row(mid);
    if (std::lexicographical_compare(r, r + width, key, key + width))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && std::equal(key, key + width, row(lo))) return lo;
  return kNone;
}

bool FlatTable::is_sorted() const {
  for (std::uint32_t i = 1; i < size(); ++i)
    if (!std::lexicographical_compare(row(i - 1), row(i - 1) + width, row(i), row(i) + width)) return false;
  return true;
}

std::uint32_t chain_vertex(const FinCat& c, const Chain& x, std::uint32_t i) {
  if (i == 0) return x[0];
  return c.dst(x[i]);
}

Chain chain_apply(const FinCat& c, const Chain& x, const Monotone& theta) {
  const std::uint32_t p = theta.dom_top();
  Chain out;
  out.reserve(p + 1);
  out.push_back(chain_vertex(c, x, theta.v[0]));
  for (std::uint32_t j = 1; j <= p; ++j) {
    std::uint32_t a = theta.v[j - 1], b = theta.v[j];
    if (a == b) {
      out.push_back(c.identity(chain_vertex(c, x, a)));
      continue;
    }
    std::uint32_t acc = x[a + 1];
    for (std::uint32_t t = a + 2; t <= b; ++t) {
      acc = c.compose(x[t], acc);
      if (acc == kNone) return {};
    }
    out.push_back(acc);
  }
  return out;
}

Chain chain_face(const FinCat& c, const Chain& x, std::uint32_t i) {
  return chain_apply(c, x, Monotone::coface(static_cast<std::uint32_t>(x.size()) - 1, i));
}

Chain chain_degeneracy(const FinCat& c, const Chain& x, std::uint32_t i) {
  return chain_apply(c, x, Monotone::codegeneracy(static_cast<std::uint32_t>(x.size()) - 1, i));
}

FlatTable extend_chains(const FinCat& c, const FlatTable& level, const std::vector<char>* allowed) {
  const std::uint32_t k = level.width;
  FlatTable next;
  next.width = k + 1;
  Chain buf(k + 1);
  for (std::uint32_t r = 0; r < level.size(); ++r) {
    const std::uint32_t* ch = level.row(r);
    std::uint32_t end = k == 1 ? ch[0] : c.dst(ch[k - 1]);
    for (auto m : c.out(end)) {
      if (allowed && !(*allowed)[m]) continue;
      // every suffix composite with m must exist
      bool ok = true;
      std::uint32_t acc = m;
      for (std::uint32_t j = k - 1; j >= 1 && ok; --j) {
        acc = c.compose(acc, ch[j]);
        ok = acc != kNone;
      }
      if (!ok) continue;
      std::copy(ch, ch + k, buf.begin());
      buf[k] = m;
      next.push(buf);
    }
  }
  return next;
}

FlatTable all_chains(const FinCat& c, std::uint32_t n) {
  FlatTable level;
  level.width = 1;
  for (std::uint32_t o = 0; o < c.num_objects(); ++o) level.data.push_back(o);
  for (std::uint32_t k = 1; k <= n; ++k) level = extend_chains(c, level);
  return level;
}

}  // namespace configprod
