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

#include "configprod/configcat.hpp"

#include <algorithm>
#include <stdexcept>

namespace configprod {

std::uint32_t ConfigCat::find(const FinMap& x) const {
  auto it = index.find(x);
  return it == index.end() ? kNone : it->second;
}

std::uint32_t ConfigCat::morphism(std::uint32_t x, std::uint32_t y) const {
  auto it = hom.find({x, y});
  return it == hom.end() ? kNone : it->second;
}

ConfigCat config_discrete(std::uint32_t m) {
  ConfigCat c;
  c.points = m;
  for (std::uint32_t k = 0; k <= m; ++k)
    for (auto& x : all_injections(k, m)) {
      auto o = c.cat.add_object(k, x.str());
      c.index[x] = o;
      c.config.push_back(x);
    }
  const auto n = static_cast<std::uint32_t>(c.config.size());
  for (std::uint32_t x = 0; x < n; ++x) c.hom[{x, x}] = c.cat.cat.identity(x);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const auto& cx = c.config[x];
      const auto& cy = c.config[y];
      // f with x = y o f exists iff the image of x lies in the image of y
      std::vector<std::uint32_t> f;
      for (std::uint32_t i = 1; i <= cx.dom; ++i) {
        auto it = std::find(cy.img.begin(), cy.img.end(), cx(i));
        if (it == cy.img.end()) break;
        f.push_back(static_cast<std::uint32_t>(it - cy.img.begin()) + 1);
      }
      if (f.size() != cx.dom) continue;
      c.hom[{x, y}] = c.cat.add_morphism(x, y, FinMap(cy.dom, f));
    }
  auto& k = c.cat.cat;
  for (std::uint32_t f = 0; f < k.num_morphisms(); ++f) {
    if (k.is_identity(f)) continue;
    for (auto g : k.out(k.dst(f))) {
      if (k.is_identity(g)) continue;
      k.set_composite(g, f, c.hom.at({k.src(f), k.dst(g)}));
    }
  }
  k.finalize();
  return c;
}

FinCatOverFin config_comma(const ConfigCat& c, std::uint32_t x) { return comma(c.cat, x).comma; }

GroupAction postcomposition_action(const ConfigCat& c, const PermGroup& g) {
  if (g.degree != c.points) throw std::invalid_argument("group does not act on the point set");
  GroupAction a;
  a.group = g.group;
  const auto& k = c.cat.cat;
  for (const auto& p : g.elems) {
    std::vector<std::uint32_t> obj, mor;
    for (const auto& x : c.config) obj.push_back(c.find(compose(p, x)));
    for (std::uint32_t m = 0; m < k.num_morphisms(); ++m) mor.push_back(c.morphism(obj[k.src(m)], obj[k.dst(m)]));
    a.obj.push_back(std::move(obj));
    a.mor.push_back(std::move(mor));
  }
  return a;
}

ConfigOrbit config_orbit(const ConfigCat& c, const PermGroup& g) {
  ConfigOrbit o;
  o.group = g;
  o.action = postcomposition_action(c, g);
  o.semi = semidirect(c.cat, o.action);
  return o;
}

Functor config_inclusion(const ConfigCat& a, const ConfigCat& b, const FinMap& j) {
  if (j.dom != a.points || j.cod != b.points || !j.is_injective())
    throw std::invalid_argument("config_inclusion needs an injection between the point sets");
  Functor f;
  for (const auto& x : a.config) f.obj.push_back(b.find(compose(j, x)));
  const auto& k = a.cat.cat;
  for (std::uint32_t m = 0; m < k.num_morphisms(); ++m) f.mor.push_back(b.morphism(f.obj[k.src(m)], f.obj[k.dst(m)]));
  return f;
}

Functor comma_postcomposition(const FinCatOverFin& c, std::uint32_t f, const CommaResult& cx,
                              const CommaResult& cy) {
  const auto& k = c.cat;
  std::unordered_map<std::uint32_t, std::uint32_t> obj_of;  // morphism into y -> object of c / y
  for (std::uint32_t o = 0; o < cy.object_morphism.size(); ++o) obj_of[cy.object_morphism[o]] = o;
  Functor out;
  for (auto h : cx.object_morphism) {
    auto w = k.compose(f, h);
    if (w == kNone) throw std::domain_error("comma_postcomposition: missing composite");
    out.obj.push_back(obj_of.at(w));
  }
  const auto& kx = cx.comma.cat;
  const auto& ky = cy.comma.cat;
  for (std::uint32_t m = 0; m < kx.num_morphisms(); ++m) {
    auto s = out.obj[kx.src(m)], t = out.obj[kx.dst(m)];
    std::uint32_t img = kNone;
    for (auto n : ky.out(s))
      if (ky.dst(n) == t && cy.forget.mor[n] == cx.forget.mor[m]) img = n;
    if (img == kNone) throw std::domain_error("comma_postcomposition: missing morphism");
    out.mor.push_back(img);
  }
  return out;
}

BetaReport check_property_beta(const FinCatOverFin& c, const BetaOptions& opt) {
  BetaReport rep;
  const auto& k = c.cat;
  for (std::uint32_t f = 0; f < k.num_morphisms(); ++f) {
    if (k.is_identity(f) || !c.over_identity(f)) continue;
    ++rep.edges_total;
    if (rep.edges.size() >= opt.edge_budget) continue;
    auto cx = comma(c, k.src(f));
    auto cy = comma(c, k.dst(f));
    auto phi = comma_postcomposition(c, f, cx, cy);
    std::vector<StageResult> stages;
    for (auto b : opt.bounds) {
      auto lx = lambda_level(cx.comma, {0, Variant::kFlat, b});
      auto ly = lambda_level(cy.comma, {0, Variant::kFlat, b});
      stages.push_back(lambda_map_stage(lx, ly, phi, opt.probe));
    }
    BetaEdge e{f, verify_weak_equiv_to_discrete(stages)};
    rep.status = combine(rep.status, e.verdict.status);
    rep.edges.push_back(std::move(e));
  }
  if (rep.edges.size() < rep.edges_total) rep.status = combine(rep.status, Status::kInconclusive);
  return rep;
}

}  // namespace configprod
