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

#include "configprod/conservatize.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <tuple>

namespace configprod {

namespace {

bool is_elementary_coface(const Monotone& m) {
  return m.dom_top() + 1 == m.cod_top && m.is_injective();
}
bool is_elementary_codegeneracy(const Monotone& m) {
  return m.dom_top() == m.cod_top + 1 && m.is_surjective();
}

// Monotone delta : [l] -> [l2] with beta2 delta = target, by backtracking.
void lifts(const Monotone& beta2, const std::vector<std::uint8_t>& target, std::uint32_t i,
           std::vector<std::uint8_t>& cur, std::vector<Monotone>& out) {
  if (i == target.size()) {
    out.emplace_back(beta2.dom_top(), cur);
    return;
  }
  std::uint32_t lo = i == 0 ? 0 : cur[i - 1];
  for (std::uint32_t j = lo; j <= beta2.dom_top(); ++j) {
    if (beta2.v[j] < target[i]) continue;
    if (beta2.v[j] > target[i]) break;
    cur[i] = static_cast<std::uint8_t>(j);
    lifts(beta2, target, i + 1, cur, out);
  }
}

using MorKey = std::tuple<std::uint32_t, std::uint32_t, std::vector<std::uint8_t>, std::vector<std::uint8_t>>;

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kFull: return "full";
    case Variant::kFlat: return "flat";
    case Variant::kShriek: return "shriek";
  }
  return "?";
}

Variant variant_from_string(const std::string& s) {
  if (s == "full") return Variant::kFull;
  if (s == "flat") return Variant::kFlat;
  if (s == "shriek") return Variant::kShriek;
  throw std::invalid_argument("unknown variant: " + s);
}

std::vector<IndexMorphism> index_morphisms(const IndexObject& e, const IndexObject& e2) {
  std::vector<IndexMorphism> out;
  for (auto& gamma : all_monotone(e.k(), e2.k())) {
    if (compose(gamma, e.alpha) != e2.alpha) continue;
    auto target = compose(gamma, e.beta).v;
    std::vector<std::uint8_t> cur(target.size());
    std::vector<Monotone> deltas;
    lifts(e2.beta, target, 0, cur, deltas);
    for (auto& d : deltas) out.push_back({0, 0, gamma, std::move(d)});
  }
  return out;
}

std::uint32_t IndexE::find(const IndexObject& e) const {
  auto it = std::lower_bound(objects.begin(), objects.end(), e);
  if (it == objects.end() || !(*it == e)) return kNone;
  return static_cast<std::uint32_t>(it - objects.begin());
}

bool IndexE::contains(const IndexObject& e) const { return find(e) != kNone; }

IndexE index_category(std::uint32_t r, Variant variant, std::uint32_t bound, bool with_composition) {
  if (variant == Variant::kFlat && bound < r)
    throw std::invalid_argument("flat variant needs L >= r (got L=" + std::to_string(bound) +
                                ", r=" + std::to_string(r) + ")");
  if (bound > 12) throw std::invalid_argument("bound on l too large");
  IndexE ix;
  ix.r = r;
  ix.bound = bound;
  ix.variant = variant;
  std::uint32_t k_max = variant == Variant::kFlat ? std::min(r, bound) : bound;
  for (std::uint32_t k = 0; k <= k_max; ++k) {
    auto alphas = variant == Variant::kFlat ? all_monotone_surjections(r, k) : all_monotone(r, k);
    for (auto& a : alphas) {
      if (variant == Variant::kShriek) {
        ix.objects.push_back({a, Monotone::identity(k)});
        continue;
      }
      for (std::uint32_t l = k; l <= bound; ++l)
        for (auto& b : all_monotone_surjections(l, k)) ix.objects.push_back({a, b});
    }
  }
  std::sort(ix.objects.begin(), ix.objects.end());
  const auto n = static_cast<std::uint32_t>(ix.objects.size());
  for (std::uint32_t e = 0; e < n; ++e) {
    ix.cat.add_object();
    auto& o = ix.objects[e];
    ix.morphisms.push_back({e, e, Monotone::identity(o.k()), Monotone::identity(o.l())});
  }
  for (std::uint32_t e = 0; e < n; ++e)
    for (std::uint32_t e2 = 0; e2 < n; ++e2)
      for (auto& m : index_morphisms(ix.objects[e], ix.objects[e2])) {
        if (e == e2 && m.gamma.is_identity() && m.delta.is_identity()) continue;
        auto id = ix.cat.add_morphism(e, e2);
        m.src = e;
        m.dst = e2;
        bool gen = false;
        switch (variant) {
          case Variant::kFlat:
            gen = (is_elementary_codegeneracy(m.gamma) && m.delta.is_identity()) ||
                  (m.gamma.is_identity() &&
                   (is_elementary_coface(m.delta) || is_elementary_codegeneracy(m.delta)));
            break;
          case Variant::kShriek:
            gen = is_elementary_coface(m.gamma) || is_elementary_codegeneracy(m.gamma);
            break;
          case Variant::kFull: gen = true; break;
        }
        if (gen) ix.generators.push_back(id);
        ix.morphisms.push_back(std::move(m));
      }
  if (with_composition) {
    std::map<MorKey, std::uint32_t> lookup;
    for (std::uint32_t i = 0; i < ix.morphisms.size(); ++i) {
      auto& m = ix.morphisms[i];
      lookup[{m.src, m.dst, m.gamma.v, m.delta.v}] = i;
    }
    for (std::uint32_t f = 0; f < ix.morphisms.size(); ++f) {
      if (ix.cat.is_identity(f)) continue;
      for (auto g : ix.cat.out(ix.morphisms[f].dst)) {
        if (ix.cat.is_identity(g)) continue;
        auto& mf = ix.morphisms[f];
        auto& mg = ix.morphisms[g];
        auto it = lookup.find({mf.src, mg.dst, compose(mg.gamma, mf.gamma).v, compose(mg.delta, mf.delta).v});
        if (it == lookup.end()) throw std::logic_error("index category not closed under composition");
        ix.cat.set_composite(g, f, it->second);
      }
    }
  }
  ix.cat.finalize();
  return ix;
}

Reflection e0_reflection(const IndexObject& e) {
  std::vector<std::uint8_t> image;  // sorted image of alpha
  for (auto v : e.alpha.v)
    if (image.empty() || image.back() != v) image.push_back(v);
  std::vector<std::uint8_t> pos(e.k() + 1, 0xff);
  for (std::size_t i = 0; i < image.size(); ++i) pos[image[i]] = static_cast<std::uint8_t>(i);
  const auto k0 = static_cast<std::uint32_t>(image.size()) - 1;
  std::vector<std::uint8_t> a0, b0, dv;
  for (auto v : e.alpha.v) a0.push_back(pos[v]);
  for (std::uint32_t i = 0; i <= e.l(); ++i)
    if (pos[e.beta.v[i]] != 0xff) {
      b0.push_back(pos[e.beta.v[i]]);
      dv.push_back(static_cast<std::uint8_t>(i));
    }
  Reflection out;
  out.object = {Monotone(k0, a0), Monotone(k0, b0)};
  out.gamma = Monotone(e.k(), image);
  out.delta = Monotone(e.l(), dv);
  return out;
}

std::pair<std::uint32_t, std::uint32_t> LambdaLevel::locate(std::uint64_t id) const {
  auto it = std::upper_bound(offset.begin(), offset.end(), id);
  auto e = static_cast<std::uint32_t>(it - offset.begin()) - 1;
  return {e, static_cast<std::uint32_t>(id - offset[e])};
}

LambdaLevel lambda_level(const FinCatOverFin& a, const LambdaOptions& opt) {
  LambdaLevel ll;
  ll.a = &a;
  ll.index = index_category(opt.r, opt.variant, opt.bound);
  std::vector<char> over_id(a.cat.num_morphisms());
  for (std::uint32_t m = 0; m < a.cat.num_morphisms(); ++m) over_id[m] = a.over_identity(m);
  std::map<std::vector<std::uint8_t>, std::uint32_t> by_beta;
  FlatTable vertices;
  for (std::uint32_t o = 0; o < a.cat.num_objects(); ++o) vertices.data.push_back(o);
  for (auto& e : ll.index.objects) {
    auto [it, fresh] = by_beta.try_emplace(e.beta.v, static_cast<std::uint32_t>(ll.tables.size()));
    if (fresh) {
      FlatTable t = vertices;
      for (std::uint32_t j = 1; j <= e.l(); ++j)
        t = extend_chains(a.cat, t, e.beta.v[j - 1] == e.beta.v[j] ? &over_id : nullptr);
      ll.tables.push_back(std::move(t));
    }
    ll.table_of.push_back(it->second);
  }
  ll.offset.assign(1, 0);
  for (std::uint32_t e = 0; e < ll.index.objects.size(); ++e)
    ll.offset.push_back(ll.offset.back() + ll.fiber(e).size());
  return ll;
}

void for_each_edge_block(const LambdaLevel& ll, bool all_edges, bool parallel,
                         const EdgeVisitor& visit) {
  std::vector<std::uint32_t> ids;
  if (all_edges) {
    for (std::uint32_t g = 0; g < ll.index.morphisms.size(); ++g)
      if (!ll.index.cat.is_identity(g)) ids.push_back(g);
  } else {
    ids = ll.index.generators;
  }
  const FinCat& c = ll.a->cat;
  std::vector<std::uint32_t> pre;
  for (auto g : ids) {
    const auto& m = ll.index.morphisms[g];
    const FlatTable& src = ll.fiber(m.src);
    const FlatTable& dst = ll.fiber(m.dst);
    const auto ny = static_cast<std::int64_t>(dst.size());
    pre.assign(dst.size(), kNone);
    std::atomic<bool> missing{false};
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t y = 0; y < ny; ++y) {
      auto x = chain_apply(c, dst.get(static_cast<std::uint32_t>(y)), m.delta);
      auto i = src.find(x);
      if (i == kNone) missing = true;
      pre[y] = i;
    }
    if (missing) throw std::logic_error("operator image outside its fiber");
    visit(g, pre);
  }
}

Pi0 lambda_components(const LambdaLevel& ll, bool all_edges, bool parallel) {
  UnionFind uf(ll.num_objects());
  for_each_edge_block(ll, all_edges, parallel, [&](std::uint32_t g, const std::vector<std::uint32_t>& pre) {
    const auto& m = ll.index.morphisms[g];
    for (std::uint32_t y = 0; y < pre.size(); ++y) uf.unite(ll.offset[m.src] + pre[y], ll.offset[m.dst] + y);
  });
  return uf.components();
}

Pi0 lambda_components_reference(const LambdaLevel& ll) { return lambda_components(ll, true, false); }

Grothendieck lambda_category(const LambdaLevel& ll, std::uint64_t max_morphisms) {
  auto ix = index_category(ll.index.r, ll.index.variant, ll.index.bound, true);
  SetFunctor f;
  std::uint64_t total = 0;
  for (std::uint32_t e = 0; e < ix.objects.size(); ++e) f.size.push_back(ll.fiber(e).size());
  for (auto& m : ix.morphisms) total += f.size[m.dst];
  if (total > max_morphisms) throw std::length_error("category of elements too large");
  f.act.resize(ix.morphisms.size());
  for (std::uint32_t g = 0; g < ix.morphisms.size(); ++g) {
    if (ix.cat.is_identity(g)) {
      f.act[g].resize(f.size[ix.morphisms[g].dst]);
      for (std::uint32_t y = 0; y < f.act[g].size(); ++y) f.act[g][y] = y;
    }
  }
  for_each_edge_block(ll, true, false, [&](std::uint32_t g, const std::vector<std::uint32_t>& pre) {
    f.act[g] = pre;
  });
  return grothendieck(ix.cat, f);
}

std::vector<std::uint64_t> lambda_map_objects(const LambdaLevel& src, const LambdaLevel& dst,
                                              const Functor& f) {
  if (src.index.objects != dst.index.objects)
    throw std::invalid_argument("lambda levels over different index categories");
  std::vector<std::uint64_t> out(src.num_objects());
  for (std::uint32_t e = 0; e < src.index.objects.size(); ++e) {
    const auto& t = src.fiber(e);
    const auto& u = dst.fiber(e);
    Chain y(t.width);
    for (std::uint32_t x = 0; x < t.size(); ++x) {
      const auto* row = t.row(x);
      y[0] = f.obj[row[0]];
      for (std::uint32_t j = 1; j < t.width; ++j) y[j] = f.mor[row[j]];
      auto i = u.find(y);
      if (i == kNone) throw std::domain_error("functor image outside its fiber");
      out[src.offset[e] + x] = dst.offset[e] + i;
    }
  }
  return out;
}

std::vector<std::uint32_t> lambda_reference_sizes(const LambdaLevel& ll, std::uint64_t id) {
  auto [e, x] = ll.locate(id);
  const auto& obj = ll.index.objects[e];
  auto chain = ll.fiber(e).get(x);
  // vertex j of the base string of x is the vertex at any position beta^{-1}(j)
  std::vector<std::uint32_t> first(obj.k() + 1, kNone);
  for (std::uint32_t i = 0; i <= obj.l(); ++i)
    if (first[obj.beta.v[i]] == kNone) first[obj.beta.v[i]] = i;
  std::vector<std::uint32_t> out;
  for (auto v : obj.alpha.v) out.push_back(ll.a->obj_size[chain_vertex(ll.a->cat, chain, first[v])]);
  return out;
}

std::vector<std::uint64_t> shriek_inclusion(const LambdaLevel& shriek, const LambdaLevel& full) {
  std::vector<std::uint64_t> out(shriek.num_objects());
  for (std::uint32_t e = 0; e < shriek.index.objects.size(); ++e) {
    auto f = full.index.find(shriek.index.objects[e]);
    if (f == kNone) throw std::invalid_argument("bounds of the full level too small");
    const auto& t = shriek.fiber(e);
    const auto& u = full.fiber(f);
    for (std::uint32_t x = 0; x < t.size(); ++x) {
      auto i = u.find(t.row(x));
      if (i == kNone) throw std::logic_error("shriek element missing from the full level");
      out[shriek.offset[e] + x] = full.offset[f] + i;
    }
  }
  return out;
}

Stability stability_of(const std::vector<StageProbe>& stages) {
  if (stages.size() < 3) return Stability::kInconclusive;
  auto n = stages.size();
  return stages[n - 1] == stages[n - 2] && stages[n - 2] == stages[n - 3] ? Stability::kStable
                                                                         : Stability::kInconclusive;
}

StabilizationReport stabilization_scan(std::uint32_t r, Variant variant,
                                       const std::vector<std::uint32_t>& bounds,
                                       const std::function<StageProbe(std::uint32_t)>& probe) {
  if (bounds.empty() || !std::is_sorted(bounds.begin(), bounds.end()))
    throw std::invalid_argument("bounds must be nonempty and ascending");
  StabilizationReport rep;
  rep.r = r;
  rep.variant = variant;
  for (auto b : bounds) {
    rep.stages.push_back(probe(b));
    rep.stages.back().bound = b;
  }
  rep.verdict = stability_of(rep.stages);
  return rep;
}

void to_json(nlohmann::json& j, const StabilizationReport& s) {
  j = nlohmann::json::object();
  j["r"] = s.r;
  j["variant"] = to_string(s.variant);
  j["L"] = nlohmann::json::array();
  j["pi0"] = nlohmann::json::array();
  j["homology"] = nlohmann::json::array();
  j["objects"] = nlohmann::json::array();
  for (auto& st : s.stages) {
    j["L"].push_back(st.bound);
    j["pi0"].push_back(st.pi0);
    j["objects"].push_back(st.objects);
    nlohmann::json h = nlohmann::json::array();
    for (auto& g : st.homology) h.push_back(g);
    j["homology"].push_back(h);
  }
  j["verdict"] = s.verdict == Stability::kStable ? "STABLE" : "INCONCLUSIVE";
}

}  // namespace configprod
