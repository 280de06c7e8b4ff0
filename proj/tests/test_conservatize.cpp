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

#include <map>
#include <random>
#include <set>

#include "configprod/conservatize.hpp"
#include "configprod/configcat.hpp"
#include "configprod/homology.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace configprod;
using namespace configprod::testing;

namespace {

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t b = 1;
  for (std::uint64_t i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Monotone maps [p] -> [q] number binom(p + q + 1, p + 1); surjections binom(p, q).
std::uint64_t expected_objects(std::uint32_t r, Variant v, std::uint32_t bound) {
  std::uint64_t t = 0;
  for (std::uint32_t k = 0; k <= bound; ++k) {
    std::uint64_t alphas = v == Variant::kFlat ? binom(r, k) : binom(r + k + 1, r + 1);
    std::uint64_t betas = 0;
    if (v == Variant::kShriek) {
      betas = 1;
    } else {
      for (std::uint32_t l = k; l <= bound; ++l) betas += binom(l, k);
    }
    t += alphas * betas;
  }
  return t;
}

// Hom(e, e2) straight from the two equations.
std::uint64_t brute_hom(const IndexObject& e, const IndexObject& e2) {
  std::uint64_t n = 0;
  for (auto& g : all_monotone(e.k(), e2.k())) {
    if (!(compose(g, e.alpha) == e2.alpha)) continue;
    auto gb = compose(g, e.beta);
    for (auto& d : all_monotone(e.l(), e2.l()))
      if (compose(e2.beta, d) == gb) ++n;
  }
  return n;
}

bool same_partition(const Pi0& a, const Pi0& b) {
  if (a.count != b.count || a.component.size() != b.component.size()) return false;
  std::map<std::uint32_t, std::uint32_t> fwd, bwd;
  for (std::size_t i = 0; i < a.component.size(); ++i) {
    auto [it, fresh] = fwd.emplace(a.component[i], b.component[i]);
    auto [jt, fresh2] = bwd.emplace(b.component[i], a.component[i]);
    if (it->second != b.component[i] || jt->second != a.component[i]) return false;
  }
  return true;
}

Pi0 components_by_nerve(const LambdaLevel& ll) { return pi0(nerve(lambda_category(ll).cat, 1)); }

}  // namespace

TEST_CASE("variant names round trip") {
  for (auto v : {Variant::kFull, Variant::kFlat, Variant::kShriek}) CHECK(variant_from_string(to_string(v)) == v);
  CHECK_THROWS(variant_from_string("bogus"));
}

TEST_CASE("index categories have the counted objects and hom sets") {
  for (auto v : {Variant::kFlat, Variant::kFull, Variant::kShriek})
    for (std::uint32_t r = 0; r <= 2; ++r)
      for (std::uint32_t bound = r; bound <= 3; ++bound) {
        CAPTURE(to_string(v));
        CAPTURE(r);
        CAPTURE(bound);
        auto ix = index_category(r, v, bound, true);
        CHECK(ix.objects.size() == expected_objects(r, v, bound));
        CHECK(std::is_sorted(ix.objects.begin(), ix.objects.end()));
        // associativity is checked on every composable triple
        if (ix.morphisms.size() <= 5000) CHECK(ix.cat.validate().empty());
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> hom;
        for (auto& m : ix.morphisms) ++hom[{m.src, m.dst}];
        for (std::uint32_t e = 0; e < ix.objects.size(); ++e)
          for (std::uint32_t e2 = 0; e2 < ix.objects.size(); ++e2)
            CHECK(hom[{e, e2}] == brute_hom(ix.objects[e], ix.objects[e2]));
        for (std::uint32_t e = 0; e < ix.objects.size(); ++e) CHECK(ix.find(ix.objects[e]) == e);
      }
}

TEST_CASE("flat index categories reject bounds below r") {
  CHECK_THROWS_AS(index_category(3, Variant::kFlat, 2), std::invalid_argument);
  CHECK_NOTHROW(index_category(3, Variant::kFull, 2));
}

TEST_CASE("generators connect the same objects as all morphisms") {
  for (auto v : {Variant::kFlat, Variant::kFull, Variant::kShriek})
    for (std::uint32_t r = 0; r <= 2; ++r) {
      auto ix = index_category(r, v, 3, true);
      UnionFind all(ix.objects.size()), gen(ix.objects.size());
      for (auto& m : ix.morphisms) all.unite(m.src, m.dst);
      for (auto g : ix.generators) gen.unite(ix.morphisms[g].src, ix.morphisms[g].dst);
      CHECK(all.components().count == gen.components().count);
    }
}

TEST_CASE("the flat reflection is right adjoint to the inclusion") {
  for (std::uint32_t r = 0; r <= 2; ++r) {
    auto full = index_category(r, Variant::kFull, 3);
    auto flat = index_category(r, Variant::kFlat, std::max<std::uint32_t>(r, 3));
    for (auto& e : full.objects) {
      auto refl = e0_reflection(e);
      CHECK(flat.contains(refl.object));
      CHECK(compose(refl.gamma, refl.object.alpha) == e.alpha);
      CHECK(compose(refl.gamma, refl.object.beta) == compose(e.beta, refl.delta));
      for (auto& f : flat.objects) CHECK(brute_hom(f, refl.object) == brute_hom(f, e));
    }
  }
}

TEST_CASE("over a point the level is the index category") {
  auto pt = point_category();
  for (auto v : {Variant::kFlat, Variant::kFull, Variant::kShriek})
    for (std::uint32_t r = 0; r <= 2; ++r) {
      auto ll = lambda_level(pt, {r, v, 3});
      CHECK(ll.num_objects() == ll.index.objects.size());
      UnionFind uf(ll.index.objects.size());
      for (auto& m : ll.index.morphisms) uf.unite(m.src, m.dst);
      CHECK(lambda_components(ll).count == uf.components().count);
    }
}

TEST_CASE("fibers are strings with collapsed arrows over identities") {
  auto c = config_discrete(2);
  auto ll = lambda_level(c.cat, {1, Variant::kFlat, 3});
  for (std::uint32_t e = 0; e < ll.index.objects.size(); ++e) {
    const auto& o = ll.index.objects[e];
    std::uint64_t expect = 0;
    auto chains = all_chains(c.cat.cat, o.l());
    for (std::uint32_t i = 0; i < chains.size(); ++i) {
      bool ok = true;
      for (std::uint32_t j = 1; j <= o.l(); ++j)
        if (o.beta(j - 1) == o.beta(j) && !c.cat.over_identity(chains.row(i)[j])) ok = false;
      expect += ok;
    }
    CHECK(ll.fiber(e).size() == expect);
    CHECK(ll.fiber(e).is_sorted());
  }
  for (std::uint64_t id = 0; id < ll.num_objects(); id += 7) {
    auto [e, x] = ll.locate(id);
    CHECK(ll.offset[e] + x == id);
  }
}

TEST_CASE("generator sweeps, full sweeps and nerves give the same components") {
  std::mt19937 rng(20261014);
  auto c3 = config_discrete(3);
  auto c2 = config_discrete(2);
  auto orbit = config_orbit(c2, symmetric_group(2));
  std::vector<FinCatOverFin> cats{c2.cat, orbit.semi.cat, involution_over_identity(), beta_counterexample()};
  for (int i = 0; i < 6; ++i) cats.push_back(random_full_subcategory(c3.cat, 0.4, rng));
  for (int i = 0; i < 3; ++i) cats.push_back(random_full_subcategory(orbit.semi.cat, 0.6, rng));
  for (auto& a : cats)
    for (auto v : {Variant::kFlat, Variant::kFull, Variant::kShriek})
      for (std::uint32_t r = 0; r <= 1; ++r) {
        auto ll = lambda_level(a, {r, v, 2});
        auto gen = lambda_components(ll, false, true);
        CHECK(same_partition(gen, lambda_components(ll, false, false)));
        CHECK(same_partition(gen, lambda_components_reference(ll)));
        CHECK(gen.count == components_by_nerve(ll).count);
      }
}

TEST_CASE("the shriek level includes into the full level hitting every component") {
  auto c = config_discrete(2);
  for (std::uint32_t r = 0; r <= 2; ++r) {
    auto sh = lambda_level(c.cat, {r, Variant::kShriek, 2});
    auto fu = lambda_level(c.cat, {r, Variant::kFull, 2});
    auto inc = shriek_inclusion(sh, fu);
    std::set<std::uint64_t> img(inc.begin(), inc.end());
    CHECK(img.size() == sh.num_objects());
    auto comps = lambda_components(fu);
    std::set<std::uint32_t> hit;
    for (auto i : inc) hit.insert(comps.component[i]);
    CHECK(hit.size() == comps.count);
  }
}

TEST_CASE("stability needs three agreeing stages") {
  StageProbe a{1, 10, 3, {}, false}, b{2, 20, 3, {}, false}, c{3, 30, 4, {}, false};
  CHECK(stability_of({a, b}) == Stability::kInconclusive);
  CHECK(stability_of({a, b, b}) == Stability::kStable);
  CHECK(stability_of({a, b, c}) == Stability::kInconclusive);
  CHECK(stability_of({c, a, b, a}) == Stability::kStable);
  auto rep = stabilization_scan(0, Variant::kFlat, {2, 3, 4}, [](std::uint32_t L) {
    return StageProbe{L, L, 1, {}, false};
  });
  CHECK(rep.verdict == Stability::kStable);
  nlohmann::json j = rep;
  CHECK(j["verdict"] == "STABLE");
  CHECK(j["L"].size() == 3);
}
