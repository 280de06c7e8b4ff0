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

#include <random>

#include "configprod/fincat.hpp"
#include "configprod/homology.hpp"
#include "doctest.h"

using namespace configprod;

namespace {

FinCat order_two_groupoid() {
  FinCat c;
  c.add_object("*");
  auto g = c.add_morphism(0, 0, "g");
  c.set_composite(g, g, c.identity(0));
  c.finalize();
  return c;
}

FinCat arrow() {
  FinCat c;
  c.add_object("0");
  c.add_object("1");
  c.add_morphism(0, 1, "a");
  c.finalize();
  return c;
}

// Objects a, b over 1 and c over 0 with c -> a, c -> b; the swap of a, b.
std::pair<FinCatOverFin, GroupAction> span_with_swap() {
  FinCatOverFin c;
  c.add_object(1, "a");
  c.add_object(1, "b");
  c.add_object(0, "c");
  auto ca = c.add_morphism(2, 0, FinMap::empty(1));
  auto cb = c.add_morphism(2, 1, FinMap::empty(1));
  c.cat.finalize();
  GroupAction a;
  a.group.order = 2;
  a.group.mult = {0, 1, 1, 0};
  a.obj = {{0, 1, 2}, {1, 0, 2}};
  std::vector<std::uint32_t> swap(c.cat.num_morphisms());
  for (std::uint32_t m = 0; m < swap.size(); ++m) swap[m] = m;
  swap[c.cat.identity(0)] = c.cat.identity(1);
  swap[c.cat.identity(1)] = c.cat.identity(0);
  swap[ca] = cb;
  swap[cb] = ca;
  std::vector<std::uint32_t> id(swap.size());
  for (std::uint32_t m = 0; m < id.size(); ++m) id[m] = m;
  a.mor = {id, swap};
  return {c, a};
}

}  // namespace

TEST_CASE("nerve of small categories") {
  FinCat t;
  t.add_object();
  auto nt = nerve(t, 3);
  CHECK(nt.size(0) == 1);
  for (std::uint32_t n = 1; n <= 3; ++n) CHECK(nt.size(n) == 0);

  auto na = nerve(arrow(), 2);
  CHECK(na.size(0) == 2);
  CHECK(na.size(1) == 1);
  CHECK(na.size(2) == 0);

  auto ng = nerve(order_two_groupoid(), 3);
  for (std::uint32_t n = 0; n <= 3; ++n) CHECK(ng.size(n) == 1);
  CHECK(ng.check_identities().empty());
  // d_1 of (g, g) is the degenerate 1-simplex s_0(*)
  CHECK(ng.face(2, 0, 1) == Face{0, 1u});
}

TEST_CASE("string counts agree between the enumerator and the counting recursion") {
  auto sk = fin_skeleton(2);
  for (std::uint32_t n = 0; n <= 3; ++n) {
    auto all = all_chains(sk.fin.cat, n);
    CHECK(all.is_sorted());
    CHECK(all.size() == count_chains(sk.fin.cat, n));
  }
  CHECK(all_chains(order_two_groupoid(), 4).size() == 16);
  CHECK(sk.fin.cat.num_morphisms() == 11);
  CHECK(sk.fin.validate().empty());
}

TEST_CASE("string operators agree with the nerve faces") {
  auto sk = fin_skeleton(2);
  const auto& c = sk.fin.cat;
  auto l2 = all_chains(c, 2);
  auto l1 = all_chains(c, 1);
  for (std::uint32_t e = 0; e < l2.size(); ++e) {
    auto ch = l2.get(e);
    for (std::uint32_t i = 0; i <= 2; ++i) {
      auto f = chain_face(c, ch, i);
      REQUIRE(l1.find(f) != kNone);
      CHECK(chain_face(c, chain_degeneracy(c, f, i == 0 ? 0 : i - 1), i == 0 ? 0 : i) == f);
    }
    CHECK(chain_vertex(c, ch, 2) == c.dst(ch[2]));
  }
}

TEST_CASE("validate finds broken tables") {
  auto c = fin_skeleton(1).fin.cat;
  CHECK(c.validate().empty());
  FinCat bad;
  bad.add_object();
  auto g = bad.add_morphism(0, 0);
  CHECK_FALSE(bad.validate().empty());  // g o g undefined
  bad.set_composite(g, g, g);
  CHECK(bad.validate().empty());
  auto h = bad.add_morphism(0, 0);
  bad.set_composite(g, g, h);
  bad.set_composite(h, h, g);
  bad.set_composite(g, h, g);
  bad.set_composite(h, g, g);
  CHECK_FALSE(bad.validate().empty());  // (g g) h = g but g (g h) = h
  FinCat arr = arrow();
  arr.erase_morphism(2);
  CHECK(arr.num_morphisms() == 2);
  CHECK(arr.validate().empty());
}

TEST_CASE("comma categories") {
  FinCatOverFin a;
  a.add_object(0);
  a.add_object(1);
  a.add_morphism(0, 1, FinMap::empty(1));
  a.cat.finalize();
  auto over_target = comma(a, 1);
  CHECK(over_target.comma.cat.num_objects() == 2);
  CHECK(over_target.comma.cat.num_morphisms() == 3);
  CHECK(over_target.comma.validate().empty());
  auto over_source = comma(a, 0);
  CHECK(over_source.comma.cat.num_objects() == 1);
  CHECK(over_source.comma.cat.num_morphisms() == 1);
  auto sk = fin_skeleton(2);
  for (std::uint32_t x = 0; x <= 2; ++x) {
    auto r = comma(sk.fin, x);
    CHECK(r.comma.cat.num_objects() == sk.fin.cat.in(x).size());
    CHECK(r.comma.validate().empty());
    CHECK(check_functor(r.comma.cat, sk.fin.cat, r.forget).empty());
    for (std::uint32_t m = 0; m < r.comma.cat.num_morphisms(); ++m)
      CHECK(r.comma.mor_map[m] == sk.fin.mor_map[r.forget.mor[m]]);
  }
}

TEST_CASE("categories of elements") {
  auto d = arrow();
  // constant point: isomorphic to d
  SetFunctor one{{1, 1}, {{0}, {0}, {0}}};
  auto g1 = grothendieck(d, one);
  CHECK(g1.cat.num_objects() == 2);
  CHECK(g1.cat.num_morphisms() == 3);
  // terminal index category: discrete on S
  FinCat t;
  t.add_object();
  auto g2 = grothendieck(t, SetFunctor{{3}, {{0, 1, 2}}});
  CHECK(g2.cat.num_objects() == 3);
  CHECK(g2.cat.num_morphisms() == 3);
  // F(0) = {a, b}, F(1) = {c}, restriction c -> a
  SetFunctor f{{2, 1}, {{0, 1}, {0}, {0}}};
  auto g3 = grothendieck(d, f);
  auto n = nerve(g3.cat, 2);
  CHECK(n.size(0) == 3);
  CHECK(n.size(1) == 1);
  CHECK(pi0(n).count == 2);
  SetFunctor broken{{2, 1}, {{1, 0}, {0}, {0}}};
  CHECK_THROWS_AS(grothendieck(d, broken), std::invalid_argument);
}

TEST_CASE("a natural transformation induces a functor of categories of elements over D") {
  auto sk = fin_skeleton(2);
  const auto& d = sk.fin.cat;
  // F(a) = maps a -> 2, contravariant by precomposition; F'(a) = maps a -> 1
  auto make = [&](std::uint32_t target) {
    SetFunctor f;
    std::vector<std::vector<FinMap>> elems(d.num_objects());
    for (std::uint32_t a = 0; a < d.num_objects(); ++a) elems[a] = all_maps(a, target);
    for (std::uint32_t a = 0; a < d.num_objects(); ++a) f.size.push_back(static_cast<std::uint32_t>(elems[a].size()));
    for (std::uint32_t g = 0; g < d.num_morphisms(); ++g) {
      std::vector<std::uint32_t> act;
      for (auto& y : elems[d.dst(g)]) {
        auto x = compose(y, sk.fin.mor_map[g]);
        act.push_back(static_cast<std::uint32_t>(std::find(elems[d.src(g)].begin(), elems[d.src(g)].end(), x) -
                                                 elems[d.src(g)].begin()));
      }
      f.act.push_back(act);
    }
    return std::pair{f, elems};
  };
  auto [f, ef] = make(2);
  auto [h, eh] = make(1);
  auto gf = grothendieck(d, f);
  auto gh = grothendieck(d, h);
  // eta postcomposes with 2 -> 1
  FinMap collapse(1, {1, 1});
  auto eta = [&](std::uint32_t a, std::uint32_t x) {
    auto y = compose(collapse, ef[a][x]);
    return static_cast<std::uint32_t>(std::find(eh[a].begin(), eh[a].end(), y) - eh[a].begin());
  };
  Functor ind;
  for (std::uint32_t o = 0; o < gf.cat.num_objects(); ++o) {
    auto [a, x] = gf.object[o];
    auto it = std::find(gh.object.begin(), gh.object.end(), std::pair{a, eta(a, x)});
    ind.obj.push_back(static_cast<std::uint32_t>(it - gh.object.begin()));
  }
  for (std::uint32_t m = 0; m < gf.cat.num_morphisms(); ++m) {
    std::uint32_t found = kNone;
    for (std::uint32_t k = 0; k < gh.cat.num_morphisms(); ++k)
      if (gh.project.mor[k] == gf.project.mor[m] && gh.cat.dst(k) == ind.obj[gf.cat.dst(m)] &&
          gh.cat.src(k) == ind.obj[gf.cat.src(m)])
        found = k;
    REQUIRE(found != kNone);
    ind.mor.push_back(found);
  }
  CHECK(check_functor(gf.cat, gh.cat, ind).empty());
  for (std::uint32_t m = 0; m < gf.cat.num_morphisms(); ++m)
    CHECK(gh.project.mor[ind.mor[m]] == gf.project.mor[m]);
}

TEST_CASE("permutation groups") {
  CHECK(symmetric_group(3).group.order == 6);
  CHECK(symmetric_group(0).group.order == 1);
  auto s2 = symmetric_group(2);
  CHECK(s2.elems[0].is_identity());
  auto p = product_group(s2, symmetric_group(1));
  CHECK(p.degree == 2);
  CHECK(p.group.order == 2);
  CHECK_THROWS_AS(perm_group(2, {FinMap(2, {1, 1})}), std::invalid_argument);
  auto c3 = perm_group(3, {FinMap(3, {2, 3, 1})});
  CHECK(c3.group.order == 3);
  for (std::uint32_t a = 0; a < 3; ++a) CHECK(c3.group.mul(a, c3.group.inv(a)) == 0);
}

TEST_CASE("semidirect products") {
  auto [c, act] = span_with_swap();
  CHECK(check_action(c, act).empty());
  auto s = semidirect(c, act);
  CHECK(s.cat.validate().empty());
  CHECK(s.cat.cat.num_objects() == 3);
  CHECK(s.cat.cat.num_morphisms() == 2 * c.cat.num_morphisms());
  for (std::uint32_t n = 0; n <= 3; ++n)
    CHECK(all_chains(s.cat.cat, n).size() == all_chains(c.cat, n).size() * (1u << n));

  GroupAction trivial;
  trivial.obj = {{0, 1, 2}};
  std::vector<std::uint32_t> id(c.cat.num_morphisms());
  for (std::uint32_t m = 0; m < id.size(); ++m) id[m] = m;
  trivial.mor = {id};
  auto st = semidirect(c, trivial);
  CHECK(st.cat.cat.num_morphisms() == c.cat.num_morphisms());
  for (std::uint32_t m = 0; m < id.size(); ++m) {
    CHECK(st.cat.cat.src(m) == c.cat.src(m));
    CHECK(st.cat.cat.dst(m) == c.cat.dst(m));
  }

  FinCatOverFin pt;
  pt.add_object(0);
  GroupAction z2;
  z2.group.order = 2;
  z2.group.mult = {0, 1, 1, 0};
  z2.obj = {{0}, {0}};
  z2.mor = {{0}, {0}};
  auto bg = semidirect(pt, z2);
  CHECK(bg.cat.cat.num_morphisms() == 2);
  auto n = nerve(bg.cat.cat, 3);
  for (std::uint32_t d = 0; d <= 3; ++d) CHECK(n.size(d) == 1);

  auto bad = act;
  bad.mor[1][0] = 0;  // no longer a permutation of morphisms
  CHECK_THROWS_AS(semidirect(c, bad), std::invalid_argument);
}

TEST_CASE("JSON round trip of a category") {
  auto c = fin_skeleton(1).fin.cat;
  nlohmann::json j = c;
  auto back = fincat_from_json(j);
  CHECK(back.num_objects() == c.num_objects());
  CHECK(back.num_morphisms() == c.num_morphisms());
  CHECK(back.validate().empty());
  nlohmann::json j2 = back;
  CHECK(j2 == j);
}
