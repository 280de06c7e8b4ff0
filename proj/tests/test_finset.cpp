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

#include "configprod/finset.hpp"
#include "doctest.h"

using namespace configprod;

namespace {

// Set partitions of {1..k} by number of blocks, found by collapsing every
// endomap of {1..k} to its fiber partition.
std::map<std::uint32_t, std::size_t> partition_counts(std::uint32_t k) {
  std::set<std::set<std::set<std::uint32_t>>> seen;
  std::vector<std::uint32_t> v(k, 0);
  while (true) {
    std::map<std::uint32_t, std::set<std::uint32_t>> fib;
    for (std::uint32_t i = 0; i < k; ++i) fib[v[i]].insert(i + 1);
    std::set<std::set<std::uint32_t>> p;
    for (auto& [_, b] : fib) p.insert(b);
    seen.insert(p);
    std::uint32_t i = 0;
    while (i < k && v[i] == k - 1) v[i++] = 0;
    if (i == k) break;
    ++v[i];
  }
  std::map<std::uint32_t, std::size_t> out;
  for (auto& p : seen) ++out[static_cast<std::uint32_t>(p.size())];
  return out;
}

// Direct transcription of the definition, independent of the library.
bool selfic_oracle(const FinMap& f) {
  std::vector<std::uint32_t> first(f.cod + 1, 0);
  for (std::uint32_t i = 1; i <= f.dom; ++i)
    if (first[f(i)] == 0) first[f(i)] = i;
  for (std::uint32_t x = 1; x <= f.cod; ++x) {
    if (first[x] == 0) return false;
    if (x > 1 && first[x] < first[x - 1]) return false;
  }
  return true;
}

std::vector<BoxObj> box_oracle(std::uint32_t kmax, std::uint32_t rmax, std::uint32_t smax) {
  std::vector<BoxObj> out;
  for (std::uint32_t k = 0; k <= kmax; ++k)
    for (std::uint32_t r = 0; r <= rmax; ++r)
      for (std::uint32_t s = 0; s <= smax; ++s)
        for (auto& p : all_maps(k, r))
          for (auto& q : all_maps(k, s)) {
            if (!selfic_oracle(p) || !selfic_oracle(q)) continue;
            std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
            for (std::uint32_t i = 1; i <= k; ++i) pairs.insert({p(i), q(i)});
            if (pairs.size() == k) out.push_back(BoxObj{k, r, s, p, q});
          }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t lifts_by_brute_force(const BoxObj& x, const BoxObj& y, const FinMap& u, const FinMap& v) {
  std::size_t n = 0;
  for (auto& a : all_maps(x.k, y.k))
    if (compose(u, x.p) == compose(y.p, a) && compose(v, x.q) == compose(y.q, a)) ++n;
  return n;
}

FinMap random_map(std::mt19937& rng, std::uint32_t k, std::uint32_t l) {
  std::vector<std::uint32_t> img(k);
  for (auto& x : img) x = std::uniform_int_distribution<std::uint32_t>(1, l)(rng);
  return FinMap(l, img);
}

}  // namespace

TEST_CASE("is_selfic on small maps") {
  CHECK(is_selfic(FinMap::identity(3)));
  CHECK(is_selfic(FinMap(2, {1, 1, 2})));
  CHECK_FALSE(is_selfic(FinMap(2, {2, 1})));
  CHECK_FALSE(is_selfic(FinMap(3, {1, 2})));
  CHECK(is_selfic(FinMap::identity(0)));
}

TEST_CASE("is_selfic agrees with the definition on all maps up to size 4") {
  for (std::uint32_t k = 0; k <= 4; ++k)
    for (std::uint32_t l = 0; l <= 4; ++l)
      for (auto& f : all_maps(k, l)) CHECK(is_selfic(f) == selfic_oracle(f));
}

TEST_CASE("selfic_of_partition") {
  CHECK(selfic_of_partition(Partition{3, {{3}, {1, 2}}}) == FinMap(2, {1, 1, 2}));
  CHECK(selfic_of_partition(Partition{3, {{1}, {2}, {3}}}).is_identity());
  CHECK(selfic_of_partition(Partition{3, {{1, 2, 3}}}) == FinMap(1, {1, 1, 1}));
}

TEST_CASE("enumerate_selfic matches an independent partition count for k <= 6") {
  for (std::uint32_t k = 0; k <= 6; ++k) {
    auto counts = partition_counts(k);
    for (std::uint32_t l = 0; l <= k + 1; ++l) {
      auto maps = enumerate_selfic(k, l);
      CHECK_MESSAGE(maps.size() == (counts.count(l) ? counts[l] : 0), "k=" << k << " l=" << l);
      std::set<FinMap> distinct(maps.begin(), maps.end());
      CHECK(distinct.size() == maps.size());
      CHECK(std::is_sorted(maps.begin(), maps.end(), [](auto& a, auto& b) { return a.img < b.img; }));
      for (auto& f : maps) CHECK(selfic_oracle(f));
    }
  }
  CHECK(enumerate_selfic(3, 2).size() == 3);
  CHECK(enumerate_selfic(2, 3).empty());
  auto kk = enumerate_selfic(4, 4);
  REQUIRE(kk.size() == 1);
  CHECK(kk[0].is_identity());
}

TEST_CASE("fibers and selfic_of_partition are mutually inverse") {
  for (std::uint32_t k = 0; k <= 5; ++k)
    for (std::uint32_t l = 0; l <= k; ++l)
      for (auto& f : enumerate_selfic(k, l)) {
        auto p = fibers(f);
        CHECK(p.valid());
        CHECK(selfic_of_partition(p) == f);
        CHECK(fibers(selfic_of_partition(p)) == p);
      }
}

TEST_CASE("selfic_factor splits any map into selfic then injective") {
  std::mt19937 rng(7);
  for (int t = 0; t < 300; ++t) {
    std::uint32_t k = rng() % 6, l = 1 + rng() % 5;
    auto f = random_map(rng, k, l);
    auto e = selfic_factor(f);
    CHECK(is_selfic(e));
    CHECK(fibers(e) == fibers(f));
  }
}

TEST_CASE("compose is associative and unital on random maps") {
  std::mt19937 rng(11);
  for (int t = 0; t < 300; ++t) {
    std::uint32_t a = rng() % 5, b = 1 + rng() % 4, c = 1 + rng() % 4, d = 1 + rng() % 4;
    auto f = random_map(rng, a, b), g = random_map(rng, b, c), h = random_map(rng, c, d);
    CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
    CHECK(compose(FinMap::identity(b), f) == f);
    CHECK(compose(f, FinMap::identity(a)) == f);
  }
  CHECK_THROWS_AS(compose(FinMap(2, {1}), FinMap(3, {1})), std::invalid_argument);
}

TEST_CASE("map enumerations have the expected sizes") {
  CHECK(all_maps(3, 2).size() == 8);
  CHECK(all_maps(0, 0).size() == 1);
  CHECK(all_maps(2, 0).empty());
  CHECK(all_injections(2, 4).size() == 12);
  CHECK(all_surjections(3, 2).size() == 6);
  for (std::uint32_t k = 0; k <= 5; ++k)
    for (std::uint32_t n = 0; n <= 5; ++n) CHECK(injection_count(k, n) == all_injections(k, n).size());
}

TEST_CASE("boxfin_objects matches brute force") {
  for (std::uint32_t b = 0; b <= 3; ++b) {
    auto lib = boxfin_objects(b, b, b);
    std::vector<BoxObj> bounded;
    for (auto& x : box_oracle(b, b, b)) bounded.push_back(x);
    CHECK(lib == bounded);
  }
  auto two = boxfin_objects(2, 2, 2);
  CHECK(std::count_if(two.begin(), two.end(), [](auto& x) { return x.k == 2; }) == 3);
  CHECK(std::none_of(two.begin(), two.end(), [](auto& x) { return x.k == 2 && x.r == 1 && x.s == 1; }));
  auto zero = boxfin_objects(0, 0, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].k == 0);
}

TEST_CASE("boxfin_lift examples") {
  BoxObj kappa{2, 2, 1, FinMap::identity(2), FinMap(1, {1, 1})};
  BoxObj pt{1, 1, 1, FinMap::identity(1), FinMap::identity(1)};
  REQUIRE(kappa.valid());
  auto id = boxfin_lift(kappa, kappa, FinMap::identity(2), FinMap::identity(1));
  REQUIRE(id.has_value());
  CHECK(*id == identity_box(kappa));
  auto c = boxfin_lift(kappa, pt, FinMap(1, {1, 1}), FinMap::identity(1));
  REQUIRE(c.has_value());
  CHECK(c->a == FinMap(1, {1, 1}));
  BoxObj diag{2, 2, 2, FinMap::identity(2), FinMap::identity(2)};
  // (u p, v q) hits (1, 2), outside the diagonal pairing
  CHECK_FALSE(boxfin_lift(kappa, diag, FinMap::identity(2), FinMap(2, {2})).has_value());
}

TEST_CASE("lifts are unique and hom sets match the lift count for k, r, s <= 3") {
  auto objs = boxfin_objects(3, 3, 3);
  std::size_t pairs_checked = 0;
  for (auto& x : objs)
    for (auto& y : objs) {
      std::size_t with_lift = 0;
      for (auto& u : all_maps(x.r, y.r))
        for (auto& v : all_maps(x.s, y.s)) {
          auto l = boxfin_lift(x, y, u, v);
          auto brute = lifts_by_brute_force(x, y, u, v);
          CHECK(brute <= 1);
          CHECK(l.has_value() == (brute == 1));
          if (l) {
            CHECK(l->valid());
            ++with_lift;
          }
        }
      CHECK(boxfin_morphisms(x, y).size() == with_lift);
      ++pairs_checked;
    }
  CHECK(pairs_checked == objs.size() * objs.size());
}

TEST_CASE("box composition is associative and unital for k, r, s <= 2") {
  auto objs = boxfin_objects(2, 2, 2);
  for (auto& x : objs)
    for (auto& y : objs)
      for (auto& f : boxfin_morphisms(x, y)) {
        CHECK(compose(identity_box(y), f) == f);
        CHECK(compose(f, identity_box(x)) == f);
        for (auto& z : objs)
          for (auto& g : boxfin_morphisms(y, z)) {
            auto gf = compose(g, f);
            CHECK(gf.valid());
            for (auto& w : objs)
              for (auto& h : boxfin_morphisms(z, w)) CHECK(compose(h, gf) == compose(compose(h, g), f));
          }
      }
}

TEST_CASE("JSON round trips") {
  FinMap f(3, {2, 1, 3, 3});
  nlohmann::json j = f;
  CHECK(j.dump() == R"({"cod":3,"dom":4,"img":[2,1,3,3]})");
  CHECK(j.get<FinMap>() == f);
  for (auto& x : boxfin_objects(2, 2, 2)) {
    nlohmann::json jx = x;
    CHECK(jx.get<BoxObj>() == x);
  }
}
