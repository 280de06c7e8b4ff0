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
#include <set>

#include "configprod/boxtensor.hpp"
#include "doctest.h"

using namespace configprod;

namespace {

std::uint64_t falling(std::uint64_t n, std::uint64_t k) {
  std::uint64_t p = 1;
  for (std::uint64_t i = 0; i < k; ++i) p *= n - i;
  return p;
}

// Objects and morphisms of the discrete configuration category on n points:
// injections k -> n, and pairs (x, y) with img x inside img y.
std::uint64_t config_objects(std::uint64_t n) {
  std::uint64_t t = 0;
  for (std::uint64_t k = 0; k <= n; ++k) t += falling(n, k);
  return t;
}
std::uint64_t config_morphisms(std::uint64_t n) {
  std::uint64_t t = 0;
  for (std::uint64_t l = 0; l <= n; ++l)
    for (std::uint64_t k = 0; k <= l; ++k) t += falling(n, l) * falling(l, k);
  return t;
}

}  // namespace

TEST_CASE("config category sizes match the injection counts") {
  for (std::uint32_t m = 0; m <= 4; ++m) {
    auto c = config_discrete(m);
    CHECK(c.cat.cat.num_objects() == config_objects(m));
    CHECK(c.cat.cat.num_morphisms() == config_morphisms(m));
    CHECK(c.cat.validate().empty());
  }
}

TEST_CASE("minimal bounds and product configurations") {
  CHECK(minimal_box_bounds(2, 3) == BoxBounds{6, 2, 3});
  // the diagonal pair (1,1), (2,2) inside {1,2} x {1,2}
  BoxObj u{2, 2, 2, FinMap(2, {1, 2}), FinMap(2, {1, 2})};
  auto z = product_configuration(FinMap(3, {3, 1}), FinMap(2, {2, 1}), u, 2);
  CHECK(z == FinMap(6, {6, 1}));
}

TEST_CASE("Boxfin is a category over Fin in three ways") {
  for (BoxBounds b : {BoxBounds{2, 2, 2}, BoxBounds{3, 2, 2}, BoxBounds{2, 3, 2}}) {
    auto bf = boxfin_category(b);
    CHECK(bf.p0.validate().empty());
    CHECK(bf.p1.validate().empty());
    CHECK(bf.p2.validate().empty());
    CHECK(bf.objects.size() == boxfin_objects(b.k_max, b.r_max, b.s_max).size());
    // by_legs is injective: lifts are unique
    CHECK(bf.by_legs.size() == bf.p0.cat.num_morphisms());
  }
}

TEST_CASE("N Boxfin is Segal and fiberwise complete but not conservative") {
  auto bf = boxfin_category({3, 3, 3});
  auto nb = nerve_over_fin(bf.p0, 2, 3);
  CHECK(segal_check(nb).ok);
  CHECK(fiberwise_complete_check(nb).ok);
  auto c = conservative_check(nb);
  REQUIRE_FALSE(c.ok);
  REQUIRE_FALSE(c.witnesses.empty());
  // the witness lies over an identity at its arrow yet is not degenerate there
  const auto& w = c.witnesses[0];
  CHECK(nb.ref_arrow_is_identity(w.degree, w.element, w.position + 1));
  CHECK(nb.s(w.degree - 1, nb.d(w.degree, w.element, w.position), w.position) != w.element);
}

TEST_CASE("surjective legs break fiberwise completeness") {
  auto bf = boxfin_category({2, 2, 2}, LegKind::kSurjective);
  auto nb = nerve_over_fin(bf.p0, 2, 2);
  CHECK(segal_check(nb).ok);
  CHECK_FALSE(fiberwise_complete_check(nb).ok);
}

TEST_CASE("box_pre rejects mismatched bounds") {
  auto a = config_discrete(2);
  auto x = nerve_over_fin(a.cat, 2, 2);
  auto bf = boxfin_category({4, 2, 1});
  CHECK_THROWS_AS(box_pre(x, x, bf), std::invalid_argument);
  try {
    box_pre(x, x, bf);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("k<=4, r<=2, s<=2") != std::string::npos);
  }
}

TEST_CASE("box of configuration categories is the product configuration category") {
  for (std::uint32_t m = 1; m <= 2; ++m)
    for (std::uint32_t n = 1; n <= 2; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      auto a = config_discrete(m), b = config_discrete(n), z = config_discrete(m * n);
      auto bf = boxfin_category(minimal_box_bounds(m, n));
      auto w = box_pre_category(a.cat, b.cat, bf);
      CHECK(w.cat.validate().empty());
      CHECK(w.objects.size() == config_objects(m * n));
      CHECK(w.cat.cat.num_morphisms() == config_morphisms(m * n));
      auto cmp = comparison_functor(w, a, b, bf, z);
      CHECK(cmp.errors.empty());
      std::set<std::uint32_t> objs(cmp.functor.obj.begin(), cmp.functor.obj.end());
      std::set<std::uint32_t> mors(cmp.functor.mor.begin(), cmp.functor.mor.end());
      CHECK_FALSE(objs.count(kNone));
      CHECK_FALSE(mors.count(kNone));
      CHECK(objs.size() == z.cat.cat.num_objects());
      CHECK(mors.size() == z.cat.cat.num_morphisms());
      if (m == 1 && n == 1) CHECK(w.objects.size() == 2);
    }
}

TEST_CASE("box_pre of nerves is the nerve of the box category") {
  for (std::uint32_t m = 1; m <= 2; ++m)
    for (std::uint32_t n = 1; n <= 2; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      auto a = config_discrete(m), b = config_discrete(n);
      auto bf = boxfin_category(minimal_box_bounds(m, n));
      auto x = nerve_over_fin(a.cat, 3, m), y = nerve_over_fin(b.cat, 3, n);
      auto p = box_pre(x, y, bf);
      CHECK(p.space.validate().empty());
      CHECK(check_dss_map(p.space, x, p.to_x, false).empty());
      CHECK(check_dss_map(p.space, y, p.to_y, false).empty());
      auto w = box_pre_category(a.cat, b.cat, bf);
      CHECK(box_pre_matches_nerve(p, w).empty());
      CHECK(segal_check(p.space).ok);
      CHECK(fiberwise_complete_check(p.space).ok);
      CHECK(conservative_check(p.space).ok);
    }
}

TEST_CASE("comma subspaces are closed and biject with the commas") {
  auto a = config_discrete(2);
  auto bf = boxfin_category(minimal_box_bounds(2, 2));
  auto w = box_pre_category(a.cat, a.cat, bf);
  for (std::uint32_t o = 0; o < w.objects.size(); ++o) {
    auto rep = comma_subspace_check(a.cat, a.cat, bf, w, o);
    CHECK(rep.bijective);
    CHECK(rep.closed);
    CHECK(rep.members <= rep.candidates);
  }
}

TEST_CASE("orbit box strings are plain strings with group labels") {
  auto a = config_discrete(2), b = config_discrete(1), z = config_discrete(2);
  auto bf = boxfin_category(minimal_box_bounds(2, 1));
  auto o = box_pre_orbit(a, symmetric_group(2), b, symmetric_group(1), z, bf);
  auto plain = box_pre_category(a.cat, b.cat, bf);
  CHECK(o.w.cat.validate().empty());
  CHECK(o.comparison.errors.empty());
  auto rep = orbit_fiber_check(o, plain, 3);
  CHECK(rep.exact);
  for (std::uint32_t n = 0; n <= 3; ++n) {
    CHECK(rep.orbit_size[n] == count_chains(o.w.cat.cat, n));
    CHECK(rep.orbit_size[n] == rep.plain_size[n] * (1u << n));
  }
  // the comparison is bijective onto the orbit category of the product
  std::set<std::uint32_t> mors(o.comparison.functor.mor.begin(), o.comparison.functor.mor.end());
  CHECK_FALSE(mors.count(kNone));
  CHECK(mors.size() == o.product.semi.cat.cat.num_morphisms());
}
