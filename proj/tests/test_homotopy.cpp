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
#include "configprod/homotopy.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace configprod;
using namespace configprod::testing;

TEST_CASE("status combination") {
  CHECK(combine(Status::kPass, Status::kPass) == Status::kPass);
  CHECK(combine(Status::kPass, Status::kInconclusive) == Status::kInconclusive);
  CHECK(combine(Status::kInconclusive, Status::kFail) == Status::kFail);
  CHECK(combine(Status::kFail, Status::kPass) == Status::kFail);
  CHECK(to_string(Status::kInconclusive) == "INCONCLUSIVE");
}

TEST_CASE("compression inverts pullback along surjections") {
  auto c = config_discrete(2);
  const auto& k = c.cat.cat;
  for (std::uint32_t kk = 0; kk <= 2; ++kk) {
    auto strings = all_chains(k, kk);
    for (std::uint32_t l = kk; l <= 3; ++l)
      for (auto& beta : all_monotone_surjections(l, kk))
        for (std::uint32_t i = 0; i < strings.size(); ++i) {
          auto z = strings.get(i);
          auto a = chain_apply(k, z, beta);
          REQUIRE_FALSE(a.empty());
          CHECK(compress(c.cat, a, beta) == z);
        }
  }
}

TEST_CASE("compression refuses collapsed arrows off the identity") {
  auto inv = involution_over_identity();
  Chain a{0, 1};
  auto beta = all_monotone_surjections(1, 0).front();
  CHECK_THROWS_AS(compress(inv, a, beta), CompressError);
  try {
    compress(inv, a, beta);
  } catch (const CompressError& e) {
    CHECK(e.position == 1);
    CHECK(e.witness == a);
  }
}

TEST_CASE("Eilenberg-Zilber forms") {
  auto c = config_discrete(2);
  const auto& k = c.cat.cat;
  for (std::uint32_t n = 0; n <= 3; ++n) {
    auto strings = all_chains(k, n);
    for (std::uint32_t i = 0; i < strings.size(); ++i) {
      auto z = strings.get(i);
      auto ez = ez_form(k, z);
      CHECK(chain_apply(k, ez.c0, ez.alpha0) == z);
      for (std::size_t j = 1; j < ez.c0.size(); ++j) CHECK_FALSE(k.is_identity(ez.c0[j]));
      CHECK(ez.alpha0.cod_top + 1 == ez.c0.size());
    }
  }
}

TEST_CASE("degree r of the conservatization of a conservative nerve") {
  // pi0 of level r is the number of strings of length r
  auto c = config_discrete(2);
  auto id = identity_functor(c.cat.cat);
  for (std::uint32_t r = 0; r <= 2; ++r) {
    std::vector<StageResult> stages;
    for (std::uint32_t L = r; L <= r + 3; ++L) {
      auto ll = lambda_level(c.cat, {r, Variant::kFlat, L});
      auto sr = discrete_stage(ll, c.cat, id, {});
      CHECK(sr.status == Status::kPass);
      CHECK(sr.bijective);
      CHECK(sr.probe.pi0 == count_chains(c.cat.cat, r));
      CHECK(sr.probe.homology_certified);
      stages.push_back(sr);
    }
    CHECK(verify_weak_equiv_to_discrete(stages).status == Status::kPass);
  }
}

TEST_CASE("cone certificates agree with explicit homology") {
  auto c = config_discrete(2);
  auto id = identity_functor(c.cat.cat);
  ProbeOptions with, without;
  with.probe = without.probe = 1;
  without.certificates = false;
  without.budget = 2'000'000;
  for (std::uint32_t r = 0; r <= 1; ++r)
    for (std::uint32_t L = r; L <= r + 1; ++L) {
      auto ll = lambda_level(c.cat, {r, Variant::kFlat, L});
      auto a = discrete_stage(ll, c.cat, id, with);
      auto b = discrete_stage(ll, c.cat, id, without);
      CHECK(a.probe.homology_certified);
      CHECK_FALSE(b.probe.homology_certified);
      CHECK(a.status == b.status);
      CHECK(a.probe == b.probe);
    }
}

TEST_CASE("a tiny budget gives an inconclusive stage") {
  auto c = config_discrete(2);
  ProbeOptions opt;
  opt.certificates = false;
  opt.budget = 10;
  auto ll = lambda_level(c.cat, {1, Variant::kFlat, 2});
  auto sr = discrete_stage(ll, c.cat, identity_functor(c.cat.cat), opt);
  CHECK(sr.status == Status::kInconclusive);
  std::vector<StageResult> stages(3, sr);
  CHECK(verify_weak_equiv_to_discrete(stages).status == Status::kInconclusive);
}

TEST_CASE("an orbit category is not compared with its vertices") {
  auto c = config_discrete(2);
  auto o = config_orbit(c, symmetric_group(2));
  auto ll = lambda_level(o.semi.cat, {1, Variant::kFlat, 2});
  auto sr = discrete_stage(ll, o.semi.cat, identity_functor(o.semi.cat.cat), {});
  CHECK(sr.status == Status::kFail);
  CHECK(sr.diagnostics.contains("compress_witness"));
}

TEST_CASE("map equivalences by mapping cones") {
  auto x = boundary_of_simplex(3);
  SimplicialMap id;
  for (std::uint32_t n = 0; n <= x.cap; ++n) {
    id.image.emplace_back();
    for (std::uint32_t i = 0; i < x.size(n); ++i) id.image[n].push_back({i, 0});
  }
  CHECK(map_equivalence_check(x, x, id, 0).status == Status::kPass);
  auto c = config_discrete(2);
  auto nc = nerve_of_functor(c.cat.cat, c.cat.cat, identity_functor(c.cat.cat), 4);
  CHECK(map_equivalence_check(nc.source, nc.target, nc.map, 2).status == Status::kPass);

  // B(Z/2) -> point has cone homology in degree 1
  auto inv = involution_over_identity();
  FinCat pt;
  pt.add_object();
  pt.finalize();
  Functor f{{0}, {0, 0}};
  auto nm = nerve_of_functor(inv.cat, pt, f, 4);
  CHECK(check_simplicial_map(nm.source, nm.target, nm.map).empty());
  auto v = map_equivalence_check(nm.source, nm.target, nm.map, 2);
  CHECK(v.status == Status::kFail);
  CHECK(v.diagnostics["pi0"]["bijective"] == true);
}

TEST_CASE("level maps induced by isomorphisms pass by certificate") {
  auto c = config_discrete(2);
  auto o = config_orbit(c, symmetric_group(2));
  for (std::uint32_t r = 0; r <= 1; ++r) {
    auto a = lambda_level(o.semi.cat, {r, Variant::kFlat, r + 1});
    auto b = lambda_level(o.semi.cat, {r, Variant::kFlat, r + 1});
    auto sr = lambda_map_stage(a, b, identity_functor(o.semi.cat.cat), {});
    CHECK(sr.status == Status::kPass);
    CHECK(sr.diagnostics["equivalence"] == "isomorphism of categories of elements");
  }
}

TEST_CASE("level maps compared through explicit cones") {
  auto c = config_discrete(1);
  auto a = lambda_level(c.cat, {0, Variant::kFlat, 1});
  ProbeOptions opt;
  opt.certificates = false;
  opt.probe = 1;
  auto sr = lambda_map_stage(a, a, identity_functor(c.cat.cat), opt);
  CHECK(sr.status == Status::kPass);
  CHECK(sr.diagnostics.contains("cone"));
}

TEST_CASE("discrete cartesian squares") {
  // A = C x_D B for C = {0, 1}, B = {0, 1, 2} over D = {0, 1}
  CartesianSquare sq;
  sq.c_size = 2;
  sq.b_size = 3;
  sq.d_size = 2;
  sq.bottom = {0, 1};
  sq.right = {0, 0, 1};
  sq.a_size = 3;
  sq.left = {0, 0, 1};
  sq.top = {0, 1, 2};
  std::string w;
  CHECK(homotopy_cartesian_discrete(sq, &w));
  sq.a_size = 2;
  sq.left = {0, 1};
  sq.top = {0, 2};
  CHECK_FALSE(homotopy_cartesian_discrete(sq, &w));
  CHECK(w.find("pullback has 3") != std::string::npos);
  sq.top = {1, 2};
  sq.left = {1, 1};
  CHECK_FALSE(homotopy_cartesian_discrete(sq, &w));
  CHECK(w.find("commute") != std::string::npos);
}
