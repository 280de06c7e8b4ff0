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

#include "configprod/simplicial.hpp"
#include "doctest.h"

using namespace configprod;

TEST_CASE("cofaces and codegeneracies satisfy the cosimplicial identities") {
  for (std::uint32_t n = 1; n <= 5; ++n) {
    for (std::uint32_t j = 0; j <= n; ++j)
      for (std::uint32_t i = 0; i < j; ++i)
        CHECK(compose(Monotone::coface(n, j), Monotone::coface(n - 1, i)) ==
              compose(Monotone::coface(n, i), Monotone::coface(n - 1, j - 1)));
    for (std::uint32_t j = 0; j < n; ++j) {
      CHECK(compose(Monotone::codegeneracy(n - 1, j), Monotone::coface(n, j)).is_identity());
      CHECK(compose(Monotone::codegeneracy(n - 1, j), Monotone::coface(n, j + 1)).is_identity());
    }
  }
}

TEST_CASE("epi_mono factors every monotone map") {
  for (std::uint32_t p = 0; p <= 4; ++p)
    for (std::uint32_t q = 0; q <= 4; ++q)
      for (auto& t : all_monotone(p, q)) {
        auto [e, m] = epi_mono(t);
        CHECK(e.is_surjective());
        CHECK(m.is_injective());
        CHECK(compose(m, e) == t);
      }
}

TEST_CASE("collapse masks encode surjections") {
  for (std::uint32_t p = 0; p <= 5; ++p)
    for (std::uint32_t q = 0; q <= p; ++q)
      for (auto& s : all_monotone_surjections(p, q)) CHECK(surjection_from_mask(p, collapse_mask(s)) == s);
  CHECK(all_monotone(2, 1).size() == 4);
  CHECK(all_monotone_surjections(3, 1).size() == 3);
}

TEST_CASE("boundary of the 2-simplex") {
  auto b = boundary_of_simplex(2);
  CHECK(b.cap == 1);
  CHECK(b.size(0) == 3);
  CHECK(b.size(1) == 3);
  CHECK(b.check_identities().empty());
  auto b3 = boundary_of_simplex(3);
  CHECK(b3.size(2) == 4);
  CHECK(b3.check_identities().empty());
}

TEST_CASE("faces of degenerate simplices follow the simplicial identities") {
  auto b = boundary_of_simplex(3);  // cap 2
  // s_0 of an edge, viewed in degree 2
  Face y{0, 1u};
  CHECK(b.face_of(2, y, 0) == Face{0, 0});
  CHECK(b.face_of(2, y, 1) == Face{0, 0});
  CHECK(b.face_of(2, y, 2) == Face{b.face(1, 0, 1).index, 1u});
  // theta^* composes
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::uint32_t n = 2, x = rng() % 4;
    auto all1 = all_monotone(1 + rng() % 3, n);
    auto& a = all1[rng() % all1.size()];
    auto all2 = all_monotone(rng() % 3, a.dom_top());
    auto& c = all2[rng() % all2.size()];
    Face lhs = b.apply(a.dom_top(), b.apply(n, Face{x, 0}, a), c);
    Face rhs = b.apply(n, Face{x, 0}, compose(a, c));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("disjoint union adds counts") {
  auto u = CappedSSet::disjoint_union(boundary_of_simplex(2), discrete_points(2, 1));
  CHECK(u.size(0) == 5);
  CHECK(u.size(1) == 3);
  CHECK(u.check_identities().empty());
}
