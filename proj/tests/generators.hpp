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

// Hand-rolled generators and small fixed categories shared by the tests.

#ifndef CONFIGPROD_TESTS_GENERATORS_HPP_
#define CONFIGPROD_TESTS_GENERATORS_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "configprod/configcat.hpp"
#include "configprod/fincat.hpp"

namespace configprod::testing {

/// The full subcategory of c on the given objects, in the given order.
inline FinCatOverFin full_subcategory(const FinCatOverFin& c, const std::vector<std::uint32_t>& objs) {
  FinCatOverFin s;
  const auto& k = c.cat;
  std::vector<std::uint32_t> obj_id(k.num_objects(), kNone), mor_id(k.num_morphisms(), kNone);
  for (auto o : objs) {
    obj_id[o] = s.add_object(c.obj_size[o]);
    mor_id[k.identity(o)] = s.cat.identity(obj_id[o]);
  }
  for (std::uint32_t m = 0; m < k.num_morphisms(); ++m)
    if (!k.is_identity(m) && obj_id[k.src(m)] != kNone && obj_id[k.dst(m)] != kNone)
      mor_id[m] = s.add_morphism(obj_id[k.src(m)], obj_id[k.dst(m)], c.mor_map[m]);
  for (const auto& [key, h] : k.composites()) {
    auto g = mor_id[key >> 32], f = mor_id[key & 0xffffffffu];
    if (g != kNone && f != kNone) s.cat.set_composite(g, f, mor_id[h]);
  }
  s.cat.finalize();
  return s;
}

/// A random full subcategory of c keeping each object with probability p.
inline FinCatOverFin random_full_subcategory(const FinCatOverFin& c, double p, std::mt19937& rng) {
  std::bernoulli_distribution keep(p);
  std::vector<std::uint32_t> objs;
  for (std::uint32_t o = 0; o < c.cat.num_objects(); ++o)
    if (keep(rng)) objs.push_back(o);
  if (objs.empty()) objs.push_back(0);
  return full_subcategory(c, objs);
}

/// One object of size 1 with an involution over the identity.
inline FinCatOverFin involution_over_identity() {
  FinCatOverFin c;
  c.add_object(1);
  auto g = c.add_morphism(0, 0, FinMap::identity(1), "g");
  c.cat.set_composite(g, g, c.cat.identity(0));
  c.cat.finalize();
  return c;
}

/// Objects a, a' of size 0 and x, y of size 1. u, w : a -> x and u' : a' -> x,
/// f : x -> y over the identity, h : a -> a', v : a -> y, v' : a' -> y.
/// Property beta fails along f.
inline FinCatOverFin beta_counterexample() {
  FinCatOverFin c;
  auto a = c.add_object(0, "a"), a2 = c.add_object(0, "a'");
  auto x = c.add_object(1, "x"), y = c.add_object(1, "y");
  auto e = FinMap::empty(1);
  auto u = c.add_morphism(a, x, e, "u");
  auto w = c.add_morphism(a, x, e, "w");
  auto u2 = c.add_morphism(a2, x, e, "u'");
  auto f = c.add_morphism(x, y, FinMap::identity(1), "f");
  auto h = c.add_morphism(a, a2, FinMap::identity(0), "h");
  auto v = c.add_morphism(a, y, e, "v");
  auto v2 = c.add_morphism(a2, y, e, "v'");
  c.cat.set_composite(f, u, v);
  c.cat.set_composite(f, w, v);
  c.cat.set_composite(f, u2, v2);
  c.cat.set_composite(u2, h, w);
  c.cat.set_composite(v2, h, v);
  c.cat.finalize();
  return c;
}

/// A single object of size 0: every conservatization level is its index category.
inline FinCatOverFin point_category() {
  FinCatOverFin c;
  c.add_object(0);
  c.cat.finalize();
  return c;
}

inline Functor identity_functor(const FinCat& c) {
  Functor f;
  for (std::uint32_t o = 0; o < c.num_objects(); ++o) f.obj.push_back(o);
  for (std::uint32_t m = 0; m < c.num_morphisms(); ++m) f.mor.push_back(m);
  return f;
}

}  // namespace configprod::testing

#endif  // CONFIGPROD_TESTS_GENERATORS_HPP_
