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

// The bounded box category, the pre-tensor product of simplicial spaces over
// N(Fin) as a pullback along the leg projections, its categorical form for
// nerves of categories, and the comparison with the product configurations.

#ifndef CONFIGPROD_BOXTENSOR_HPP_
#define CONFIGPROD_BOXTENSOR_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "configprod/configcat.hpp"
#include "configprod/finset.hpp"
#include "configprod/sspace.hpp"
#include "json.hpp"

namespace configprod {

struct BoxBounds {
  std::uint32_t k_max = 0, r_max = 0, s_max = 0;
  friend bool operator==(const BoxBounds&, const BoxBounds&) = default;
};
/// k <= r s, since the pairing of a box object is injective.
BoxBounds minimal_box_bounds(std::uint32_t r_max, std::uint32_t s_max);

/// Boxfin within bounds, with its three references to Fin on one category.
struct BoxfinCategory {
  BoxBounds bounds;
  LegKind legs = LegKind::kSelfic;
  std::vector<BoxObj> objects;
  std::vector<FinMap> a, b, c;  // per morphism
  FinCatOverFin p0, p1, p2;

  std::uint32_t find(const BoxObj& x) const;
  /// The morphism src -> dst over (b, c), or kNone.
  std::uint32_t morphism(std::uint32_t src, std::uint32_t dst, const FinMap& b, const FinMap& c) const;

  std::map<BoxObj, std::uint32_t> index;
  std::map<std::tuple<std::uint32_t, std::uint32_t, FinMap, FinMap>, std::uint32_t> by_legs;
};
BoxfinCategory boxfin_category(const BoxBounds& bounds, LegKind legs = LegKind::kSelfic);

/// The levelwise pullback of X x Y along (p1, p2) : N Boxfin -> N Fin x N Fin,
/// referenced through p0. Keys are (x string, box string, y string).
struct BoxPreSpace {
  DiscreteSimplicialSpace space;
  DssMap to_x, to_box, to_y;
  BoxBounds bounds;
  nlohmann::json provenance;
};
/// X over Fin_{<=r_max}, Y over Fin_{<=s_max}. Throws std::invalid_argument
/// naming the minimal bounds when they do not match.
BoxPreSpace box_pre(const DiscreteSimplicialSpace& x, const DiscreteSimplicialSpace& y,
                    const BoxfinCategory& boxfin);

/// The category whose nerve is the pre-tensor of two nerves: objects
/// (x, y, kappa) with p1 kappa = |x| and p2 kappa = |y|, morphisms (phi, psi)
/// together with their unique lift in Boxfin.
struct BoxPreCategory {
  struct Obj {
    std::uint32_t x, y, box;
  };
  struct Mor {
    std::uint32_t phi, psi, box;
  };
  FinCatOverFin cat;
  std::vector<Obj> objects;
  std::vector<Mor> morphisms;
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t> object_index;
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t> morphism_index;

  std::uint32_t find_morphism(std::uint32_t src, std::uint32_t phi, std::uint32_t psi, std::uint32_t box) const;
};
BoxPreCategory box_pre_category(const FinCatOverFin& a, const FinCatOverFin& b, const BoxfinCategory& boxfin);

/// The nerve of the category agrees with the pullback: a levelwise bijection
/// of keyed elements commuting with all operators and references.
std::vector<std::string> box_pre_matches_nerve(const BoxPreSpace& w, const BoxPreCategory& c);

/// (f, g, u) -> (f x g) u, with (i, j) in M x N numbered (i - 1)|N| + j.
FinMap product_configuration(const FinMap& f, const FinMap& g, const BoxObj& u, std::uint32_t n_points);

struct Comparison {
  Functor functor;
  std::vector<std::string> errors;  // functoriality failures
  std::string note;
};
Comparison comparison_functor(const BoxPreCategory& w, const ConfigCat& a, const ConfigCat& b,
                              const BoxfinCategory& boxfin, const ConfigCat& z);

/// Membership in the comma subspace: kappa -> lambda lifts the pair (u, v).
bool comma_membership(const BoxObj& lambda, const BoxObj& kappa, const FinMap& u, const FinMap& v);

struct CommaSubspaceReport {
  std::uint64_t candidates = 0, members = 0, comma_objects = 0, closure_edges = 0;
  bool bijective = false, closed = true;
  std::vector<std::string> errors;
};
/// Compares W / w with the members of (A / x) box (B / y) and checks that
/// membership is invariant along edges over isomorphisms.
CommaSubspaceReport comma_subspace_check(const FinCatOverFin& a, const FinCatOverFin& b,
                                         const BoxfinCategory& boxfin, const BoxPreCategory& w,
                                         std::uint32_t w_object);

/// The orbit form: box of the two orbit categories with its functor to the
/// orbit category of the product.
struct BoxPreOrbit {
  ConfigOrbit left, right, product;
  BoxPreCategory w;
  Comparison comparison;
};
BoxPreOrbit box_pre_orbit(const ConfigCat& a, const PermGroup& g, const ConfigCat& b, const PermGroup& h,
                          const ConfigCat& z, const BoxfinCategory& boxfin);

/// Levelwise: strings of the orbit box biject with pairs (string of the plain
/// box, sequence in (G x H)^n).
struct FiberSequenceReport {
  std::vector<std::uint64_t> orbit_size, plain_size, group_power;
  bool exact = true;
  std::vector<std::string> errors;
};
FiberSequenceReport orbit_fiber_check(const BoxPreOrbit& o, const BoxPreCategory& plain, std::uint32_t cap);

}  // namespace configprod

#endif  // CONFIGPROD_BOXTENSOR_HPP_
