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

// Configuration categories of finite discrete spaces in the particle model,
// their orbit categories under permutation groups, and property beta.

#ifndef CONFIGPROD_CONFIGCAT_HPP_
#define CONFIGPROD_CONFIGCAT_HPP_

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "configprod/fincat.hpp"
#include "configprod/homotopy.hpp"
#include "json.hpp"

namespace configprod {

/// Objects are injections k -> M (ordered by k, then lexicographically);
/// there is one morphism x -> y, over f, whenever x = y o f.
struct ConfigCat {
  std::uint32_t points = 0;
  FinCatOverFin cat;
  std::vector<FinMap> config;  // per object

  std::uint32_t find(const FinMap& x) const;  // kNone if absent
  std::uint32_t morphism(std::uint32_t x, std::uint32_t y) const;  // kNone if none

  std::unordered_map<FinMap, std::uint32_t, FinMapHash> index;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> hom;
};
ConfigCat config_discrete(std::uint32_t m);

/// The comma category over an object, with its reference to Fin.
FinCatOverFin config_comma(const ConfigCat& c, std::uint32_t x);

/// Postcomposition of configurations with permutations of M.
GroupAction postcomposition_action(const ConfigCat& c, const PermGroup& g);

struct ConfigOrbit {
  PermGroup group;
  GroupAction action;
  Semidirect semi;
};
/// Throws std::invalid_argument when the group does not act on M.
ConfigOrbit config_orbit(const ConfigCat& c, const PermGroup& g);

/// The functor induced by an injection j : M -> M'.
Functor config_inclusion(const ConfigCat& a, const ConfigCat& b, const FinMap& j);

/// The functor c / x -> c / y given by postcomposition with f : x -> y.
Functor comma_postcomposition(const FinCatOverFin& c, std::uint32_t f, const CommaResult& cx,
                              const CommaResult& cy);

struct BetaOptions {
  std::vector<std::uint32_t> bounds{2, 3, 4};
  std::uint64_t edge_budget = 64;
  ProbeOptions probe;
};
struct BetaEdge {
  std::uint32_t morphism = 0;
  Verdict verdict;
};
struct BetaReport {
  Status status = Status::kPass;
  std::uint64_t edges_total = 0;  // non-identity morphisms over identities
  std::vector<BetaEdge> edges;    // the first edge_budget of them
};
/// For each non-identity f : x -> y over an identity, compares degree 0 of
/// the flat conservatizations of c / x and c / y through f.
BetaReport check_property_beta(const FinCatOverFin& c, const BetaOptions& opt = {});

}  // namespace configprod

#endif  // CONFIGPROD_CONFIGCAT_HPP_
