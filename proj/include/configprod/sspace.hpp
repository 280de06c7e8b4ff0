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

// Simplicial spaces with finite discrete levels over the nerve of a
// skeleton Fin_{<=t}, levelwise pullbacks, truncation and its right adjoint,
// and the Segal, fiberwise-completeness and conservativity checkers.

#ifndef CONFIGPROD_SSPACE_HPP_
#define CONFIGPROD_SSPACE_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "configprod/fincat.hpp"
#include "configprod/simplicial.hpp"
#include "json.hpp"

namespace configprod {

/// Elements of one external degree n.
struct DssLevel {
  std::uint32_t size = 0;
  std::vector<std::uint32_t> face;   // d_i x at x*(n+1)+i, for n >= 1
  std::vector<std::uint32_t> degen;  // s_i x at x*(n+1)+i, for n < cap
  FlatTable ref;                     // base string of x, width n+1
  FlatTable key;                     // optional identifying data, any width
};

/// A degreewise discrete simplicial space X with a simplicial reference map
/// to N(Fin_{<=t}), stored up to external degree cap.
struct DiscreteSimplicialSpace {
  std::uint32_t cap = 0;
  std::shared_ptr<const FinSkeleton> base;
  std::vector<DssLevel> levels;

  std::uint32_t size(std::uint32_t n) const { return levels[n].size; }
  std::uint32_t d(std::uint32_t n, std::uint32_t x, std::uint32_t i) const {
    return levels[n].face[static_cast<std::size_t>(x) * (n + 1) + i];
  }
  std::uint32_t s(std::uint32_t n, std::uint32_t x, std::uint32_t i) const {
    return levels[n].degen[static_cast<std::size_t>(x) * (n + 1) + i];
  }
  Chain ref(std::uint32_t n, std::uint32_t x) const { return levels[n].ref.get(x); }
  /// Size of vertex i of the base string of x.
  std::uint32_t ref_vertex_size(std::uint32_t n, std::uint32_t x, std::uint32_t i) const;
  bool ref_arrow_is_identity(std::uint32_t n, std::uint32_t x, std::uint32_t j) const;

  /// theta^* x for theta : [p] -> [n], p <= cap.
  std::uint32_t apply(std::uint32_t n, std::uint32_t x, const Monotone& theta) const;

  /// Simplicial identities, index ranges and simpliciality of the reference.
  std::vector<std::string> validate(std::size_t max_errors = 8) const;
};

/// A map of simplicial spaces, one table per degree.
struct DssMap {
  std::vector<std::vector<std::uint32_t>> level;
};
/// Commutes with faces and degeneracies; with `over_base`, also with the
/// references (which then must live over the same skeleton).
std::vector<std::string> check_dss_map(const DiscreteSimplicialSpace& x,
                                       const DiscreteSimplicialSpace& y, const DssMap& f,
                                       bool over_base, std::size_t max_errors = 8);

/// Levels are all strings of C; keys are the strings, references apply the
/// functor to Fin. t defaults to the largest object size of C.
DiscreteSimplicialSpace nerve_over_fin(const FinCatOverFin& c, std::uint32_t cap,
                                       std::uint32_t t = kNone);

/// The map N(C) -> N(Fin_{<=t}) induced by another reference functor on the
/// same underlying category. `nerve_c` must come from nerve_over_fin.
DssMap reference_map(const DiscreteSimplicialSpace& nerve_c, const FinCatOverFin& other,
                     const DiscreteSimplicialSpace& nerve_fin);

/// X -> N(its base) sending x to its base string.
DssMap ref_as_map(const DiscreteSimplicialSpace& x, const DiscreteSimplicialSpace& nerve_base);

/// Levelwise X x_Z Y, ordered by (x, y). The reference is taken from X or
/// from Y; keys concatenate when both sides have them.
struct PullbackResult {
  DiscreteSimplicialSpace space;
  DssMap left, right;
};
enum class RefSide { kLeft, kRight };
PullbackResult pullback(const DiscreteSimplicialSpace& x, const DssMap& f,
                        const DiscreteSimplicialSpace& y, const DssMap& g, RefSide side);

/// X^{k]}: elements whose base string only visits objects <= k, now over
/// Fin_{<=k}. `kept` maps new elements to old ones.
struct TruncationResult {
  DiscreteSimplicialSpace space;
  DssMap kept;
};
TruncationResult truncate(const DiscreteSimplicialSpace& x, std::uint32_t k);

/// The right adjoint of truncation. An element over sigma is (sigma, w) with
/// w over the face of sigma spanned by vertices of size <= k, or (sigma,
/// point) when there are none.
struct TauStar {
  DiscreteSimplicialSpace space;
  std::vector<std::vector<std::uint32_t>> sigma, fiber;  // per element; fiber is kNone for the point
};
/// Throws std::length_error if a base level would exceed `max_base` strings.
TauStar tau_lower_star(const DiscreteSimplicialSpace& w, std::uint32_t t,
                       std::uint64_t max_base = 5'000'000);

/// All maps X -> Y over a common base, by backtracking. Stops after `limit`.
std::vector<DssMap> enumerate_maps(const DiscreteSimplicialSpace& x, const DiscreteSimplicialSpace& y,
                                   std::size_t limit = 1'000'000);

/// The adjunction bijection between maps tau^*X -> W and maps X -> tau_*W.
struct AdjunctionReport {
  std::size_t left_maps = 0, right_maps = 0;
  bool bijective = false;
  std::vector<std::string> errors;
};
AdjunctionReport check_truncation_adjunction(const DiscreteSimplicialSpace& x,
                                             const DiscreteSimplicialSpace& w, std::uint32_t k);

struct SegalReport {
  bool ok = true;
  std::vector<std::uint64_t> level_size, spine_count;  // per degree
  std::vector<std::string> errors;
};
/// Spine maps X_n -> X_1 x_{X_0} ... x_{X_0} X_1 are bijective for 2 <= n <= cap.
SegalReport segal_check(const DiscreteSimplicialSpace& x);

struct CartesianWitness {
  std::uint32_t degree = 0, element = 0, position = 0;
};
struct ConservativeReport {
  bool ok = true;
  std::vector<CartesianWitness> witnesses;  // capped at max_witnesses
  std::uint64_t violations = 0;
};
/// Each square along s_j : X_n -> X_{n+1}, B_n -> B_{n+1} with n+1 <= cap is
/// a strict pullback: y over an identity at arrow j equals s_j d_j y.
ConservativeReport conservative_check(const DiscreteSimplicialSpace& x,
                                      std::size_t max_witnesses = 8);
/// The square along an arbitrary monotone surjection sigma out of [p].
ConservativeReport cartesian_along(const DiscreteSimplicialSpace& x, const Monotone& sigma,
                                   std::size_t max_witnesses = 8);

/// Edges with a two-sided inverse up to the Segal structure. Requires the
/// Segal condition in degree 2.
std::vector<bool> he_edges(const DiscreteSimplicialSpace& x);

struct CompletenessReport {
  bool ok = true;
  bool segal = true;
  std::uint64_t he_count = 0;
  std::vector<std::string> errors;
};
/// The square (X_1^he -> B_1^he) over (X_0 -> B_0) through d_1 (or d_0) is
/// a strict pullback. Fails when the Segal check fails.
CompletenessReport fiberwise_complete_check(const DiscreteSimplicialSpace& x, bool use_d0 = false);

/// Edges over base isomorphisms compared with he edges.
struct InvertibilityReport {
  bool agree = true;
  std::uint64_t over_iso = 0, he = 0;
  std::vector<std::uint32_t> disagreeing;  // edges, first few
};
InvertibilityReport invertibility_criterion(const DiscreteSimplicialSpace& x);

void to_json(nlohmann::json& j, const DiscreteSimplicialSpace& x);
DiscreteSimplicialSpace dss_from_json(const nlohmann::json& j);

}  // namespace configprod

#endif  // CONFIGPROD_SSPACE_HPP_
