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

// Verdicts, compression of strings over degenerate base strings, and the
// comparisons that decide weak equivalences at fixed probes.

#ifndef CONFIGPROD_HOMOTOPY_HPP_
#define CONFIGPROD_HOMOTOPY_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "configprod/conservatize.hpp"
#include "configprod/fincat.hpp"
#include "configprod/homology.hpp"
#include "json.hpp"

namespace configprod {

enum class Status { kPass, kFail, kInconclusive };
std::string to_string(Status s);
/// FAIL dominates INCONCLUSIVE, which dominates PASS.
Status combine(Status a, Status b);

struct Verdict {
  Status status = Status::kPass;
  nlohmann::json diagnostics = nlohmann::json::object();
};
void to_json(nlohmann::json& j, const Verdict& v);

/// A non-identity arrow over an identity where compression needs one.
class CompressError : public std::domain_error {
 public:
  CompressError(Chain witness, std::uint32_t position);
  Chain witness;
  std::uint32_t position;  // arrow index, 1-based
};

/// The unique c in Z_k with beta^* c = a, for a in Z_l over a beta-degenerate
/// base string. Throws CompressError when an arrow collapsed by beta is not
/// an identity.
Chain compress(const FinCatOverFin& z, const Chain& a, const Monotone& beta);

/// Eilenberg-Zilber form z = alpha0^* c0 in a nerve: c0 drops the identities.
struct EzForm {
  Monotone alpha0;
  Chain c0;
};
EzForm ez_form(const FinCat& c, const Chain& z);

/// (e, x) -> alpha^*(compress_beta(phi(x))) in Z_r.
struct VertexComparison {
  FlatTable targets;                  // Z_r, sorted
  std::vector<std::uint32_t> assign;  // per object of the level
  Pi0 components;
  bool constant = true;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> counterexample;  // an edge
  std::vector<std::uint32_t> component_target;  // kNone where not constant
};
/// Throws CompressError when Z has a non-identity arrow over an identity on
/// the way.
VertexComparison vertex_comparison(const LambdaLevel& ll, const FinCatOverFin& z, const Functor& phi,
                                   bool parallel = true);

struct ProbeOptions {
  std::uint32_t probe = 2;             // homology degrees checked
  std::uint64_t budget = 400'000;      // simplices allowed for explicit homology
  bool certificates = true;
  bool parallel = true;
};

/// One bound of the comparison of a level with a discrete target.
struct StageResult {
  StageProbe probe;
  Status status = Status::kPass;
  bool bijective = false;
  nlohmann::json diagnostics = nlohmann::json::object();
};
StageResult discrete_stage(const LambdaLevel& ll, const FinCatOverFin& z, const Functor& phi,
                           const ProbeOptions& opt);

/// PASS iff every stage is a pi0 bijection with acyclic components through
/// the probe and the last three stages agree.
Verdict verify_weak_equiv_to_discrete(const std::vector<StageResult>& stages);

/// Decides whether the induced map of levels is a weak equivalence through
/// the probe: an isomorphism certificate when the map is bijective on every
/// fiber and natural, else the mapping cone of the explicit nerves.
StageResult lambda_map_stage(const LambdaLevel& src, const LambdaLevel& dst, const Functor& f,
                             const ProbeOptions& opt);

/// PASS iff pi0 is a bijection and the cone homology vanishes through the
/// probe. Homology-level evidence only.
Verdict map_equivalence_check(const CappedSSet& x, const CappedSSet& y, const SimplicialMap& f,
                              std::uint32_t probe);

/// Nerves of c and d with the map induced by a functor, both capped at cap.
struct NerveMap {
  CappedSSet source, target;
  SimplicialMap map;
};
NerveMap nerve_of_functor(const FinCat& c, const FinCat& d, const Functor& f, std::uint32_t cap);

/// The square A -> B over C -> D (all discrete) is cartesian: the induced
/// map A -> C x_D B is bijective. `witness` names the first failure.
struct CartesianSquare {
  std::uint64_t a_size = 0, b_size = 0, c_size = 0, d_size = 0;
  std::vector<std::uint32_t> top, left, right, bottom;  // A->B, A->C, B->D, C->D
};
bool homotopy_cartesian_discrete(const CartesianSquare& sq, std::string* witness = nullptr);

}  // namespace configprod

#endif  // CONFIGPROD_HOMOTOPY_HPP_
