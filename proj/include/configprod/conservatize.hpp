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

// Bounded index categories E(r) and their variants, and the levels of the
// conservatization as categories of elements over them.

#ifndef CONFIGPROD_CONSERVATIZE_HPP_
#define CONFIGPROD_CONSERVATIZE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "configprod/fincat.hpp"
#include "configprod/homology.hpp"
#include "configprod/simplicial.hpp"
#include "json.hpp"

namespace configprod {

/// kFull: beta onto. kFlat: alpha and beta onto. kShriek: beta = id.
enum class Variant { kFull, kFlat, kShriek };
std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

/// An object [r] -alpha-> [k] <-beta- [l].
struct IndexObject {
  Monotone alpha, beta;
  std::uint32_t k() const { return alpha.cod_top; }
  std::uint32_t l() const { return beta.dom_top(); }
  friend bool operator==(const IndexObject&, const IndexObject&) = default;
  friend auto operator<=>(const IndexObject& a, const IndexObject& b) {
    if (auto c = a.k() <=> b.k(); c != 0) return c;
    if (auto c = a.l() <=> b.l(); c != 0) return c;
    if (auto c = a.alpha <=> b.alpha; c != 0) return c;
    return a.beta <=> b.beta;
  }
};

/// A morphism (gamma, delta) : e -> e' with gamma alpha = alpha' and
/// gamma beta = beta' delta.
struct IndexMorphism {
  std::uint32_t src = 0, dst = 0;
  Monotone gamma, delta;
};

/// E(r) restricted to l <= L. Objects sorted; morphism ids agree with `cat`.
struct IndexE {
  std::uint32_t r = 0, bound = 0;
  Variant variant = Variant::kFlat;
  std::vector<IndexObject> objects;
  std::vector<IndexMorphism> morphisms;  // identities included
  std::vector<std::uint32_t> generators;  // non-identity morphisms generating E
  FinCat cat;                             // composition table only on request

  std::uint32_t find(const IndexObject& e) const;  // kNone if absent
  bool contains(const IndexObject& e) const;
};
/// Throws std::invalid_argument for L < r with the flat variant.
IndexE index_category(std::uint32_t r, Variant variant, std::uint32_t bound,
                      bool with_composition = false);

/// The reflection of E(r) onto the flat subcategory and its counit.
struct Reflection {
  IndexObject object;
  Monotone gamma, delta;  // counit reflect(e) -> e
};
Reflection e0_reflection(const IndexObject& e);

/// All morphisms e -> e' of E(r) (no bound needed).
std::vector<IndexMorphism> index_morphisms(const IndexObject& e, const IndexObject& e2);

struct LambdaOptions {
  std::uint32_t r = 0;
  Variant variant = Variant::kFlat;
  std::uint32_t bound = 0;
};

/// The category of elements of e -> F(e) over the bounded E(r), where F(e)
/// is the set of strings of A of length l whose arrows collapsed by beta lie
/// over identities. Object (e, x) has global id offset[e] + x.
struct LambdaLevel {
  const FinCatOverFin* a = nullptr;
  IndexE index;
  std::vector<std::uint32_t> table_of;  // per E-object
  std::vector<FlatTable> tables;        // sorted
  std::vector<std::uint64_t> offset;    // size objects + 1

  std::uint64_t num_objects() const { return offset.back(); }
  const FlatTable& fiber(std::uint32_t e) const { return tables[table_of[e]]; }
  /// (E-object, element) of a global id.
  std::pair<std::uint32_t, std::uint32_t> locate(std::uint64_t id) const;
};
LambdaLevel lambda_level(const FinCatOverFin& a, const LambdaOptions& opt);

/// A block of Grothendieck edges along one morphism g : e -> e' of E:
/// pre[y] is the F(e) index of delta^* y for each y in F(e').
using EdgeVisitor =
    std::function<void(std::uint32_t g, const std::vector<std::uint32_t>& pre)>;
/// Visits the generator morphisms of E (or all of them). `parallel` computes
/// each block with OpenMP; the visiting order is the same either way.
void for_each_edge_block(const LambdaLevel& ll, bool all_edges, bool parallel,
                         const EdgeVisitor& visit);

/// Components of the nerve of the category of elements.
Pi0 lambda_components(const LambdaLevel& ll, bool all_edges = false, bool parallel = true);

/// The same with the components merged by a serial sweep over every
/// morphism, for cross-checking.
Pi0 lambda_components_reference(const LambdaLevel& ll);

/// The category of elements as an explicit category (for nerves). Throws
/// std::length_error beyond `max_morphisms`.
Grothendieck lambda_category(const LambdaLevel& ll, std::uint64_t max_morphisms = 2'000'000);

/// The functor between categories of elements induced by a functor A -> A'
/// over Fin: (e, x) -> (e, f(x)). Throws std::domain_error when an image
/// string is not in F'(e).
std::vector<std::uint64_t> lambda_map_objects(const LambdaLevel& src, const LambdaLevel& dst,
                                              const Functor& f);

/// The reference of (e, x) in (N Fin)_r as a string of sizes and maps.
std::vector<std::uint32_t> lambda_reference_sizes(const LambdaLevel& ll, std::uint64_t id);

/// Inclusion of the shriek level into the full level with matched bounds.
std::vector<std::uint64_t> shriek_inclusion(const LambdaLevel& shriek, const LambdaLevel& full);

/// One stage of a stabilization scan.
struct StageProbe {
  std::uint32_t bound = 0;
  std::uint64_t objects = 0;
  std::uint32_t pi0 = 0;
  std::vector<HomologyGroup> homology;  // empty when not computed
  bool homology_certified = false;      // by a cone certificate, not SNF
  friend bool operator==(const StageProbe& a, const StageProbe& b) {
    return a.pi0 == b.pi0 && a.homology == b.homology;
  }
};

enum class Stability { kStable, kInconclusive };
struct StabilizationReport {
  std::uint32_t r = 0;
  Variant variant = Variant::kFlat;
  std::vector<StageProbe> stages;
  Stability verdict = Stability::kInconclusive;
};
/// The last three stages agree in pi0 and homology.
Stability stability_of(const std::vector<StageProbe>& stages);

/// Runs `probe` for each bound, ascending. Stages are independent.
StabilizationReport stabilization_scan(std::uint32_t r, Variant variant,
                                       const std::vector<std::uint32_t>& bounds,
                                       const std::function<StageProbe(std::uint32_t)>& probe);

void to_json(nlohmann::json& j, const StabilizationReport& s);

}  // namespace configprod

#endif  // CONFIGPROD_CONSERVATIZE_HPP_
