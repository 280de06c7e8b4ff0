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

// End-to-end verification runs with JSON reports: the product comparison
// for configuration categories, its orbit form, truncation, enumeration and
// checks of stored simplicial spaces.

#ifndef CONFIGPROD_PIPELINE_HPP_
#define CONFIGPROD_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "configprod/boxtensor.hpp"
#include "configprod/conservatize.hpp"
#include "configprod/homotopy.hpp"
#include "json.hpp"

namespace configprod {

/// Deliberate corruptions of the box category, for checking that the
/// verifier notices them.
enum class Mutation { kNone, kDeleteMorphism, kCorruptComposition, kSurjectiveLegs };
std::string to_string(Mutation m);
Mutation mutation_from_string(const std::string& s);

struct MainOptions {
  std::uint32_t m = 1, n = 1;
  std::uint32_t r_max = 2;
  Variant variant = Variant::kFlat;
  std::vector<std::uint32_t> ell_offsets{0, 1, 2, 3};  // L = r + offset
  std::uint32_t cap = 3;                               // external degrees of X and Y
  ProbeOptions probe;
  Mutation mutation = Mutation::kNone;
  std::uint64_t seed = 1;
  bool timings = false;
};

struct Report {
  Status status = Status::kPass;
  nlohmann::json json = nlohmann::json::object();
};

/// X = N config(m), Y = N config(n): checkers, the pre-tensor against the
/// nerve of the box category, the comparison with config(m x n) and, per
/// degree r, the conservatization against the r-strings of config(m x n).
Report verify_main(const MainOptions& opt);

struct OrbitOptions {
  std::uint32_t m = 2, n = 1;
  std::vector<FinMap> g_generators, h_generators;  // empty: full symmetric group
  std::uint32_t r_max = 1;
  std::vector<std::uint32_t> ell_offsets{0, 1, 2, 3};
  std::uint32_t cap = 3;
  ProbeOptions probe;
  bool timings = false;
};
/// The orbit form: string counts against the plain box, the comparison
/// functor, and per r the induced map of conservatization levels.
Report verify_orbit(const OrbitOptions& opt);

struct TruncationOptions {
  std::uint32_t m = 2, n = 2;
  std::uint32_t k_max = 4;
  std::uint32_t cap = 2;
  std::uint32_t r_max = 1;
  std::vector<std::uint32_t> ell_offsets{0, 1, 2};
  ProbeOptions probe;
  bool timings = false;
};
/// For each k: the truncated pre-tensor decodes onto the nerve of the
/// product configurations of size <= k, the right adjoint has the expected
/// fibers, and the conservatization of the truncation passes. Also checks
/// the adjunction bijection on a small pair.
Report verify_truncation(const TruncationOptions& opt);

/// The full subcategory on the objects of size <= k.
FinCatOverFin size_truncation(const FinCatOverFin& c, std::uint32_t k);

/// Counts: selfic maps, Boxfin objects and configuration categories.
nlohmann::json enumerate_counts(std::uint32_t k_max, const BoxBounds& bounds);

/// Checkers on a stored simplicial space.
Report check_space(const DiscreteSimplicialSpace& x);

}  // namespace configprod

#endif  // CONFIGPROD_PIPELINE_HPP_
