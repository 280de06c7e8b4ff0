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

// Arithmetic of the category Fin of finite sets {1..k}: maps, selfic
// surjections, partitions, and the box category Boxfin.

#ifndef CONFIGPROD_FINSET_HPP_
#define CONFIGPROD_FINSET_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace configprod {

/// A map {1..dom} -> {1..cod}. Entries of `img` are 1-based.
struct FinMap {
  std::uint32_t dom = 0;
  std::uint32_t cod = 0;
  std::vector<std::uint32_t> img;

  FinMap() = default;
  FinMap(std::uint32_t cod_, std::vector<std::uint32_t> img_);

  static FinMap identity(std::uint32_t k);
  /// The unique map from the empty set.
  static FinMap empty(std::uint32_t cod);

  /// Value at a 1-based point.
  std::uint32_t operator()(std::uint32_t i) const { return img[i - 1]; }

  bool valid() const;
  bool is_identity() const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return dom == cod && is_injective(); }

  std::string str() const;

  friend bool operator==(const FinMap&, const FinMap&) = default;
  friend auto operator<=>(const FinMap& a, const FinMap& b) {
    if (auto c = a.dom <=> b.dom; c != 0) return c;
    if (auto c = a.cod <=> b.cod; c != 0) return c;
    return a.img <=> b.img;
  }
};

/// g after f. Throws std::invalid_argument unless f.cod == g.dom.
FinMap compose(const FinMap& g, const FinMap& f);

/// Inverse of a bijection.
FinMap inverse(const FinMap& f);

struct FinMapHash {
  std::size_t operator()(const FinMap& f) const noexcept;
};

/// All maps k -> l in lexicographic order of img.
std::vector<FinMap> all_maps(std::uint32_t k, std::uint32_t l);
std::vector<FinMap> all_injections(std::uint32_t k, std::uint32_t l);
std::vector<FinMap> all_surjections(std::uint32_t k, std::uint32_t l);

/// Surjective, and x -> min f^{-1}(x) is strictly increasing.
bool is_selfic(const FinMap& f);

/// A set partition of {1..ground}. Blocks are kept sorted internally and
/// ordered by their minimum element.
struct Partition {
  std::uint32_t ground = 0;
  std::vector<std::vector<std::uint32_t>> blocks;

  bool valid() const;
  /// Sort blocks and order them by minimum.
  Partition normalized() const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.ground == b.ground && a.normalized().blocks == b.normalized().blocks;
  }
};

/// Fibers of f (nonempty ones only), ordered by minimum.
Partition fibers(const FinMap& f);

/// The unique selfic surjection whose fibers are the blocks of p.
FinMap selfic_of_partition(const Partition& p);

/// The selfic factor of f: f = (injection) o (selfic surjection onto the
/// image).
FinMap selfic_factor(const FinMap& f);

/// Complete duplicate-free list of selfic surjections k -> l, lexicographic.
std::vector<FinMap> enumerate_selfic(std::uint32_t k, std::uint32_t l);

/// An object r <-p- k -q-> s of Boxfin.
struct BoxObj {
  std::uint32_t k = 0, r = 0, s = 0;
  FinMap p, q;

  /// p and q are both selfic (or, with `selfic == false`, surjective) and
  /// the pairing i -> (p(i), q(i)) is injective.
  bool valid(bool selfic = true) const;
  std::string str() const;

  friend bool operator==(const BoxObj&, const BoxObj&) = default;
  friend auto operator<=>(const BoxObj& a, const BoxObj& b) {
    if (auto c = a.k <=> b.k; c != 0) return c;
    if (auto c = a.r <=> b.r; c != 0) return c;
    if (auto c = a.s <=> b.s; c != 0) return c;
    if (auto c = a.p <=> b.p; c != 0) return c;
    return a.q <=> b.q;
  }
};

/// A natural transformation (a, b, c) between two box diagrams.
struct BoxMor {
  BoxObj src, dst;
  FinMap a, b, c;

  bool valid() const;  // b p = p' a and c q = q' a
  friend bool operator==(const BoxMor&, const BoxMor&) = default;
};

BoxMor compose(const BoxMor& g, const BoxMor& f);
BoxMor identity_box(const BoxObj& x);

/// Which surjections the legs may be. The surjective variant is equivalent
/// as a category but is not fiberwise complete over Fin.
enum class LegKind { kSelfic, kSurjective };

/// All box objects within the bounds, ordered by (k, r, s, p, q).
std::vector<BoxObj> boxfin_objects(std::uint32_t k_max, std::uint32_t r_max,
                                   std::uint32_t s_max,
                                   LegKind legs = LegKind::kSelfic);

/// The unique morphism kappa -> lambda with b = u and c = v, if it exists.
/// Since lambda's pairing is injective there is at most one compatible a.
std::optional<BoxMor> boxfin_lift(const BoxObj& kappa, const BoxObj& lambda,
                                  const FinMap& u, const FinMap& v);

/// Every morphism kappa -> lambda, ordered by (b, c).
std::vector<BoxMor> boxfin_morphisms(const BoxObj& kappa, const BoxObj& lambda);

void to_json(nlohmann::json& j, const FinMap& f);
void from_json(const nlohmann::json& j, FinMap& f);
void to_json(nlohmann::json& j, const BoxObj& x);
void from_json(const nlohmann::json& j, BoxObj& x);

/// Number of injections k -> n, n!/(n-k)!.
std::uint64_t injection_count(std::uint32_t k, std::uint32_t n);

}  // namespace configprod

#endif  // CONFIGPROD_FINSET_HPP_
