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

// Finite categories given by explicit tables, functors, nerves, comma
// categories, categories of elements and semidirect products.

#ifndef CONFIGPROD_FINCAT_HPP_
#define CONFIGPROD_FINCAT_HPP_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "configprod/finset.hpp"
#include "configprod/simplicial.hpp"
#include "json.hpp"

namespace configprod {

/// A composable string [start object, m1, ..., mn].
using Chain = std::vector<std::uint32_t>;

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull ^ v.size();
    for (auto x : v) h = (h ^ x) * 0x100000001b3ull;
    return h;
  }
};

/// A finite category. Every object carries an identity morphism created by
/// add_object; composites with identities are implicit and never stored.
class FinCat {
 public:
  std::uint32_t add_object(std::string label = {});
  std::uint32_t add_morphism(std::uint32_t src, std::uint32_t dst, std::string label = {});
  /// Record g o f = h for composable non-identity f, g.
  void set_composite(std::uint32_t g, std::uint32_t f, std::uint32_t h);
  void erase_composite(std::uint32_t g, std::uint32_t f);
  /// Remove a non-identity morphism together with every table entry that
  /// mentions it. Later morphism ids shift down by one.
  void erase_morphism(std::uint32_t m);

  /// g o f, or kNone when the pair is not composable or not in the table.
  std::uint32_t compose(std::uint32_t g, std::uint32_t f) const;

  std::uint32_t num_objects() const { return static_cast<std::uint32_t>(ids_.size()); }
  std::uint32_t num_morphisms() const { return static_cast<std::uint32_t>(src_.size()); }
  std::uint32_t src(std::uint32_t m) const { return src_[m]; }
  std::uint32_t dst(std::uint32_t m) const { return dst_[m]; }
  std::uint32_t identity(std::uint32_t o) const { return ids_[o]; }
  bool is_identity(std::uint32_t m) const { return ids_[src_[m]] == m; }
  const std::vector<std::uint32_t>& out(std::uint32_t o) const { return out_[o]; }
  const std::vector<std::uint32_t>& in(std::uint32_t o) const { return in_[o]; }
  const std::string& object_label(std::uint32_t o) const { return obj_label_[o]; }
  const std::string& morphism_label(std::uint32_t m) const { return mor_label_[m]; }
  std::size_t num_composites() const { return comp_.size(); }
  const std::unordered_map<std::uint64_t, std::uint32_t>& composites() const { return comp_; }

  /// Builds a dense composition table when the category is small enough.
  void finalize();

  /// Unit, endpoint, totality and associativity violations (first few).
  std::vector<std::string> validate(std::size_t max_errors = 8) const;

 private:
  static std::uint64_t key(std::uint32_t g, std::uint32_t f) {
    return (static_cast<std::uint64_t>(g) << 32) | f;
  }
  std::vector<std::uint32_t> src_, dst_, ids_;
  std::vector<std::vector<std::uint32_t>> out_, in_;
  std::vector<std::string> obj_label_, mor_label_;
  std::unordered_map<std::uint64_t, std::uint32_t> comp_;
  std::vector<std::uint32_t> dense_;  // num_morphisms^2 when built
};

/// A finite category with a functor to Fin.
struct FinCatOverFin {
  FinCat cat;
  std::vector<std::uint32_t> obj_size;
  std::vector<FinMap> mor_map;

  std::uint32_t add_object(std::uint32_t size, std::string label = {});
  std::uint32_t add_morphism(std::uint32_t src, std::uint32_t dst, FinMap f, std::string label = {});
  bool over_identity(std::uint32_t m) const { return mor_map[m].is_identity(); }
  std::uint32_t max_size() const;
  /// Category axioms plus functoriality of the reference.
  std::vector<std::string> validate(std::size_t max_errors = 8) const;
};

/// A functor given by object and morphism tables.
struct Functor {
  std::vector<std::uint32_t> obj, mor;
};
/// Preservation of endpoints, identities and composites (first few failures).
std::vector<std::string> check_functor(const FinCat& c, const FinCat& d, const Functor& f,
                                       std::size_t max_errors = 8);

/// Fin restricted to objects 0..t, with a lookup from maps to morphism ids.
struct FinSkeleton {
  std::uint32_t t = 0;
  FinCatOverFin fin;
  std::unordered_map<FinMap, std::uint32_t, FinMapHash> index;
  std::uint32_t lookup(const FinMap& f) const;
};
FinSkeleton fin_skeleton(std::uint32_t t);

/// Rows of a fixed width stored contiguously. find() needs rows sorted
/// lexicographically.
struct FlatTable {
  std::uint32_t width = 1;
  std::vector<std::uint32_t> data;

  std::uint32_t size() const { return static_cast<std::uint32_t>(data.size() / width); }
  const std::uint32_t* row(std::uint32_t i) const { return data.data() + static_cast<std::size_t>(i) * width; }
  Chain get(std::uint32_t i) const { return Chain(row(i), row(i) + width); }
  void push(const std::uint32_t* r) { data.insert(data.end(), r, r + width); }
  void push(const Chain& r) { data.insert(data.end(), r.begin(), r.end()); }
  std::uint32_t find(const std::uint32_t* key) const;
  std::uint32_t find(const Chain& key) const { return key.size() == width ? find(key.data()) : kNone; }
  bool is_sorted() const;
};

/// Vertex i of a string.
std::uint32_t chain_vertex(const FinCat& c, const Chain& x, std::uint32_t i);
/// theta^* of a string for theta : [p] -> [n]. Empty when a needed
/// composite is missing from the table.
Chain chain_apply(const FinCat& c, const Chain& x, const Monotone& theta);
Chain chain_face(const FinCat& c, const Chain& x, std::uint32_t i);
Chain chain_degeneracy(const FinCat& c, const Chain& x, std::uint32_t i);
/// Strings of length n+1 extending those of `level` (length n) by one
/// morphism, keeping only those whose interval composites are all defined.
/// With `allowed`, the new morphism m must have allowed[m] set.
FlatTable extend_chains(const FinCat& c, const FlatTable& level,
                        const std::vector<char>* allowed = nullptr);
/// All strings of length n whose interval composites are all defined, in
/// lexicographic order.
FlatTable all_chains(const FinCat& c, std::uint32_t n);

/// Nondegenerate strings (no identity entries) of length n, lexicographic.
std::vector<Chain> nondegenerate_chains(const FinCat& c, std::uint32_t n);

/// Nerve of c stored by nondegenerate strings up to dimension cap. Throws
/// std::domain_error if a needed composite is missing from the table.
CappedSSet nerve(const FinCat& c, std::uint32_t cap, bool with_labels = false);

/// Number of all (possibly degenerate) strings of length n.
std::uint64_t count_chains(const FinCat& c, std::uint32_t n);

/// The comma category c / x: objects are morphisms into x.
struct CommaResult {
  FinCatOverFin comma;
  std::vector<std::uint32_t> object_morphism;  // comma object -> morphism of c into x
  Functor forget;                              // comma -> c
};
CommaResult comma(const FinCatOverFin& c, std::uint32_t x);

/// A contravariant set-valued functor on a finite category d: set sizes per
/// object, and for each morphism g : a -> b the function F(b) -> F(a).
struct SetFunctor {
  std::vector<std::uint32_t> size;
  std::vector<std::vector<std::uint32_t>> act;
};

/// The category of elements: objects (a, x in F(a)); a morphism (a, x) ->
/// (b, y) for each g : a -> b with F(g)(y) = x. Throws std::invalid_argument
/// when F is not functorial.
struct Grothendieck {
  FinCat cat;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> object;  // (a, x)
  Functor project;                                               // to d
};
Grothendieck grothendieck(const FinCat& d, const SetFunctor& f);

/// A finite group by its multiplication table; element 0 is the unit.
struct FiniteGroup {
  std::uint32_t order = 1;
  std::vector<std::uint32_t> mult{0};
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mult[a * order + b]; }
  std::uint32_t inv(std::uint32_t a) const;
  static FiniteGroup trivial() { return FiniteGroup{}; }
  static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h);
};

/// Permutations of {1..degree}, closed under composition, sorted with the
/// identity first. mult(a, b) = a o b.
struct PermGroup {
  std::uint32_t degree = 0;
  std::vector<FinMap> elems;
  FiniteGroup group;
  std::uint32_t find(const FinMap& p) const;
};
/// Closure of the generators. Throws std::invalid_argument when a generator
/// is not a permutation or the closure exceeds degree! elements.
PermGroup perm_group(std::uint32_t degree, const std::vector<FinMap>& generators);
PermGroup symmetric_group(std::uint32_t degree);
/// Product group acting on {1..m*n} by (i, j) -> (i-1)*n + j.
PermGroup product_group(const PermGroup& g, const PermGroup& h);

/// A left action of a finite group on a category by automorphisms.
struct GroupAction {
  FiniteGroup group;
  std::vector<std::vector<std::uint32_t>> obj, mor;  // [g][x]
};
/// Identity and multiplicativity of the action, functoriality of each g and
/// compatibility with the reference to Fin.
std::vector<std::string> check_action(const FinCatOverFin& c, const GroupAction& a,
                                      std::size_t max_errors = 8);

/// C x| G: morphisms (phi, g) : x -> y with phi : x -> g.y; composition
/// (psi, h) o (phi, g) = (g.psi o phi, gh).
struct Semidirect {
  FinCatOverFin cat;
  std::vector<std::uint32_t> phi, elem;  // per morphism
};
Semidirect semidirect(const FinCatOverFin& c, const GroupAction& a);

void to_json(nlohmann::json& j, const FinCat& c);
FinCat fincat_from_json(const nlohmann::json& j);

}  // namespace configprod

#endif  // CONFIGPROD_FINCAT_HPP_
