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

// Monotone maps [p] -> [q] of the simplex category and finite simplicial sets
// stored through their nondegenerate simplices.

#ifndef CONFIGPROD_SIMPLICIAL_HPP_
#define CONFIGPROD_SIMPLICIAL_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace configprod {

inline constexpr std::uint32_t kNone = 0xffffffffu;

/// A monotone map [p] -> [q]; v[i] is the image of i, 0-based.
struct Monotone {
  std::uint32_t cod_top = 0;  // q
  std::vector<std::uint8_t> v;

  Monotone() = default;
  Monotone(std::uint32_t q, std::vector<std::uint8_t> values)
      : cod_top(q), v(std::move(values)) {}

  std::uint32_t dom_top() const { return static_cast<std::uint32_t>(v.size()) - 1; }
  std::uint8_t operator()(std::uint32_t i) const { return v[i]; }

  static Monotone identity(std::uint32_t n);
  /// delta^i : [n-1] -> [n], skipping i.
  static Monotone coface(std::uint32_t n, std::uint32_t i);
  /// sigma^i : [n+1] -> [n], hitting i twice.
  static Monotone codegeneracy(std::uint32_t n, std::uint32_t i);
  /// [p] -> [q] sending everything to j.
  static Monotone constant(std::uint32_t p, std::uint32_t q, std::uint32_t j);

  bool valid() const;
  bool is_identity() const;
  bool is_injective() const;
  bool is_surjective() const;
  std::string str() const;

  friend bool operator==(const Monotone&, const Monotone&) = default;
  friend auto operator<=>(const Monotone& a, const Monotone& b) {
    if (auto c = a.cod_top <=> b.cod_top; c != 0) return c;
    return a.v <=> b.v;
  }
};

/// g after f.
Monotone compose(const Monotone& g, const Monotone& f);

/// theta = mono o epi with epi surjective onto the image.
std::pair<Monotone, Monotone> epi_mono(const Monotone& theta);

/// Points of [n] missed by an injection, increasing.
std::vector<std::uint32_t> missed(const Monotone& inj);

/// Collapse mask of a surjection [n] ->> [m]: bit i set iff s(i) = s(i+1).
std::uint32_t collapse_mask(const Monotone& surj);
/// Inverse of collapse_mask for a surjection out of [n].
Monotone surjection_from_mask(std::uint32_t n, std::uint32_t mask);

/// All monotone maps [p] -> [q] in lexicographic order.
std::vector<Monotone> all_monotone(std::uint32_t p, std::uint32_t q);
std::vector<Monotone> all_monotone_surjections(std::uint32_t p, std::uint32_t q);

/// A simplex m-dimensional nondegenerate `index` pulled back along the
/// surjection encoded by `mask` (a collapse mask out of [n]).
struct Face {
  std::uint32_t index = kNone;
  std::uint32_t mask = 0;
  friend bool operator==(const Face&, const Face&) = default;
};

/// A finite simplicial set up to dimension `cap`, stored by nondegenerate
/// simplices. faces[n][x*(n+1)+i] is d_i of the nondegenerate n-simplex x, a
/// simplex of dimension n-1 given as (nondegenerate simplex, degeneracy).
struct CappedSSet {
  std::uint32_t cap = 0;
  std::vector<std::uint64_t> count;            // per degree 0..cap
  std::vector<std::vector<Face>> faces;        // per degree 0..cap (empty at 0)
  std::vector<std::vector<std::string>> labels;  // optional per degree

  std::uint64_t size(std::uint32_t n) const { return n < count.size() ? count[n] : 0; }
  Face face(std::uint32_t n, std::uint64_t x, std::uint32_t i) const {
    return faces[n][x * (n + 1) + i];
  }

  /// d_i of the degenerate-or-not simplex (y, mask) of dimension n.
  Face face_of(std::uint32_t n, Face y, std::uint32_t i) const;
  /// theta^* of the simplex (y, mask) of dimension `n`.
  Face apply(std::uint32_t n, Face y, const Monotone& theta) const;

  /// Dimension of the nondegenerate part of (y, mask) living in degree n.
  static std::uint32_t base_dim(std::uint32_t n, std::uint32_t mask);

  /// Checks d_i d_j = d_{j-1} d_i (i < j) on every stored simplex and that
  /// face references are in range. Returns the first violation, if any.
  std::vector<std::string> check_identities(std::size_t max_errors = 8) const;

  /// Disjoint union of two capped sets (caps must agree).
  static CappedSSet disjoint_union(const CappedSSet& a, const CappedSSet& b);
};

/// The boundary of the standard n-simplex (n >= 1), capped at n - 1.
CappedSSet boundary_of_simplex(std::uint32_t n);
/// A finite discrete set of `k` points.
CappedSSet discrete_points(std::uint64_t k, std::uint32_t cap);

}  // namespace configprod

#endif  // CONFIGPROD_SIMPLICIAL_HPP_
