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

// Exact integral homology: Smith normal form of sparse integer matrices,
// normalized chain complexes of capped simplicial sets and mapping cones.

#ifndef CONFIGPROD_HOMOLOGY_HPP_
#define CONFIGPROD_HOMOLOGY_HPP_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "configprod/simplicial.hpp"
#include "json.hpp"

namespace configprod {

using BigInt = boost::multiprecision::cpp_int;

/// Column-major sparse matrix; each column sorted by row, no zero entries.
struct SparseIntMatrix {
  std::uint64_t rows = 0, cols = 0;
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> col;
};

/// Rank and invariant factors > 1 in divisibility order.
struct SnfResult {
  std::uint64_t rank = 0;
  std::vector<BigInt> torsion;
  bool used_bigint = false;  // the 64-bit pass overflowed and was redone
  std::uint64_t dense_residual = 0;  // size of the block left after unit pivots
};

/// Sparse elimination on unit pivots followed by a dense exact Smith form of
/// the residual. Never returns a wrong answer on overflow: the 64-bit pass
/// is redone in arbitrary precision.
SnfResult smith_invariants(const SparseIntMatrix& m);

/// Dense reference implementation, arbitrary precision throughout.
SnfResult smith_dense(std::vector<std::vector<BigInt>> m);

struct HomologyGroup {
  int degree = 0;
  std::uint64_t rank = 0;
  std::vector<BigInt> torsion;
  bool trivial() const { return rank == 0 && torsion.empty(); }
  std::string str() const;
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};
using HomologyReport = std::vector<HomologyGroup>;

std::string to_string(const HomologyReport& h);
void to_json(nlohmann::json& j, const HomologyGroup& g);

/// C_k sits in degree k + shift; boundary[k] : C_k -> C_{k-1} for k >= 1.
struct ChainComplex {
  int shift = 0;
  std::vector<std::uint64_t> rank;
  std::vector<SparseIntMatrix> boundary;
  int top() const { return static_cast<int>(rank.size()) - 1 + shift; }
};

/// Normalized chains of X in degrees 0..top (top <= cap).
ChainComplex normalized_chains(const CappedSSet& x, std::uint32_t top);

/// Throws std::logic_error if some d o d is nonzero.
void assert_boundary_squares_zero(const ChainComplex& c);

/// Homology in degrees lo..hi. Requires the complex to reach degree hi + 1.
HomologyReport homology(const ChainComplex& c, int lo, int hi);

/// Integral homology of X in degrees 0..top_degree, top_degree < cap.
HomologyReport homology(const CappedSSet& x, std::uint32_t top_degree);

/// Connected components: canonical component id per vertex (ids ordered by
/// least vertex) and the number of components.
struct Pi0 {
  std::vector<std::uint32_t> component;
  std::uint32_t count = 0;
};
Pi0 pi0(const CappedSSet& x);

/// image[n][x] is f of the nondegenerate n-simplex x of the source.
struct SimplicialMap {
  std::vector<std::vector<Face>> image;
};
/// Faces commute with f on every stored simplex.
std::vector<std::string> check_simplicial_map(const CappedSSet& x, const CappedSSet& y,
                                              const SimplicialMap& f, std::size_t max_errors = 8);

/// Desuspended mapping cone: degree n holds C_n(X) + C_{n+1}(Y), from degree
/// -1 (just C_0(Y)) up to `top`. Its homology in degree n is H_{n+1}(Y, X),
/// so it vanishes through degree n iff f is a homology iso below n+1 and onto
/// in degree n+1.
ChainComplex mapping_cone(const CappedSSet& x, const CappedSSet& y, const SimplicialMap& f,
                          std::uint32_t top);

/// Union-find with path halving; ids are dense.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0);
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  /// Component per element, numbered by least member.
  Pi0 components();

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace configprod

#endif  // CONFIGPROD_HOMOLOGY_HPP_
