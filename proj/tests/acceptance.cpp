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

// Acceptance run: one PASS/FAIL line per criterion. Expected values come
// from oracles written here, not from the library's own counting code.

#include <chrono>
#include <cstdlib>
#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "configprod/boxtensor.hpp"
#include "configprod/configcat.hpp"
#include "configprod/fincat.hpp"
#include "configprod/finset.hpp"
#include "configprod/homology.hpp"
#include "configprod/pipeline.hpp"
#include "configprod/simplicial.hpp"
#include "configprod/sspace.hpp"

namespace {

using namespace configprod;

// Set partitions of k points into exactly l blocks, by restricted growth
// strings.
std::uint64_t partitions(std::uint32_t k, std::uint32_t l) {
  std::vector<std::uint32_t> a(k, 0);
  std::uint64_t count = 0;
  std::function<void(std::uint32_t, std::uint32_t)> go = [&](std::uint32_t i, std::uint32_t used) {
    if (i == k) {
      count += used == l;
      return;
    }
    for (std::uint32_t b = 0; b <= used && b < l; ++b) {
      a[i] = b;
      go(i + 1, b == used ? used + 1 : used);
    }
  };
  go(0, 0);
  return count;
}

std::uint64_t factorial(std::uint32_t n) {
  std::uint64_t f = 1;
  for (std::uint32_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// Injections k -> p.
std::uint64_t injections(std::uint32_t p, std::uint32_t k) {
  if (k > p) return 0;
  return factorial(p) / factorial(p - k);
}

// r-strings of config(p): each point enters at some level 0..r or never, and
// level i contributes the orderings of the points present there.
std::uint64_t config_strings(std::uint32_t p, std::uint32_t r) {
  std::uint64_t total = 0;
  std::vector<std::uint32_t> enter(p, 0);
  std::function<void(std::uint32_t)> go = [&](std::uint32_t i) {
    if (i == p) {
      std::uint64_t prod = 1;
      for (std::uint32_t lvl = 0; lvl <= r; ++lvl) {
        std::uint32_t present = 0;
        for (auto e : enter) present += e <= lvl;
        prod *= factorial(present);
      }
      total += prod;
      return;
    }
    for (std::uint32_t e = 0; e <= r + 1; ++e) {
      enter[i] = e;
      go(i + 1);
    }
  };
  go(0);
  return total;
}

// All maps {1..k} -> {1..l}.
std::vector<FinMap> maps(std::uint32_t k, std::uint32_t l) {
  std::vector<FinMap> out;
  std::vector<std::uint32_t> img(k, 1);
  if (k > 0 && l == 0) return out;
  while (true) {
    out.emplace_back(l, img);
    std::uint32_t i = 0;
    while (i < k && img[i] == l) img[i++] = 1;
    if (i == k) break;
    ++img[i];
  }
  return out;
}

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.ok && secs > limit_s) {
    o.ok = false;
    o.detail = "over the time limit";
  }
  failures += !o.ok;
  std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " (" << secs << " s, limit " << limit_s << " s)";
  if (!o.detail.empty()) std::cout << " -- " << o.detail;
  std::cout << std::endl;
}

Outcome selfic_counts() {
  Outcome o;
  for (std::uint32_t k = 0; k <= 6; ++k)
    for (std::uint32_t l = 0; l <= k; ++l) {
      auto got = enumerate_selfic(k, l);
      o.require(got.size() == partitions(k, l),
                "selfic(" + std::to_string(k) + "," + std::to_string(l) + ") has " + std::to_string(got.size()));
      for (auto& f : got) o.require(is_selfic(f) && f.dom == k && f.cod == l, "a listed map is not selfic");
    }
  return o;
}

Outcome boxfin_structure() {
  Outcome o;
  auto objs = boxfin_objects(3, 3, 3);
  o.require(!objs.empty(), "no box objects");
  std::uint64_t lifts = 0;
  for (auto& kappa : objs)
    for (auto& lambda : objs) {
      auto us = maps(kappa.r, lambda.r), vs = maps(kappa.s, lambda.s);
      for (auto& u : us)
        for (auto& v : vs) {
          // a must send i to some j with p'(j) = u(p(i)) and q'(j) = v(q(i))
          std::uint64_t count = 1;
          for (std::uint32_t i = 1; i <= kappa.k; ++i) {
            std::uint64_t c = 0;
            for (std::uint32_t j = 1; j <= lambda.k; ++j)
              c += lambda.p(j) == u(kappa.p(i)) && lambda.q(j) == v(kappa.q(i));
            count *= c;
          }
          o.require(count <= 1, "two lifts from " + kappa.str() + " to " + lambda.str());
          auto lift = boxfin_lift(kappa, lambda, u, v);
          o.require(lift.has_value() == (count == 1), "boxfin_lift disagrees with the lift count");
          if (lift) o.require(lift->valid() && lift->b == u && lift->c == v, "boxfin_lift returned a wrong lift");
          lifts += count;
        }
    }
  o.require(lifts > 0, "no lifts at all");

  auto bf = boxfin_category({3, 3, 3});
  auto nb = nerve_over_fin(bf.p0, 2, 3);
  o.require(segal_check(nb).ok, "N Boxfin is not Segal");
  o.require(fiberwise_complete_check(nb).ok, "N Boxfin is not fiberwise complete");
  auto c = conservative_check(nb);
  o.require(!c.ok && !c.witnesses.empty(), "N Boxfin passed the conservativity check");
  if (!c.witnesses.empty()) {
    const auto& w = c.witnesses.front();
    o.require(nb.ref_arrow_is_identity(w.degree, w.element, w.position + 1),
              "the witness is not over an identity");
    o.require(nb.s(w.degree - 1, nb.d(w.degree, w.element, w.position), w.position) != w.element,
              "the witness is degenerate");
  }
  return o;
}

Outcome box_pre_checks() {
  Outcome o;
  for (std::uint32_t m = 1; m <= 2; ++m)
    for (std::uint32_t n = 1; n <= 2; ++n) {
      auto a = config_discrete(m), b = config_discrete(n);
      auto x = nerve_over_fin(a.cat, 3, m), y = nerve_over_fin(b.cat, 3, n);
      auto p = box_pre(x, y, boxfin_category(minimal_box_bounds(m, n)));
      const auto tag = " for m=" + std::to_string(m) + ", n=" + std::to_string(n);
      o.require(p.space.validate().empty(), "simplicial identities fail" + tag);
      o.require(segal_check(p.space).ok, "Segal fails" + tag);
      o.require(fiberwise_complete_check(p.space).ok, "fiberwise completeness fails" + tag);
    }
  return o;
}

Outcome main_theorem() {
  Outcome o;
  for (std::uint32_t m = 1; m <= 2; ++m)
    for (std::uint32_t n = 1; n <= 2; ++n) {
      MainOptions opt;
      opt.m = m;
      opt.n = n;
      opt.r_max = 2;
      opt.ell_offsets = {0, 1, 2, 3};
      opt.probe.probe = 2;
      auto rep = verify_main(opt);
      const auto tag = " for m=" + std::to_string(m) + ", n=" + std::to_string(n);
      o.require(rep.status == Status::kPass, "verdict " + to_string(rep.status) + tag);
      for (auto side : {"X", "Y"})
        for (auto key : {"segal", "fiberwise_complete", "conservative"})
          o.require(rep.json["inputs"][side][key] == "PASS", std::string(side) + " " + key + tag);
      const auto& levels = rep.json["levels"];
      o.require(levels.is_array() && levels.size() == 3, "levels missing" + tag);
      if (!levels.is_array()) continue;
      for (const auto& lv : levels) {
        const auto r = lv["r"].get<std::uint32_t>();
        o.require(lv["status"] == "PASS", "level r=" + std::to_string(r) + tag);
        o.require(lv["pi0_bijection"] == true, "pi0 is not a bijection at r=" + std::to_string(r) + tag);
        o.require(lv["pi0"].get<std::uint64_t>() == config_strings(m * n, r),
                  "pi0 at r=" + std::to_string(r) + " is " + lv["pi0"].dump() + ", expected " +
                      std::to_string(config_strings(m * n, r)) + tag);
        o.require(lv["stages"].size() == 4, "not every L in r..r+3 was probed" + tag);
      }
    }
  return o;
}

Outcome degree0_law() {
  Outcome o;
  for (std::uint32_t m = 1; m <= 2; ++m)
    for (std::uint32_t n = 1; n <= 2; ++n) {
      MainOptions opt;
      opt.m = m;
      opt.n = n;
      opt.r_max = 0;
      auto rep = verify_main(opt);
      const auto& d = rep.json["degree0_count"];
      const auto tag = " for m=" + std::to_string(m) + ", n=" + std::to_string(n);
      o.require(d.is_object() && d["per_k"].size() == m * n + 1, "degree-0 table missing" + tag);
      if (!d.is_object()) continue;
      o.require(d["components_over_one_size"] == true, "a component spans two sizes" + tag);
      for (const auto& row : d["per_k"]) {
        const auto k = row["k"].get<std::uint32_t>();
        o.require(row["pi0"].get<std::uint64_t>() == injections(m * n, k),
                  "k=" + std::to_string(k) + " has " + row["pi0"].dump() + " components" + tag);
      }
    }
  return o;
}

Outcome truncation() {
  Outcome o;
  TruncationOptions opt;
  opt.m = opt.n = 2;
  opt.k_max = 4;
  auto rep = verify_truncation(opt);
  o.require(rep.status == Status::kPass, "verdict " + to_string(rep.status));
  const auto& levels = rep.json["levels"];
  o.require(levels.size() == 5, "not every k <= 4 was checked");
  for (const auto& lv : levels) {
    const auto k = lv["k"].dump();
    o.require(lv["strict_identity"] == "PASS", "strict identity fails at k=" + k);
    o.require(lv["tau_star_fibers"] == "PASS", "tau_* fibers fail at k=" + k);
  }
  o.require(rep.json["adjunction"].size() >= 1, "no adjunction instance");
  for (const auto& a : rep.json["adjunction"]) {
    o.require(a["status"] == "PASS", "adjunction fails at k=" + a["k"].dump());
    o.require(a["left_maps"] == a["right_maps"] && a["left_maps"].get<std::uint64_t>() > 0,
              "adjunction map counts differ");
  }
  return o;
}

Outcome orbit() {
  Outcome o;
  OrbitOptions opt;
  opt.m = 2;
  opt.n = 1;
  opt.g_generators = {FinMap(2, {2, 1})};
  opt.h_generators = {FinMap::identity(1)};
  opt.r_max = 1;
  auto rep = verify_orbit(opt);
  o.require(rep.status == Status::kPass, "verdict " + to_string(rep.status));
  o.require(rep.json["group_orders"] == nlohmann::json({2, 1}), "group orders");
  const auto& fs = rep.json["fiber_sequence"];
  o.require(fs["status"] == "PASS", "fiber sequence counts");
  const auto& orbit = fs["orbit_strings"];
  o.require(orbit.size() >= 2, "too few degrees");
  for (std::uint32_t d = 0; d < orbit.size(); ++d)
    o.require(orbit[d].get<std::uint64_t>() == config_strings(2, d) << d,
              "degree " + std::to_string(d) + " has " + orbit[d].dump() + " strings");
  // the semidirect category itself has |N config(2)|_d * 2^d strings
  auto c = config_discrete(2);
  auto orb = config_orbit(c, symmetric_group(2));
  for (std::uint32_t d = 0; d <= 3; ++d)
    o.require(count_chains(orb.semi.cat.cat, d) == config_strings(2, d) << d, "semidirect nerve size");
  return o;
}

// Homology of a complex of rank-1 free groups Z <- Z <- ... with the given
// integer boundaries: H_k = Z when d_k and d_{k+1} vanish, Z/|d_{k+1}| when
// only d_k vanishes, and 0 otherwise.
HomologyGroup rank_one_homology(const std::vector<long long>& d, int k) {
  HomologyGroup g;
  g.degree = k;
  const long long in = d[k + 1], out = k == 0 ? 0 : d[k];
  if (out != 0) return g;
  if (in == 0) g.rank = 1;
  else if (in != 1 && in != -1) g.torsion.push_back(BigInt(in < 0 ? -in : in));
  return g;
}

Outcome homology_engine() {
  Outcome o;
  auto b = boundary_of_simplex(2);
  // no 2-simplices, so the complex ends with C_2 = 0
  auto cb = normalized_chains(b, b.cap);
  auto hb = homology(ChainComplex{0, {cb.rank[0], cb.rank[1], 0}, {{}, cb.boundary[1], SparseIntMatrix{cb.rank[1], 0, {}}}},
                     0, 1);
  o.require(hb.size() == 2 && hb[0].rank == 1 && hb[0].torsion.empty(), "H_0 of the triangle boundary");
  o.require(hb.size() == 2 && hb[1].rank == 1 && hb[1].torsion.empty(), "H_1 of the triangle boundary");

  FinCat g;
  g.add_object("*");
  auto t = g.add_morphism(0, 0, "t");
  g.set_composite(t, t, g.identity(0));
  g.finalize();
  auto ng = nerve(g, 4);
  auto h = homology(ng, 3);
  // Z[C2]-resolution with boundaries 1-t, 1+t, 1-t, 1+t, tensored down.
  const std::vector<long long> res{0, 0, 2, 0, 2};
  o.require(h.size() == 4, "degrees missing");
  for (int k = 0; k < static_cast<int>(h.size()); ++k) {
    const auto want = rank_one_homology(res, k);
    o.require(h[k].rank == want.rank && h[k].torsion == want.torsion,
              "H_" + std::to_string(k) + " of the order-2 groupoid is " + h[k].str());
  }
  o.require(h.size() == 4 && h[1].rank == 0 && h[1].torsion == std::vector<BigInt>{2}, "H_1 is not Z/2");
  o.require(h.size() == 4 && h[2].trivial(), "H_2 is not trivial");
  o.require(h.size() == 4 && h[3].rank == 0 && h[3].torsion == std::vector<BigInt>{2}, "H_3 is not Z/2");

  for (const CappedSSet* x : {&b, &ng}) assert_boundary_squares_zero(normalized_chains(*x, x->cap));
  for (std::uint32_t m = 1; m <= 3; ++m) {
    auto nc = nerve(config_discrete(m).cat.cat, 3);
    assert_boundary_squares_zero(normalized_chains(nc, 3));
  }
  return o;
}

Outcome mutations() {
  Outcome o;
  struct Case {
    Mutation mu;
    std::uint32_t m, n;
  };
  const std::vector<Case> cases{{Mutation::kDeleteMorphism, 2, 1},     {Mutation::kCorruptComposition, 2, 1},
                                {Mutation::kSurjectiveLegs, 2, 1},     {Mutation::kDeleteMorphism, 2, 2},
                                {Mutation::kCorruptComposition, 2, 2}};
  for (const auto& c : cases)
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      MainOptions opt;
      opt.m = c.m;
      opt.n = c.n;
      opt.mutation = c.mu;
      opt.seed = seed;
      auto rep = verify_main(opt);
      o.require(rep.status == Status::kFail, to_string(c.mu) + " seed " + std::to_string(seed) + " at m=" +
                                                 std::to_string(c.m) + ", n=" + std::to_string(c.n) + " gave " +
                                                 to_string(rep.status));
    }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::cout.precision(3);
  std::cout << std::fixed;
  // with an argument, only that criterion runs
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  auto criterion = [&](int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
    if (only == 0 || only == id) ::criterion(id, name, limit_s, body);
  };
  criterion(1, "selfic maps match set partitions, k <= 6", 1, selfic_counts);
  criterion(2, "box lifts unique for k,r,s <= 3; N Boxfin Segal, complete, not conservative", 10,
            boxfin_structure);
  criterion(3, "pre-tensor of configuration nerves is Segal and fiberwise complete, m,n <= 2", 30, box_pre_checks);
  criterion(4, "product comparison passes for m,n in {1,2}, r <= 2, L = r..r+3, probe 2", 300, main_theorem);
  criterion(5, "degree-0 components over k match injections k -> M x N", 120, degree0_law);
  criterion(6, "truncation: strict identity, right adjoint fibers, adjunction, m=n=2, k <= 4", 60, truncation);
  criterion(7, "orbit form for Sym(2) on 2 points: string counts and r <= 1", 300, orbit);
  criterion(8, "homology of the triangle boundary and the order-2 groupoid; dd = 0", 10, homology_engine);
  criterion(9, "seeded corruptions never pass", 300, mutations);
  return failures == 0 ? 0 : 1;
}
