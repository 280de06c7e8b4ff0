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

#include "configprod/homotopy.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <unordered_map>

namespace configprod {

namespace {

Chain image_chain(const Functor& f, const std::uint32_t* row, std::uint32_t width) {
  Chain y(width);
  y[0] = f.obj[row[0]];
  for (std::uint32_t j = 1; j < width; ++j) y[j] = f.mor[row[j]];
  return y;
}

std::vector<HomologyGroup> acyclic_report(std::uint32_t components, std::uint32_t probe) {
  std::vector<HomologyGroup> h;
  for (std::uint32_t d = 0; d <= probe; ++d) h.push_back({static_cast<int>(d), d == 0 ? components : 0, {}});
  return h;
}

nlohmann::json chain_json(const Chain& c) { return nlohmann::json(c); }

// Per target z = alpha0^* c0: the flat index object (alpha0, id) and the
// unique element over c0, if any.
struct ConeTarget {
  std::uint32_t e = kNone;
  std::uint32_t x = kNone;
  Monotone alpha0;
};

// Checks that for every object (e, x) the unique candidate morphism to the
// terminal candidate of its target exists. Returns the count of objects that
// fail, and the first one.
std::pair<std::uint64_t, std::uint64_t> cone_failures(const LambdaLevel& ll, const VertexComparison& vc,
                                                      const FinCatOverFin& z, const Functor& phi,
                                                      bool parallel) {
  const std::uint32_t r = ll.index.r;
  std::vector<ConeTarget> ct(vc.targets.size());
  // preimages of nondegenerate strings of Z in A_k, per k <= r
  std::vector<FlatTable> zk(r + 1);
  for (std::uint32_t k = 0; k <= r; ++k) zk[k] = all_chains(z.cat, k);
  std::vector<std::vector<std::uint32_t>> pre(r + 1), count(r + 1);
  std::vector<std::uint32_t> ek(r + 1, kNone);
  for (std::uint32_t k = 0; k <= r; ++k) {
    pre[k].assign(zk[k].size(), kNone);
    count[k].assign(zk[k].size(), 0);
  }
  for (std::uint32_t i = 0; i < vc.targets.size(); ++i) {
    auto ez = ez_form(z.cat, vc.targets.get(i));
    std::uint32_t k = ez.alpha0.cod_top;
    ct[i].alpha0 = ez.alpha0;
    ct[i].e = ll.index.find({ez.alpha0, Monotone::identity(k)});
    if (ct[i].e == kNone) continue;
    if (ek[k] == kNone) {
      ek[k] = ct[i].e;
      const auto& t = ll.fiber(ct[i].e);
      for (std::uint32_t x = 0; x < t.size(); ++x) {
        auto zi = zk[k].find(image_chain(phi, t.row(x), t.width));
        if (zi == kNone) continue;
        ++count[k][zi];
        pre[k][zi] = x;
      }
    }
    auto zi = zk[k].find(ez.c0);
    if (zi != kNone && count[k][zi] == 1) ct[i].x = pre[k][zi];
  }
  const auto total = static_cast<std::int64_t>(ll.num_objects());
  std::uint64_t failures = 0, first = kNone;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic, 4096) reduction(+ : failures) if (parallel)
  for (std::int64_t id = 0; id < total; ++id) {
    auto [e, x] = ll.locate(static_cast<std::uint64_t>(id));
    const auto& obj = ll.index.objects[e];
    const auto& t = ct[vc.assign[id]];
    bool ok = t.x != kNone;
    if (ok) {
      // gamma with gamma alpha = alpha0
      std::vector<std::uint8_t> g(obj.k() + 1, 0xff);
      for (std::uint32_t i = 0; i <= r && ok; ++i) {
        auto& slot = g[obj.alpha.v[i]];
        if (slot == 0xff) slot = t.alpha0.v[i];
        ok = slot == t.alpha0.v[i];
      }
      if (ok) {
        Monotone gamma(t.alpha0.cod_top, g);
        auto delta = compose(gamma, obj.beta);
        auto xt = ll.fiber(t.e).get(t.x);
        ok = chain_apply(ll.a->cat, xt, delta) == ll.fiber(e).get(x);
      }
    }
    if (!ok) {
      ++failures;
      std::lock_guard<std::mutex> lock(mu);
      first = std::min<std::uint64_t>(first, static_cast<std::uint64_t>(id));
    }
  }
  return {failures, first};
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::kPass: return "PASS";
    case Status::kFail: return "FAIL";
    case Status::kInconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

Status combine(Status a, Status b) {
  if (a == Status::kFail || b == Status::kFail) return Status::kFail;
  if (a == Status::kInconclusive || b == Status::kInconclusive) return Status::kInconclusive;
  return Status::kPass;
}

void to_json(nlohmann::json& j, const Verdict& v) {
  j = {{"status", to_string(v.status)}, {"diagnostics", v.diagnostics}};
}

CompressError::CompressError(Chain w, std::uint32_t pos)
    : std::domain_error("compress: non-identity arrow over an identity at position " + std::to_string(pos)),
      witness(std::move(w)),
      position(pos) {}

Chain compress(const FinCatOverFin& z, const Chain& a, const Monotone& beta) {
  const std::uint32_t l = beta.dom_top();
  if (a.size() != l + 1) throw std::invalid_argument("compress: length mismatch");
  for (std::uint32_t j = 1; j <= l; ++j)
    if (beta.v[j - 1] == beta.v[j] && !z.cat.is_identity(a[j])) throw CompressError(a, j);
  std::vector<std::uint8_t> section(beta.cod_top + 1);
  for (std::uint32_t i = l + 1; i-- > 0;) section[beta.v[i]] = static_cast<std::uint8_t>(i);
  return chain_apply(z.cat, a, Monotone(l, section));
}

EzForm ez_form(const FinCat& c, const Chain& z) {
  EzForm f;
  f.c0.push_back(z[0]);
  std::vector<std::uint8_t> a{0};
  for (std::size_t j = 1; j < z.size(); ++j) {
    if (!c.is_identity(z[j])) f.c0.push_back(z[j]);
    a.push_back(static_cast<std::uint8_t>(f.c0.size() - 1));
  }
  f.alpha0 = Monotone(static_cast<std::uint32_t>(f.c0.size()) - 1, a);
  return f;
}

VertexComparison vertex_comparison(const LambdaLevel& ll, const FinCatOverFin& z, const Functor& phi,
                                   bool parallel) {
  VertexComparison vc;
  vc.targets = all_chains(z.cat, ll.index.r);
  vc.assign.assign(ll.num_objects(), kNone);
  std::optional<CompressError> err;
  std::mutex mu;
  const auto ne = static_cast<std::int64_t>(ll.index.objects.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t e = 0; e < ne; ++e) {
    const auto& obj = ll.index.objects[e];
    const auto& t = ll.fiber(static_cast<std::uint32_t>(e));
    for (std::uint32_t x = 0; x < t.size(); ++x) {
      try {
        auto c = compress(z, image_chain(phi, t.row(x), t.width), obj.beta);
        vc.assign[ll.offset[e] + x] = vc.targets.find(chain_apply(z.cat, c, obj.alpha));
      } catch (const CompressError& ce) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = ce;
      }
    }
  }
  if (err) throw *err;
  for (std::uint64_t id = 0; id < vc.assign.size(); ++id)
    if (vc.assign[id] == kNone) throw std::domain_error("image of object " + std::to_string(id) + " is not a string of Z");
  UnionFind uf(ll.num_objects());
  for_each_edge_block(ll, false, parallel, [&](std::uint32_t g, const std::vector<std::uint32_t>& pre) {
    const auto& m = ll.index.morphisms[g];
    for (std::uint32_t y = 0; y < pre.size(); ++y) {
      std::uint64_t u = ll.offset[m.src] + pre[y], v = ll.offset[m.dst] + y;
      uf.unite(u, v);
      if (vc.assign[u] != vc.assign[v] && vc.constant) {
        vc.constant = false;
        vc.counterexample = {u, v};
      }
    }
  });
  vc.components = uf.components();
  vc.component_target.assign(vc.components.count, kNone);
  if (vc.constant)
    for (std::uint64_t id = 0; id < ll.num_objects(); ++id)
      vc.component_target[vc.components.component[id]] = vc.assign[id];
  return vc;
}

StageResult discrete_stage(const LambdaLevel& ll, const FinCatOverFin& z, const Functor& phi,
                           const ProbeOptions& opt) {
  StageResult sr;
  sr.probe.bound = ll.index.bound;
  sr.probe.objects = ll.num_objects();
  VertexComparison vc;
  try {
    vc = vertex_comparison(ll, z, phi, opt.parallel);
  } catch (const CompressError& ce) {
    sr.status = Status::kFail;
    sr.diagnostics["compress_witness"] = {{"string", chain_json(ce.witness)}, {"position", ce.position}};
    return sr;
  } catch (const std::domain_error& e) {
    sr.status = Status::kFail;
    sr.diagnostics["comparison"] = e.what();
    return sr;
  }
  sr.probe.pi0 = vc.components.count;
  sr.diagnostics["targets"] = vc.targets.size();
  sr.diagnostics["pi0"] = vc.components.count;
  if (!vc.constant) {
    sr.status = Status::kFail;
    sr.diagnostics["edge_constancy"] = {{"source", vc.counterexample->first}, {"target", vc.counterexample->second}};
    return sr;
  }
  sr.diagnostics["edge_constancy"] = "CONSTANT";
  std::vector<std::uint32_t> hits(vc.targets.size(), 0);
  for (auto t : vc.component_target) ++hits[t];
  auto missing = std::count(hits.begin(), hits.end(), 0u);
  auto merged = std::count_if(hits.begin(), hits.end(), [](std::uint32_t h) { return h > 1; });
  sr.bijective = missing == 0 && merged == 0;
  if (!sr.bijective) {
    sr.status = Status::kFail;
    sr.diagnostics["pi0_bijection"] = {{"unhit_targets", missing}, {"targets_with_several_components", merged}};
    return sr;
  }
  if (opt.certificates && ll.index.variant == Variant::kFlat) {
    auto [failures, first] = cone_failures(ll, vc, z, phi, opt.parallel);
    if (failures == 0) {
      sr.probe.homology = acyclic_report(vc.components.count, opt.probe);
      sr.probe.homology_certified = true;
      sr.diagnostics["acyclicity"] = "terminal object in every fiber";
      return sr;
    }
    sr.diagnostics["cone_certificate_failures"] = failures;
    sr.diagnostics["cone_certificate_first"] = first;
  }
  try {
    // 0- and 1-simplices alone are bounded by the budget
    if (ll.num_objects() > opt.budget) throw std::length_error("nerve over budget");
    auto cat = lambda_category(ll, opt.budget);
    std::uint64_t simplices = 0;
    for (std::uint32_t n = 0; n <= opt.probe + 1; ++n) simplices += count_chains(cat.cat, n);
    if (simplices > opt.budget) throw std::length_error("nerve over budget");
    auto x = nerve(cat.cat, opt.probe + 1);
    sr.probe.homology = homology(x, opt.probe);
  } catch (const std::length_error&) {
    sr.status = Status::kInconclusive;
    sr.diagnostics["acyclicity"] = "not decided within the simplex budget";
    return sr;
  }
  bool acyclic = sr.probe.homology[0].rank == vc.components.count && sr.probe.homology[0].torsion.empty();
  for (std::size_t d = 1; d < sr.probe.homology.size(); ++d) acyclic = acyclic && sr.probe.homology[d].trivial();
  sr.diagnostics["acyclicity"] = acyclic ? "homology" : "nonzero reduced homology";
  if (!acyclic) {
    sr.status = Status::kFail;
    sr.diagnostics["homology"] = to_string(sr.probe.homology);
  }
  return sr;
}

Verdict verify_weak_equiv_to_discrete(const std::vector<StageResult>& stages) {
  Verdict v;
  std::vector<StageProbe> probes;
  v.diagnostics["stages"] = nlohmann::json::array();
  for (auto& s : stages) {
    v.status = combine(v.status, s.status);
    probes.push_back(s.probe);
    nlohmann::json d = s.diagnostics;
    d["L"] = s.probe.bound;
    d["status"] = to_string(s.status);
    v.diagnostics["stages"].push_back(d);
  }
  bool stable = stability_of(probes) == Stability::kStable;
  v.diagnostics["stabilization"] = stable ? "STABLE" : "INCONCLUSIVE";
  if (v.status == Status::kPass && !stable) v.status = Status::kInconclusive;
  return v;
}

Verdict map_equivalence_check(const CappedSSet& x, const CappedSSet& y, const SimplicialMap& f,
                              std::uint32_t probe) {
  Verdict v;
  auto px = pi0(x), py = pi0(y);
  std::vector<std::uint32_t> image(px.count, kNone), hits(py.count, 0);
  for (std::uint64_t s = 0; s < x.size(0); ++s) image[px.component[s]] = py.component[f.image[0][s].index];
  for (auto c : image) ++hits[c];
  bool bijective = px.count == py.count && std::all_of(hits.begin(), hits.end(), [](auto h) { return h == 1; });
  v.diagnostics["pi0"] = {{"source", px.count}, {"target", py.count}, {"bijective", bijective}};
  if (y.cap < probe + 2 || x.cap < probe + 1) throw std::invalid_argument("caps too small for the probe");
  auto cone = mapping_cone(x, y, f, probe + 1);
  assert_boundary_squares_zero(cone);
  auto h = homology(cone, -1, static_cast<int>(probe));
  bool vanish = std::all_of(h.begin(), h.end(), [](const HomologyGroup& g) { return g.trivial(); });
  v.diagnostics["cone_homology"] = to_string(h);
  v.diagnostics["note"] = "homology-level evidence; the fundamental group is not certified";
  v.status = bijective && vanish ? Status::kPass : Status::kFail;
  return v;
}

NerveMap nerve_of_functor(const FinCat& c, const FinCat& d, const Functor& f, std::uint32_t cap) {
  NerveMap nm;
  nm.source = nerve(c, cap);
  nm.target = nerve(d, cap);
  nm.map.image.resize(cap + 1);
  std::vector<std::unordered_map<Chain, std::uint32_t, VecHash>> index(cap + 1);
  for (std::uint32_t n = 0; n <= cap; ++n) {
    auto ch = nondegenerate_chains(d, n);
    for (std::uint32_t i = 0; i < ch.size(); ++i) index[n][ch[i]] = i;
  }
  for (std::uint32_t n = 0; n <= cap; ++n)
    for (auto& ch : nondegenerate_chains(c, n)) {
      Chain y{f.obj[ch[0]]};
      std::uint32_t mask = 0;
      for (std::uint32_t j = 1; j <= n; ++j) {
        auto m = f.mor[ch[j]];
        if (d.is_identity(m))
          mask |= 1u << (j - 1);
        else
          y.push_back(m);
      }
      auto dim = static_cast<std::uint32_t>(y.size()) - 1;
      nm.map.image[n].push_back(Face{index[dim].at(y), mask});
    }
  return nm;
}

StageResult lambda_map_stage(const LambdaLevel& src, const LambdaLevel& dst, const Functor& f,
                             const ProbeOptions& opt) {
  StageResult sr;
  sr.probe.bound = src.index.bound;
  sr.probe.objects = src.num_objects();
  std::vector<std::uint64_t> map;
  try {
    map = lambda_map_objects(src, dst, f);
  } catch (const std::domain_error& e) {
    sr.status = Status::kFail;
    sr.diagnostics["functor"] = e.what();
    return sr;
  }
  auto ps = lambda_components(src, false, opt.parallel);
  auto pd = lambda_components(dst, false, opt.parallel);
  std::vector<std::uint32_t> image(ps.count, kNone), hits(pd.count, 0);
  for (std::uint64_t id = 0; id < map.size(); ++id) image[ps.component[id]] = pd.component[map[id]];
  for (auto c : image) ++hits[c];
  sr.bijective = ps.count == pd.count && std::all_of(hits.begin(), hits.end(), [](auto h) { return h == 1; });
  sr.probe.pi0 = ps.count;
  sr.diagnostics["pi0"] = {{"source", ps.count}, {"target", pd.count}};
  if (!sr.bijective) {
    sr.status = Status::kFail;
    return sr;
  }
  if (opt.certificates) {
    bool iso = src.num_objects() == dst.num_objects();
    std::vector<char> seen(iso ? dst.num_objects() : 0, 0);
    for (std::uint64_t id = 0; id < map.size() && iso; ++id) {
      iso = !seen[map[id]];
      seen[map[id]] = 1;
    }
    if (iso) {
      std::map<std::uint32_t, std::vector<std::uint32_t>> blocks;
      for_each_edge_block(dst, false, opt.parallel,
                          [&](std::uint32_t g, const std::vector<std::uint32_t>& pre) { blocks[g] = pre; });
      for_each_edge_block(src, false, opt.parallel, [&](std::uint32_t g, const std::vector<std::uint32_t>& pre) {
        const auto& m = src.index.morphisms[g];
        const auto& dp = blocks.at(g);
        for (std::uint32_t y = 0; y < pre.size() && iso; ++y) {
          auto fy = map[src.offset[m.dst] + y] - dst.offset[m.dst];
          iso = map[src.offset[m.src] + pre[y]] == dst.offset[m.src] + dp[fy];
        }
      });
    }
    if (iso) {
      for (int d = -1; d <= static_cast<int>(opt.probe); ++d) sr.probe.homology.push_back({d, 0, {}});
      sr.probe.homology_certified = true;
      sr.diagnostics["equivalence"] = "isomorphism of categories of elements";
      return sr;
    }
  }
  try {
    if (src.num_objects() + dst.num_objects() > opt.budget) throw std::length_error("nerve over budget");
    auto cs = lambda_category(src, opt.budget);
    auto cd = lambda_category(dst, opt.budget);
    std::uint64_t simplices = 0;
    for (std::uint32_t n = 0; n <= opt.probe + 2; ++n)
      simplices += count_chains(cs.cat, n) + count_chains(cd.cat, n);
    if (simplices > opt.budget) throw std::length_error("nerve over budget");
    Functor g;
    g.obj.assign(map.begin(), map.end());
    for (std::uint32_t m = 0; m < cs.cat.num_morphisms(); ++m) {
      auto a = static_cast<std::uint32_t>(map[cs.cat.src(m)]);
      auto b = static_cast<std::uint32_t>(map[cs.cat.dst(m)]);
      std::uint32_t img = kNone;
      for (auto cand : cd.cat.out(a))
        if (cd.cat.dst(cand) == b && cd.project.mor[cand] == cs.project.mor[m]) img = cand;
      if (img == kNone) throw std::domain_error("induced map is not a functor");
      g.mor.push_back(img);
    }
    auto nm = nerve_of_functor(cs.cat, cd.cat, g, opt.probe + 2);
    auto v = map_equivalence_check(nm.source, nm.target, nm.map, opt.probe);
    sr.status = v.status;
    sr.diagnostics["cone"] = v.diagnostics;
    for (int d = -1; d <= static_cast<int>(opt.probe); ++d) sr.probe.homology.push_back({d, 0, {}});
    if (v.status != Status::kPass) sr.probe.homology.clear();
  } catch (const std::length_error&) {
    sr.status = Status::kInconclusive;
    sr.diagnostics["equivalence"] = "not decided within the simplex budget";
  } catch (const std::domain_error& e) {
    sr.status = Status::kFail;
    sr.diagnostics["functor"] = e.what();
  }
  return sr;
}

bool homotopy_cartesian_discrete(const CartesianSquare& sq, std::string* witness) {
  auto fail = [&](std::string w) {
    if (witness) *witness = std::move(w);
    return false;
  };
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> seen;
  for (std::uint32_t a = 0; a < sq.a_size; ++a) {
    if (sq.bottom[sq.left[a]] != sq.right[sq.top[a]]) return fail("square does not commute at " + std::to_string(a));
    auto [it, fresh] = seen.try_emplace({sq.left[a], sq.top[a]}, a);
    if (!fresh)
      return fail("elements " + std::to_string(it->second) + " and " + std::to_string(a) + " have the same image");
  }
  std::vector<std::uint64_t> cd(sq.d_size, 0), bd(sq.d_size, 0);
  for (std::uint32_t c = 0; c < sq.c_size; ++c) ++cd[sq.bottom[c]];
  for (std::uint32_t b = 0; b < sq.b_size; ++b) ++bd[sq.right[b]];
  std::uint64_t pullback = 0;
  for (std::uint32_t d = 0; d < sq.d_size; ++d) pullback += cd[d] * bd[d];
  if (pullback != sq.a_size)
    return fail("pullback has " + std::to_string(pullback) + " elements, source " + std::to_string(sq.a_size));
  return true;
}

}  // namespace configprod
