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

#include "configprod/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "configprod/configcat.hpp"
#include "configprod/finset.hpp"
#include "configprod/sspace.hpp"

namespace configprod {

namespace {

class Clock {
 public:
  explicit Clock(bool on) : on_(on), start_(std::chrono::steady_clock::now()) {}
  void mark(nlohmann::json& j, const std::string& step) {
    if (!on_) return;
    auto now = std::chrono::steady_clock::now();
    j["timings"][step] = std::chrono::duration<double>(now - start_).count();
    start_ = now;
  }

 private:
  bool on_;
  std::chrono::steady_clock::time_point start_;
};

nlohmann::json errors_json(const std::vector<std::string>& e) { return e; }

std::uint64_t falling(std::uint64_t n, std::uint64_t k) {
  std::uint64_t p = 1;
  for (std::uint64_t i = 0; i < k; ++i) p *= n - i;
  return p;
}

struct SpaceChecks {
  Status status = Status::kPass;
  nlohmann::json json;
};

// Segal and completeness are required; conservativity is required only when asked.
SpaceChecks space_checks(const DiscreteSimplicialSpace& x, bool need_conservative) {
  SpaceChecks out;
  auto v = x.validate();
  auto s = segal_check(x);
  auto f = fiberwise_complete_check(x);
  auto c = conservative_check(x);
  out.json["sizes"] = [&] {
    std::vector<std::uint32_t> sz;
    for (std::uint32_t n = 0; n <= x.cap; ++n) sz.push_back(x.size(n));
    return sz;
  }();
  out.json["simplicial_identities"] = v.empty() ? "PASS" : "FAIL";
  if (!v.empty()) out.json["simplicial_errors"] = errors_json(v);
  out.json["segal"] = s.ok ? "PASS" : "FAIL";
  if (!s.ok) out.json["segal_errors"] = errors_json(s.errors);
  out.json["fiberwise_complete"] = f.ok ? "PASS" : "FAIL";
  out.json["he_edges"] = f.he_count;
  if (!f.ok) out.json["fiberwise_complete_errors"] = errors_json(f.errors);
  out.json["conservative"] = c.ok ? "PASS" : "FAIL";
  if (!c.ok) {
    out.json["conservative_violations"] = c.violations;
    const auto& w = c.witnesses.front();
    out.json["conservative_witness"] = {{"degree", w.degree}, {"element", w.element}, {"position", w.position}};
  }
  bool ok = v.empty() && s.ok && f.ok && (c.ok || !need_conservative);
  out.status = ok ? Status::kPass : Status::kFail;
  return out;
}

// The full subcategory on objects of size <= k with the ids of each side.
struct SizeTruncation {
  FinCatOverFin cat;
  std::vector<std::uint32_t> obj_of, mor_of;  // old id -> new id, kNone if dropped
  std::vector<std::uint32_t> old_obj;         // new id -> old id
};

SizeTruncation truncate_by_size(const FinCatOverFin& c, std::uint32_t k) {
  SizeTruncation t;
  const auto& cc = c.cat;
  t.obj_of.assign(cc.num_objects(), kNone);
  t.mor_of.assign(cc.num_morphisms(), kNone);
  for (std::uint32_t o = 0; o < cc.num_objects(); ++o) {
    if (c.obj_size[o] > k) continue;
    t.obj_of[o] = t.cat.add_object(c.obj_size[o], cc.object_label(o));
    t.old_obj.push_back(o);
    t.mor_of[cc.identity(o)] = t.cat.cat.identity(t.obj_of[o]);
  }
  for (std::uint32_t m = 0; m < cc.num_morphisms(); ++m)
    if (!cc.is_identity(m) && t.obj_of[cc.src(m)] != kNone && t.obj_of[cc.dst(m)] != kNone)
      t.mor_of[m] = t.cat.add_morphism(t.obj_of[cc.src(m)], t.obj_of[cc.dst(m)], c.mor_map[m], cc.morphism_label(m));
  std::vector<std::pair<std::uint64_t, std::uint32_t>> comps(cc.composites().begin(), cc.composites().end());
  std::sort(comps.begin(), comps.end());
  for (const auto& [key, h] : comps) {
    auto g = t.mor_of[key >> 32], f = t.mor_of[key & 0xffffffffu];
    if (g != kNone && f != kNone) t.cat.cat.set_composite(g, f, t.mor_of[h]);
  }
  t.cat.cat.finalize();
  return t;
}

void rebuild_morphism_index(BoxPreCategory& w) {
  w.morphism_index.clear();
  const auto& k = w.cat.cat;
  for (std::uint32_t m = 0; m < k.num_morphisms(); ++m) {
    const auto& mm = w.morphisms[m];
    w.morphism_index[{k.src(m), mm.phi, mm.psi, mm.box}] = m;
  }
}

nlohmann::json apply_mutation(BoxPreCategory& w, Mutation mut, std::uint64_t seed) {
  nlohmann::json j{{"kind", to_string(mut)}, {"seed", seed}};
  std::mt19937_64 rng(seed);
  auto& k = w.cat.cat;
  if (mut == Mutation::kDeleteMorphism) {
    std::vector<std::uint32_t> cand;
    for (std::uint32_t m = 0; m < k.num_morphisms(); ++m)
      if (!k.is_identity(m)) cand.push_back(m);
    if (cand.empty()) throw std::invalid_argument("mutation: no non-identity morphism to delete");
    auto m = cand[rng() % cand.size()];
    j["morphism"] = m;
    j["endpoints"] = {k.src(m), k.dst(m)};
    k.erase_morphism(m);
    w.cat.mor_map.erase(w.cat.mor_map.begin() + m);
    w.morphisms.erase(w.morphisms.begin() + m);
    rebuild_morphism_index(w);
    k.finalize();
  } else if (mut == Mutation::kCorruptComposition) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> comps(k.composites().begin(), k.composites().end());
    if (comps.empty()) throw std::invalid_argument("mutation: no stored composite to corrupt");
    std::sort(comps.begin(), comps.end());
    auto [key, h] = comps[rng() % comps.size()];
    auto g = static_cast<std::uint32_t>(key >> 32), f = static_cast<std::uint32_t>(key & 0xffffffffu);
    j["pair"] = {g, f};
    j["composite"] = h;
    std::uint32_t other = kNone;
    for (auto m : k.out(k.src(f)))
      if (m != h && k.dst(m) == k.dst(g)) other = m;
    if (other == kNone) {
      k.erase_composite(g, f);
      j["replacement"] = "undefined";
    } else {
      k.set_composite(g, f, other);
      j["replacement"] = other;
    }
    k.finalize();
  }
  return j;
}

std::vector<std::uint32_t> bounds_for(std::uint32_t r, const std::vector<std::uint32_t>& offsets) {
  std::vector<std::uint32_t> out;
  for (auto o : offsets) out.push_back(r + o);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

nlohmann::json level_json(std::uint32_t r, const Verdict& v, const std::vector<StageResult>& stages) {
  nlohmann::json j{{"r", r}, {"status", to_string(v.status)}, {"stabilization", v.diagnostics["stabilization"]}};
  j["stages"] = v.diagnostics["stages"];
  if (!stages.empty()) {
    j["pi0"] = stages.back().probe.pi0;
    j["pi0_bijection"] = std::all_of(stages.begin(), stages.end(), [](const StageResult& s) { return s.bijective; });
    j["homology"] = stages.back().probe.homology;
  }
  return j;
}

// Components of degree 0 of the conservatization sorted by the size of the
// configuration they sit over.
nlohmann::json degree0_count(const FinCatOverFin& w, Variant variant, std::uint32_t bound, std::uint32_t points,
                             Status& status) {
  auto ll = lambda_level(w, {0, variant, bound});
  auto comps = lambda_components(ll);
  std::vector<std::uint32_t> size_of(comps.count, kNone);
  bool consistent = true;
  for (std::uint64_t id = 0; id < ll.num_objects(); ++id) {
    auto k = lambda_reference_sizes(ll, id).at(0);
    auto& s = size_of[comps.component[id]];
    if (s != kNone && s != k) consistent = false;
    s = k;
  }
  std::map<std::uint32_t, std::uint64_t> per_k;
  for (auto s : size_of) ++per_k[s];
  nlohmann::json j{{"L", bound}, {"components_over_one_size", consistent}};
  bool ok = consistent;
  for (std::uint32_t k = 0; k <= points; ++k) {
    auto expected = falling(points, k);
    auto got = per_k.count(k) ? per_k[k] : 0;
    ok = ok && got == expected;
    j["per_k"].push_back({{"k", k}, {"pi0", got}, {"injections", expected}});
  }
  for (auto& [k, c] : per_k) ok = ok && k <= points;
  j["status"] = ok ? "PASS" : "FAIL";
  if (!ok) status = combine(status, Status::kFail);
  return j;
}

PermGroup group_or_symmetric(std::uint32_t degree, const std::vector<FinMap>& gens) {
  return gens.empty() ? symmetric_group(degree) : perm_group(degree, gens);
}

}  // namespace

std::string to_string(Mutation m) {
  switch (m) {
    case Mutation::kNone: return "none";
    case Mutation::kDeleteMorphism: return "delete-morphism";
    case Mutation::kCorruptComposition: return "corrupt-composition";
    case Mutation::kSurjectiveLegs: return "surjective-legs";
  }
  return "none";
}

Mutation mutation_from_string(const std::string& s) {
  for (auto m : {Mutation::kNone, Mutation::kDeleteMorphism, Mutation::kCorruptComposition, Mutation::kSurjectiveLegs})
    if (to_string(m) == s) return m;
  throw std::invalid_argument("unknown mutation: " + s);
}

FinCatOverFin size_truncation(const FinCatOverFin& c, std::uint32_t k) { return truncate_by_size(c, k).cat; }

Report verify_main(const MainOptions& opt) {
  Report rep;
  auto& j = rep.json;
  Clock clock(opt.timings);
  j["command"] = "verify";
  j["m"] = opt.m;
  j["n"] = opt.n;
  j["r_max"] = opt.r_max;
  j["variant"] = to_string(opt.variant);
  j["probe"] = opt.probe.probe;
  j["ell_offsets"] = opt.ell_offsets;
  j["cap"] = opt.cap;
  const std::uint32_t points = opt.m * opt.n;
  auto a = config_discrete(opt.m), b = config_discrete(opt.n), z = config_discrete(points);
  auto x = nerve_over_fin(a.cat, opt.cap, opt.m), y = nerve_over_fin(b.cat, opt.cap, opt.n);
  for (auto [name, sp] : {std::pair{"X", &x}, std::pair{"Y", &y}}) {
    auto c = space_checks(*sp, true);
    j["inputs"][name] = c.json;
    rep.status = combine(rep.status, c.status);
  }
  clock.mark(j, "inputs");

  const auto legs = opt.mutation == Mutation::kSurjectiveLegs ? LegKind::kSurjective : LegKind::kSelfic;
  auto bf = boxfin_category(minimal_box_bounds(opt.m, opt.n), legs);
  auto p = box_pre(x, y, bf);
  auto pc = space_checks(p.space, false);
  j["box_pre"] = pc.json;
  j["box_pre"]["conservative_required"] = false;
  j["box_pre"]["provenance"] = p.provenance;
  rep.status = combine(rep.status, pc.status);
  clock.mark(j, "box_pre");

  auto w = box_pre_category(a.cat, b.cat, bf);
  if (opt.mutation == Mutation::kDeleteMorphism || opt.mutation == Mutation::kCorruptComposition)
    j["mutation"] = apply_mutation(w, opt.mutation, opt.seed);
  else if (opt.mutation == Mutation::kSurjectiveLegs)
    j["mutation"] = {{"kind", to_string(opt.mutation)}, {"seed", opt.seed}};
  bool structural = true;
  auto note = [&](const std::string& key, const std::vector<std::string>& errs) {
    j["structure"][key] = errs.empty() ? nlohmann::json("PASS") : errors_json(errs);
    structural = structural && errs.empty();
  };
  j["structure"]["objects"] = w.objects.size();
  j["structure"]["morphisms"] = w.cat.cat.num_morphisms();
  note("category", w.cat.validate());
  try {
    note("pre_tensor_is_nerve", box_pre_matches_nerve(p, w));
  } catch (const std::exception& e) {
    note("pre_tensor_is_nerve", {e.what()});
  }
  auto cmp = comparison_functor(w, a, b, bf, z);
  note("comparison_functor", cmp.errors);
  j["structure"]["comparison_note"] = cmp.note;
  {
    std::vector<char> hit_o(z.cat.cat.num_objects(), 0), hit_m(z.cat.cat.num_morphisms(), 0);
    bool iso = cmp.functor.obj.size() == hit_o.size() && cmp.functor.mor.size() == hit_m.size();
    for (auto o : cmp.functor.obj) iso = iso && o != kNone && !hit_o[o]++;
    for (auto m : cmp.functor.mor) iso = iso && m != kNone && !hit_m[m]++;
    j["structure"]["comparison_is_isomorphism"] = iso;
  }
  if (!structural) rep.status = combine(rep.status, Status::kFail);
  clock.mark(j, "structure");

  if (!structural || rep.status != Status::kPass) {
    j["levels"] = "skipped: earlier checks failed";
  } else {
    j["levels"] = nlohmann::json::array();
    for (std::uint32_t r = 0; r <= opt.r_max; ++r) {
      std::vector<StageResult> stages;
      for (auto bound : bounds_for(r, opt.ell_offsets)) {
        if (opt.variant == Variant::kFlat && bound < r) continue;
        auto ll = lambda_level(w.cat, {r, opt.variant, bound});
        stages.push_back(discrete_stage(ll, z.cat, cmp.functor, opt.probe));
      }
      auto v = verify_weak_equiv_to_discrete(stages);
      rep.status = combine(rep.status, v.status);
      j["levels"].push_back(level_json(r, v, stages));
      clock.mark(j, "level_" + std::to_string(r));
    }
    auto top = bounds_for(0, opt.ell_offsets).back();
    j["degree0_count"] = degree0_count(w.cat, opt.variant, top, points, rep.status);
  }
  j["status"] = to_string(rep.status);
  return rep;
}

Report verify_orbit(const OrbitOptions& opt) {
  Report rep;
  auto& j = rep.json;
  Clock clock(opt.timings);
  j["command"] = "orbit";
  j["m"] = opt.m;
  j["n"] = opt.n;
  j["r_max"] = opt.r_max;
  j["probe"] = opt.probe.probe;
  j["ell_offsets"] = opt.ell_offsets;
  auto a = config_discrete(opt.m), b = config_discrete(opt.n), z = config_discrete(opt.m * opt.n);
  auto g = group_or_symmetric(opt.m, opt.g_generators);
  auto h = group_or_symmetric(opt.n, opt.h_generators);
  j["group_orders"] = {g.elems.size(), h.elems.size()};
  auto bf = boxfin_category(minimal_box_bounds(opt.m, opt.n));
  auto o = box_pre_orbit(a, g, b, h, z, bf);
  auto plain = box_pre_category(a.cat, b.cat, bf);
  auto fail_if = [&](bool bad) {
    if (bad) rep.status = combine(rep.status, Status::kFail);
  };
  auto v1 = o.w.cat.validate(), v2 = o.product.semi.cat.validate();
  j["structure"]["box_category"] = v1.empty() ? nlohmann::json("PASS") : errors_json(v1);
  j["structure"]["product_orbit_category"] = v2.empty() ? nlohmann::json("PASS") : errors_json(v2);
  j["structure"]["comparison_functor"] = o.comparison.errors.empty() ? nlohmann::json("PASS") : errors_json(o.comparison.errors);
  j["structure"]["comparison_note"] = o.comparison.note;
  fail_if(!v1.empty() || !v2.empty() || !o.comparison.errors.empty());
  auto fr = orbit_fiber_check(o, plain, opt.cap);
  j["fiber_sequence"] = {{"orbit_strings", fr.orbit_size},
                         {"plain_strings", fr.plain_size},
                         {"group_power", fr.group_power},
                         {"status", fr.exact ? "PASS" : "FAIL"}};
  if (!fr.exact) j["fiber_sequence"]["errors"] = errors_json(fr.errors);
  fail_if(!fr.exact);
  clock.mark(j, "structure");
  if (!o.comparison.errors.empty()) {
    j["levels"] = "skipped: the comparison is not a functor";
  } else {
    j["levels"] = nlohmann::json::array();
    for (std::uint32_t r = 0; r <= opt.r_max; ++r) {
      std::vector<StageResult> stages;
      for (auto bound : bounds_for(r, opt.ell_offsets)) {
        if (bound < r) continue;
        auto src = lambda_level(o.w.cat, {r, Variant::kFlat, bound});
        auto dst = lambda_level(o.product.semi.cat, {r, Variant::kFlat, bound});
        stages.push_back(lambda_map_stage(src, dst, o.comparison.functor, opt.probe));
      }
      auto v = verify_weak_equiv_to_discrete(stages);
      rep.status = combine(rep.status, v.status);
      j["levels"].push_back(level_json(r, v, stages));
      clock.mark(j, "level_" + std::to_string(r));
    }
  }
  j["status"] = to_string(rep.status);
  return rep;
}

namespace {

// The base string with only the vertices of size <= k, composing the arrows
// in between, as a string of the skeleton `small`; empty if no vertex is small.
Chain small_face(const FinSkeleton& big, const FinSkeleton& small, const std::uint32_t* sigma, std::uint32_t n,
                 std::uint32_t k) {
  std::vector<std::uint32_t> verts;
  std::vector<FinMap> arrows;
  std::uint32_t v = sigma[0];
  FinMap acc = FinMap::identity(big.fin.obj_size[v]);
  bool started = false;
  for (std::uint32_t i = 0; i <= n; ++i) {
    if (i > 0) {
      const auto& f = big.fin.mor_map[sigma[i]];
      acc = compose(f, acc);
      v = big.fin.cat.dst(sigma[i]);
    }
    if (big.fin.obj_size[v] > k) continue;
    if (started) arrows.push_back(acc);
    verts.push_back(big.fin.obj_size[v]);
    started = true;
    acc = FinMap::identity(big.fin.obj_size[v]);
  }
  if (verts.empty()) return {};
  Chain out{verts[0]};
  for (auto& f : arrows) out.push_back(small.lookup(f));
  return out;
}

}  // namespace

Report verify_truncation(const TruncationOptions& opt) {
  Report rep;
  auto& j = rep.json;
  Clock clock(opt.timings);
  j["command"] = "truncation";
  j["m"] = opt.m;
  j["n"] = opt.n;
  j["k_max"] = opt.k_max;
  j["cap"] = opt.cap;
  const std::uint32_t points = opt.m * opt.n;
  auto a = config_discrete(opt.m), b = config_discrete(opt.n), z = config_discrete(points);
  auto x = nerve_over_fin(a.cat, opt.cap, opt.m), y = nerve_over_fin(b.cat, opt.cap, opt.n);
  auto bf = boxfin_category(minimal_box_bounds(opt.m, opt.n));
  auto p = box_pre(x, y, bf);
  auto w = box_pre_category(a.cat, b.cat, bf);
  auto cmp = comparison_functor(w, a, b, bf, z);
  auto fail_if = [&](bool bad) {
    if (bad) rep.status = combine(rep.status, Status::kFail);
  };
  fail_if(!cmp.errors.empty());
  j["levels"] = nlohmann::json::array();
  for (std::uint32_t k = 0; k <= opt.k_max; ++k) {
    nlohmann::json lj{{"k", k}};
    auto t = truncate(p.space, k);
    auto zk = truncate_by_size(z.cat, k);
    auto nz = nerve_over_fin(zk.cat, opt.cap, k);
    // decode each truncated element through its key into a string of Z_{<=k}
    DssMap decode;
    decode.level.resize(opt.cap + 1);
    std::vector<std::string> errs;
    for (std::uint32_t n = 0; n <= opt.cap; ++n) {
      std::unordered_map<Chain, std::uint32_t, VecHash> where;
      for (std::uint32_t e = 0; e < nz.size(n); ++e) where[nz.levels[n].key.get(e)] = e;
      std::vector<char> hit(nz.size(n), 0);
      for (std::uint32_t e = 0; e < t.space.size(n) && errs.empty(); ++e) {
        const auto* key = p.space.levels[n].key.row(t.kept.level[n][e]);
        auto obj = w.object_index.at({key[0], key[2 * (n + 1)], key[n + 1]});
        Chain zs{zk.obj_of[cmp.functor.obj[obj]]};
        for (std::uint32_t i = 1; i <= n; ++i) {
          auto mor = w.find_morphism(obj, key[i], key[2 * (n + 1) + i], key[n + 1 + i]);
          if (mor == kNone) {
            errs.push_back("degree " + std::to_string(n) + ": element " + std::to_string(e) + " does not decode");
            break;
          }
          zs.push_back(zk.mor_of[cmp.functor.mor[mor]]);
          obj = w.cat.cat.dst(mor);
        }
        if (!errs.empty()) break;
        auto it = where.find(zs);
        if (it == where.end() || hit[it->second]++) {
          errs.push_back("degree " + std::to_string(n) + ": element " + std::to_string(e) + " has no fresh image");
          break;
        }
        decode.level[n].push_back(it->second);
      }
      if (errs.empty() && t.space.size(n) != nz.size(n))
        errs.push_back("degree " + std::to_string(n) + ": " + std::to_string(t.space.size(n)) + " vs " +
                       std::to_string(nz.size(n)) + " strings");
    }
    if (errs.empty()) errs = check_dss_map(t.space, nz, decode, true);
    lj["strict_identity"] = errs.empty() ? nlohmann::json("PASS") : errors_json(errs);
    fail_if(!errs.empty());

    // fibers of the right adjoint
    auto ts = tau_lower_star(t.space, points);
    std::vector<std::string> ferrs;
    // the face may be of any lower degree; chain lengths keep degrees apart
    std::unordered_map<Chain, std::uint64_t, VecHash> over;
    for (std::uint32_t n = 0; n <= opt.cap; ++n)
      for (std::uint32_t e = 0; e < t.space.size(n); ++e) ++over[t.space.ref(n, e)];
    for (std::uint32_t n = 0; n <= opt.cap; ++n) {
      std::map<Chain, std::uint64_t> got;
      for (std::uint32_t e = 0; e < ts.space.size(n); ++e) ++got[ts.space.ref(n, e)];
      auto base = all_chains(ts.space.base->fin.cat, n);
      for (std::uint32_t s = 0; s < base.size(); ++s) {
        auto sigma = base.get(s);
        auto face = small_face(*ts.space.base, *t.space.base, sigma.data(), n, k);
        std::uint64_t expected = face.empty() ? 1 : 0;
        if (!face.empty()) {
          auto it = over.find(face);
          expected = it == over.end() ? 0 : it->second;
        }
        auto it = got.find(sigma);
        std::uint64_t have = it == got.end() ? 0 : it->second;
        if (have != expected && ferrs.size() < 4)
          ferrs.push_back("degree " + std::to_string(n) + ": fiber of size " + std::to_string(have) + ", expected " +
                          std::to_string(expected));
      }
    }
    lj["tau_star_fibers"] = ferrs.empty() ? nlohmann::json("PASS") : errors_json(ferrs);
    fail_if(!ferrs.empty());

    // conservatization of the truncated box category against Z_{<=k}
    auto wk = truncate_by_size(w.cat, k);
    Functor fk;
    for (auto o : wk.old_obj) fk.obj.push_back(zk.obj_of[cmp.functor.obj[o]]);
    fk.mor.assign(wk.cat.cat.num_morphisms(), kNone);
    for (std::uint32_t m = 0; m < w.cat.cat.num_morphisms(); ++m)
      if (wk.mor_of[m] != kNone) fk.mor[wk.mor_of[m]] = zk.mor_of[cmp.functor.mor[m]];
    lj["levels"] = nlohmann::json::array();
    for (std::uint32_t r = 0; r <= opt.r_max; ++r) {
      std::vector<StageResult> stages;
      for (auto bound : bounds_for(r, opt.ell_offsets)) {
        auto ll = lambda_level(wk.cat, {r, Variant::kFlat, bound});
        stages.push_back(discrete_stage(ll, zk.cat, fk, opt.probe));
      }
      auto v = verify_weak_equiv_to_discrete(stages);
      rep.status = combine(rep.status, v.status);
      lj["levels"].push_back(level_json(r, v, stages));
    }
    j["levels"].push_back(lj);
    clock.mark(j, "k_" + std::to_string(k));
  }

  // the adjunction bijection on small pairs
  {
    auto c1 = config_discrete(1);
    auto xs = nerve_over_fin(c1.cat, 2, 1);
    auto bf1 = boxfin_category(minimal_box_bounds(1, 1));
    auto p1 = box_pre(xs, xs, bf1);
    j["adjunction"] = nlohmann::json::array();
    for (auto& [wx, k] : std::vector<std::pair<DiscreteSimplicialSpace, std::uint32_t>>{
             {truncate(p1.space, 0).space, 0}, {truncate(p1.space, 1).space, 1}}) {
      auto ar = check_truncation_adjunction(xs, wx, k);
      j["adjunction"].push_back({{"k", k},
                                 {"left_maps", ar.left_maps},
                                 {"right_maps", ar.right_maps},
                                 {"status", ar.bijective ? "PASS" : "FAIL"}});
      fail_if(!ar.bijective);
    }
  }
  j["status"] = to_string(rep.status);
  return rep;
}

nlohmann::json enumerate_counts(std::uint32_t k_max, const BoxBounds& bounds) {
  nlohmann::json j;
  j["command"] = "enumerate";
  for (std::uint32_t k = 0; k <= k_max; ++k) {
    std::vector<std::uint64_t> row;
    for (std::uint32_t l = 0; l <= k; ++l) row.push_back(enumerate_selfic(k, l).size());
    j["selfic"].push_back({{"k", k}, {"by_image_size", row}});
  }
  auto objs = boxfin_objects(bounds.k_max, bounds.r_max, bounds.s_max);
  j["boxfin"] = {{"bounds", {bounds.k_max, bounds.r_max, bounds.s_max}}, {"objects", objs.size()}};
  if (bounds.k_max <= 4 && bounds.r_max <= 3 && bounds.s_max <= 3) {
    std::uint64_t mors = 0;
    for (auto& s : objs)
      for (auto& t : objs) mors += boxfin_morphisms(s, t).size();
    j["boxfin"]["morphisms"] = mors;
  }
  for (std::uint32_t m = 0; m <= std::min<std::uint32_t>(k_max, 4); ++m) {
    auto c = config_discrete(m);
    j["config"].push_back({{"m", m}, {"objects", c.cat.cat.num_objects()}, {"morphisms", c.cat.cat.num_morphisms()}});
  }
  return j;
}

Report check_space(const DiscreteSimplicialSpace& x) {
  Report rep;
  auto c = space_checks(x, true);
  rep.status = c.status;
  rep.json = c.json;
  rep.json["command"] = "check";
  auto inv = invertibility_criterion(x);
  rep.json["invertibility_criterion"] = {{"agrees", inv.agree}, {"over_iso", inv.over_iso}, {"he", inv.he}};
  rep.json["status"] = to_string(rep.status);
  return rep;
}

}  // namespace configprod
