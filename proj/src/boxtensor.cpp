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

#include "configprod/boxtensor.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace configprod {

namespace {

DssMap compose_maps(const DssMap& g, const DssMap& f) {
  DssMap h;
  h.level.resize(f.level.size());
  for (std::size_t n = 0; n < f.level.size(); ++n)
    for (auto e : f.level[n]) h.level[n].push_back(g.level[n][e]);
  return h;
}

// Maps of the degree-1 base strings of x, closed under composition.
std::set<FinMap> arrow_closure(const DiscreteSimplicialSpace& x) {
  std::set<FinMap> out;
  for (std::uint32_t e = 0; e < x.size(1); ++e) out.insert(x.base->fin.mor_map[x.levels[1].ref.row(e)[1]]);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<FinMap> fresh;
    for (const auto& f : out)
      for (const auto& g : out)
        if (f.cod == g.dom) {
          auto h = compose(g, f);
          if (!out.count(h)) fresh.push_back(std::move(h));
        }
    for (auto& h : fresh) grew = out.insert(std::move(h)).second || grew;
  }
  return out;
}

// The subcategory of Boxfin on the morphisms whose legs lie in the given
// composition-closed sets, with the full ids of its morphisms.
struct SubBoxfin {
  FinCatOverFin p0, p1, p2;
  std::vector<std::uint32_t> full;
};

SubBoxfin restrict_boxfin(const BoxfinCategory& bf, const std::set<FinMap>& bs, const std::set<FinMap>& cs) {
  SubBoxfin sb;
  const auto& k = bf.p0.cat;
  std::vector<std::uint32_t> sub(k.num_morphisms(), kNone);
  for (std::uint32_t o = 0; o < bf.objects.size(); ++o) {
    sb.p0.add_object(bf.objects[o].k);
    sb.p1.add_object(bf.objects[o].r);
    sb.p2.add_object(bf.objects[o].s);
    sub[k.identity(o)] = o;
    sb.full.push_back(k.identity(o));
  }
  for (std::uint32_t m = 0; m < k.num_morphisms(); ++m) {
    if (k.is_identity(m) || !bs.count(bf.b[m]) || !cs.count(bf.c[m])) continue;
    sub[m] = sb.p0.add_morphism(k.src(m), k.dst(m), bf.a[m]);
    sb.p1.add_morphism(k.src(m), k.dst(m), bf.b[m]);
    sb.p2.add_morphism(k.src(m), k.dst(m), bf.c[m]);
    sb.full.push_back(m);
  }
  for (const auto& [key, h] : k.composites()) {
    auto g = sub[key >> 32], f = sub[key & 0xffffffffu];
    if (g == kNone || f == kNone) continue;
    if (sub[h] == kNone) throw std::logic_error("restrict_boxfin: leg sets not closed");
    sb.p0.cat.set_composite(g, f, sub[h]);
  }
  sb.p0.cat.finalize();
  sb.p1.cat = sb.p0.cat;
  sb.p2.cat = sb.p0.cat;
  return sb;
}

std::string bounds_str(const BoxBounds& b) {
  return "k<=" + std::to_string(b.k_max) + ", r<=" + std::to_string(b.r_max) + ", s<=" + std::to_string(b.s_max);
}

}  // namespace

BoxBounds minimal_box_bounds(std::uint32_t r_max, std::uint32_t s_max) { return {r_max * s_max, r_max, s_max}; }

std::uint32_t BoxfinCategory::find(const BoxObj& x) const {
  auto it = index.find(x);
  return it == index.end() ? kNone : it->second;
}

std::uint32_t BoxfinCategory::morphism(std::uint32_t src, std::uint32_t dst, const FinMap& bb,
                                       const FinMap& cc) const {
  auto it = by_legs.find({src, dst, bb, cc});
  return it == by_legs.end() ? kNone : it->second;
}

BoxfinCategory boxfin_category(const BoxBounds& bounds, LegKind legs) {
  BoxfinCategory bf;
  bf.bounds = bounds;
  bf.legs = legs;
  bf.objects = boxfin_objects(bounds.k_max, bounds.r_max, bounds.s_max, legs);
  for (std::uint32_t i = 0; i < bf.objects.size(); ++i) {
    const auto& o = bf.objects[i];
    bf.index[o] = i;
    bf.p0.add_object(o.k, o.str());
    bf.a.push_back(FinMap::identity(o.k));
    bf.b.push_back(FinMap::identity(o.r));
    bf.c.push_back(FinMap::identity(o.s));
    bf.by_legs[{i, i, bf.b.back(), bf.c.back()}] = bf.p0.cat.identity(i);
  }
  for (std::uint32_t i = 0; i < bf.objects.size(); ++i)
    for (std::uint32_t j = 0; j < bf.objects.size(); ++j)
      for (auto& m : boxfin_morphisms(bf.objects[i], bf.objects[j])) {
        if (i == j && m.a.is_identity() && m.b.is_identity() && m.c.is_identity()) continue;
        auto id = bf.p0.add_morphism(i, j, m.a);
        bf.a.push_back(m.a);
        bf.b.push_back(m.b);
        bf.c.push_back(m.c);
        bf.by_legs[{i, j, m.b, m.c}] = id;
      }
  auto& k = bf.p0.cat;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> between;  // (src, dst) -> morphisms
  for (std::uint32_t m = 0; m < k.num_morphisms(); ++m)
    between[(static_cast<std::uint64_t>(k.src(m)) << 32) | k.dst(m)].push_back(m);
  for (std::uint32_t f = 0; f < k.num_morphisms(); ++f) {
    if (k.is_identity(f)) continue;
    for (auto g : k.out(k.dst(f))) {
      if (k.is_identity(g)) continue;
      auto bb = compose(bf.b[g], bf.b[f]);
      auto cc = compose(bf.c[g], bf.c[f]);
      std::uint32_t h = kNone;
      for (auto m : between[(static_cast<std::uint64_t>(k.src(f)) << 32) | k.dst(g)])
        if (bf.b[m] == bb && bf.c[m] == cc) h = m;
      if (h == kNone) throw std::logic_error("boxfin_category: composite missing");
      k.set_composite(g, f, h);
    }
  }
  k.finalize();
  bf.p1.cat = k;
  bf.p2.cat = k;
  for (auto& o : bf.objects) {
    bf.p1.obj_size.push_back(o.r);
    bf.p2.obj_size.push_back(o.s);
  }
  bf.p1.mor_map = bf.b;
  bf.p2.mor_map = bf.c;
  return bf;
}

BoxPreSpace box_pre(const DiscreteSimplicialSpace& x, const DiscreteSimplicialSpace& y,
                    const BoxfinCategory& boxfin) {
  const auto& bd = boxfin.bounds;
  auto need = minimal_box_bounds(x.base->t, y.base->t);
  if (x.base->t != bd.r_max || y.base->t != bd.s_max)
    throw std::invalid_argument("box_pre: Boxfin bounds " + bounds_str(bd) + " do not match the inputs; use " +
                                bounds_str(need));
  if (x.cap != y.cap) throw std::invalid_argument("box_pre: caps differ");
  const std::uint32_t cap = x.cap;
  // Every box string of the pullback has legs among the arrows of X and Y,
  // so the nerve of this subcategory gives the same pullback.
  auto sb = restrict_boxfin(boxfin, arrow_closure(x), arrow_closure(y));
  auto nb = nerve_over_fin(sb.p0, cap, bd.k_max);
  auto nr = nerve_over_fin(fin_skeleton(bd.r_max).fin, cap, bd.r_max);
  auto ns = nerve_over_fin(fin_skeleton(bd.s_max).fin, cap, bd.s_max);
  auto p1 = reference_map(nb, sb.p1, nr);
  auto p2 = reference_map(nb, sb.p2, ns);
  for (std::uint32_t n = 0; n <= cap; ++n) {
    auto& key = nb.levels[n].key;
    for (std::size_t i = 0; i < key.data.size(); ++i)
      if (i % key.width != 0) key.data[i] = sb.full[key.data[i]];
  }
  auto first = pullback(x, ref_as_map(x, nr), nb, p1, RefSide::kRight);
  auto second = pullback(first.space, compose_maps(p2, first.right), y, ref_as_map(y, ns), RefSide::kLeft);
  BoxPreSpace w;
  w.space = std::move(second.space);
  w.to_x = compose_maps(first.left, second.left);
  w.to_box = compose_maps(first.right, second.left);
  w.to_y = std::move(second.right);
  w.bounds = bd;
  w.provenance = {{"construction", "box_pre"},
                  {"bounds", {{"k", bd.k_max}, {"r", bd.r_max}, {"s", bd.s_max}}},
                  {"legs", boxfin.legs == LegKind::kSelfic ? "selfic" : "surjective"},
                  {"cap", cap},
                  {"sizes", {{"x", x.size(0)}, {"y", y.size(0)}, {"box", nb.size(0)}}}};
  return w;
}

std::uint32_t BoxPreCategory::find_morphism(std::uint32_t src, std::uint32_t phi, std::uint32_t psi,
                                            std::uint32_t box) const {
  auto it = morphism_index.find({src, phi, psi, box});
  return it == morphism_index.end() ? kNone : it->second;
}

BoxPreCategory box_pre_category(const FinCatOverFin& a, const FinCatOverFin& b, const BoxfinCategory& boxfin) {
  BoxPreCategory w;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> boxes;  // by (r, s)
  for (std::uint32_t i = 0; i < boxfin.objects.size(); ++i)
    boxes[{boxfin.objects[i].r, boxfin.objects[i].s}].push_back(i);
  const auto& ka = a.cat;
  const auto& kb = b.cat;
  const auto& kx = boxfin.p0.cat;
  for (std::uint32_t x = 0; x < ka.num_objects(); ++x)
    for (std::uint32_t y = 0; y < kb.num_objects(); ++y) {
      auto it = boxes.find({a.obj_size[x], b.obj_size[y]});
      if (it == boxes.end()) continue;
      for (auto k : it->second) {
        auto o = w.cat.add_object(boxfin.objects[k].k);
        w.objects.push_back({x, y, k});
        w.object_index[{x, y, k}] = o;
      }
    }
  const auto n = static_cast<std::uint32_t>(w.objects.size());
  w.morphisms.resize(n);
  for (std::uint32_t o = 0; o < n; ++o) {
    const auto& ob = w.objects[o];
    w.morphisms[w.cat.cat.identity(o)] = {ka.identity(ob.x), kb.identity(ob.y), kx.identity(ob.box)};
    w.morphism_index[{o, ka.identity(ob.x), kb.identity(ob.y), kx.identity(ob.box)}] = w.cat.cat.identity(o);
  }
  for (std::uint32_t o = 0; o < n; ++o) {
    const auto ob = w.objects[o];
    for (auto phi : ka.out(ob.x))
      for (auto psi : kb.out(ob.y)) {
        auto x2 = ka.dst(phi), y2 = kb.dst(psi);
        for (std::uint32_t k2 = 0; k2 < boxfin.objects.size(); ++k2) {
          auto t = w.object_index.find({x2, y2, k2});
          if (t == w.object_index.end()) continue;
          auto beta = boxfin.morphism(ob.box, k2, a.mor_map[phi], b.mor_map[psi]);
          if (beta == kNone) continue;
          if (ka.is_identity(phi) && kb.is_identity(psi) && kx.is_identity(beta)) continue;
          auto m = w.cat.add_morphism(o, t->second, boxfin.a[beta]);
          w.morphisms.push_back({phi, psi, beta});
          w.morphism_index[{o, phi, psi, beta}] = m;
        }
      }
  }
  auto& k = w.cat.cat;
  for (std::uint32_t f = 0; f < k.num_morphisms(); ++f) {
    if (k.is_identity(f)) continue;
    const auto mf = w.morphisms[f];
    for (auto g : k.out(k.dst(f))) {
      if (k.is_identity(g)) continue;
      const auto mg = w.morphisms[g];
      auto phi = ka.compose(mg.phi, mf.phi), psi = kb.compose(mg.psi, mf.psi), beta = kx.compose(mg.box, mf.box);
      if (phi == kNone || psi == kNone || beta == kNone) continue;
      auto h = w.find_morphism(k.src(f), phi, psi, beta);
      if (h != kNone) k.set_composite(g, f, h);
    }
  }
  k.finalize();
  return w;
}

std::vector<std::string> box_pre_matches_nerve(const BoxPreSpace& w, const BoxPreCategory& c) {
  const std::uint32_t cap = w.space.cap;
  auto nc = nerve_over_fin(c.cat, cap, w.space.base->t);
  DssMap f;
  f.level.resize(cap + 1);
  for (std::uint32_t n = 0; n <= cap; ++n) {
    const auto& lv = w.space.levels[n];
    if (lv.key.width != 3 * (n + 1)) return {"box_pre keys have unexpected width"};
    std::unordered_map<Chain, std::uint32_t, VecHash> index;
    for (std::uint32_t e = 0; e < lv.size; ++e) index[lv.key.get(e)] = e;
    if (nc.size(n) != lv.size)
      return {"degree " + std::to_string(n) + ": nerve has " + std::to_string(nc.size(n)) +
              " elements, pullback " + std::to_string(lv.size)};
    std::vector<char> hit(lv.size, 0);
    Chain key(3 * (n + 1));
    for (std::uint32_t e = 0; e < nc.size(n); ++e) {
      const auto* ch = nc.levels[n].key.row(e);
      const auto& o = c.objects[ch[0]];
      key[0] = o.x;
      key[n + 1] = o.box;
      key[2 * (n + 1)] = o.y;
      for (std::uint32_t i = 1; i <= n; ++i) {
        const auto& m = c.morphisms[ch[i]];
        key[i] = m.phi;
        key[n + 1 + i] = m.box;
        key[2 * (n + 1) + i] = m.psi;
      }
      auto it = index.find(key);
      if (it == index.end()) return {"degree " + std::to_string(n) + ": string " + std::to_string(e) + " not in the pullback"};
      if (hit[it->second]++) return {"degree " + std::to_string(n) + ": two strings hit one element"};
      f.level[n].push_back(it->second);
    }
  }
  return check_dss_map(nc, w.space, f, true);
}

FinMap product_configuration(const FinMap& f, const FinMap& g, const BoxObj& u, std::uint32_t n_points) {
  std::vector<std::uint32_t> img;
  for (std::uint32_t t = 1; t <= u.k; ++t) img.push_back((f(u.p(t)) - 1) * n_points + g(u.q(t)));
  return FinMap(f.cod * n_points, img);
}

Comparison comparison_functor(const BoxPreCategory& w, const ConfigCat& a, const ConfigCat& b,
                              const BoxfinCategory& boxfin, const ConfigCat& z) {
  Comparison out;
  out.note = "interval matching is vacuous: morphisms of discrete configuration categories carry no paths";
  for (const auto& o : w.objects)
    out.functor.obj.push_back(z.find(product_configuration(a.config[o.x], b.config[o.y], boxfin.objects[o.box], b.points)));
  const auto& k = w.cat.cat;
  for (std::uint32_t m = 0; m < k.num_morphisms(); ++m) {
    auto zm = z.morphism(out.functor.obj[k.src(m)], out.functor.obj[k.dst(m)]);
    if (zm != kNone && !(z.cat.mor_map[zm] == w.cat.mor_map[m])) {
      out.errors.push_back("morphism " + std::to_string(m) + " changes its reference");
      zm = kNone;
    }
    out.functor.mor.push_back(zm);
  }
  for (std::uint32_t o = 0; o < w.objects.size(); ++o)
    if (out.functor.obj[o] == kNone) {
      out.errors.push_back("object " + std::to_string(o) + " has no product configuration");
      return out;
    }
  for (auto& e : check_functor(k, z.cat.cat, out.functor)) out.errors.push_back(e);
  return out;
}

bool comma_membership(const BoxObj& lambda, const BoxObj& kappa, const FinMap& u, const FinMap& v) {
  return boxfin_lift(kappa, lambda, u, v).has_value();
}

CommaSubspaceReport comma_subspace_check(const FinCatOverFin& a, const FinCatOverFin& b,
                                         const BoxfinCategory& boxfin, const BoxPreCategory& w,
                                         std::uint32_t w_object) {
  CommaSubspaceReport rep;
  const auto& o = w.objects[w_object];
  const auto& lambda = boxfin.objects[o.box];
  auto ax = comma(a, o.x);
  auto by = comma(b, o.y);
  auto u = box_pre_category(ax.comma, by.comma, boxfin);
  std::vector<char> member(u.objects.size());
  for (std::uint32_t i = 0; i < u.objects.size(); ++i) {
    const auto& uo = u.objects[i];
    member[i] = comma_membership(lambda, boxfin.objects[uo.box], a.mor_map[ax.object_morphism[uo.x]],
                                 b.mor_map[by.object_morphism[uo.y]]);
    rep.members += member[i];
  }
  rep.candidates = u.objects.size();
  std::unordered_map<std::uint32_t, std::uint32_t> ax_of, by_of;
  for (std::uint32_t i = 0; i < ax.object_morphism.size(); ++i) ax_of[ax.object_morphism[i]] = i;
  for (std::uint32_t i = 0; i < by.object_morphism.size(); ++i) by_of[by.object_morphism[i]] = i;
  auto ww = comma(w.cat, w_object);
  rep.comma_objects = ww.object_morphism.size();
  std::vector<char> hit(u.objects.size(), 0);
  bool ok = true;
  for (auto m : ww.object_morphism) {
    const auto& mm = w.morphisms[m];
    auto it = u.object_index.find({ax_of.at(mm.phi), by_of.at(mm.psi), w.objects[w.cat.cat.src(m)].box});
    if (it == u.object_index.end() || !member[it->second] || hit[it->second]++) {
      ok = false;
      rep.errors.push_back("comma object over morphism " + std::to_string(m) + " is not a fresh member");
    }
  }
  rep.bijective = ok && rep.comma_objects == rep.members;
  const auto& k = u.cat.cat;
  for (std::uint32_t m = 0; m < k.num_morphisms(); ++m) {
    if (k.is_identity(m) || !u.cat.mor_map[m].is_bijective()) continue;
    ++rep.closure_edges;
    if (member[k.src(m)] != member[k.dst(m)]) {
      rep.closed = false;
      rep.errors.push_back("membership changes along edge " + std::to_string(m));
    }
  }
  return rep;
}

BoxPreOrbit box_pre_orbit(const ConfigCat& a, const PermGroup& g, const ConfigCat& b, const PermGroup& h,
                          const ConfigCat& z, const BoxfinCategory& boxfin) {
  BoxPreOrbit o;
  o.left = config_orbit(a, g);
  o.right = config_orbit(b, h);
  o.product = config_orbit(z, product_group(g, h));
  o.w = box_pre_category(o.left.semi.cat, o.right.semi.cat, boxfin);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> orbit_mor;  // (elem, phi) -> id
  const auto& ps = o.product.semi;
  for (std::uint32_t m = 0; m < ps.phi.size(); ++m) orbit_mor[{ps.elem[m], ps.phi[m]}] = m;
  auto& cmp = o.comparison;
  cmp.note = "interval matching is vacuous: morphisms of discrete configuration categories carry no paths";
  for (const auto& ob : o.w.objects)
    cmp.functor.obj.push_back(z.find(product_configuration(a.config[ob.x], b.config[ob.y], boxfin.objects[ob.box], b.points)));
  const auto& k = o.w.cat.cat;
  for (std::uint32_t m = 0; m < k.num_morphisms(); ++m) {
    const auto& mm = o.w.morphisms[m];
    const auto& gp = g.elems[o.left.semi.elem[mm.phi]];
    const auto& hp = h.elems[o.right.semi.elem[mm.psi]];
    std::vector<std::uint32_t> img;
    for (std::uint32_t i = 1; i <= a.points; ++i)
      for (std::uint32_t j = 1; j <= b.points; ++j) img.push_back((gp(i) - 1) * b.points + hp(j));
    auto e = o.product.group.find(FinMap(a.points * b.points, img));
    std::uint32_t id = kNone;
    if (e != kNone) {
      auto target = o.product.action.obj[e][cmp.functor.obj[k.dst(m)]];
      auto chi = z.morphism(cmp.functor.obj[k.src(m)], target);
      auto it = orbit_mor.find({e, chi});
      if (chi != kNone && it != orbit_mor.end()) id = it->second;
    }
    if (id != kNone && !(ps.cat.mor_map[id] == o.w.cat.mor_map[m])) id = kNone;
    cmp.functor.mor.push_back(id);
  }
  for (auto& err : check_functor(k, ps.cat.cat, cmp.functor)) cmp.errors.push_back(err);
  return o;
}

FiberSequenceReport orbit_fiber_check(const BoxPreOrbit& o, const BoxPreCategory& plain, std::uint32_t cap) {
  FiberSequenceReport rep;
  const auto& G = o.left.action.group;
  const auto& H = o.right.action.group;
  const auto& k = o.w.cat.cat;
  for (std::uint32_t n = 0; n <= cap; ++n) {
    auto orbit = all_chains(k, n);
    auto base = all_chains(plain.cat.cat, n);
    std::uint64_t power = 1;
    for (std::uint32_t i = 0; i < n; ++i) power *= static_cast<std::uint64_t>(G.order) * H.order;
    rep.orbit_size.push_back(orbit.size());
    rep.plain_size.push_back(base.size());
    rep.group_power.push_back(power);
    bool ok = orbit.size() == base.size() * power;
    std::set<Chain> images;
    for (std::uint32_t e = 0; e < orbit.size() && ok; ++e) {
      const auto* ch = orbit.row(e);
      std::uint32_t gc = 0, hc = 0;  // cumulative group elements
      auto lift_object = [&](std::uint32_t w) {
        const auto& ob = o.w.objects[w];
        auto it = plain.object_index.find({o.left.action.obj[gc][ob.x], o.right.action.obj[hc][ob.y], ob.box});
        return it == plain.object_index.end() ? kNone : it->second;
      };
      Chain img{lift_object(ch[0])}, groups;
      for (std::uint32_t i = 1; i <= n && img.back() != kNone; ++i) {
        const auto& mm = o.w.morphisms[ch[i]];
        auto phi = o.left.action.mor[gc][o.left.semi.phi[mm.phi]];
        auto psi = o.right.action.mor[hc][o.right.semi.phi[mm.psi]];
        auto src = img[0];
        if (i > 1) src = plain.cat.cat.dst(img.back());
        img.push_back(plain.find_morphism(src, phi, psi, mm.box));
        groups.push_back(o.left.semi.elem[mm.phi]);
        groups.push_back(o.right.semi.elem[mm.psi]);
        gc = G.mul(gc, o.left.semi.elem[mm.phi]);
        hc = H.mul(hc, o.right.semi.elem[mm.psi]);
        if (img.back() != kNone && plain.cat.cat.dst(img.back()) != lift_object(k.dst(ch[i]))) img.back() = kNone;
      }
      if (std::find(img.begin(), img.end(), kNone) != img.end() || base.find(img) == kNone) {
        ok = false;
        rep.errors.push_back("degree " + std::to_string(n) + ": string " + std::to_string(e) + " has no plain image");
        break;
      }
      img.insert(img.end(), groups.begin(), groups.end());
      if (!images.insert(img).second) {
        ok = false;
        rep.errors.push_back("degree " + std::to_string(n) + ": two strings share an image");
      }
    }
    if (!ok && rep.errors.empty())
      rep.errors.push_back("degree " + std::to_string(n) + ": sizes " + std::to_string(orbit.size()) + " vs " +
                           std::to_string(base.size()) + " x " + std::to_string(power));
    rep.exact = rep.exact && ok;
  }
  return rep;
}

}  // namespace configprod
