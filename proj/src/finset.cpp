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

#include "configprod/finset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace configprod {

FinMap::FinMap(std::uint32_t cod_, std::vector<std::uint32_t> img_)
    : dom(static_cast<std::uint32_t>(img_.size())), cod(cod_), img(std::move(img_)) {}

FinMap FinMap::identity(std::uint32_t k) {
  std::vector<std::uint32_t> v(k);
  std::iota(v.begin(), v.end(), 1u);
  return FinMap(k, std::move(v));
}

FinMap FinMap::empty(std::uint32_t cod) { return FinMap(cod, {}); }

bool FinMap::valid() const {
  if (img.size() != dom) return false;
  return std::all_of(img.begin(), img.end(),
                     [&](std::uint32_t x) { return x >= 1 && x <= cod; });
}

bool FinMap::is_identity() const {
  if (dom != cod) return false;
  for (std::uint32_t i = 0; i < dom; ++i)
    if (img[i] != i + 1) return false;
  return true;
}

bool FinMap::is_injective() const {
  std::vector<bool> seen(cod + 1, false);
  for (auto x : img) {
    if (seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

bool FinMap::is_surjective() const {
  std::vector<bool> seen(cod + 1, false);
  std::uint32_t hit = 0;
  for (auto x : img) {
    if (!seen[x]) ++hit;
    seen[x] = true;
  }
  return hit == cod;
}

std::string FinMap::str() const {
  std::ostringstream os;
  os << dom << "->" << cod << ":(";
  for (std::size_t i = 0; i < img.size(); ++i) os << (i ? "," : "") << img[i];
  os << ")";
  return os.str();
}

FinMap compose(const FinMap& g, const FinMap& f) {
  if (f.cod != g.dom)
    throw std::invalid_argument("compose: " + g.str() + " after " + f.str());
  std::vector<std::uint32_t> v(f.dom);
  for (std::uint32_t i = 0; i < f.dom; ++i) v[i] = g.img[f.img[i] - 1];
  return FinMap(g.cod, std::move(v));
}

FinMap inverse(const FinMap& f) {
  if (!f.is_bijective()) throw std::invalid_argument("inverse: not a bijection " + f.str());
  std::vector<std::uint32_t> v(f.dom);
  for (std::uint32_t i = 0; i < f.dom; ++i) v[f.img[i] - 1] = i + 1;
  return FinMap(f.dom, std::move(v));
}

std::size_t FinMapHash::operator()(const FinMap& f) const noexcept {
  std::size_t h = f.dom * 0x9e3779b97f4a7c15ull ^ (f.cod + 0x51ed27);
  for (auto x : f.img) h = (h ^ x) * 0x100000001b3ull;
  return h;
}

std::vector<FinMap> all_maps(std::uint32_t k, std::uint32_t l) {
  std::vector<FinMap> out;
  if (k > 0 && l == 0) return out;
  std::vector<std::uint32_t> v(k, 1);
  while (true) {
    out.emplace_back(l, v);
    // odometer, last position fastest: lexicographic order
    std::int64_t i = static_cast<std::int64_t>(k) - 1;
    while (i >= 0 && v[i] == l) {
      v[i] = 1;
      --i;
    }
    if (i < 0) break;
    ++v[i];
  }
  return out;
}

std::vector<FinMap> all_injections(std::uint32_t k, std::uint32_t l) {
  std::vector<FinMap> out;
  for (auto& f : all_maps(k, l))
    if (f.is_injective()) out.push_back(std::move(f));
  return out;
}

std::vector<FinMap> all_surjections(std::uint32_t k, std::uint32_t l) {
  std::vector<FinMap> out;
  for (auto& f : all_maps(k, l))
    if (f.is_surjective()) out.push_back(std::move(f));
  return out;
}

bool is_selfic(const FinMap& f) {
  if (!f.valid() || !f.is_surjective()) return false;
  // min-preimages are increasing iff each new value seen left to right is
  // exactly one more than the largest value seen so far
  std::uint32_t top = 0;
  for (auto x : f.img) {
    if (x > top + 1) return false;
    top = std::max(top, x);
  }
  return true;
}

bool Partition::valid() const {
  std::vector<int> count(ground + 1, 0);
  for (const auto& b : blocks) {
    if (b.empty()) return false;
    for (auto x : b) {
      if (x < 1 || x > ground) return false;
      ++count[x];
    }
  }
  for (std::uint32_t i = 1; i <= ground; ++i)
    if (count[i] != 1) return false;
  return true;
}

Partition Partition::normalized() const {
  Partition p = *this;
  for (auto& b : p.blocks) std::sort(b.begin(), b.end());
  std::sort(p.blocks.begin(), p.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return p;
}

Partition fibers(const FinMap& f) {
  std::vector<std::vector<std::uint32_t>> by_value(f.cod + 1);
  for (std::uint32_t i = 0; i < f.dom; ++i) by_value[f.img[i]].push_back(i + 1);
  Partition p{f.dom, {}};
  for (auto& b : by_value)
    if (!b.empty()) p.blocks.push_back(std::move(b));
  return p.normalized();
}

FinMap selfic_of_partition(const Partition& p) {
  if (!p.valid()) throw std::invalid_argument("selfic_of_partition: invalid partition");
  Partition n = p.normalized();
  std::vector<std::uint32_t> v(p.ground, 0);
  for (std::uint32_t b = 0; b < n.blocks.size(); ++b)
    for (auto x : n.blocks[b]) v[x - 1] = b + 1;
  return FinMap(static_cast<std::uint32_t>(n.blocks.size()), std::move(v));
}

FinMap selfic_factor(const FinMap& f) { return selfic_of_partition(fibers(f)); }

std::vector<FinMap> enumerate_selfic(std::uint32_t k, std::uint32_t l) {
  // restricted growth strings, generated in lexicographic order
  std::vector<FinMap> out;
  if (l > k || (k > 0 && l == 0)) return out;
  if (k == 0) {
    out.push_back(FinMap::identity(0));
    return out;
  }
  std::vector<std::uint32_t> v(k);
  std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t i,
                                                               std::uint32_t top) {
    if (top + (k - i) < l) return;
    if (i == k) {
      if (top == l) out.emplace_back(l, v);
      return;
    }
    for (std::uint32_t x = 1; x <= std::min(top + 1, l); ++x) {
      v[i] = x;
      rec(i + 1, std::max(top, x));
    }
  };
  rec(0, 0);
  return out;
}

bool BoxObj::valid(bool selfic) const {
  if (p.dom != k || q.dom != k || p.cod != r || q.cod != s) return false;
  if (!p.valid() || !q.valid()) return false;
  if (selfic) {
    if (!is_selfic(p) || !is_selfic(q)) return false;
  } else if (!p.is_surjective() || !q.is_surjective()) {
    return false;
  }
  std::vector<bool> seen((r + 1) * (s + 1), false);
  for (std::uint32_t i = 0; i < k; ++i) {
    auto key = p.img[i] * (s + 1) + q.img[i];
    if (seen[key]) return false;
    seen[key] = true;
  }
  return true;
}

std::string BoxObj::str() const { return "[" + p.str() + " | " + q.str() + "]"; }

bool BoxMor::valid() const {
  if (a.dom != src.k || a.cod != dst.k || b.dom != src.r || b.cod != dst.r ||
      c.dom != src.s || c.cod != dst.s)
    return false;
  return compose(b, src.p) == compose(dst.p, a) && compose(c, src.q) == compose(dst.q, a);
}

BoxMor compose(const BoxMor& g, const BoxMor& f) {
  if (!(f.dst == g.src)) throw std::invalid_argument("compose: box morphisms not composable");
  return BoxMor{f.src, g.dst, compose(g.a, f.a), compose(g.b, f.b), compose(g.c, f.c)};
}

BoxMor identity_box(const BoxObj& x) {
  return BoxMor{x, x, FinMap::identity(x.k), FinMap::identity(x.r), FinMap::identity(x.s)};
}

std::vector<BoxObj> boxfin_objects(std::uint32_t k_max, std::uint32_t r_max,
                                   std::uint32_t s_max, LegKind legs) {
  std::vector<BoxObj> out;
  for (std::uint32_t k = 0; k <= k_max; ++k)
    for (std::uint32_t r = 0; r <= std::min(r_max, k); ++r)
      for (std::uint32_t s = 0; s <= std::min(s_max, k); ++s) {
        if (k > r * s) continue;
        auto ps = legs == LegKind::kSelfic ? enumerate_selfic(k, r) : all_surjections(k, r);
        auto qs = legs == LegKind::kSelfic ? enumerate_selfic(k, s) : all_surjections(k, s);
        for (const auto& p : ps)
          for (const auto& q : qs) {
            BoxObj x{k, r, s, p, q};
            if (x.valid(legs == LegKind::kSelfic)) out.push_back(std::move(x));
          }
      }
  return out;
}

std::optional<BoxMor> boxfin_lift(const BoxObj& kappa, const BoxObj& lambda, const FinMap& u,
                                  const FinMap& v) {
  if (u.dom != kappa.r || u.cod != lambda.r || v.dom != kappa.s || v.cod != lambda.s)
    return std::nullopt;
  // position of each pair in lambda's (injective) pairing
  std::vector<std::uint32_t> where((lambda.r + 1) * (lambda.s + 1), 0);
  for (std::uint32_t j = 0; j < lambda.k; ++j) {
    auto key = lambda.p.img[j] * (lambda.s + 1) + lambda.q.img[j];
    if (where[key] != 0) throw std::logic_error("boxfin_lift: non-injective pairing");
    where[key] = j + 1;
  }
  std::vector<std::uint32_t> a(kappa.k);
  for (std::uint32_t i = 0; i < kappa.k; ++i) {
    auto key = u.img[kappa.p.img[i] - 1] * (lambda.s + 1) + v.img[kappa.q.img[i] - 1];
    if (where[key] == 0) return std::nullopt;
    a[i] = where[key];
  }
  return BoxMor{kappa, lambda, FinMap(lambda.k, std::move(a)), u, v};
}

std::vector<BoxMor> boxfin_morphisms(const BoxObj& kappa, const BoxObj& lambda) {
  std::vector<BoxMor> out;
  for (const auto& u : all_maps(kappa.r, lambda.r))
    for (const auto& v : all_maps(kappa.s, lambda.s))
      if (auto m = boxfin_lift(kappa, lambda, u, v)) out.push_back(std::move(*m));
  return out;
}

void to_json(nlohmann::json& j, const FinMap& f) {
  j = nlohmann::json{{"dom", f.dom}, {"cod", f.cod}, {"img", f.img}};
}

void from_json(const nlohmann::json& j, FinMap& f) {
  f.dom = j.at("dom").get<std::uint32_t>();
  f.cod = j.at("cod").get<std::uint32_t>();
  f.img = j.at("img").get<std::vector<std::uint32_t>>();
  if (!f.valid()) throw std::invalid_argument("FinMap json: invalid map");
}

void to_json(nlohmann::json& j, const BoxObj& x) {
  j = nlohmann::json{{"k", x.k}, {"r", x.r}, {"s", x.s}, {"p", x.p}, {"q", x.q}};
}

void from_json(const nlohmann::json& j, BoxObj& x) {
  x.k = j.at("k").get<std::uint32_t>();
  x.r = j.at("r").get<std::uint32_t>();
  x.s = j.at("s").get<std::uint32_t>();
  x.p = j.at("p").get<FinMap>();
  x.q = j.at("q").get<FinMap>();
}

std::uint64_t injection_count(std::uint32_t k, std::uint32_t n) {
  if (k > n) return 0;
  std::uint64_t c = 1;
  for (std::uint32_t i = 0; i < k; ++i) c *= (n - i);
  return c;
}

}  // namespace configprod
