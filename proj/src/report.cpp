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

#include "configprod/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "configprod/boxtensor.hpp"
#include "configprod/configcat.hpp"
#include "configprod/sspace.hpp"

namespace configprod {

namespace {

std::vector<std::uint32_t> offsets(const RunConfig& c) {
  std::vector<std::uint32_t> o;
  for (auto e = c.ell_min; e <= c.ell_max; ++e) o.push_back(e);
  return o;
}

ProbeOptions probe_options(const RunConfig& c) {
  ProbeOptions p;
  p.probe = c.probe_cap;
  p.budget = c.budget;
  p.certificates = c.certificates;
  p.parallel = c.parallel;
  return p;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open --input " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("--input " + path + " is not JSON: " + e.what());
  }
}

Report enumerate(const RunConfig& c) {
  Report rep;
  auto& j = rep.json;
  j["command"] = "enumerate";
  j["what"] = c.what;
  if (c.what == "counts") {
    j = enumerate_counts(c.k, {c.k, c.m, c.n});
    j["what"] = c.what;
  } else if (c.what == "selfic") {
    j["k"] = c.k;
    j["l"] = c.l;
    j["maps"] = enumerate_selfic(c.k, c.l);
  } else if (c.what == "boxfin") {
    j["bounds"] = {c.k, c.m, c.n};
    j["objects"] = boxfin_objects(c.k, c.m, c.n);
  } else if (c.what == "config") {
    auto cc = config_discrete(c.m);
    j["m"] = c.m;
    j["objects"] = cc.config;
    j["morphisms"] = cc.cat.cat.num_morphisms();
  } else if (c.what == "nerve") {
    auto cc = config_discrete(c.m);
    j["m"] = c.m;
    j["space"] = nerve_over_fin(cc.cat, c.cap, c.m);
  }
  return rep;
}

Report check(const RunConfig& c) {
  auto j = read_json_file(c.input);
  if (j.contains("report") && j["report"].contains("space")) j = j["report"]["space"];
  DiscreteSimplicialSpace x;
  try {
    x = dss_from_json(j);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("--input is not a simplicial space: ") + e.what());
  }
  auto rep = check_space(x);
  rep.json["input"] = c.input;
  return rep;
}

}  // namespace

RunConfig default_config(const std::string& command) {
  RunConfig c;
  c.command = command;
  if (command == "verify-orbit") {
    c.m = 2;
    c.n = 1;
    c.max_degree = 1;
  } else if (command == "verify-truncation") {
    c.m = c.n = 2;
    c.cap = 2;
    c.max_degree = 1;
    c.ell_max = 2;
  } else if (command == "enumerate") {
    c.cap = 2;
  }
  return c;
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = {{"command", c.command},
       {"m", c.m},
       {"n", c.n},
       {"group", c.group},
       {"group_n", c.group_n},
       {"max_degree", c.max_degree},
       {"ell_min", c.ell_min},
       {"ell_max", c.ell_max},
       {"cap", c.cap},
       {"probe_cap", c.probe_cap},
       {"budget", c.budget},
       {"certificates", c.certificates},
       {"parallel", c.parallel},
       {"variant", c.variant},
       {"mutation", c.mutation},
       {"seed", c.seed},
       {"k_max", c.k_max},
       {"what", c.what},
       {"k", c.k},
       {"l", c.l},
       {"input", c.input},
       {"out", c.out},
       {"timings", c.timings},
       {"allow_large", c.allow_large}};
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  c = default_config(j.value("command", std::string("verify-main")));
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  get("m", c.m);
  get("n", c.n);
  get("group", c.group);
  get("group_n", c.group_n);
  get("max_degree", c.max_degree);
  get("ell_min", c.ell_min);
  get("ell_max", c.ell_max);
  get("cap", c.cap);
  get("probe_cap", c.probe_cap);
  get("budget", c.budget);
  get("certificates", c.certificates);
  get("parallel", c.parallel);
  get("variant", c.variant);
  get("mutation", c.mutation);
  get("seed", c.seed);
  get("k_max", c.k_max);
  get("what", c.what);
  get("k", c.k);
  get("l", c.l);
  get("input", c.input);
  get("out", c.out);
  get("timings", c.timings);
  get("allow_large", c.allow_large);
}

std::vector<FinMap> parse_group(const std::string& spec, std::uint32_t degree) {
  if (spec == "sym") return {};
  if (spec == "trivial") return {FinMap::identity(degree)};
  std::vector<FinMap> gens;
  std::stringstream all(spec);
  std::string one;
  while (std::getline(all, one, ';')) {
    std::vector<std::uint32_t> img;
    std::stringstream ps(one);
    std::string tok;
    while (std::getline(ps, tok, ',')) {
      try {
        img.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
      } catch (const std::exception&) {
        throw std::invalid_argument("--group: bad entry '" + tok + "'");
      }
    }
    FinMap p(degree, img);
    if (img.size() != degree || !p.valid() || !p.is_injective())
      throw std::invalid_argument("--group: '" + one + "' is not a permutation of 1.." + std::to_string(degree));
    gens.push_back(std::move(p));
  }
  if (gens.empty()) throw std::invalid_argument("--group: no generators in '" + spec + "'");
  return gens;
}

std::vector<std::string> validate_config(const RunConfig& c) {
  std::vector<std::string> e;
  const bool verify = c.command.rfind("verify-", 0) == 0;
  if (!verify && c.command != "enumerate" && c.command != "check") e.push_back("unknown command " + c.command);
  if (verify) {
    if (c.m == 0 || c.n == 0) e.push_back("--m and --n must be positive");
    if (c.ell_min > c.ell_max) e.push_back("--ell-min must not exceed --ell-max");
    if (c.cap == 0) e.push_back("--cap must be positive");
    try {
      (void)variant_from_string(c.variant);
      (void)mutation_from_string(c.mutation);
    } catch (const std::invalid_argument& ex) {
      e.push_back(ex.what());
    }
    const bool large = c.m > 2 || c.n > 2 || c.max_degree > 2 || c.ell_max > 3 || c.cap > 4;
    if (large && !c.allow_large)
      e.push_back("bounds beyond m,n <= 2, max-degree <= 2, ell-max <= 3, cap <= 4 need --allow-large");
    if (c.mutation != "none" && c.command != "verify-main") e.push_back("--mutation applies to verify-main only");
  }
  if (c.command == "verify-truncation" && c.k_max > c.m * c.n)
    e.push_back("--k-max must not exceed m*n = " + std::to_string(c.m * c.n));
  if (c.command == "enumerate") {
    static const std::vector<std::string> whats{"counts", "selfic", "boxfin", "config", "nerve"};
    if (std::find(whats.begin(), whats.end(), c.what) == whats.end())
      e.push_back("--what must be one of counts, selfic, boxfin, config, nerve");
    if ((c.k > 6 || c.m > 4 || c.n > 4 || c.cap > 4) && !c.allow_large)
      e.push_back("enumerate bounds beyond k <= 6, m,n <= 4, cap <= 4 need --allow-large");
  }
  if (c.command == "check" && c.input.empty()) e.push_back("check needs --input");
  return e;
}

Report run(const RunConfig& c) {
  auto errs = validate_config(c);
  if (!errs.empty()) throw std::invalid_argument(join(errs, "; "));
  Report inner;
  if (c.command == "verify-main") {
    MainOptions o;
    o.m = c.m;
    o.n = c.n;
    o.r_max = c.max_degree;
    o.variant = variant_from_string(c.variant);
    o.ell_offsets = offsets(c);
    o.cap = c.cap;
    o.probe = probe_options(c);
    o.mutation = mutation_from_string(c.mutation);
    o.seed = c.seed;
    o.timings = c.timings;
    inner = verify_main(o);
  } else if (c.command == "verify-orbit") {
    OrbitOptions o;
    o.m = c.m;
    o.n = c.n;
    o.g_generators = parse_group(c.group, c.m);
    o.h_generators = parse_group(c.group_n, c.n);
    o.r_max = c.max_degree;
    o.ell_offsets = offsets(c);
    o.cap = c.cap;
    o.probe = probe_options(c);
    o.timings = c.timings;
    inner = verify_orbit(o);
  } else if (c.command == "verify-truncation") {
    TruncationOptions o;
    o.m = c.m;
    o.n = c.n;
    o.k_max = c.k_max;
    o.cap = c.cap;
    o.r_max = c.max_degree;
    o.ell_offsets = offsets(c);
    o.probe = probe_options(c);
    o.timings = c.timings;
    inner = verify_truncation(o);
  } else if (c.command == "enumerate") {
    inner = enumerate(c);
  } else {
    inner = check(c);
  }
  Report rep;
  rep.status = inner.status;
  rep.json = {{"tool", "configprod"},
              {"version", kToolVersion},
              {"config", c},
              {"status", to_string(inner.status)},
              {"report", std::move(inner.json)}};
  return rep;
}

int exit_code(Status s) {
  switch (s) {
    case Status::kPass: return 0;
    case Status::kFail: return 1;
    case Status::kInconclusive: return 2;
  }
  return 1;
}

namespace {

bool is_verdict(const nlohmann::json& v) {
  return v.is_string() && (v == "PASS" || v == "FAIL" || v == "INCONCLUSIVE");
}

// Structural checks report "PASS" or the list of their errors.
bool is_error_list_key(const std::string& key) {
  static const std::vector<std::string> keys{"category",        "pre_tensor_is_nerve", "comparison_functor",
                                             "strict_identity", "tau_star_fibers",     "box_category",
                                             "product_orbit_category"};
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

void summarize(const nlohmann::json& j, const std::string& path, int depth, std::ostringstream& os) {
  if (depth > 5) return;
  if (j.is_object()) {
    for (auto& [key, v] : j.items()) {
      if (key == "diagnostics" || key == "config" || (depth == 0 && key == "status")) continue;
      const std::string p = path.empty() ? key : path + "." + key;
      if (is_verdict(v)) {
        os << "  " << p << ": " << v.get<std::string>();
        if (key == "conservative" && j.value("conservative_required", true) == false) os << " (not required)";
        os << "\n";
      } else if (v.is_array() && !v.empty() && v.front().is_string() && is_error_list_key(key)) {
        os << "  " << p << ": FAIL (" << v.front().get<std::string>() << ")\n";
      } else if (v.is_object() || v.is_array()) {
        summarize(v, p, depth + 1, os);
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto& v = j[i];
      std::string label = "[" + std::to_string(i) + "]";
      if (v.is_object()) {
        if (v.contains("r") && v["r"].is_number()) label = "[r=" + v["r"].dump() + "]";
        else if (v.contains("k") && v["k"].is_number()) label = "[k=" + v["k"].dump() + "]";
        if (v.contains("L") && v["L"].is_number()) label.insert(label.size() - 1, " L=" + v["L"].dump());
      }
      summarize(v, path + label, depth + 1, os);
    }
  }
}

}  // namespace

std::string human_summary(const nlohmann::json& env) {
  std::ostringstream os;
  const auto& cfg = env.at("config");
  const std::string command = cfg.value("command", "");
  os << env.value("tool", "configprod") << " " << env.value("version", "") << " " << command;
  if (command.rfind("verify-", 0) == 0) os << " m=" << cfg.value("m", 0u) << " n=" << cfg.value("n", 0u);
  os << "\n";
  const auto& rep = env.at("report");
  if (command == "enumerate") {
    os << rep.dump(1) << "\n";
  } else {
    summarize(rep, "", 0, os);
    if (rep.contains("timings")) os << "  timings: " << rep["timings"].dump() << "\n";
  }
  os << "status: " << env.value("status", "FAIL") << "\n";
  return os.str();
}

}  // namespace configprod
