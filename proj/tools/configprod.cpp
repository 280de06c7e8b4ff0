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

// Command-line driver: verify-main, verify-orbit, verify-truncation,
// enumerate and check. Exit codes: 0 PASS, 1 FAIL, 2 INCONCLUSIVE, 3 usage.

#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "configprod/report.hpp"

namespace {

using configprod::RunConfig;

struct Command {
  CLI::App* app = nullptr;
  RunConfig cfg;
  std::string format = "human";
};

void add_verify_flags(CLI::App* app, RunConfig& c) {
  app->add_option("--m", c.m, "|M|")->capture_default_str();
  app->add_option("--n", c.n, "|N|")->capture_default_str();
  app->add_option("--max-degree", c.max_degree, "largest simplicial degree r")->capture_default_str();
  app->add_option("--ell-min", c.ell_min, "smallest L - r")->capture_default_str();
  app->add_option("--ell-max", c.ell_max, "largest L - r")->capture_default_str();
  app->add_option("--cap", c.cap, "external degrees stored for nerves")->capture_default_str();
  app->add_option("--probe-cap", c.probe_cap, "homology degrees probed")->capture_default_str();
  app->add_option("--budget", c.budget, "simplices allowed for explicit homology")->capture_default_str();
  app->add_flag("!--no-certificates", c.certificates, "always compute homology explicitly");
  app->add_flag("!--serial", c.parallel, "use the serial kernels");
  app->add_flag("--timings", c.timings, "record wall-clock timings (reports stop being reproducible)");
  app->add_flag("--allow-large", c.allow_large, "permit bounds beyond the default envelope");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite verification of the product of configuration categories"};
  app.set_version_flag("--version", configprod::kToolVersion);
  app.require_subcommand(1);

  std::map<std::string, Command> cmds;
  for (const char* name : {"verify-main", "verify-orbit", "verify-truncation", "enumerate", "check"})
    cmds[name].cfg = configprod::default_config(name);

  auto& vm = cmds["verify-main"];
  vm.app = app.add_subcommand("verify-main", "box pre-tensor of config(M), config(N) against config(M x N)");
  add_verify_flags(vm.app, vm.cfg);
  vm.app->add_option("--variant", vm.cfg.variant, "conservatization variant: flat, full, shriek")->capture_default_str();
  vm.app->add_option("--mutation", vm.cfg.mutation,
                     "corruption: none, delete-morphism, corrupt-composition, surjective-legs")
      ->capture_default_str();
  vm.app->add_option("--seed", vm.cfg.seed, "seed choosing the corrupted entry")->capture_default_str();

  auto& vo = cmds["verify-orbit"];
  vo.app = app.add_subcommand("verify-orbit", "orbit form for permutation groups acting on M and N");
  add_verify_flags(vo.app, vo.cfg);
  vo.app->add_option("--group", vo.cfg.group, "group on M: sym, trivial, or generators like 2,1,3;1,3,2")
      ->capture_default_str();
  vo.app->add_option("--group-n", vo.cfg.group_n, "group on N, same syntax")->capture_default_str();

  auto& vt = cmds["verify-truncation"];
  vt.app = app.add_subcommand("verify-truncation", "pre-tensor against truncation to sizes <= k");
  add_verify_flags(vt.app, vt.cfg);
  vt.app->add_option("--k-max", vt.cfg.k_max, "largest truncation size")->capture_default_str();

  auto& en = cmds["enumerate"];
  en.app = app.add_subcommand("enumerate", "tables of selfic maps, box objects, configurations, nerves");
  en.app->add_option("--what", en.cfg.what, "counts, selfic, boxfin, config, nerve")->capture_default_str();
  en.app->add_option("--k", en.cfg.k, "source size (selfic, boxfin, counts)")->capture_default_str();
  en.app->add_option("--l", en.cfg.l, "image size (selfic)")->capture_default_str();
  en.app->add_option("--m", en.cfg.m, "|M|, or the r bound for boxfin")->capture_default_str();
  en.app->add_option("--n", en.cfg.n, "the s bound for boxfin")->capture_default_str();
  en.app->add_option("--cap", en.cfg.cap, "external degrees of the nerve")->capture_default_str();
  en.app->add_flag("--allow-large", en.cfg.allow_large, "permit bounds beyond the default envelope");

  auto& ck = cmds["check"];
  ck.app = app.add_subcommand("check", "Segal, fiberwise-completeness and conservativity of a stored space");
  ck.app->add_option("--input", ck.cfg.input, "JSON simplicial space, or an enumerate --what nerve report")
      ->required();

  for (auto& [name, c] : cmds) {
    c.app->add_option("--format", c.format, "human or machine")
        ->check(CLI::IsMember({"human", "machine"}))
        ->capture_default_str();
    c.app->add_option("--out", c.cfg.out, "write the report here instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : configprod::kUsageExit;
  }

  for (auto& [name, c] : cmds) {
    if (!c.app->parsed()) continue;
    configprod::Report rep;
    try {
      rep = configprod::run(c.cfg);
    } catch (const std::invalid_argument& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return configprod::kUsageExit;
    } catch (const std::length_error& e) {
      std::cerr << "resource bound exceeded: " << e.what() << "\n";
      return configprod::exit_code(configprod::Status::kInconclusive);
    } catch (const std::bad_alloc&) {
      std::cerr << "out of memory\n";
      return configprod::exit_code(configprod::Status::kInconclusive);
    }
    const std::string text = c.format == "machine" ? rep.json.dump(2) + "\n" : configprod::human_summary(rep.json);
    if (c.cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(c.cfg.out);
      if (!out) {
        std::cerr << "cannot write " << c.cfg.out << "\n";
        return configprod::kUsageExit;
      }
      out << text;
    }
    return configprod::exit_code(rep.status);
  }
  return configprod::kUsageExit;
}
