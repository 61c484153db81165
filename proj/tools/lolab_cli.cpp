// Copyright 2026 The lolab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// lolab: command-line driver over the C API.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lolab/lolab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerifyFailed = 3;
constexpr int kExitInternal = 4;

constexpr std::uint64_t kMaxBudget = 1000000000;

int exit_code(lolab_status s) {
  switch (s) {
    case LOLAB_OK: return kExitOk;
    case LOLAB_ERR_IO: return kExitIo;
    case LOLAB_ERR_INVALID_ARGUMENT:
    case LOLAB_ERR_UNKNOWN_ALGORITHM: return kExitUsage;
    default: return kExitInternal;
  }
}

int report(lolab_status s) {
  std::cerr << "lolab: " << lolab_last_error() << '\n';
  return exit_code(s);
}

// Owns a string returned by the library.
struct LibString {
  char* p = nullptr;
  ~LibString() { lolab_string_free(p); }
};

int emit(const std::string& out_path, const char* text) {
  if (out_path.empty()) {
    std::fputs(text, stdout);
    return std::fflush(stdout) == 0 ? kExitOk : kExitIo;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "lolab: cannot open '" << out_path << "' for writing\n";
    return kExitIo;
  }
  f << text;
  f.close();
  if (!f) {
    std::cerr << "lolab: write to '" << out_path << "' failed\n";
    return kExitIo;
  }
  return kExitOk;
}

std::string real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, end);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

struct ExperimentArgs {
  std::string algo;
  std::vector<std::size_t> n;
  std::size_t reps = 1;
  std::uint64_t seed = 0;
  std::uint64_t budget = kMaxBudget;
  std::string format = "csv";
  std::string instance;
  unsigned threads = 1;
};

void add_experiment_flags(CLI::App* cmd, ExperimentArgs& a, bool with_format) {
  cmd->add_option("--algo", a.algo, "algorithm (rls, oea, memlog)")->required();
  cmd->add_option("--n", a.n, "comma-separated problem sizes")
      ->required()
      ->delimiter(',');
  cmd->add_option("--reps", a.reps, "repetitions per n")->capture_default_str();
  cmd->add_option("--seed", a.seed, "master seed")->capture_default_str();
  cmd->add_option("--budget", a.budget, "query budget per run")
      ->capture_default_str()
      ->check(CLI::Range(std::uint64_t{1}, kMaxBudget));
  if (with_format)
    cmd->add_option("--format", a.format)
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  cmd->add_option("--instance", a.instance, "fixed instance file");
  cmd->add_option("--threads", a.threads, "worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

// Builds the experiment handle; returns an exit code on failure.
int make_experiment(const ExperimentArgs& a, lolab_experiment** exp) {
  lolab_status s = lolab_experiment_create(a.algo.c_str(), exp);
  if (s != LOLAB_OK) return report(s);
  if ((s = lolab_experiment_set_n_values(*exp, a.n.data(), a.n.size())) ||
      (s = lolab_experiment_set_repetitions(*exp, a.reps)) ||
      (s = lolab_experiment_set_seed(*exp, a.seed)) ||
      (s = lolab_experiment_set_budget(*exp, a.budget)) ||
      (s = lolab_experiment_set_threads(*exp, a.threads))) {
    return report(s);
  }
  if (!a.instance.empty()) {
    lolab_instance* inst = nullptr;
    if ((s = lolab_instance_load(a.instance.c_str(), &inst))) return report(s);
    s = lolab_experiment_set_instance(*exp, inst);
    lolab_instance_destroy(inst);
    if (s) return report(s);
  }
  return kExitOk;
}

lolab_format to_format(const std::string& f) {
  return f == "json" ? LOLAB_FORMAT_JSON : LOLAB_FORMAT_CSV;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elitist LeadingOnes lab"};
  app.require_subcommand(1);
  std::string out;
  app.add_option("--out", out, "write output to this file instead of stdout");

  ExperimentArgs run_args, scaling_args, profile_args;
  auto* run = app.add_subcommand("run", "run repetitions and emit records");
  add_experiment_flags(run, run_args, true);
  auto* scaling = app.add_subcommand("scaling", "fit the runtime exponent");
  add_experiment_flags(scaling, scaling_args, true);
  auto* profile = app.add_subcommand("level-profile", "per-level query means");
  add_experiment_flags(profile, profile_args, false);

  std::size_t phi_kmax = 4, phi_mmax = 4;
  double phi_eps = 1.0 / 2048;
  auto* phi = app.add_subcommand("phi", "cardinality DP table as CSV");
  phi->add_option("--kmax", phi_kmax)->capture_default_str();
  phi->add_option("--mmax", phi_mmax)->capture_default_str();
  phi->add_option("--eps", phi_eps)->capture_default_str();

  std::size_t ver_kmax = 200, ver_mmax = 200;
  double ver_eps = 1.0 / 2048;
  auto* verify = app.add_subcommand("verify", "sweep the induction remainder");
  verify->add_option("--kmax", ver_kmax)->capture_default_str();
  verify->add_option("--mmax", ver_mmax)->capture_default_str();
  verify->add_option("--eps", ver_eps)->capture_default_str();

  std::string spec;
  auto* game = app.add_subcommand("game", "solve a small level game exactly");
  game->add_option("--spec", spec, "game spec file")->required();

  // --out is accepted before or after the subcommand.
  for (auto* cmd : {run, scaling, profile, phi, verify, game})
    cmd->add_option("--out", out, "write output to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  LibString text;
  lolab_status s = LOLAB_OK;

  if (*run || *scaling || *profile) {
    const ExperimentArgs& a = *run ? run_args : *scaling ? scaling_args : profile_args;
    lolab_experiment* exp = nullptr;
    if (int rc = make_experiment(a, &exp)) {
      lolab_experiment_destroy(exp);
      return rc;
    }
    if (*run) s = lolab_run(exp, to_format(a.format), &text.p);
    else if (*scaling) s = lolab_scaling(exp, to_format(a.format), &text.p);
    else s = lolab_level_profile(exp, &text.p);
    lolab_experiment_destroy(exp);
    if (s) return report(s);
    return emit(out, text.p);
  }

  if (*phi) {
    if ((s = lolab_phi_csv(phi_kmax, phi_mmax, phi_eps, &text.p))) return report(s);
    return emit(out, text.p);
  }

  if (*verify) {
    int pass = 0;
    if ((s = lolab_verify(ver_eps, ver_kmax, ver_mmax, &text.p, &pass)))
      return report(s);
    if (int rc = emit(out, text.p)) return rc;
    if (!pass) {
      std::cerr << "lolab: induction sweep found R(p) > 1\n";
      return kExitVerifyFailed;
    }
    return kExitOk;
  }

  // game
  std::ifstream f(spec, std::ios::binary);
  if (!f) {
    std::cerr << "lolab: cannot read '" << spec << "'\n";
    return kExitIo;
  }
  std::ostringstream buf;
  buf << f.rdbuf();
  double value = 0;
  if ((s = lolab_game_solve(buf.str().c_str(), &value))) return report(s);
  return emit(out, (real(value) + "\n").c_str());
}
