#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dtrecon/cli.hpp"

namespace {

void add_common_flags(CLI::App* cmd, dtrecon::ExperimentConfig& cfg,
                      std::vector<std::string>& const_overrides,
                      bool& seed_given) {
  cmd->add_option("--n", cfg.n, "dimension");
  cmd->add_option("--s", cfg.s, "tree size budget");
  cmd->add_option("--eps", cfg.eps, "error parameter");
  cmd->add_option("--delta", cfg.delta, "failure probability");
  cmd->add_option("--rho", cfg.rho, "corruption rate");
  cmd->add_option_function<uint64_t>(
      "--seed",
      [&cfg, &seed_given](uint64_t v) {
        cfg.seed = v;
        seed_given = true;
      },
      "master seed (falls back to DTRECON_SEED, then 1)");
  cmd->add_option("--trials", cfg.trials, "independent trials");
  cmd->add_option("--fn", cfg.fn,
                  "target function: constant, dictator, parity-k, majority-k, "
                  "random-tree, random-table");
  cmd->add_option("--out", cfg.out, "artifact base path (default: stdout)");
  cmd->add_option("--kappa", cfg.consts.kappa, "tester reject multiplier");
  cmd->add_option("--c", cfg.consts.soundness, "tester soundness constant");
  cmd->add_option("--const", const_overrides,
                  "constant override name=value (c_d c_p c_tau c_q c_leaf c_m "
                  "kappa c)")
      ->take_all();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision-tree reconstruction, testing, and learning harness"};
  app.require_subcommand(1);

  dtrecon::ExperimentConfig cfg;
  std::vector<std::string> const_overrides;
  bool seed_given = false;

  CLI::App* gen = app.add_subcommand("gen", "generate a random tree instance");
  CLI::App* scores =
      app.add_subcommand("scores", "estimate all coordinate scores");
  scores->add_option("--p", cfg.p, "noise rate");
  scores->add_option("--tau", cfg.tau, "score accuracy target");
  CLI::App* reconstruct = app.add_subcommand(
      "reconstruct", "materialize the reconstructed tree and measure distance");
  CLI::App* test =
      app.add_subcommand("test", "tolerant test (exit 0 accept, 1 reject)");
  CLI::App* learn = app.add_subcommand("learn", "proper learner");
  learn->add_option("--backend", cfg.backend, "distance backend: exact|tester");

  for (CLI::App* cmd : {gen, scores, reconstruct, test, learn})
    add_common_flags(cmd, cfg, const_overrides, seed_given);

  CLI11_PARSE(app, argc, argv);

  if (!seed_given) {
    if (const char* env = std::getenv("DTRECON_SEED"))
      cfg.seed = std::strtoull(env, nullptr, 10);
    else
      cfg.seed = 1;
  }

  try {
    for (const std::string& entry : const_overrides)
      dtrecon::apply_constant_override(cfg.consts, entry);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  return dtrecon::run(cfg, std::cout, std::cerr);
}
