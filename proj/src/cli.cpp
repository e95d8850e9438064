#include "dtrecon/cli.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dtrecon/boolfn.hpp"
#include "dtrecon/bruteforce.hpp"
#include "dtrecon/estimators.hpp"
#include "dtrecon/learner.hpp"
#include "dtrecon/reconstructor.hpp"
#include "dtrecon/tester.hpp"

namespace dtrecon {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string csv_row(uint32_t trial, const ExperimentConfig& cfg,
                    uint64_t queries_total, uint64_t queries_max, double distance,
                    const std::string& verdict, uint64_t seed) {
  std::ostringstream row;
  row << trial << ',' << cfg.n << ',' << cfg.s << ',' << fmt_double(cfg.eps)
      << ',' << fmt_double(cfg.delta) << ',' << fmt_double(cfg.rho) << ','
      << queries_total << ',' << queries_max << ',' << fmt_double(distance)
      << ',' << verdict << ',' << seed;
  return row.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << content;
}

uint64_t parse_fn_arity(const std::string& fn, const std::string& prefix) {
  std::string tail = fn.substr(prefix.size());
  if (tail.empty()) throw std::invalid_argument("fn: missing arity in " + fn);
  uint64_t k = 0;
  for (char c : tail) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("fn: bad arity in " + fn);
    k = k * 10 + static_cast<uint64_t>(c - '0');
  }
  return k;
}

/// The built-in function zoo, optionally corruption-wrapped.
OraclePtr build_function(const ExperimentConfig& cfg, uint64_t trial_seed) {
  OraclePtr base;
  Rng rng(mix_seeds(trial_seed, 0x666eull));
  if (cfg.fn == "constant") {
    base = make_constant(cfg.n, +1);
  } else if (cfg.fn == "dictator") {
    base = make_dictator(cfg.n, 0);
  } else if (cfg.fn.rfind("parity-", 0) == 0) {
    uint64_t k = parse_fn_arity(cfg.fn, "parity-");
    if (k < 1 || k > cfg.n)
      throw std::invalid_argument("fn: parity arity out of range");
    std::vector<uint32_t> vars(k);
    for (uint32_t i = 0; i < k; ++i) vars[i] = i;
    base = make_parity(cfg.n, std::move(vars));
  } else if (cfg.fn.rfind("majority-", 0) == 0) {
    uint64_t k = parse_fn_arity(cfg.fn, "majority-");
    if (k < 1 || k > cfg.n || k % 2 == 0)
      throw std::invalid_argument("fn: majority arity must be odd and <= n");
    std::vector<uint32_t> vars(k);
    for (uint32_t i = 0; i < k; ++i) vars[i] = i;
    base = make_majority(cfg.n, std::move(vars));
  } else if (cfg.fn == "random-tree") {
    base = make_tree_oracle(cfg.n, random_tree_instance(cfg.n, cfg.s, rng));
  } else if (cfg.fn == "random-table") {
    base = make_table_oracle(TruthTable::random(cfg.n, rng));
  } else {
    throw std::invalid_argument("fn: unknown function " + cfg.fn);
  }
  if (cfg.rho > 0.0)
    base = corrupt(base, cfg.rho, mix_seeds(trial_seed, 0xC0 + 1));
  return base;
}

double distance_to(const FunctionOracle& f, const DecisionTree& tree,
                   uint64_t seed) {
  OraclePtr t = make_tree_oracle(f.dimension(), tree);
  if (f.dimension() <= 24) return exact_distance(f, *t);
  Rng rng(mix_seeds(seed, 0xd157ull));
  return sampled_distance(f, *t, 1u << 14, rng);
}

int run_gen(const ExperimentConfig& cfg, std::ostream& out_stream) {
  Rng rng(mix_seeds(cfg.seed, 0x666eull));
  DecisionTree tree = random_tree_instance(cfg.n, cfg.s, rng);
  std::string text = tree.serialize() + "\n";
  if (cfg.out.empty())
    out_stream << text;
  else
    write_text_file(cfg.out, text);
  return 0;
}

int run_scores(const ExperimentConfig& cfg, std::ostream& out_stream) {
  std::string csv = std::string(kCsvHeader) + "\n";
  std::string scores_artifact;
  for (uint32_t t = 0; t < cfg.trials; ++t) {
    uint64_t trial_seed = mix_seeds(cfg.seed, 1000 + t);
    auto counted = std::make_shared<CountingOracle>(build_function(cfg, trial_seed));
    Rng rng(mix_seeds(trial_seed, 0x73636f72ull));
    std::vector<double> est =
        estimate_scores(*counted, cfg.p, cfg.tau, cfg.delta, rng, cfg.consts.c_q);
    uint32_t argmax = 0;
    for (uint32_t i = 1; i < est.size(); ++i)
      if (est[i] > est[argmax]) argmax = i;
    for (uint32_t i = 0; i < est.size(); ++i)
      scores_artifact +=
          std::to_string(t) + "," + std::to_string(i + 1) + "," + fmt_double(est[i]) + "\n";
    csv += csv_row(t, cfg, counted->count(), counted->count(), est[argmax], "",
                   trial_seed) +
           "\n";
  }
  if (cfg.out.empty()) {
    out_stream << csv;
  } else {
    write_text_file(cfg.out, csv);
    write_text_file(cfg.out + ".scores", scores_artifact);
  }
  return 0;
}

int run_reconstruct(const ExperimentConfig& cfg, std::ostream& out_stream) {
  std::string csv = std::string(kCsvHeader) + "\n";
  for (uint32_t t = 0; t < cfg.trials; ++t) {
    uint64_t trial_seed = mix_seeds(cfg.seed, 1000 + t);
    OraclePtr f = build_function(cfg, trial_seed);
    Params params = Params::derive(cfg.n, cfg.s, cfg.eps, cfg.delta, cfg.consts);
    Reconstructor recon(f, params, mix_seeds(trial_seed, 0x7265ull),
                        ReconMode::local);

    uint64_t mismatches = 0;
    uint64_t total_points;
    Point x(cfg.n);
    if (cfg.n <= 16) {
      total_points = 1ull << cfg.n;
      for (uint64_t idx = 0; idx < total_points; ++idx) {
        x.assign_index(idx);
        if (recon.answer(x) != f->query(x)) ++mismatches;
      }
    } else {
      total_points = 1024;
      Rng prng(mix_seeds(trial_seed, 0x7074ull));
      for (uint64_t i = 0; i < total_points; ++i) {
        x.fill_random(prng);
        if (recon.answer(x) != f->query(x)) ++mismatches;
      }
    }
    double distance =
        static_cast<double>(mismatches) / static_cast<double>(total_points);
    QueryStats stats = recon.query_stats();
    csv += csv_row(t, cfg, stats.total, stats.max_per_answer, distance, "",
                   trial_seed) +
           "\n";
    if (!cfg.out.empty())
      write_text_file(cfg.out + ".t" + std::to_string(t) + ".tree",
                      recon.materialize().serialize() + "\n");
  }
  if (cfg.out.empty())
    out_stream << csv;
  else
    write_text_file(cfg.out, csv);
  return 0;
}

int run_test(const ExperimentConfig& cfg, std::ostream& out_stream) {
  std::string csv = std::string(kCsvHeader) + "\n";
  bool all_accept = true;
  for (uint32_t t = 0; t < cfg.trials; ++t) {
    uint64_t trial_seed = mix_seeds(cfg.seed, 1000 + t);
    OraclePtr f = build_function(cfg, trial_seed);
    TestOutcome outcome = tolerant_test(f, cfg.s, cfg.eps, cfg.delta,
                                        mix_seeds(trial_seed, 0x74ull),
                                        cfg.consts);
    all_accept = all_accept && outcome.accept;
    csv += csv_row(t, cfg, outcome.total_queries, outcome.reconstructor_queries,
                   outcome.mismatch, outcome.accept ? "accept" : "reject",
                   trial_seed) +
           "\n";
  }
  if (cfg.out.empty())
    out_stream << csv;
  else
    write_text_file(cfg.out, csv);
  return all_accept ? 0 : 1;
}

int run_learn(const ExperimentConfig& cfg, std::ostream& out_stream) {
  std::string csv = std::string(kCsvHeader) + "\n";
  for (uint32_t t = 0; t < cfg.trials; ++t) {
    uint64_t trial_seed = mix_seeds(cfg.seed, 1000 + t);
    OraclePtr f = build_function(cfg, trial_seed);
    auto counted = std::make_shared<CountingOracle>(f);

    DecisionTree tree = DecisionTree::leaf(+1);
    uint64_t tester_calls = 0;
    if (cfg.backend == "exact") {
      if (cfg.n > 12)
        throw unsupported_scale("learn: exact backend requires n <= 12");
      if (cfg.s > 16)
        throw unsupported_scale("learn: exact backend requires s <= 16");
      TruthTable table = TruthTable::tabulate(*counted);
      ExactDistanceEstimator est(table, static_cast<uint32_t>(cfg.s));
      tree = learn(est, cfg.s, cfg.eps);
    } else if (cfg.backend == "tester") {
      TesterDistanceEstimator est(counted, cfg.consts, cfg.delta, cfg.eps,
                                  mix_seeds(trial_seed, 0x6c65ull));
      tree = learn(est, cfg.s, cfg.eps);
      tester_calls = est.tester_calls();
    } else {
      throw std::invalid_argument("learn: backend must be exact or tester");
    }

    double distance = distance_to(*f, tree, trial_seed);
    csv += csv_row(t, cfg, counted->count(), tester_calls, distance, "",
                   trial_seed) +
           "\n";
    if (!cfg.out.empty())
      write_text_file(cfg.out + ".t" + std::to_string(t) + ".tree",
                      tree.serialize() + "\n");
  }
  if (cfg.out.empty())
    out_stream << csv;
  else
    write_text_file(cfg.out, csv);
  return 0;
}

}  // namespace

void apply_constant_override(Constants& consts, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("--const expects name=value: " + assignment);
  std::string name = assignment.substr(0, eq);
  double value = std::stod(assignment.substr(eq + 1));
  if (name == "c_d")
    consts.c_d = value;
  else if (name == "c_p")
    consts.c_p = value;
  else if (name == "c_tau")
    consts.c_tau = value;
  else if (name == "c_q")
    consts.c_q = value;
  else if (name == "c_leaf")
    consts.c_leaf = value;
  else if (name == "c_m")
    consts.c_m = value;
  else if (name == "kappa")
    consts.kappa = value;
  else if (name == "c")
    consts.soundness = value;
  else
    throw std::invalid_argument("--const: unknown constant " + name);
}

int run(const ExperimentConfig& config, std::ostream& out_stream,
        std::ostream& err_stream) {
  try {
    if (config.subcommand == "gen") return run_gen(config, out_stream);
    if (config.subcommand == "scores") return run_scores(config, out_stream);
    if (config.subcommand == "reconstruct")
      return run_reconstruct(config, out_stream);
    if (config.subcommand == "test") return run_test(config, out_stream);
    if (config.subcommand == "learn") return run_learn(config, out_stream);
    err_stream << "unknown subcommand: " << config.subcommand << "\n";
    return 2;
  } catch (const std::exception& e) {
    err_stream << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dtrecon
