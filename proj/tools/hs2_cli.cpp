// hs2 command-line driver: generate | analyze | bound | run.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hs2/harness.hpp"

namespace {

struct InstanceFlags {
  std::string graph, labels, features;
  std::size_t r = 2;
  std::size_t n = 0, k = 2, edge_size = 3;
  double q_in = 0.8, q_out = 0.2;

  void attach(CLI::App* app) {
    app->add_option("--graph", graph, "hypergraph file");
    app->add_option("--labels", labels, "label file (node_id class_id per line)");
    app->add_option("--features", features, "comma-separated feature file for a nearest-neighbour instance");
    app->add_option("--r", r, "neighbours per hyperedge for feature instances")->capture_default_str();
    app->add_option("--n", n, "HSBM node count");
    app->add_option("--k", k, "HSBM class count")->capture_default_str();
    app->add_option("--edge-size", edge_size, "HSBM hyperedge size")->capture_default_str();
    app->add_option("--q-in", q_in, "HSBM within-class probability")->capture_default_str();
    app->add_option("--q-out", q_out, "HSBM cross-class probability")->capture_default_str();
  }

  hs2::InstanceSource source() const {
    hs2::InstanceSource s;
    if (!graph.empty()) {
      s.kind = hs2::InstanceSource::Kind::kFile;
      s.graph_path = graph;
      s.labels_path = labels;
      if (labels.empty()) throw hs2::Error("--graph needs --labels");
    } else if (!features.empty()) {
      s.kind = hs2::InstanceSource::Kind::kKnn;
      s.features_path = features;
      s.labels_path = labels;
      s.knn_r = r;
      if (labels.empty()) throw hs2::Error("--features needs --labels");
    } else {
      if (n == 0) throw hs2::Error("give --graph/--labels, --features/--labels, or HSBM parameters with --n");
      s.kind = hs2::InstanceSource::Kind::kHsbm;
      s.hsbm.n = n;
      s.hsbm.k = k;
      s.hsbm.edge_size = edge_size;
      s.hsbm.q_in = q_in;
      s.hsbm.q_out = q_out;
    }
    return s;
  }
};

int cmd_generate(const InstanceFlags& flags, std::uint64_t seed, const std::string& out_prefix) {
  const hs2::InstanceSource src = flags.source();
  if (src.kind == hs2::InstanceSource::Kind::kFile) throw hs2::Error("generate takes HSBM parameters or --features");
  const auto inst = hs2::load_instance(src, seed);
  const std::string graph_path = out_prefix + ".hgr";
  const std::string labels_path = out_prefix + ".labels";
  hs2::write_hypergraph_file(graph_path, inst.data.graph);
  hs2::save_labels(labels_path, inst.data.labels);

  std::ostringstream manifest;
  if (src.kind == hs2::InstanceSource::Kind::kHsbm) {
    manifest << "kind=hsbm n=" << src.hsbm.n << " k=" << src.hsbm.k << " edge_size=" << src.hsbm.edge_size
             << " q_in=" << src.hsbm.q_in << " q_out=" << src.hsbm.q_out << " seed=" << seed;
  } else {
    manifest << "kind=knn features=" << src.features_path << " r=" << src.knn_r;
  }
  manifest << " edges=" << inst.data.graph.num_edges() << " graph=" << graph_path << " labels=" << labels_path;
  std::ofstream(out_prefix + ".manifest") << manifest.str() << '\n';
  std::cout << manifest.str() << '\n';
  return 0;
}

int cmd_analyze(const InstanceFlags& flags, std::uint64_t seed) {
  const auto inst = hs2::load_instance(flags.source(), seed);
  std::cout << hs2::format_analysis(hs2::compare_with_ce(inst.data.graph, inst.data.labels));
  return 0;
}

struct BoundFlags {
  double delta = 0.1;
  double p = 0.0;
  std::string mode = "point";
  std::optional<double> beta;
  std::size_t m = 0, c_min = 0;
  std::uint64_t kappa = 1;
};

int cmd_bound(const InstanceFlags& flags, const BoundFlags& b, std::uint64_t seed) {
  if (b.mode != "point" && b.mode != "pair" && b.mode != "noisy") throw hs2::Error("--mode must be point|pair|noisy");
  const bool noisy = b.mode == "noisy";
  if (noisy && !(b.p > 0.0 && b.p < 0.5)) throw hs2::Error("noisy mode needs --p in (0, 1/2)");
  hs2::BoundInputs in;
  if (b.beta) {
    if (flags.n == 0) throw hs2::Error("explicit parameters need --n");
    hs2::StructuralParams s;
    s.n = flags.n;
    s.k = flags.k;
    s.beta = *b.beta;
    s.m = b.m;
    s.kappa = static_cast<hs2::Distance>(b.kappa);
    s.c_min = b.c_min;
    in = hs2::bound_inputs(s, b.delta, b.p);
  } else {
    const auto inst = hs2::load_instance(flags.source(), seed);
    in = hs2::bound_inputs(hs2::structural_params(inst.data.graph, inst.data.labels), b.delta, b.p);
  }
  std::cout << "mode=" << b.mode << '\n' << hs2::format_bound_report(hs2::bound_report(in, noisy));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypergraph cut recovery by shortest-shortest-path bisection"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;

  InstanceFlags gen_flags;
  std::string out_prefix;
  auto* gen = app.add_subcommand("generate", "write an HSBM or nearest-neighbour instance");
  gen_flags.attach(gen);
  gen->add_option("--seed", seed, "generator seed")->capture_default_str();
  gen->add_option("--out", out_prefix, "output prefix; writes PREFIX.hgr, PREFIX.labels, PREFIX.manifest")->required();

  InstanceFlags an_flags;
  auto* an = app.add_subcommand("analyze", "structural parameters of G and its clique expansion");
  an_flags.attach(an);
  an->add_option("--seed", seed, "HSBM seed")->capture_default_str();

  InstanceFlags bd_flags;
  BoundFlags bflags;
  auto* bd = app.add_subcommand("bound", "query-complexity budgets");
  bd_flags.attach(bd);
  bd->add_option("--seed", seed, "HSBM seed")->capture_default_str();
  bd->add_option("--delta", bflags.delta, "failure probability")->capture_default_str();
  bd->add_option("--p", bflags.p, "pairwise flip probability")->capture_default_str();
  bd->add_option("--mode", bflags.mode, "point|pair|noisy")->capture_default_str();
  bd->add_option("--beta", bflags.beta, "explicit balancedness (skips instance analysis)");
  bd->add_option("--m", bflags.m, "explicit number of cut components");
  bd->add_option("--kappa", bflags.kappa, "explicit clusteredness");
  bd->add_option("--c-min", bflags.c_min, "explicit min(|C|, |boundary|)");

  InstanceFlags run_flags;
  hs2::ExperimentConfig cfg;
  std::string algorithm = "hs2-point", budget = "auto:q_star", noise = "persistent", analysis = "full";
  std::string results_path, summary_path;
  std::optional<std::size_t> seed_sample;
  bool fix = false, regenerate = false;
  auto* run = app.add_subcommand("run", "seeded trial sweep");
  run_flags.attach(run);
  run->add_option("--algorithm", algorithm,
                  "hs2-point|hs2-pair|hs2-pair-noisy|ce-s2-point|ce-s2-pair|ce-s2-pair-noisy")
      ->capture_default_str();
  run->add_option("--budget", budget, "integer or auto:q_star|auto:q_star_pair|auto:noisy")->capture_default_str();
  run->add_option("--delta", cfg.delta, "failure probability for auto budgets")->capture_default_str();
  run->add_option("--p", cfg.p, "pairwise flip probability")->capture_default_str();
  run->add_option("--noise", noise, "fresh|persistent")->capture_default_str();
  run->add_option("--M", seed_sample, "seed sample size for noisy runs (default: smallest admissible)");
  run->add_flag("--skip-random-sampling", cfg.skip_random_sampling, "noisy phase 2 follows bisection targets only");
  run->add_option("--trials", cfg.trials, "number of trials")->capture_default_str();
  run->add_option("--seed", cfg.master_seed, "master seed; trial t uses seed ^ t")->capture_default_str();
  run->add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
  run->add_flag("--fix-instance", fix, "reuse one instance for every trial");
  run->add_flag("--regenerate", regenerate, "new HSBM instance per trial");
  run->add_option("--analyze", analysis, "full|basic (basic skips kappa)")->capture_default_str();
  run->add_flag("--timing", cfg.timing, "fill the runtime_ms column");
  run->add_option("--trace", cfg.trace_dir, "directory for per-trial oracle traces");
  run->add_option("--out", results_path, "results table (default: stdout)");
  run->add_option("--summary", summary_path, "also write the summary to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(gen_flags, seed, out_prefix);
    if (an->parsed()) return cmd_analyze(an_flags, seed);
    if (bd->parsed()) return cmd_bound(bd_flags, bflags, seed);

    cfg.algorithm = hs2::parse_algorithm(algorithm);
    cfg.source = run_flags.source();
    cfg.budget = hs2::parse_budget(budget);
    cfg.noise = hs2::parse_noise_mode(noise);
    cfg.seed_sample = seed_sample;
    if (fix && regenerate) throw hs2::Error("--fix-instance and --regenerate conflict");
    if (fix) cfg.fix_instance = true;
    if (regenerate) cfg.fix_instance = false;
    if (analysis != "full" && analysis != "basic") throw hs2::Error("--analyze must be full or basic");
    cfg.full_analysis = analysis == "full";

    const auto rows = hs2::run_experiment(cfg);
    const std::string summary = hs2::format_summary(hs2::summarize(rows));
    if (results_path.empty()) {
      hs2::write_results(std::cout, rows);
      std::cerr << summary;
    } else {
      std::ofstream out(results_path);
      if (!out) throw hs2::Error("cannot write " + results_path);
      hs2::write_results(out, rows);
      std::cout << summary;
    }
    if (!summary_path.empty()) std::ofstream(summary_path) << summary;
    return 0;
  } catch (const hs2::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
