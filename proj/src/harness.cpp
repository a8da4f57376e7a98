#include "hs2/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "hs2/rng.hpp"

namespace hs2 {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kPoint: return "hs2-point";
    case Algorithm::kPair: return "hs2-pair";
    case Algorithm::kPairNoisy: return "hs2-pair-noisy";
    case Algorithm::kCePoint: return "ce-s2-point";
    case Algorithm::kCePair: return "ce-s2-pair";
    case Algorithm::kCePairNoisy: return "ce-s2-pair-noisy";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& s) {
  for (Algorithm a : {Algorithm::kPoint, Algorithm::kPair, Algorithm::kPairNoisy, Algorithm::kCePoint,
                      Algorithm::kCePair, Algorithm::kCePairNoisy}) {
    if (to_string(a) == s) return a;
  }
  throw Error("unknown algorithm '" + s + "'");
}

bool is_clique_expanded(Algorithm a) {
  return a == Algorithm::kCePoint || a == Algorithm::kCePair || a == Algorithm::kCePairNoisy;
}
bool is_pairwise(Algorithm a) { return a != Algorithm::kPoint && a != Algorithm::kCePoint; }
bool is_noisy(Algorithm a) { return a == Algorithm::kPairNoisy || a == Algorithm::kCePairNoisy; }

BudgetSpec parse_budget(const std::string& s) {
  if (s == "auto:q_star") return {BudgetMode::kQStar, 0};
  if (s == "auto:q_star_pair") return {BudgetMode::kQStarPair, 0};
  if (s == "auto:noisy") return {BudgetMode::kNoisy, 0};
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-' || v == 0) {
    throw Error("budget must be a positive integer or auto:q_star|auto:q_star_pair|auto:noisy, got '" + s + "'");
  }
  return {BudgetMode::kExplicit, v};
}

void validate(const ExperimentConfig& c) {
  if (c.trials == 0) throw Error("trials must be at least 1");
  if (c.workers == 0) throw Error("workers must be at least 1");
  if (!(c.delta > 0.0 && c.delta < 1.0)) throw Error("delta must lie in (0, 1)");
  if (!(c.p >= 0.0 && c.p < 0.5)) throw Error("p must lie in [0, 1/2)");
  if (c.p > 0.0 && !is_noisy(c.algorithm)) {
    throw Error("p > 0 requires hs2-pair-noisy or ce-s2-pair-noisy");
  }
  if (c.budget.mode == BudgetMode::kNoisy && !is_noisy(c.algorithm)) {
    throw Error("auto:noisy budget applies to noisy algorithms only");
  }
  if (c.budget.mode == BudgetMode::kNoisy && c.p <= 0.0) throw Error("auto:noisy budget needs p > 0");
  if (is_noisy(c.algorithm) && !c.seed_sample && c.p <= 0.0) {
    throw Error("solving for M needs p > 0; pass --M explicitly for p = 0");
  }
  if (c.seed_sample && *c.seed_sample < 2) throw Error("M must be at least 2");
  if (c.source.kind == InstanceSource::Kind::kFile && (c.source.graph_path.empty() || c.source.labels_path.empty())) {
    throw Error("file instances need both a hypergraph and a label file");
  }
  if (c.source.kind == InstanceSource::Kind::kKnn && (c.source.features_path.empty() || c.source.labels_path.empty())) {
    throw Error("knn instances need a feature file and a label file");
  }
}

LoadedInstance load_instance(const InstanceSource& source, std::uint64_t seed) {
  switch (source.kind) {
    case InstanceSource::Kind::kHsbm: {
      HsbmParams params = source.hsbm;
      params.seed = seed;
      return {hsbm(params), seed};
    }
    case InstanceSource::Kind::kFile: {
      Hypergraph g = read_hypergraph_file(source.graph_path);
      LabelFunction f = load_labels(source.labels_path);
      if (f.num_nodes() != g.num_nodes()) throw Error("label file and hypergraph disagree on n");
      return {{std::move(g), std::move(f)}, seed};
    }
    case InstanceSource::Kind::kKnn: {
      Hypergraph g = knn_hypergraph(load_features(source.features_path), source.knn_r);
      LabelFunction f = load_labels(source.labels_path);
      if (f.num_nodes() != g.num_nodes()) throw Error("label file and feature file disagree on n");
      return {{std::move(g), std::move(f)}, seed};
    }
  }
  throw Error("unknown instance source");
}

namespace {

// Everything a trial needs about the graph the learner runs on.
struct Prepared {
  LoadedInstance instance;
  Hypergraph run_graph;  // G or its clique expansion
  StructuralParams params;
  bool kappa_computed = false;
  std::vector<EdgeId> true_cut;
};

StructuralParams basic_params(const Hypergraph& g, const LabelFunction& f, const CutProfile& profile) {
  StructuralParams s;
  s.n = g.num_nodes();
  s.k = f.num_classes();
  s.beta = balancedness(f);
  s.m = profile.m();
  s.c_size = profile.cut_edges.size();
  s.boundary_size = profile.boundary_nodes.size();
  s.c_min = std::min(s.c_size, s.boundary_size);
  std::vector<std::uint8_t> alive(g.num_edges(), 1);
  for (EdgeId e : profile.cut_edges) alive[e] = 0;
  for (auto c : component_ids(HypergraphView(g, alive))) {
    s.components_after_cut = std::max<std::size_t>(s.components_after_cut, c + 1);
  }
  return s;
}

std::shared_ptr<const Prepared> prepare(const ExperimentConfig& c, std::uint64_t seed) {
  auto p = std::make_shared<Prepared>();
  p->instance = load_instance(c.source, seed);
  const LabelFunction& f = p->instance.data.labels;
  p->run_graph = is_clique_expanded(c.algorithm) ? clique_expansion(p->instance.data.graph) : p->instance.data.graph;
  const bool need_kappa = c.full_analysis || c.budget.mode != BudgetMode::kExplicit ||
                          (is_noisy(c.algorithm) && !c.seed_sample);
  if (need_kappa) {
    CutAnalyzer analyzer(p->run_graph, f);
    p->params = analyzer.params();
    p->true_cut = analyzer.profile().cut_edges;
    p->kappa_computed = true;
  } else {
    const CutProfile profile = cut_profile(p->run_graph, f);
    p->params = basic_params(p->run_graph, f, profile);
    p->true_cut = profile.cut_edges;
  }
  return p;
}

std::uint64_t ceil_budget(double x) {
  if (!std::isfinite(x) || x >= 1.8e19) throw Error("budget is not a finite 64-bit value");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(x)));
}

struct Sizing {
  std::uint64_t budget = 0;
  std::size_t seed_sample = 0;
};

Sizing size_run(const ExperimentConfig& c, const Prepared& prep) {
  Sizing s;
  std::optional<BoundInputs> in;
  auto inputs = [&]() -> const BoundInputs& {
    if (!in) in = bound_inputs(prep.params, c.delta, c.p);
    return *in;
  };
  auto quarter = [&] {
    BoundInputs q = inputs();
    q.delta /= 4.0;
    return q_star(q);
  };
  if (is_noisy(c.algorithm)) {
    if (c.seed_sample) {
      s.seed_sample = *c.seed_sample;
    } else {
      const auto M = solve_min_M(prep.params.k, prep.params.beta, c.p, c.delta, quarter());
      if (M > prep.params.n) {
        throw Error("smallest admissible seed sample is M=" + std::to_string(M) + " but n=" +
                    std::to_string(prep.params.n) + "; pass an explicit M");
      }
      s.seed_sample = static_cast<std::size_t>(M);
    }
  }
  switch (c.budget.mode) {
    case BudgetMode::kExplicit: s.budget = c.budget.value; break;
    case BudgetMode::kQStar: s.budget = ceil_budget(q_star(inputs())); break;
    case BudgetMode::kQStarPair: s.budget = ceil_budget(q_star_pair(inputs())); break;
    case BudgetMode::kNoisy: s.budget = ceil_budget(noisy_budget(prep.params.k, c.p, s.seed_sample, quarter())); break;
  }
  return s;
}

ResultRow run_trial(const ExperimentConfig& c, const Prepared& prep, std::size_t trial, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  const Sizing sizing = size_run(c, prep);
  const LabelFunction& truth = prep.instance.data.labels;
  const bool tracing = !c.trace_dir.empty();

  RunOptions options;
  options.budget = sizing.budget;
  options.seed = seed;
  options.true_cut = prep.true_cut;

  RunResult result;
  const QueryLedger* ledger = nullptr;
  std::optional<PointwiseOracle> point;
  std::optional<PairwiseOracle> pair;
  if (!is_pairwise(c.algorithm)) {
    point.emplace(truth, tracing);
    result = hs2_point(prep.run_graph, *point, options);
    ledger = &point->ledger();
  } else {
    pair.emplace(truth, c.p, c.noise, mix64(seed), tracing);
    if (is_noisy(c.algorithm)) {
      NoisyOptions noisy;
      noisy.seed_sample = sizing.seed_sample;
      noisy.skip_random_sampling = c.skip_random_sampling;
      result = hs2_pair_noisy(prep.run_graph, *pair, options, noisy);
    } else {
      result = hs2_pair(prep.run_graph, *pair, options);
    }
    ledger = &pair->ledger();
  }

  if (tracing) {
    const std::string path = c.trace_dir + "/trial_" + std::to_string(trial) + ".trace";
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    ledger->write_trace(out);
  }

  ResultRow row;
  row.algorithm = to_string(c.algorithm);
  row.n = prep.params.n;
  row.k = prep.params.k;
  row.trial = trial;
  row.seed = seed;
  row.budget = sizing.budget;
  row.queries_used = result.queries_used;
  row.queries_until_recovery = result.queries_until_recovery;
  row.success = result.success;
  row.label_accuracy = partition_purity(result.partition, truth);
  row.seed_sample = sizing.seed_sample;
  row.params = prep.params;
  row.kappa_computed = prep.kappa_computed;
  if (c.timing) {
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return row;
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& c) {
  validate(c);
  if (!c.trace_dir.empty()) std::filesystem::create_directories(c.trace_dir);
  const bool fixed_instance = c.fix_instance.value_or(c.source.kind != InstanceSource::Kind::kHsbm);

  std::shared_ptr<const Prepared> shared;
  if (fixed_instance) shared = prepare(c, c.master_seed);

  std::vector<ResultRow> rows(c.trials);
  std::vector<std::exception_ptr> errors(c.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < c.trials; t = next++) {
      try {
        const std::uint64_t seed = trial_seed(c.master_seed, t);
        const auto prep = shared ? shared : prepare(c, seed);
        rows[t] = run_trial(c, *prep, t, seed);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(c.workers, c.trials);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string results_header() {
  return "algorithm,n,k,trial,seed,budget,queries_used,queries_until_recovery,success,label_accuracy,"
         "runtime_ms,M,beta,m,kappa,c_size,boundary_size";
}

std::string format_row(const ResultRow& r) {
  std::ostringstream out;
  out << r.algorithm << ',' << r.n << ',' << r.k << ',' << r.trial << ',' << r.seed << ',' << r.budget << ','
      << r.queries_used << ',';
  if (r.queries_until_recovery) out << *r.queries_until_recovery;
  out << ',' << (r.success ? 1 : 0) << ',' << fixed(r.label_accuracy, 6) << ',';
  if (r.runtime_ms) out << fixed(*r.runtime_ms, 3);
  out << ',' << r.seed_sample << ',' << fixed(r.params.beta, 6) << ',' << r.params.m << ',';
  if (r.kappa_computed) out << format_kappa(r.params.kappa);
  out << ',' << r.params.c_size << ',' << r.params.boundary_size;
  return out.str();
}

void write_results(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "# " << kResultsVersion << '\n' << results_header() << '\n';
  for (const auto& r : rows) out << format_row(r) << '\n';
}

Summary summarize(const std::vector<ResultRow>& rows) {
  Summary s;
  s.trials = rows.size();
  if (rows.empty()) return s;
  double sum = 0.0, sum_used = 0.0, sum_acc = 0.0;
  std::size_t wins = 0;
  for (const auto& r : rows) {
    if (r.queries_until_recovery) {
      ++s.recovered;
      sum += static_cast<double>(*r.queries_until_recovery);
    }
    wins += r.success ? 1 : 0;
    sum_used += static_cast<double>(r.queries_used);
    sum_acc += r.label_accuracy;
  }
  if (s.recovered > 0) s.mean_recovery = sum / static_cast<double>(s.recovered);
  if (s.recovered > 1) {
    double ss = 0.0;
    for (const auto& r : rows) {
      if (!r.queries_until_recovery) continue;
      const double d = static_cast<double>(*r.queries_until_recovery) - s.mean_recovery;
      ss += d * d;
    }
    s.std_recovery = std::sqrt(ss / static_cast<double>(s.recovered - 1));
  }
  const double n = static_cast<double>(rows.size());
  s.success_rate = static_cast<double>(wins) / n;
  s.mean_queries_used = sum_used / n;
  s.mean_label_accuracy = sum_acc / n;
  return s;
}

std::string format_summary(const Summary& s) {
  std::ostringstream out;
  out << "trials=" << s.trials << "\nrecovered=" << s.recovered << "\nmean_queries_until_recovery="
      << fixed(s.mean_recovery, 4) << "\nstd_queries_until_recovery=" << fixed(s.std_recovery, 4)
      << "\nsuccess_rate=" << fixed(s.success_rate, 4) << "\nmean_queries_used=" << fixed(s.mean_queries_used, 4)
      << "\nmean_label_accuracy=" << fixed(s.mean_label_accuracy, 4) << '\n';
  return out.str();
}

std::string format_analysis(const CeComparison& c) {
  std::ostringstream out;
  auto emit = [&](const std::string& prefix, const StructuralParams& s) {
    out << prefix << "n=" << s.n << '\n'
        << prefix << "k=" << s.k << '\n'
        << prefix << "beta=" << fixed(s.beta, 6) << '\n'
        << prefix << "m=" << s.m << '\n'
        << prefix << "kappa=" << format_kappa(s.kappa) << '\n'
        << prefix << "c_size=" << s.c_size << '\n'
        << prefix << "boundary_size=" << s.boundary_size << '\n'
        << prefix << "c_min=" << s.c_min << '\n'
        << prefix << "components_after_cut=" << s.components_after_cut << '\n';
  };
  emit("", c.hyper);
  emit("ce_", c.expanded);
  out << "beta_equal=" << c.beta_equal << "\nm_equal=" << c.m_equal << "\nkappa_equal=" << c.kappa_equal
      << "\nboundary_equal=" << c.boundary_equal << "\nc_min_not_larger=" << c.c_min_not_larger << '\n';
  return out.str();
}

}  // namespace hs2
