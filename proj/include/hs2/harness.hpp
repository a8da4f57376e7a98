#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hs2/bounds.hpp"
#include "hs2/cut_analysis.hpp"
#include "hs2/datagen.hpp"
#include "hs2/engine.hpp"
#include "hs2/oracle.hpp"

namespace hs2 {

enum class Algorithm { kPoint, kPair, kPairNoisy, kCePoint, kCePair, kCePairNoisy };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& s);
bool is_clique_expanded(Algorithm a);
bool is_pairwise(Algorithm a);
bool is_noisy(Algorithm a);

enum class BudgetMode { kExplicit, kQStar, kQStarPair, kNoisy };

struct BudgetSpec {
  BudgetMode mode = BudgetMode::kExplicit;
  std::uint64_t value = 0;
};

/// "123", "auto:q_star", "auto:q_star_pair" or "auto:noisy".
BudgetSpec parse_budget(const std::string& s);

struct InstanceSource {
  enum class Kind { kFile, kHsbm, kKnn };
  Kind kind = Kind::kHsbm;
  std::string graph_path;     // kFile
  std::string labels_path;    // kFile, kKnn
  std::string features_path;  // kKnn
  std::size_t knn_r = 2;
  HsbmParams hsbm;            // seed is replaced per trial unless the instance is fixed
};

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::kPoint;
  InstanceSource source;
  BudgetSpec budget;
  double delta = 0.1;
  double p = 0.0;
  NoiseMode noise = NoiseMode::kPersistent;
  std::optional<std::size_t> seed_sample;  // M; nullopt solves for the smallest admissible M
  bool skip_random_sampling = false;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;
  /// Default: fixed for file and knn sources, regenerated per trial for HSBM.
  std::optional<bool> fix_instance;
  /// Compute kappa for every instance. Auto budgets force it on.
  bool full_analysis = true;
  bool timing = false;
  std::string trace_dir;  // empty disables oracle traces
};

/// Checks flag combinations; throws Error on conflicts.
void validate(const ExperimentConfig& config);

inline constexpr const char* kResultsVersion = "hs2-results v1";

struct ResultRow {
  std::string algorithm;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::uint64_t queries_used = 0;
  std::optional<std::uint64_t> queries_until_recovery;
  bool success = false;
  double label_accuracy = 0.0;  // purity of the returned partition
  std::optional<double> runtime_ms;
  std::size_t seed_sample = 0;  // M for noisy runs, else 0
  StructuralParams params;
  bool kappa_computed = false;
};

struct LoadedInstance {
  LabeledHypergraph data;
  std::uint64_t seed = 0;
};

/// Builds the instance for one trial; trial_seed feeds HSBM generation when
/// the source is synthetic.
LoadedInstance load_instance(const InstanceSource& source, std::uint64_t trial_seed);

/// Per-trial seed: master ^ trial index.
inline std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) { return master ^ trial; }

/// Runs every trial; rows come back in trial order whatever the worker count.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

std::string results_header();
std::string format_row(const ResultRow& row);
void write_results(std::ostream& out, const std::vector<ResultRow>& rows);

struct Summary {
  std::size_t trials = 0;
  std::size_t recovered = 0;
  double mean_recovery = 0.0;  // over recovered trials
  double std_recovery = 0.0;   // sample standard deviation
  double success_rate = 0.0;
  double mean_queries_used = 0.0;
  double mean_label_accuracy = 0.0;
};

Summary summarize(const std::vector<ResultRow>& rows);
std::string format_summary(const Summary& s);

/// Parameters of G and its clique expansion plus the comparison booleans,
/// as key=value lines.
std::string format_analysis(const CeComparison& c);

}  // namespace hs2
