#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hs2/cut_analysis.hpp"
#include "hs2/hypergraph.hpp"
#include "hs2/oracle.hpp"

namespace hs2 {

/// Labels the learner has observed. Class ids in pairwise runs are assigned in
/// discovery order, so members(c) is the seed set S_c.
class LabelList {
 public:
  explicit LabelList(std::size_t n = 0) : label_(n, kUnlabeled) {}

  std::size_t num_nodes() const { return label_.size(); }
  std::size_t size() const { return order_.size(); }
  bool has(NodeId v) const { return label_[v] != kUnlabeled; }
  ClassId at(NodeId v) const { return label_[v]; }

  /// Throws if v is already labelled.
  void add(NodeId v, ClassId c);

  std::size_t class_count() const { return members_.size(); }
  const std::vector<NodeId>& members(ClassId c) const { return members_[c]; }
  const std::vector<std::vector<NodeId>>& classes() const { return members_; }
  /// Labelled nodes in labelling order.
  const std::vector<NodeId>& order() const { return order_; }

  static constexpr ClassId kUnlabeled = std::numeric_limits<ClassId>::max();

 private:
  std::vector<ClassId> label_;
  std::vector<NodeId> order_;
  std::vector<std::vector<NodeId>> members_;
};

struct RunResult {
  /// Connected components of the hypergraph left at termination.
  std::vector<std::vector<NodeId>> partition;
  /// Removed hyperedge ids, ascending.
  std::vector<EdgeId> removed_edges;
  std::uint64_t queries_used = 0;
  /// Ledger count when the removed set first covered C. Requires the true cut.
  std::optional<std::uint64_t> queries_until_recovery;
  /// removed_edges == C at termination. Requires the true cut.
  bool success = false;
  LabelList labels;
};

struct RunOptions {
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  /// Ground-truth cut set, used only to record recovery. The learner never
  /// reads it.
  std::optional<std::vector<EdgeId>> true_cut;
};

struct NoisyOptions {
  std::size_t seed_sample = 0;  // M
  /// Skip Phase-2 random sampling, assuming G - C has exactly k components.
  bool skip_random_sampling = false;
};

/// Signals that the query budget ran out in the middle of a labelling step.
struct BudgetExhausted {};

inline constexpr std::uint64_t kNoQueryLimit = std::numeric_limits<std::uint64_t>::max();

/// Midpoint of the shortest path among all differently labelled pairs, or
/// nullopt if no such pair is connected or the shortest such path has fewer
/// than two hyperedges.
std::optional<NodeId> mssp(HypergraphView g, const LabelList& labels);

struct InconsistentRemoval {
  Hypergraph graph;
  std::vector<EdgeId> removed;  // original ids
};

/// Deletes every hyperedge holding two labelled nodes with different labels.
InconsistentRemoval remove_inconsistent(const Hypergraph& g, const LabelList& labels);

RunResult hs2_point(const Hypergraph& g, PointwiseOracle& oracle, const RunOptions& options);

/// Requires a noiseless oracle.
RunResult hs2_pair(const Hypergraph& g, PairwiseOracle& oracle, const RunOptions& options);

RunResult hs2_pair_noisy(const Hypergraph& g, PairwiseOracle& oracle, const RunOptions& options,
                         const NoisyOptions& noisy);

/// Clusters a node sample with pairwise queries only. Throws BudgetExhausted
/// once the oracle ledger reaches query_limit.
std::vector<std::vector<NodeId>> seed_cluster(std::span<const NodeId> sample, PairwiseOracle& oracle,
                                              std::uint64_t query_limit = kNoQueryLimit);

/// Per-class comparison depth used by seed_cluster.
std::size_t seed_cluster_depth(std::size_t sample_size, double flip_prob);

/// argmax_i M_i / |S_i| over the seed classes, ties to the smaller id.
ClassId classify_by_vote(NodeId v, const std::vector<std::vector<NodeId>>& seeds, PairwiseOracle& oracle,
                         std::uint64_t query_limit = kNoQueryLimit);

/// Sum over blocks of the largest true class overlap, divided by n.
double partition_purity(const std::vector<std::vector<NodeId>>& partition, const LabelFunction& truth);

/// True iff observed labels agree with truth under some injective renaming.
bool labels_match_up_to_renaming(const LabelList& labels, const LabelFunction& truth);

}  // namespace hs2
