#include "hs2/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <tuple>
#include <unordered_map>

namespace hs2 {

void LabelList::add(NodeId v, ClassId c) {
  if (v >= label_.size()) throw Error("label list: node out of range");
  if (label_[v] != kUnlabeled) throw Error("label list: node " + std::to_string(v) + " already labelled");
  if (c == kUnlabeled) throw Error("label list: reserved class id");
  label_[v] = c;
  order_.push_back(v);
  if (members_.size() <= c) members_.resize(std::size_t{c} + 1);
  members_[c].push_back(v);
}

namespace {

// Picks the junction to query on a chosen path: the middle one, or the
// nearest unlabelled junction (lower index first) if the middle is labelled.
std::optional<NodeId> pick_junction(const HyperPath& path, const LabelList& labels) {
  const auto& js = path.junctions;
  if (js.empty()) return std::nullopt;
  const std::size_t l = path.length();
  const std::size_t mid = (l - 1 + 1) / 2 - 1;  // ceil((l-1)/2), 1-based -> 0-based
  for (std::size_t off = 0; off < js.size(); ++off) {
    if (off <= mid && !labels.has(js[mid - off])) return js[mid - off];
    if (mid + off < js.size() && !labels.has(js[mid + off])) return js[mid + off];
  }
  return std::nullopt;
}

// Exhaustive fallback: every differently labelled pair ordered by
// (length, u, v), skipping pairs whose junctions are all labelled.
std::optional<NodeId> mssp_exhaustive(HypergraphView g, const LabelList& labels) {
  std::vector<NodeId> labelled = labels.order();
  std::sort(labelled.begin(), labelled.end());
  std::vector<std::tuple<Distance, NodeId, NodeId>> pairs;
  for (std::size_t i = 0; i < labelled.size(); ++i) {
    const NodeId src[] = {labelled[i]};
    const auto dist = distances_from(g, src);
    for (std::size_t j = i + 1; j < labelled.size(); ++j) {
      const NodeId v = labelled[j];
      if (labels.at(v) != labels.at(labelled[i]) && dist[v] != kInfinite) {
        pairs.emplace_back(dist[v], labelled[i], v);
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [len, u, v] : pairs) {
    if (len < 2) return std::nullopt;
    auto path = shortest_path(g, u, v);
    if (auto x = pick_junction(*path, labels)) return x;
  }
  return std::nullopt;
}

}  // namespace

std::optional<NodeId> mssp(HypergraphView g, const LabelList& labels) {
  std::vector<ClassId> present;
  for (ClassId c = 0; c < labels.class_count(); ++c) {
    if (!labels.members(c).empty()) present.push_back(c);
  }
  if (present.size() < 2) return std::nullopt;

  // One multi-source BFS per observed class yields the minimum length over
  // all differently labelled pairs. Later searches stop at the running best.
  const std::vector<NodeId>& labelled = labels.order();
  Distance best = kInfinite;
  std::vector<std::vector<Distance>> by_class(labels.class_count());
  for (ClassId c : present) {
    by_class[c] = distances_from(g, labels.members(c), best);
    for (NodeId v : labelled) {
      if (labels.at(v) != c) best = std::min(best, by_class[c][v]);
    }
  }
  if (best == kInfinite || best < 2) return std::nullopt;

  NodeId u = std::numeric_limits<NodeId>::max();
  for (NodeId v : labelled) {
    if (v >= u) continue;
    for (ClassId c : present) {
      if (c != labels.at(v) && by_class[c][v] == best) {
        u = v;
        break;
      }
    }
  }
  const NodeId src[] = {u};
  const auto du = distances_from(g, src, best);
  NodeId v = std::numeric_limits<NodeId>::max();
  for (NodeId w : labelled) {
    if (w < v && labels.at(w) != labels.at(u) && du[w] == best) v = w;
  }
  const auto path = shortest_path(g, u, v);
  if (auto x = pick_junction(*path, labels)) return x;
  return mssp_exhaustive(g, labels);
}

InconsistentRemoval remove_inconsistent(const Hypergraph& g, const LabelList& labels) {
  std::vector<EdgeId> doomed;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    ClassId seen = LabelList::kUnlabeled;
    for (NodeId v : g.edge(e)) {
      if (!labels.has(v)) continue;
      if (seen == LabelList::kUnlabeled) {
        seen = labels.at(v);
      } else if (seen != labels.at(v)) {
        doomed.push_back(e);
        break;
      }
    }
  }
  return {remove_edges(g, doomed).graph, doomed};
}

namespace {

// Mutable learner state for one run: live-edge mask, per-edge label summary,
// observed labels and recovery bookkeeping.
class Learner {
 public:
  Learner(const Hypergraph& g, const RunOptions& options)
      : g_(g), alive_(g.num_edges(), 1), seen_(g.num_edges(), kNone), labels_(g.num_nodes()) {
    unlabelled_.resize(g.num_nodes());
    position_.resize(g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      unlabelled_[v] = v;
      position_[v] = v;
    }
    if (options.true_cut) {
      in_truth_.assign(g.num_edges(), 0);
      for (EdgeId e : *options.true_cut) {
        if (e >= g.num_edges()) throw Error("true cut references unknown hyperedge");
        if (!in_truth_[e]) ++truth_missing_;
        in_truth_[e] = 1;
      }
      truth_size_ = truth_missing_;
      if (truth_missing_ == 0) recovery_ = 0;
    }
  }

  HypergraphView view() const { return {g_, alive_}; }
  const LabelList& labels() const { return labels_; }
  bool all_labelled() const { return unlabelled_.empty(); }

  NodeId random_unlabelled(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> pick(0, unlabelled_.size() - 1);
    return unlabelled_[pick(rng)];
  }

  // Records the label and deletes hyperedges that became inconsistent.
  void assign(NodeId v, ClassId c, std::uint64_t queries_so_far) {
    labels_.add(v, c);
    const std::size_t pos = position_[v];
    unlabelled_[pos] = unlabelled_.back();
    position_[unlabelled_[pos]] = pos;
    unlabelled_.pop_back();

    for (EdgeId e : g_.incident(v)) {
      if (!alive_[e]) continue;
      if (seen_[e] == kNone) {
        seen_[e] = c;
      } else if (seen_[e] != c) {
        alive_[e] = 0;
        removed_.push_back(e);
        if (!in_truth_.empty()) {
          if (in_truth_[e]) {
            --truth_missing_;
          } else {
            ++false_removals_;
          }
        }
      }
    }
    if (!in_truth_.empty() && truth_missing_ == 0 && !recovery_) recovery_ = queries_so_far;
  }

  RunResult finish(std::uint64_t queries_used) {
    RunResult r;
    r.partition = connected_components(view());
    r.removed_edges = removed_;
    std::sort(r.removed_edges.begin(), r.removed_edges.end());
    r.queries_used = queries_used;
    r.queries_until_recovery = recovery_;
    r.success = !in_truth_.empty() ? (truth_missing_ == 0 && false_removals_ == 0) : false;
    if (in_truth_.empty()) r.queries_until_recovery.reset();
    r.labels = labels_;
    (void)truth_size_;
    return r;
  }

 private:
  static constexpr ClassId kNone = LabelList::kUnlabeled;

  const Hypergraph& g_;
  std::vector<std::uint8_t> alive_;
  std::vector<ClassId> seen_;
  LabelList labels_;
  std::vector<NodeId> unlabelled_;
  std::vector<std::size_t> position_;
  std::vector<EdgeId> removed_;
  std::vector<std::uint8_t> in_truth_;
  std::size_t truth_size_ = 0;
  std::size_t truth_missing_ = 0;
  std::size_t false_removals_ = 0;
  std::optional<std::uint64_t> recovery_;
};

void require_budget(const RunOptions& options) {
  if (options.budget < 1) throw Error("query budget must be at least 1");
}

void require_domain(const Hypergraph& g, std::size_t oracle_nodes) {
  if (g.num_nodes() != oracle_nodes) throw Error("oracle and hypergraph disagree on node count");
}

bool ask(PairwiseOracle& oracle, NodeId u, NodeId v, std::uint64_t limit) {
  const auto s = oracle.snapshot();
  if (s.point_count + s.pair_count >= limit) throw BudgetExhausted{};
  return oracle.query_pair(u, v);
}

std::uint64_t ledger_total(const LedgerSnapshot& s) { return s.point_count + s.pair_count; }

}  // namespace

RunResult hs2_point(const Hypergraph& g, PointwiseOracle& oracle, const RunOptions& options) {
  require_budget(options);
  require_domain(g, oracle.num_nodes());
  Learner learner(g, options);
  std::mt19937_64 rng(options.seed);
  const std::uint64_t start = ledger_total(oracle.snapshot());
  auto used = [&] { return ledger_total(oracle.snapshot()) - start; };

  while (!learner.all_labelled() && used() < options.budget) {
    NodeId x = learner.random_unlabelled(rng);
    while (true) {
      learner.assign(x, oracle.query_point(x), used());
      if (used() >= options.budget) break;
      const auto next = mssp(learner.view(), learner.labels());
      if (!next) break;
      x = *next;
    }
  }
  return learner.finish(used());
}

RunResult hs2_pair(const Hypergraph& g, PairwiseOracle& oracle, const RunOptions& options) {
  require_budget(options);
  require_domain(g, oracle.num_nodes());
  if (oracle.flip_prob() != 0.0) throw Error("hs2_pair needs a noiseless oracle; use hs2_pair_noisy");
  Learner learner(g, options);
  std::mt19937_64 rng(options.seed);
  const std::uint64_t start = ledger_total(oracle.snapshot());
  const std::uint64_t limit = start + options.budget;
  auto used = [&] { return ledger_total(oracle.snapshot()) - start; };

  // Compare against the first member of each class, stopping at a match.
  auto classify = [&](NodeId v) -> ClassId {
    const auto& classes = learner.labels().classes();
    for (ClassId i = 0; i < classes.size(); ++i) {
      if (ask(oracle, v, classes[i].front(), limit)) return i;
    }
    return static_cast<ClassId>(classes.size());
  };

  learner.assign(learner.random_unlabelled(rng), 0, 0);
  try {
    while (!learner.all_labelled()) {
      NodeId x = learner.random_unlabelled(rng);
      while (true) {
        const ClassId c = classify(x);
        learner.assign(x, c, used());
        const auto next = mssp(learner.view(), learner.labels());
        if (!next) break;
        x = *next;
      }
    }
  } catch (const BudgetExhausted&) {
  }
  return learner.finish(used());
}

RunResult hs2_pair_noisy(const Hypergraph& g, PairwiseOracle& oracle, const RunOptions& options,
                         const NoisyOptions& noisy) {
  require_budget(options);
  require_domain(g, oracle.num_nodes());
  if (noisy.seed_sample > g.num_nodes()) throw Error("seed sample size M exceeds n");
  if (noisy.seed_sample < 2) throw Error("seed sample size M must be at least 2");
  Learner learner(g, options);
  std::mt19937_64 rng(options.seed);
  const std::uint64_t start = ledger_total(oracle.snapshot());
  const std::uint64_t limit = start + options.budget;
  auto used = [&] { return ledger_total(oracle.snapshot()) - start; };

  // Phase 1: uniform sample without replacement, clustered by pairwise queries.
  std::vector<NodeId> pool(g.num_nodes());
  for (NodeId v = 0; v < pool.size(); ++v) pool[v] = v;
  for (std::size_t i = 0; i < noisy.seed_sample; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(noisy.seed_sample);

  std::vector<std::vector<NodeId>> seeds;
  try {
    seeds = seed_cluster(pool, oracle, limit);
  } catch (const BudgetExhausted&) {
    return learner.finish(used());
  }
  for (ClassId i = 0; i < seeds.size(); ++i) {
    for (NodeId v : seeds[i]) learner.assign(v, i, used());
  }

  // Phase 2: bisection with normalized majority votes against the seeds.
  try {
    while (true) {
      std::optional<NodeId> x;
      if (noisy.skip_random_sampling) {
        x = mssp(learner.view(), learner.labels());
      } else if (!learner.all_labelled()) {
        x = learner.random_unlabelled(rng);
      }
      if (!x) break;
      while (x) {
        const ClassId c = classify_by_vote(*x, seeds, oracle, limit);
        learner.assign(*x, c, used());
        x = mssp(learner.view(), learner.labels());
      }
    }
  } catch (const BudgetExhausted&) {
  }
  return learner.finish(used());
}

std::size_t seed_cluster_depth(std::size_t sample_size, double flip_prob) {
  if (flip_prob == 0.0) return 1;
  const double gap = 1.0 - 2.0 * flip_prob;
  return static_cast<std::size_t>(std::ceil(12.0 * std::log(static_cast<double>(sample_size)) / (gap * gap)));
}

std::vector<std::vector<NodeId>> seed_cluster(std::span<const NodeId> sample, PairwiseOracle& oracle,
                                              std::uint64_t query_limit) {
  if (sample.size() < 2) throw Error("seed_cluster needs at least two nodes");
  const std::size_t depth = seed_cluster_depth(sample.size(), oracle.flip_prob());

  // Answers already obtained are reused, so no pair is asked twice.
  std::unordered_map<std::uint64_t, bool> memo;
  auto same = [&](NodeId a, NodeId b) {
    const std::uint64_t key = (std::uint64_t{std::min(a, b)} << 32) | std::max(a, b);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const bool answer = ask(oracle, a, b, query_limit);
    memo.emplace(key, answer);
    return answer;
  };

  // Agreement of v with the first `depth` members of a cluster, skipping v.
  auto agreement = [&](NodeId v, const std::vector<NodeId>& cluster) -> std::pair<std::size_t, std::size_t> {
    std::size_t pos = 0, asked = 0;
    for (NodeId w : cluster) {
      if (asked == depth) break;
      if (w == v) continue;
      pos += same(v, w) ? 1 : 0;
      ++asked;
    }
    return {pos, asked};
  };
  // a/b > c/d with a tie going to the earlier candidate.
  auto better = [](std::pair<std::size_t, std::size_t> x, std::pair<std::size_t, std::size_t> y) {
    return x.first * y.second > y.first * x.second;
  };
  auto majority = [](std::pair<std::size_t, std::size_t> x) { return x.second > 0 && 2 * x.first > x.second; };

  // Pass 1: greedy assignment against growing clusters.
  std::vector<std::vector<NodeId>> clusters;
  for (NodeId v : sample) {
    std::size_t best = clusters.size();
    std::pair<std::size_t, std::size_t> best_score{0, 1};
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      const auto score = agreement(v, clusters[i]);
      if (best == clusters.size() ? majority(score) : better(score, best_score)) {
        best = i;
        best_score = score;
      }
    }
    if (best < clusters.size() && majority(best_score)) {
      clusters[best].push_back(v);
    } else {
      clusters.push_back({v});
    }
  }
  if (oracle.flip_prob() == 0.0) return clusters;

  // Pass 2: merge clusters whose cross-pairs mostly agree, largest first.
  std::vector<std::size_t> by_size(clusters.size());
  for (std::size_t i = 0; i < by_size.size(); ++i) by_size[i] = i;
  std::stable_sort(by_size.begin(), by_size.end(),
                   [&](std::size_t a, std::size_t b) { return clusters[a].size() > clusters[b].size(); });
  std::vector<std::vector<NodeId>> kept;
  for (std::size_t idx : by_size) {
    const auto& c = clusters[idx];
    std::size_t target = kept.size();
    std::pair<std::size_t, std::size_t> target_score{0, 1};
    for (std::size_t j = 0; j < kept.size(); ++j) {
      const auto& k = kept[j];
      const std::size_t budget = std::min(depth, c.size() * k.size());
      std::pair<std::size_t, std::size_t> score{0, budget};
      for (std::size_t q = 0; q < budget; ++q) {
        score.first += same(c[q % c.size()], k[(q / c.size()) % k.size()]) ? 1 : 0;
      }
      if (majority(score) && (target == kept.size() || better(score, target_score))) {
        target = j;
        target_score = score;
      }
    }
    if (target < kept.size()) {
      kept[target].insert(kept[target].end(), c.begin(), c.end());
    } else {
      kept.push_back(c);
    }
  }

  // Pass 3: re-assign every sampled node by normalized vote over the kept
  // clusters, then order clusters by first appearance in the sample.
  std::vector<std::vector<NodeId>> final_clusters(kept.size());
  for (NodeId v : sample) {
    std::size_t best = 0;
    std::pair<std::size_t, std::size_t> best_score{0, 0};
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const auto score = agreement(v, kept[i]);
      if (score.second == 0) continue;
      if (best_score.second == 0 || better(score, best_score)) {
        best = i;
        best_score = score;
      }
    }
    final_clusters[best].push_back(v);
  }
  std::vector<std::vector<NodeId>> out;
  std::vector<std::size_t> order(final_clusters.size());
  std::vector<std::size_t> first_seen(final_clusters.size(), sample.size());
  for (std::size_t pos = 0; pos < sample.size(); ++pos) {
    for (std::size_t i = 0; i < final_clusters.size(); ++i) {
      if (!final_clusters[i].empty() && final_clusters[i].front() == sample[pos]) first_seen[i] = pos;
    }
  }
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return first_seen[a] < first_seen[b]; });
  for (std::size_t i : order) {
    if (!final_clusters[i].empty()) out.push_back(std::move(final_clusters[i]));
  }
  return out;
}

ClassId classify_by_vote(NodeId v, const std::vector<std::vector<NodeId>>& seeds, PairwiseOracle& oracle,
                         std::uint64_t query_limit) {
  if (seeds.empty()) throw Error("classify_by_vote needs at least one seed class");
  for (const auto& s : seeds) {
    if (s.empty()) throw Error("classify_by_vote: empty seed class");
    if (std::find(s.begin(), s.end(), v) != s.end()) throw Error("classify_by_vote: node is a seed");
  }
  ClassId best = 0;
  std::size_t best_pos = 0, best_size = 1;
  for (ClassId i = 0; i < seeds.size(); ++i) {
    std::size_t pos = 0;
    for (NodeId u : seeds[i]) pos += ask(oracle, u, v, query_limit) ? 1 : 0;
    // pos / |S_i| > best_pos / best_size, compared exactly.
    if (i == 0 || pos * best_size > best_pos * seeds[i].size()) {
      best = i;
      best_pos = pos;
      best_size = seeds[i].size();
    }
  }
  return best;
}

double partition_purity(const std::vector<std::vector<NodeId>>& partition, const LabelFunction& truth) {
  std::size_t agree = 0;
  std::vector<std::size_t> counts(truth.num_classes());
  for (const auto& block : partition) {
    std::fill(counts.begin(), counts.end(), 0);
    for (NodeId v : block) ++counts[truth[v]];
    agree += *std::max_element(counts.begin(), counts.end());
  }
  return static_cast<double>(agree) / static_cast<double>(truth.num_nodes());
}

bool labels_match_up_to_renaming(const LabelList& labels, const LabelFunction& truth) {
  std::map<ClassId, ClassId> forward, backward;
  for (NodeId v : labels.order()) {
    const ClassId seen = labels.at(v), real = truth[v];
    auto [f, fi] = forward.try_emplace(seen, real);
    auto [b, bi] = backward.try_emplace(real, seen);
    if (f->second != real || b->second != seen) return false;
  }
  return true;
}

}  // namespace hs2
