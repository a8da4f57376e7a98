#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "hs2/cut_analysis.hpp"
#include "hs2/types.hpp"

namespace hs2 {

enum class QueryKind : std::uint8_t { kPoint, kPair };

struct TraceEntry {
  std::uint64_t tick = 0;
  QueryKind kind = QueryKind::kPoint;
  NodeId u = 0;
  NodeId v = 0;  // unused for point queries
  std::uint32_t answer = 0;
};

/// Query counters with an optional append-only trace.
class QueryLedger {
 public:
  explicit QueryLedger(bool tracing = false) : tracing_(tracing) {}

  std::uint64_t point_count() const { return point_count_; }
  std::uint64_t pair_count() const { return pair_count_; }
  std::uint64_t total() const { return point_count_ + pair_count_; }
  bool tracing() const { return tracing_; }
  const std::vector<TraceEntry>& trace() const { return trace_; }

  void record_point(NodeId v, ClassId answer);
  void record_pair(NodeId u, NodeId v, bool answer);

  /// One line per query: "tick kind args answer".
  void write_trace(std::ostream& out) const;

 private:
  bool tracing_;
  std::uint64_t point_count_ = 0;
  std::uint64_t pair_count_ = 0;
  std::vector<TraceEntry> trace_;
};

struct LedgerSnapshot {
  std::uint64_t point_count = 0;
  std::uint64_t pair_count = 0;
  friend bool operator==(const LedgerSnapshot&, const LedgerSnapshot&) = default;
};

/// Noiseless label oracle F_0. Learners see labels only through query_point.
class PointwiseOracle {
 public:
  explicit PointwiseOracle(LabelFunction truth, bool tracing = false)
      : truth_(std::move(truth)), ledger_(tracing) {}

  ClassId query_point(NodeId v);

  std::size_t num_nodes() const { return truth_.num_nodes(); }
  LedgerSnapshot snapshot() const { return {ledger_.point_count(), ledger_.pair_count()}; }
  const QueryLedger& ledger() const { return ledger_; }

 private:
  LabelFunction truth_;
  QueryLedger ledger_;
};

enum class NoiseMode : std::uint8_t {
  kFresh,       // every call flips independently
  kPersistent,  // one flip per unordered pair, replayed on repeats
};

/// Same-class oracle O_p: answers [f(u) = f(v)], flipped with probability p.
class PairwiseOracle {
 public:
  PairwiseOracle(LabelFunction truth, double flip_prob, NoiseMode mode, std::uint64_t seed,
                 bool tracing = false);

  /// Throws on u == v or unknown nodes without charging the ledger.
  bool query_pair(NodeId u, NodeId v);

  double flip_prob() const { return p_; }
  NoiseMode noise_mode() const { return mode_; }
  std::size_t num_nodes() const { return truth_.num_nodes(); }
  std::size_t cache_size() const { return cache_.size(); }
  LedgerSnapshot snapshot() const { return {ledger_.point_count(), ledger_.pair_count()}; }
  const QueryLedger& ledger() const { return ledger_; }

 private:
  LabelFunction truth_;
  double p_;
  NoiseMode mode_;
  std::uint64_t seed_;
  std::mt19937_64 fresh_rng_;
  std::unordered_map<std::uint64_t, bool> cache_;
  QueryLedger ledger_;
};

std::string to_string(NoiseMode mode);
NoiseMode parse_noise_mode(const std::string& s);

}  // namespace hs2
