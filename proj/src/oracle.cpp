#include "hs2/oracle.hpp"

#include <algorithm>
#include <ostream>

#include "hs2/rng.hpp"

namespace hs2 {

void QueryLedger::record_point(NodeId v, ClassId answer) {
  if (tracing_) trace_.push_back({total(), QueryKind::kPoint, v, 0, answer});
  ++point_count_;
}

void QueryLedger::record_pair(NodeId u, NodeId v, bool answer) {
  if (tracing_) trace_.push_back({total(), QueryKind::kPair, u, v, answer ? 1u : 0u});
  ++pair_count_;
}

void QueryLedger::write_trace(std::ostream& out) const {
  for (const auto& t : trace_) {
    if (t.kind == QueryKind::kPoint) {
      out << t.tick << " point " << t.u << ' ' << t.answer << '\n';
    } else {
      out << t.tick << " pair " << t.u << ' ' << t.v << ' ' << t.answer << '\n';
    }
  }
}

ClassId PointwiseOracle::query_point(NodeId v) {
  if (v >= truth_.num_nodes()) throw Error("query_point: unknown node " + std::to_string(v));
  const ClassId c = truth_[v];
  ledger_.record_point(v, c);
  return c;
}

PairwiseOracle::PairwiseOracle(LabelFunction truth, double flip_prob, NoiseMode mode, std::uint64_t seed,
                               bool tracing)
    : truth_(std::move(truth)), p_(flip_prob), mode_(mode), seed_(seed), fresh_rng_(seed), ledger_(tracing) {
  if (!(p_ >= 0.0 && p_ < 0.5)) throw Error("flip probability must lie in [0, 1/2)");
}

bool PairwiseOracle::query_pair(NodeId u, NodeId v) {
  if (u >= truth_.num_nodes() || v >= truth_.num_nodes()) throw Error("query_pair: unknown node");
  if (u == v) throw Error("query_pair: self-comparison is undefined");
  const bool same = truth_[u] == truth_[v];
  bool answer = same;
  if (p_ > 0.0) {
    if (mode_ == NoiseMode::kFresh) {
      answer = same != (unit_uniform(fresh_rng_()) < p_);
    } else {
      const std::uint64_t key = (std::uint64_t{std::min(u, v)} << 32) | std::max(u, v);
      auto [it, inserted] = cache_.try_emplace(key, false);
      if (inserted) it->second = same != (unit_uniform(mix64(seed_ ^ mix64(key))) < p_);
      answer = it->second;
    }
  }
  ledger_.record_pair(u, v, answer);
  return answer;
}

std::string to_string(NoiseMode mode) { return mode == NoiseMode::kFresh ? "fresh" : "persistent"; }

NoiseMode parse_noise_mode(const std::string& s) {
  if (s == "fresh") return NoiseMode::kFresh;
  if (s == "persistent") return NoiseMode::kPersistent;
  throw Error("unknown noise mode '" + s + "' (expected fresh|persistent)");
}

}  // namespace hs2
