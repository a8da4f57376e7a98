#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hs2/cut_analysis.hpp"
#include "hs2/hypergraph.hpp"

namespace hs2 {

struct HsbmParams {
  std::size_t n = 0;
  std::size_t k = 2;
  std::size_t edge_size = 3;
  double q_in = 0.8;   // all members in one class
  double q_out = 0.2;  // members span two or more classes
  std::uint64_t seed = 0;
};

struct LabeledHypergraph {
  Hypergraph graph;
  LabelFunction labels;
};

/// Uniform hypergraph stochastic block model over contiguous equal classes.
/// Candidate tuples are visited in lexicographic order; tuple t is kept iff
/// a counter-based uniform draw keyed by (seed, t) falls below its
/// probability, so the output depends only on the parameters.
LabeledHypergraph hsbm(const HsbmParams& params);

/// Class of node v under the contiguous block layout.
ClassId hsbm_class(std::size_t n, std::size_t k, NodeId v);

struct FeatureMatrix {
  std::size_t dim = 0;
  std::vector<std::vector<double>> rows;
};

/// One hyperedge per point: the point and its r nearest other points by
/// Euclidean distance, ties to the smaller index. Repeated sets are kept once.
Hypergraph knn_hypergraph(const FeatureMatrix& features, std::size_t r = 2);

// "node_id class_id" per line, every node exactly once. '#' lines skipped.
LabelFunction read_labels(std::istream& in);
LabelFunction load_labels(const std::string& path);
void write_labels(std::ostream& out, const LabelFunction& f);
void save_labels(const std::string& path, const LabelFunction& f);

// Comma-separated numeric rows.
FeatureMatrix read_features(std::istream& in);
FeatureMatrix load_features(const std::string& path);

}  // namespace hs2
