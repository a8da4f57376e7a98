#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hs2/hypergraph.hpp"
#include "hs2/types.hpp"

namespace hs2 {

/// Ground-truth labelling f: V -> [k]. Every class in [0, k) is non-empty.
class LabelFunction {
 public:
  LabelFunction() = default;
  /// k is inferred as max + 1; a gap in the class ids is an error.
  explicit LabelFunction(std::vector<ClassId> assignment);
  LabelFunction(std::vector<ClassId> assignment, std::size_t k);

  std::size_t num_nodes() const { return assignment_.size(); }
  std::size_t num_classes() const { return k_; }
  ClassId operator[](NodeId v) const { return assignment_[v]; }
  const std::vector<ClassId>& assignment() const { return assignment_; }
  std::vector<std::size_t> class_sizes() const;

 private:
  std::vector<ClassId> assignment_;
  std::size_t k_ = 0;
};

using ClassPair = std::pair<ClassId, ClassId>;  // first < second

struct CutProfile {
  std::vector<EdgeId> cut_edges;       // C, ascending
  std::vector<NodeId> boundary_nodes;  // ∂C, ascending
  /// Non-empty cut components C_ij keyed by (i, j), i < j.
  std::map<ClassPair, std::vector<EdgeId>> components;

  std::size_t m() const { return components.size(); }
};

CutProfile cut_profile(const Hypergraph& g, const LabelFunction& f);

/// min_i |V_i| / n.
double balancedness(const LabelFunction& f);
std::size_t min_class_size(const LabelFunction& f);

struct StructuralParams {
  std::size_t n = 0;
  std::size_t k = 0;
  double beta = 0.0;
  std::size_t m = 0;
  /// nullopt when C is empty; kInfinite when some component never becomes
  /// strongly connected.
  std::optional<Distance> kappa;
  std::size_t c_size = 0;
  std::size_t boundary_size = 0;
  std::size_t c_min = 0;
  /// Connected components of G - C.
  std::size_t components_after_cut = 0;
};

/// Directed dual graph H_r over the cut hyperedges.
struct DualGraph {
  std::vector<EdgeId> vertices;                    // cut hyperedge ids
  std::vector<std::vector<std::uint32_t>> arcs;    // indices into vertices
};

/// Structural analysis of one labelled hypergraph: cut profile, the directed
/// distance Δ between cut hyperedges, the dual graphs H_r and κ.
///
/// Shortest paths for Δ are taken in G - C. They are precomputed between all
/// boundary nodes at construction, so Δ is a table lookup per member pair.
/// g and f must outlive the analyzer.
class CutAnalyzer {
 public:
  CutAnalyzer(const Hypergraph& g, const LabelFunction& f);

  const CutProfile& profile() const { return profile_; }
  bool is_cut(EdgeId e) const { return e < cut_index_.size() && cut_index_[e] != kNotCut; }

  /// Δ(e1, e2); kInfinite when the pair shares no cut component or some
  /// inner infimum is unreachable. Throws if either id is not a cut hyperedge.
  Distance delta(EdgeId e1, EdgeId e2) const;

  /// Arc (e, e') iff Δ(e, e') <= r, self-loops included.
  DualGraph dual_graph(Distance r) const;

  /// Smallest r making every cut component strongly connected in H_r;
  /// 1 when every component is a single hyperedge, nullopt when C is empty.
  std::optional<Distance> kappa() const;

  StructuralParams params() const;

 private:
  static constexpr std::uint32_t kNotCut = std::numeric_limits<std::uint32_t>::max();

  struct ClassSlice {
    ClassId cls;
    std::vector<std::uint32_t> rows;  // boundary indices of Ω_cls(e)
  };

  Distance delta_by_index(std::uint32_t a, std::uint32_t b) const;
  Distance component_bottleneck(const std::vector<std::uint32_t>& members, bool forward) const;

  const Hypergraph* g_;
  const LabelFunction* f_;
  CutProfile profile_;
  std::vector<std::uint32_t> cut_index_;
  std::vector<std::vector<ClassSlice>> slices_;  // per cut index, by class asc
  std::size_t boundary_count_ = 0;
  std::vector<Distance> boundary_dist_;          // row-major |∂C| x |∂C|, in G - C
  std::size_t components_after_cut_ = 0;
};

StructuralParams structural_params(const Hypergraph& g, const LabelFunction& f);

/// Parameters of G and of its clique expansion under the same labels.
struct CeComparison {
  StructuralParams hyper;
  StructuralParams expanded;
  bool beta_equal = false;
  bool m_equal = false;
  bool kappa_equal = false;
  bool boundary_equal = false;
  bool c_min_not_larger = false;

  bool all_hold() const {
    return beta_equal && m_equal && kappa_equal && boundary_equal && c_min_not_larger;
  }
};

CeComparison compare_with_ce(const Hypergraph& g, const LabelFunction& f);

std::string format_kappa(const std::optional<Distance>& kappa);

}  // namespace hs2
