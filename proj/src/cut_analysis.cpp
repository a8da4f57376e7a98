#include "hs2/cut_analysis.hpp"

#include <algorithm>
#include <deque>

namespace hs2 {

LabelFunction::LabelFunction(std::vector<ClassId> assignment) : assignment_(std::move(assignment)) {
  if (assignment_.empty()) throw Error("label function needs at least one node");
  k_ = static_cast<std::size_t>(*std::max_element(assignment_.begin(), assignment_.end())) + 1;
  const auto sizes = class_sizes();
  for (std::size_t c = 0; c < k_; ++c) {
    if (sizes[c] == 0) throw Error("class " + std::to_string(c) + " has no members");
  }
}

LabelFunction::LabelFunction(std::vector<ClassId> assignment, std::size_t k)
    : assignment_(std::move(assignment)), k_(k) {
  if (assignment_.empty()) throw Error("label function needs at least one node");
  for (ClassId c : assignment_) {
    if (c >= k_) throw Error("class id " + std::to_string(c) + " out of range for k=" + std::to_string(k_));
  }
  const auto sizes = class_sizes();
  for (std::size_t c = 0; c < k_; ++c) {
    if (sizes[c] == 0) throw Error("class " + std::to_string(c) + " has no members");
  }
}

std::vector<std::size_t> LabelFunction::class_sizes() const {
  std::vector<std::size_t> sizes(k_, 0);
  for (ClassId c : assignment_) ++sizes[c];
  return sizes;
}

namespace {

void require_domain(const Hypergraph& g, const LabelFunction& f) {
  if (g.num_nodes() != f.num_nodes()) {
    throw Error("label function covers " + std::to_string(f.num_nodes()) + " nodes, hypergraph has " +
                std::to_string(g.num_nodes()));
  }
}

}  // namespace

CutProfile cut_profile(const Hypergraph& g, const LabelFunction& f) {
  require_domain(g, f);
  CutProfile p;
  std::vector<std::uint8_t> on_boundary(g.num_nodes(), 0);
  std::vector<ClassId> classes;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    classes.clear();
    for (NodeId v : g.edge(e)) classes.push_back(f[v]);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    if (classes.size() < 2) continue;
    p.cut_edges.push_back(e);
    for (NodeId v : g.edge(e)) on_boundary[v] = 1;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      for (std::size_t j = i + 1; j < classes.size(); ++j) {
        p.components[{classes[i], classes[j]}].push_back(e);
      }
    }
  }
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (on_boundary[v]) p.boundary_nodes.push_back(v);
  }
  return p;
}

std::size_t min_class_size(const LabelFunction& f) {
  const auto sizes = f.class_sizes();
  if (sizes.empty()) throw Error("empty label function");
  return *std::min_element(sizes.begin(), sizes.end());
}

double balancedness(const LabelFunction& f) {
  return static_cast<double>(min_class_size(f)) / static_cast<double>(f.num_nodes());
}

CutAnalyzer::CutAnalyzer(const Hypergraph& g, const LabelFunction& f)
    : g_(&g), f_(&f), profile_(cut_profile(g, f)) {
  cut_index_.assign(g.num_edges(), kNotCut);
  for (std::uint32_t i = 0; i < profile_.cut_edges.size(); ++i) cut_index_[profile_.cut_edges[i]] = i;

  std::vector<std::uint32_t> boundary_row(g.num_nodes(), kNotCut);
  boundary_count_ = profile_.boundary_nodes.size();
  for (std::uint32_t i = 0; i < boundary_count_; ++i) boundary_row[profile_.boundary_nodes[i]] = i;

  slices_.resize(profile_.cut_edges.size());
  for (std::size_t i = 0; i < profile_.cut_edges.size(); ++i) {
    auto& slice = slices_[i];
    for (NodeId v : g.edge(profile_.cut_edges[i])) {
      auto it = std::find_if(slice.begin(), slice.end(), [&](const ClassSlice& s) { return s.cls == f[v]; });
      if (it == slice.end()) {
        slice.push_back({f[v], {}});
        it = slice.end() - 1;
      }
      it->rows.push_back(boundary_row[v]);
    }
    std::sort(slice.begin(), slice.end(), [](const ClassSlice& a, const ClassSlice& b) { return a.cls < b.cls; });
  }

  std::vector<std::uint8_t> alive(g.num_edges(), 1);
  for (EdgeId e : profile_.cut_edges) alive[e] = 0;
  const HypergraphView residual(g, alive);
  const auto comp = component_ids(residual);
  for (auto c : comp) components_after_cut_ = std::max<std::size_t>(components_after_cut_, c + 1);

  boundary_dist_.assign(boundary_count_ * boundary_count_, kInfinite);
  for (std::uint32_t i = 0; i < boundary_count_; ++i) {
    const NodeId src[] = {profile_.boundary_nodes[i]};
    const auto dist = distances_from(residual, src);
    for (std::uint32_t j = 0; j < boundary_count_; ++j) {
      boundary_dist_[i * boundary_count_ + j] = dist[profile_.boundary_nodes[j]];
    }
  }
}

Distance CutAnalyzer::delta_by_index(std::uint32_t a, std::uint32_t b) const {
  const auto& s1 = slices_[a];
  const auto& s2 = slices_[b];
  // Δ maximises h_i + h_j over shared class pairs, i.e. the two largest h.
  Distance top1 = 0, top2 = 0;
  std::size_t shared = 0;
  std::size_t i = 0, j = 0;
  while (i < s1.size() && j < s2.size()) {
    if (s1[i].cls < s2[j].cls) {
      ++i;
    } else if (s2[j].cls < s1[i].cls) {
      ++j;
    } else {
      Distance h = 0;
      for (std::uint32_t v : s1[i].rows) {
        Distance nearest = kInfinite;
        const Distance* row = boundary_dist_.data() + std::size_t{v} * boundary_count_;
        for (std::uint32_t u : s2[j].rows) nearest = std::min(nearest, row[u]);
        h = std::max(h, nearest);
      }
      if (shared == 0 || h > top1) {
        top2 = shared == 0 ? 0 : top1;
        top1 = h;
      } else if (shared == 1 || h > top2) {
        top2 = h;
      }
      ++shared;
      ++i;
      ++j;
    }
  }
  if (shared < 2) return kInfinite;
  return saturating_add(saturating_add(top1, top2), 1);
}

Distance CutAnalyzer::delta(EdgeId e1, EdgeId e2) const {
  if (!is_cut(e1) || !is_cut(e2)) throw Error("delta is defined on cut hyperedges only");
  return delta_by_index(cut_index_[e1], cut_index_[e2]);
}

DualGraph CutAnalyzer::dual_graph(Distance r) const {
  DualGraph h;
  h.vertices = profile_.cut_edges;
  h.arcs.resize(h.vertices.size());
  for (std::uint32_t a = 0; a < h.vertices.size(); ++a) {
    for (std::uint32_t b = 0; b < h.vertices.size(); ++b) {
      if (delta_by_index(a, b) <= r) h.arcs[a].push_back(b);
    }
  }
  return h;
}

// Minimum threshold r such that every member is reachable from members[0]
// (forward) or reaches it (backward) using arcs with Δ <= r. Prim-style
// search that admits free moves below the running bottleneck.
Distance CutAnalyzer::component_bottleneck(const std::vector<std::uint32_t>& members, bool forward) const {
  std::vector<std::uint32_t> pending(members.begin() + 1, members.end());
  std::vector<Distance> best(pending.size(), kInfinite);
  std::vector<std::uint32_t> queue{members.front()};
  Distance threshold = 1;
  while (true) {
    while (!queue.empty()) {
      const std::uint32_t u = queue.back();
      queue.pop_back();
      for (std::size_t i = 0; i < pending.size();) {
        const std::uint32_t v = pending[i];
        const Distance w = forward ? delta_by_index(u, v) : delta_by_index(v, u);
        if (w <= threshold) {
          queue.push_back(v);
          pending[i] = pending.back();
          best[i] = best.back();
          pending.pop_back();
          best.pop_back();
        } else {
          best[i] = std::min(best[i], w);
          ++i;
        }
      }
    }
    if (pending.empty()) return threshold;
    threshold = *std::min_element(best.begin(), best.end());
    if (threshold == kInfinite) return kInfinite;
    for (std::size_t i = 0; i < pending.size();) {
      if (best[i] <= threshold) {
        queue.push_back(pending[i]);
        pending[i] = pending.back();
        best[i] = best.back();
        pending.pop_back();
        best.pop_back();
      } else {
        ++i;
      }
    }
  }
}

std::optional<Distance> CutAnalyzer::kappa() const {
  if (profile_.cut_edges.empty()) return std::nullopt;
  Distance kappa = 1;
  std::vector<std::uint32_t> members;
  for (const auto& [pair, edges] : profile_.components) {
    if (edges.size() < 2) continue;
    members.clear();
    for (EdgeId e : edges) members.push_back(cut_index_[e]);
    kappa = std::max(kappa, component_bottleneck(members, true));
    if (kappa == kInfinite) return kInfinite;
    kappa = std::max(kappa, component_bottleneck(members, false));
    if (kappa == kInfinite) return kInfinite;
  }
  return kappa;
}

StructuralParams CutAnalyzer::params() const {
  StructuralParams s;
  s.n = g_->num_nodes();
  s.k = f_->num_classes();
  s.beta = balancedness(*f_);
  s.m = profile_.m();
  s.kappa = kappa();
  s.c_size = profile_.cut_edges.size();
  s.boundary_size = profile_.boundary_nodes.size();
  s.c_min = std::min(s.c_size, s.boundary_size);
  s.components_after_cut = components_after_cut_;
  return s;
}

StructuralParams structural_params(const Hypergraph& g, const LabelFunction& f) {
  return CutAnalyzer(g, f).params();
}

CeComparison compare_with_ce(const Hypergraph& g, const LabelFunction& f) {
  CeComparison r;
  r.hyper = structural_params(g, f);
  const Hypergraph ce = clique_expansion(g);
  r.expanded = structural_params(ce, f);
  r.beta_equal = r.hyper.beta == r.expanded.beta;
  r.m_equal = r.hyper.m == r.expanded.m;
  r.kappa_equal = r.hyper.kappa == r.expanded.kappa;
  r.boundary_equal = r.hyper.boundary_size == r.expanded.boundary_size;
  r.c_min_not_larger = r.hyper.c_min <= r.expanded.c_min;
  return r;
}

std::string format_kappa(const std::optional<Distance>& kappa) {
  if (!kappa) return "none";
  if (*kappa == kInfinite) return "inf";
  return std::to_string(*kappa);
}

}  // namespace hs2
