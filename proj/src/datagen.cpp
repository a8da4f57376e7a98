#include "hs2/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hs2/rng.hpp"

namespace hs2 {

ClassId hsbm_class(std::size_t n, std::size_t k, NodeId v) { return static_cast<ClassId>(v / (n / k)); }

LabeledHypergraph hsbm(const HsbmParams& params) {
  const std::size_t n = params.n, k = params.k, d = params.edge_size;
  if (k == 0 || n == 0) throw Error("hsbm: n and k must be positive");
  if (n % k != 0) throw Error("hsbm: n must be divisible by k (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  if (d < 2) throw Error("hsbm: edge size must be at least 2");
  if (d > n) throw Error("hsbm: edge size exceeds n");
  if (!(params.q_out >= 0.0 && params.q_out <= params.q_in && params.q_in <= 1.0)) {
    throw Error("hsbm: need 0 <= q_out <= q_in <= 1");
  }

  std::vector<ClassId> assignment(n);
  for (NodeId v = 0; v < n; ++v) assignment[v] = hsbm_class(n, k, v);

  const std::uint64_t key = mix64(params.seed);
  std::vector<std::vector<NodeId>> edges;
  std::vector<NodeId> tuple(d);
  for (std::size_t i = 0; i < d; ++i) tuple[i] = static_cast<NodeId>(i);
  for (std::uint64_t index = 0;; ++index) {
    const bool inner = assignment[tuple.front()] == assignment[tuple.back()];
    const double q = inner ? params.q_in : params.q_out;
    if (unit_uniform(mix64(key + index)) < q) edges.push_back(tuple);

    // Next d-subset in lexicographic order.
    std::size_t i = d;
    while (i > 0 && tuple[i - 1] == n - d + i - 1) --i;
    if (i == 0) break;
    ++tuple[i - 1];
    for (std::size_t j = i; j < d; ++j) tuple[j] = tuple[j - 1] + 1;
  }
  return {Hypergraph(n, edges), LabelFunction(std::move(assignment), k)};
}

Hypergraph knn_hypergraph(const FeatureMatrix& features, std::size_t r) {
  const std::size_t n = features.rows.size();
  if (r < 1) throw Error("knn: r must be at least 1");
  if (n < r + 1) throw Error("knn: need at least r + 1 points (n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")");
  for (std::size_t i = 0; i < n; ++i) {
    if (features.rows[i].size() != features.dim) throw Error("knn: row " + std::to_string(i) + " has wrong width");
  }

  std::set<std::vector<NodeId>> seen;
  std::vector<std::vector<NodeId>> edges;
  std::vector<std::pair<double, NodeId>> dist(n - 1);
  for (NodeId i = 0; i < n; ++i) {
    std::size_t at = 0;
    for (NodeId j = 0; j < n; ++j) {
      if (j == i) continue;
      double s = 0.0;
      for (std::size_t c = 0; c < features.dim; ++c) {
        const double diff = features.rows[i][c] - features.rows[j][c];
        s += diff * diff;
      }
      dist[at++] = {s, j};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(r), dist.end());
    std::vector<NodeId> e{i};
    for (std::size_t t = 0; t < r; ++t) e.push_back(dist[t].second);
    std::sort(e.begin(), e.end());
    if (seen.insert(e).second) edges.push_back(std::move(e));
  }
  return Hypergraph(n, edges);
}

namespace {

[[noreturn]] void fail_at(std::size_t line_no, const std::string& what) {
  throw Error("line " + std::to_string(line_no) + ": " + what);
}

bool skip_line(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

}  // namespace

LabelFunction read_labels(std::istream& in) {
  std::vector<std::pair<long long, long long>> entries;
  std::string line;
  std::size_t line_no = 0;
  long long max_node = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    std::istringstream row(line);
    long long v = -1, c = -1;
    std::string extra;
    if (!(row >> v >> c) || (row >> extra)) fail_at(line_no, "expected 'node_id class_id'");
    if (v < 0 || c < 0) fail_at(line_no, "negative id");
    if (v > std::numeric_limits<NodeId>::max() / 2 || c > std::numeric_limits<ClassId>::max() / 2) {
      fail_at(line_no, "id too large");
    }
    entries.emplace_back(v, c);
    max_node = std::max(max_node, v);
  }
  if (entries.empty()) throw Error("label file is empty");
  if (static_cast<std::size_t>(max_node) + 1 != entries.size()) {
    throw Error("label file must list nodes 0.." + std::to_string(entries.size() - 1) + " exactly once");
  }
  std::vector<ClassId> assignment(entries.size(), std::numeric_limits<ClassId>::max());
  for (const auto& [v, c] : entries) {
    if (assignment[v] != std::numeric_limits<ClassId>::max()) throw Error("node " + std::to_string(v) + " labelled twice");
    assignment[v] = static_cast<ClassId>(c);
  }
  return LabelFunction(std::move(assignment));
}

LabelFunction load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_labels(in);
}

void write_labels(std::ostream& out, const LabelFunction& f) {
  for (NodeId v = 0; v < f.num_nodes(); ++v) out << v << ' ' << f[v] << '\n';
}

void save_labels(const std::string& path, const LabelFunction& f) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_labels(out, f);
}

FeatureMatrix read_features(std::istream& in) {
  FeatureMatrix m;
  std::string line, cell;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    while (std::getline(cells, cell, ',')) {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(cell, &used);
      } catch (const std::exception&) {
        fail_at(line_no, "non-numeric value '" + cell + "'");
      }
      if (cell.find_first_not_of(" \t\r", used) != std::string::npos) fail_at(line_no, "non-numeric value '" + cell + "'");
      if (!std::isfinite(x)) fail_at(line_no, "non-finite value");
      row.push_back(x);
    }
    if (row.empty()) fail_at(line_no, "empty row");
    if (m.rows.empty()) {
      m.dim = row.size();
    } else if (row.size() != m.dim) {
      fail_at(line_no, "row " + std::to_string(m.rows.size()) + " has " + std::to_string(row.size()) +
                           " values, expected " + std::to_string(m.dim));
    }
    m.rows.push_back(std::move(row));
  }
  if (m.rows.empty()) throw Error("feature file is empty");
  return m;
}

FeatureMatrix load_features(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_features(in);
}

}  // namespace hs2
