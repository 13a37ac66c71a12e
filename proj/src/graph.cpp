#include "sumfree/graph.hpp"

#include <numeric>
#include <ostream>

namespace sumfree {

DenseGraph::DenseGraph(std::size_t n) : labels_(n), rows_(n, VertexSet(n)) {
  std::iota(labels_.begin(), labels_.end(), 0U);
}

DenseGraph::DenseGraph(std::vector<std::uint32_t> labels)
    : labels_(std::move(labels)), rows_(labels_.size(), VertexSet(labels_.size())) {}

void DenseGraph::add_edge(std::size_t u, std::size_t v) {
  if (u == v) return;
  rows_[u].insert(v);
  rows_[v].insert(u);
}

std::size_t DenseGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& r : rows_) d = std::max(d, r.count());
  return d;
}

std::size_t DenseGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& r : rows_) twice += r.count();
  return twice / 2;
}

std::size_t DenseGraph::edge_count(const VertexSet& a) const {
  std::size_t twice = 0;
  a.for_each([&](std::size_t v) { twice += rows_[v].intersection_count(a); });
  return twice / 2;
}

std::optional<std::size_t> DenseGraph::regular_degree() const {
  if (rows_.empty()) return 0;
  const std::size_t d = rows_[0].count();
  for (const auto& r : rows_)
    if (r.count() != d) return std::nullopt;
  return d;
}

bool DenseGraph::is_symmetric() const {
  for (std::size_t u = 0; u < rows_.size(); ++u) {
    if (rows_[u].contains(u)) return false;
    bool ok = true;
    rows_[u].for_each([&](std::size_t v) {
      if (!rows_[v].contains(u)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

bool DenseGraph::is_connected() const {
  const std::size_t n = rows_.size();
  if (n == 0) return true;
  VertexSet seen(n), frontier(n);
  seen.insert(0);
  frontier.insert(0);
  while (!frontier.empty()) {
    VertexSet next(n);
    frontier.for_each([&](std::size_t v) { next |= rows_[v]; });
    next -= seen;
    seen |= next;
    frontier = std::move(next);
  }
  return seen.count() == n;
}

bool DenseGraph::is_independent(const VertexSet& a) const {
  bool ok = true;
  a.for_each([&](std::size_t v) {
    if (ok && rows_[v].intersects(a)) ok = false;
  });
  return ok;
}

DenseGraph DenseGraph::induced(const VertexSet& keep) const {
  std::vector<std::size_t> idx = keep.to_vector();
  std::vector<std::uint32_t> labels;
  labels.reserve(idx.size());
  for (auto v : idx) labels.push_back(labels_[v]);
  DenseGraph out(std::move(labels));
  std::vector<std::size_t> local(rows_.size(), rows_.size());
  for (std::size_t i = 0; i < idx.size(); ++i) local[idx[i]] = i;
  for (std::size_t i = 0; i < idx.size(); ++i)
    rows_[idx[i]].for_each([&](std::size_t v) {
      if (local[v] < idx.size()) out.rows_[i].insert(local[v]);
    });
  return out;
}

void DenseGraph::write_edge_list(std::ostream& os) const {
  for (std::size_t u = 0; u < rows_.size(); ++u)
    rows_[u].for_each([&](std::size_t v) {
      if (u < v) os << labels_[u] << ' ' << labels_[v] << '\n';
    });
}

DenseGraph cycle_graph(std::size_t n) {
  DenseGraph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

DenseGraph complete_bipartite(std::size_t a, std::size_t b) {
  DenseGraph g(a + b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) g.add_edge(i, a + j);
  return g;
}

DenseGraph complete_graph(std::size_t n) {
  DenseGraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

DenseGraph path_graph(std::size_t n) {
  DenseGraph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

DenseGraph circulant_graph(std::size_t n, const std::vector<std::size_t>& gens) {
  DenseGraph g(n);
  for (std::size_t x = 0; x < n; ++x)
    for (auto s : gens) {
      if (s % n == 0) continue;
      g.add_edge(x, (x + s) % n);
    }
  return g;
}

}  // namespace sumfree
