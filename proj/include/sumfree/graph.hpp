#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sumfree/vertex_set.hpp"

namespace sumfree {

/// Simple undirected graph with bit-vector adjacency rows.
///
/// Vertices are local indices 0..size()-1; each carries a label (a group
/// element index when the graph comes from a group). Local index order is
/// the predefined ordering used for tie-breaks.
class DenseGraph {
 public:
  DenseGraph() = default;
  explicit DenseGraph(std::size_t n);
  DenseGraph(std::vector<std::uint32_t> labels);

  std::size_t size() const noexcept { return rows_.size(); }
  const std::vector<std::uint32_t>& labels() const noexcept { return labels_; }
  std::uint32_t label(std::size_t v) const { return labels_[v]; }

  /// Adds {u,v}; self-loops are ignored.
  void add_edge(std::size_t u, std::size_t v);
  bool has_edge(std::size_t u, std::size_t v) const { return rows_[u].contains(v); }
  const VertexSet& neighbors(std::size_t v) const { return rows_[v]; }
  std::size_t degree(std::size_t v) const { return rows_[v].count(); }
  std::size_t max_degree() const;
  std::size_t edge_count() const;
  /// Number of edges with both ends in `a`.
  std::size_t edge_count(const VertexSet& a) const;

  /// The common degree d when the graph is d-regular.
  std::optional<std::size_t> regular_degree() const;

  bool is_symmetric() const;
  bool is_connected() const;
  bool is_independent(const VertexSet& a) const;

  /// Induced subgraph on `keep`; labels are carried over.
  DenseGraph induced(const VertexSet& keep) const;

  /// One "u v" line per edge (u < v), vertices by label.
  void write_edge_list(std::ostream& os) const;

 private:
  std::vector<std::uint32_t> labels_;
  std::vector<VertexSet> rows_;
};

/// Cycle C_n on vertices 0..n-1.
DenseGraph cycle_graph(std::size_t n);
/// Complete bipartite K_{a,b}; the first side is 0..a-1.
DenseGraph complete_bipartite(std::size_t a, std::size_t b);
DenseGraph complete_graph(std::size_t n);
DenseGraph path_graph(std::size_t n);
/// Circulant on Z_n with connection set `gens` (closed under negation internally).
DenseGraph circulant_graph(std::size_t n, const std::vector<std::size_t>& gens);

}  // namespace sumfree
