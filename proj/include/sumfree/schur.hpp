#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "sumfree/graph.hpp"
#include "sumfree/group.hpp"
#include "sumfree/vertex_set.hpp"

namespace sumfree {

/// The 3-uniform hypergraph of Schur triples of a group.
///
/// Edges are the 3-element sets {x,y,z} with x + y = z for some labeling.
/// They are never materialized; queries use group arithmetic directly.
/// Degenerate solutions x + x = z are not edges. With `include_degenerate`
/// set they are kept as separate constraints ({0} and pairs {x, 2x}) which
/// is_independent also enforces, making independence equal to sum-freeness.
class SchurHypergraph {
 public:
  explicit SchurHypergraph(GroupSpec group, bool include_degenerate = false)
      : group_(std::move(group)), include_degenerate_(include_degenerate) {}

  const GroupSpec& group() const noexcept { return group_; }
  bool include_degenerate() const noexcept { return include_degenerate_; }
  std::size_t vertex_count() const noexcept { return group_.order(); }

  /// Third vertices w with {u,v,w} an edge (u != v). At most three.
  std::vector<Element> completions(Element u, Element v) const;

 private:
  GroupSpec group_;
  bool include_degenerate_;
};

struct HypergraphStats {
  std::size_t edge_count = 0;
  std::size_t delta2 = 0;
  std::vector<std::size_t> degrees;
};

/// (A + A) ∩ A = ∅, with x = y allowed.
bool is_sum_free(const GroupSpec& g, const VertexSet& a);

/// No edge of H inside A (plus the degenerate constraints when enabled).
bool is_independent(const SchurHypergraph& h, const VertexSet& a);

/// Number of edges of H with all three vertices in A.
std::size_t schur_triple_count(const SchurHypergraph& h, const VertexSet& a);

/// Maximum co-degree over vertex pairs.
std::size_t delta2(const SchurHypergraph& h);

HypergraphStats hypergraph_stats(const SchurHypergraph& h);

/// Graph on A (local indices follow A's index order) with u ~ v iff
/// {u,v,w} is an edge for some w in T.
DenseGraph link_graph(const SchurHypergraph& h, const VertexSet& t, const VertexSet& a);

/// G_T on the full vertex set of H; local index = element index.
DenseGraph link_graph_full(const SchurHypergraph& h, const VertexSet& t);

/// Number of edges of G_z[A], i.e. pairs {x,y} ⊆ A with {x,y,z} an edge.
std::size_t link_edge_count(const SchurHypergraph& h, Element z, const VertexSet& a);

enum class CayleyVertexMode { full, exclude_S };

/// x ~ y iff x - y ∈ S ∪ (-S). Rejects 0 ∈ S.
DenseGraph cayley_graph_star(const GroupSpec& g, const VertexSet& s, CayleyVertexMode mode);

}  // namespace sumfree
