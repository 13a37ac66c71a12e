#include "sumfree/schur.hpp"

#include <algorithm>

#include "sumfree/errors.hpp"

namespace sumfree {

namespace {

void check_universe(const GroupSpec& g, const VertexSet& a) {
  if (a.universe() != g.order())
    throw DomainError("element set universe does not match group " + g.to_string());
}

// Each edge {p<q<r} is counted once: from the first summand pair among
// {p,q}, {p,r}, {q,r} that actually sums to the third vertex.
bool is_canonical_summand_pair(const GroupSpec& g, Element x, Element y, Element z) {
  Element v[3] = {x, y, z};
  std::sort(v, v + 3);
  const std::array<std::array<Element, 3>, 3> pairs = {
      {{v[0], v[1], v[2]}, {v[0], v[2], v[1]}, {v[1], v[2], v[0]}}};
  const Element lo = std::min(x, y), hi = std::max(x, y);
  for (const auto& p : pairs) {
    if (g.add(p[0], p[1]) == p[2]) return p[0] == lo && p[1] == hi;
  }
  return false;
}

}  // namespace

std::vector<Element> SchurHypergraph::completions(Element u, Element v) const {
  std::vector<Element> out;
  if (u == v) return out;
  const Element cand[3] = {group_.add(u, v), group_.sub(u, v), group_.sub(v, u)};
  for (Element w : cand) {
    if (w == u || w == v) continue;
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
  }
  return out;
}

bool is_sum_free(const GroupSpec& g, const VertexSet& a) {
  check_universe(g, a);
  const auto members = a.to_vector();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i; j < members.size(); ++j)
      if (a.contains(g.add(static_cast<Element>(members[i]), static_cast<Element>(members[j]))))
        return false;
  return true;
}

bool is_independent(const SchurHypergraph& h, const VertexSet& a) {
  const GroupSpec& g = h.group();
  check_universe(g, a);
  const auto members = a.to_vector();
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto x = static_cast<Element>(members[i]);
    if (h.include_degenerate() && a.contains(g.add(x, x))) return false;
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const auto y = static_cast<Element>(members[j]);
      const Element z = g.add(x, y);
      if (z != x && z != y && a.contains(z)) return false;
    }
  }
  return true;
}

std::size_t schur_triple_count(const SchurHypergraph& h, const VertexSet& a) {
  const GroupSpec& g = h.group();
  check_universe(g, a);
  const auto members = a.to_vector();
  std::size_t count = 0;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const auto x = static_cast<Element>(members[i]);
      const auto y = static_cast<Element>(members[j]);
      const Element z = g.add(x, y);
      if (z == x || z == y || !a.contains(z)) continue;
      if (is_canonical_summand_pair(g, x, y, z)) ++count;
    }
  return count;
}

std::size_t delta2(const SchurHypergraph& h) {
  std::size_t best = 0;
  const auto n = static_cast<Element>(h.vertex_count());
  for (Element u = 0; u < n; ++u)
    for (Element v = u + 1; v < n; ++v) best = std::max(best, h.completions(u, v).size());
  return best;
}

HypergraphStats hypergraph_stats(const SchurHypergraph& h) {
  HypergraphStats st;
  const auto n = static_cast<Element>(h.vertex_count());
  st.degrees.assign(n, 0);
  // sum over pairs of co-degree = 3 e(H); vertex degree = (sum of its co-degrees) / 2
  std::size_t pair_sum = 0;
  for (Element u = 0; u < n; ++u)
    for (Element v = u + 1; v < n; ++v) {
      const std::size_t c = h.completions(u, v).size();
      pair_sum += c;
      st.delta2 = std::max(st.delta2, c);
      st.degrees[u] += c;
      st.degrees[v] += c;
    }
  for (auto& d : st.degrees) d /= 2;
  st.edge_count = pair_sum / 3;
  return st;
}

DenseGraph link_graph(const SchurHypergraph& h, const VertexSet& t, const VertexSet& a) {
  const GroupSpec& g = h.group();
  check_universe(g, t);
  check_universe(g, a);
  const auto verts = a.to_vector();
  std::vector<std::uint32_t> labels(verts.begin(), verts.end());
  DenseGraph out(std::move(labels));
  std::vector<std::size_t> local(g.order(), g.order());
  for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = i;
  t.for_each([&](std::size_t wi) {
    const auto w = static_cast<Element>(wi);
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const auto u = static_cast<Element>(verts[i]);
      if (u == w) continue;
      const Element cand[3] = {g.sub(w, u), g.add(u, w), g.sub(u, w)};
      for (Element v : cand) {
        if (v == u || v == w || local[v] == g.order()) continue;
        out.add_edge(i, local[v]);
      }
    }
  });
  return out;
}

DenseGraph link_graph_full(const SchurHypergraph& h, const VertexSet& t) {
  return link_graph(h, t, VertexSet::full(h.vertex_count()));
}

std::size_t link_edge_count(const SchurHypergraph& h, Element z, const VertexSet& a) {
  const GroupSpec& g = h.group();
  std::size_t ordered = 0;
  a.for_each([&](std::size_t xi) {
    const auto x = static_cast<Element>(xi);
    if (x == z) return;
    Element cand[3] = {g.sub(z, x), g.add(x, z), g.sub(x, z)};
    for (int i = 0; i < 3; ++i) {
      const Element y = cand[i];
      if (y == x || y == z || !a.contains(y)) continue;
      bool dup = false;
      for (int j = 0; j < i; ++j) dup = dup || cand[j] == y;
      if (!dup) ++ordered;
    }
  });
  return ordered / 2;
}

DenseGraph cayley_graph_star(const GroupSpec& g, const VertexSet& s, CayleyVertexMode mode) {
  check_universe(g, s);
  if (s.contains(0)) throw DomainError("Cayley connection set must not contain 0");
  VertexSet verts = VertexSet::full(g.order());
  if (mode == CayleyVertexMode::exclude_S) verts -= s;
  const auto idx = verts.to_vector();
  std::vector<std::uint32_t> labels(idx.begin(), idx.end());
  DenseGraph out(std::move(labels));
  std::vector<std::size_t> local(g.order(), g.order());
  for (std::size_t i = 0; i < idx.size(); ++i) local[idx[i]] = i;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto x = static_cast<Element>(idx[i]);
    s.for_each([&](std::size_t si) {
      const Element y = g.add(x, static_cast<Element>(si));
      if (local[y] != g.order()) out.add_edge(i, local[y]);
    });
  }
  return out;
}

}  // namespace sumfree
