#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "ckalg/graph.hpp"
#include "ckalg/lpa.hpp"

namespace ckalg {

// A directed forest T inside a host graph: acyclic, every vertex receives at
// most one T-edge, roots are the vertices receiving none.
struct Forest {
  VertexSet vertices;
  std::set<std::string> edges;
  VertexSet roots;
  std::map<std::string, std::string> parent_edge;  // non-root -> incoming T-edge

  // Validates against the host; T⁰ = roots ∪ endpoints of T-edges.
  static Forest from_edges(const Graph& g, VertexSet roots,
                           std::set<std::string> edges);

  // Vertices emitting no T-edge.
  VertexSet leaves(const Graph& g) const;

  std::string serialize() const;
  static Forest parse(const Graph& g, std::string_view text);

  friend bool operator==(const Forest&, const Forest&) = default;
};

// Grows the forest from X by repeatedly adding the lexicographically least
// edge from a reached vertex to an unreached one. Requires ∅ ≠ X ⊊ E⁰.
Forest build_forest(const Graph& g, const VertexSet& x);

// The unique T-path from a root to v.
Path tau(const Graph& g, const Forest& t, std::string_view v);

// Throws DomainError unless T⁰ = H(T^r) and T^r ⊊ E⁰.
void require_corner_forest(const Graph& g, const Forest& t);

Graph t_corner(const Graph& g, const Forest& t);

// Q_v for v in E(T)⁰ and T_{e_u} for e_u in E(T)¹, as elements of L(g).
Family corner_family(const Graph& g, const Forest& t);

// Q_v for any v in T⁰.
Element corner_projection(const Graph& g, const Forest& t, std::string_view v);

WeightMap corner_weights(const Graph& g, const Forest& t);

// Corner of M_nE at X = ⋃ {v, v.h1, ..., v.h(m_v − 1)}. The induced subgraph
// on X is returned after cross-checking it against t_corner.
Graph full_idempotent_corner(const Graph& g,
                             const std::map<std::string, std::size_t>& m,
                             std::size_t n);

// E(T) for X inside the stabilization SE, computed in the depth-k fragment
// (at least depth 1) and confirmed at depth k + 1.
Graph se_corner(const Graph& g, const VertexSet& x, std::size_t k);

// Same vertex names and the same multiset of (source, range) pairs.
bool same_shape(const Graph& a, const Graph& b);

}  // namespace ckalg
