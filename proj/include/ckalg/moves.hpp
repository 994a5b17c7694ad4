#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ckalg/graph.hpp"

namespace ckalg {

// Isomorphism-preserving graph transformations and the desourcification
// pipeline. Every function returns a new graph; inputs are never modified.
//
// Generated names:
//   expand_hereditary  path-vertex "e1.e2.e3", edge "ov_e1.e2.e3"
//   attach_head        vertex "v.hN", edge "v.eN"
//   subdivide_edge     vertex "e.vN", edge "e.eN"
//   attach_sources     vertex "v.sN", edge "v.tN"

// Paths e1...en with s(en) outside H and r(en) in H, ordered by length and
// then by name. Throws DomainError when the set is infinite.
std::vector<Path> boundary_paths(const Graph& g, const VertexSet& h);

Graph expand_hereditary(const Graph& g, const VertexSet& h);

struct Thm1Report {
  bool hereditary = false;
  bool complement_acyclic = false;
  bool all_reach_h = false;
  bool boundary_finite = true;
  bool verdict = false;
};

Thm1Report thm1_preconditions(const Graph& g, const VertexSet& h);

Graph attach_head(const Graph& g, std::string_view v0, std::size_t n);
Graph subdivide_edge(const Graph& g, std::string_view e0, std::size_t n);
Graph attach_sources(const Graph& g, std::string_view v0, std::size_t n);
Graph eliminate_source(const Graph& g, std::string_view v);

Graph matrix_graph(const Graph& g, std::size_t n);
Graph stabilization_fragment(const Graph& g, std::size_t k);

enum class MoveKind {
  ExpandHereditary,
  AttachHead,
  SubdivideEdge,
  AttachSources,
  EliminateSource,
};

std::string_view to_string(MoveKind kind);
MoveKind parse_move_kind(std::string_view text);

struct MoveRecord {
  MoveKind kind;
  // ExpandHereditary: {comma-separated H or "-" when empty}
  // AttachHead/AttachSources: {v0, n}; SubdivideEdge: {e0, n}
  // EliminateSource: {v}
  std::vector<std::string> params;
  std::string in_hash;
  std::string out_hash;

  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

struct MoveTrace {
  std::vector<MoveRecord> records;

  bool empty() const { return records.empty(); }
  // One "move <kind> <params...> <in-hash> <out-hash>" line per record.
  std::string serialize() const;
  static MoveTrace parse(std::string_view text);

  friend bool operator==(const MoveTrace&, const MoveTrace&) = default;
};

// Applies one move without hash checks.
Graph apply_move(const Graph& g, MoveKind kind,
                 const std::vector<std::string>& params);

// Applies the move and appends its record to the trace.
Graph apply_recorded(const Graph& g, MoveKind kind,
                     std::vector<std::string> params, MoveTrace& trace);

// Replays every record, checking the input and output hash of each step.
// Throws DomainError on the first mismatch.
Graph replay(const Graph& input, const MoveTrace& trace);

// Pipeline to a graph with no sinks and no sources. The sources removed while
// locating the source-free core F are not part of the trace: the chain starts
// with ExpandHereditary(F⁰) applied to the input itself.
std::pair<Graph, MoveTrace> desourcify(const Graph& g);

std::string join_vertices(const VertexSet& s, char sep = ',');
VertexSet split_vertices(std::string_view text, char sep = ',');

}  // namespace ckalg
