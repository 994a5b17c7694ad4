#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ckalg {

// Raised for every violated precondition on graph-level data (unknown names,
// non-hereditary sets, malformed files). The CLI maps it to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using VertexSet = std::set<std::string>;

struct Edge {
  std::string name;
  std::size_t src;
  std::size_t dst;
};

// Finite directed multigraph with named vertices and edges. Declaration order
// is preserved and is the order used by serialization and the adjacency matrix.
class Graph {
 public:
  static bool valid_name(std::string_view name);

  // Throws DomainError on duplicate or malformed names.
  std::size_t add_vertex(std::string name);
  std::size_t add_edge(std::string name, std::string_view src,
                       std::string_view dst);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& vertex_name(std::size_t v) const { return vertices_[v]; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }

  bool has_vertex(std::string_view name) const;
  bool has_edge(std::string_view name) const;
  std::optional<std::size_t> find_vertex(std::string_view name) const;
  std::optional<std::size_t> find_edge(std::string_view name) const;
  // Throwing lookups.
  std::size_t vertex_id(std::string_view name) const;
  std::size_t edge_id(std::string_view name) const;

  const std::string& source(std::string_view edge) const;
  const std::string& range(std::string_view edge) const;

  // Edge ids in declaration order.
  const std::vector<std::size_t>& out_edges(std::size_t v) const {
    return out_[v];
  }
  const std::vector<std::size_t>& in_edges(std::size_t v) const {
    return in_[v];
  }
  std::size_t out_degree(std::size_t v) const { return out_[v].size(); }
  std::size_t in_degree(std::size_t v) const { return in_[v].size(); }

  // Lexicographically least edge emitted by v; nullopt for sinks.
  std::optional<std::size_t> designated_edge(std::size_t v) const;

  std::string serialize() const;
  static Graph parse(std::string_view text);

  // 64-bit FNV-1a over serialize().
  std::uint64_t hash() const;
  std::string hash_hex() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.serialize() == b.serialize();
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> vertex_index_;
  std::unordered_map<std::string, std::size_t> edge_index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex16(std::uint64_t value);

// A path e1...en with r(ei) = s(ei+1), or a length-0 path at a vertex.
struct Path {
  std::string start;
  std::string end;
  std::vector<std::string> edges;

  static Path vertex(const Graph& g, std::string_view v);
  // Throws DomainError when the edges do not compose or are unknown.
  static Path from_edges(const Graph& g, std::vector<std::string> edges);

  std::size_t length() const { return edges.size(); }
  bool is_vertex() const { return edges.empty(); }
  // Distinct vertices visited, sorted.
  VertexSet vertex_set(const Graph& g) const;
  // Concatenation; requires a.end == b.start.
  static Path concat(const Path& a, const Path& b);
  // "e1.e2.e3", or the vertex name for length 0.
  std::string to_string() const;

  friend auto operator<=>(const Path&, const Path&) = default;
  friend bool operator==(const Path&, const Path&) = default;
};

struct VertexClassification {
  VertexSet sinks;
  VertexSet sources;
  VertexSet regular;
  VertexSet singular;
};

VertexClassification classify(const Graph& g);

bool reaches(const Graph& g, std::string_view from, std::string_view to);

VertexSet hereditary_closure(const Graph& g, const VertexSet& x);
VertexSet saturated_closure(const Graph& g, const VertexSet& h);
VertexSet hs_closure(const Graph& g, const VertexSet& x);
bool is_hereditary(const Graph& g, const VertexSet& h);

// Each cycle is rotated to start at its lexicographically least vertex.
std::vector<Path> cycles_without_exits(const Graph& g);
std::vector<Path> distinguished_paths(const Graph& g, std::size_t max_len);

Graph restrict(const Graph& g, const VertexSet& h);
Graph complement_graph(const Graph& g, const VertexSet& h);

// Sorted sink/source-free helpers used across modules.
bool has_sinks(const Graph& g);
bool has_sources(const Graph& g);

// Throws DomainError if any name in the set is not a vertex of g.
void require_vertices(const Graph& g, const VertexSet& s);

VertexSet all_vertices(const Graph& g);

}  // namespace ckalg
