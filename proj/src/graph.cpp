#include "ckalg/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace ckalg {

bool Graph::valid_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '.';
  });
}

std::size_t Graph::add_vertex(std::string name) {
  if (!valid_name(name)) throw DomainError("invalid vertex name '" + name + "'");
  if (vertex_index_.count(name))
    throw DomainError("duplicate vertex '" + name + "'");
  const std::size_t id = vertices_.size();
  vertex_index_.emplace(name, id);
  vertices_.push_back(std::move(name));
  out_.emplace_back();
  in_.emplace_back();
  return id;
}

std::size_t Graph::add_edge(std::string name, std::string_view src,
                            std::string_view dst) {
  if (!valid_name(name)) throw DomainError("invalid edge name '" + name + "'");
  if (edge_index_.count(name))
    throw DomainError("duplicate edge '" + name + "'");
  const std::size_t s = vertex_id(src);
  const std::size_t d = vertex_id(dst);
  const std::size_t id = edges_.size();
  edge_index_.emplace(name, id);
  edges_.push_back(Edge{std::move(name), s, d});
  out_[s].push_back(id);
  in_[d].push_back(id);
  return id;
}

bool Graph::has_vertex(std::string_view name) const {
  return vertex_index_.count(std::string(name)) != 0;
}

bool Graph::has_edge(std::string_view name) const {
  return edge_index_.count(std::string(name)) != 0;
}

std::optional<std::size_t> Graph::find_vertex(std::string_view name) const {
  auto it = vertex_index_.find(std::string(name));
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Graph::find_edge(std::string_view name) const {
  auto it = edge_index_.find(std::string(name));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Graph::vertex_id(std::string_view name) const {
  if (auto v = find_vertex(name)) return *v;
  throw DomainError("unknown vertex '" + std::string(name) + "'");
}

std::size_t Graph::edge_id(std::string_view name) const {
  if (auto e = find_edge(name)) return *e;
  throw DomainError("unknown edge '" + std::string(name) + "'");
}

const std::string& Graph::source(std::string_view edge) const {
  return vertices_[edges_[edge_id(edge)].src];
}

const std::string& Graph::range(std::string_view edge) const {
  return vertices_[edges_[edge_id(edge)].dst];
}

std::optional<std::size_t> Graph::designated_edge(std::size_t v) const {
  const auto& out = out_[v];
  if (out.empty()) return std::nullopt;
  return *std::min_element(out.begin(), out.end(),
                           [this](std::size_t a, std::size_t b) {
                             return edges_[a].name < edges_[b].name;
                           });
}

std::string Graph::serialize() const {
  std::string out;
  for (const auto& v : vertices_) {
    out += "vertex ";
    out += v;
    out += '\n';
  }
  for (const auto& e : edges_) {
    out += "edge ";
    out += e.name;
    out += ' ';
    out += vertices_[e.src];
    out += ' ';
    out += vertices_[e.dst];
    out += '\n';
  }
  return out;
}

Graph Graph::parse(std::string_view text) {
  Graph g;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    std::vector<std::string> args;
    for (std::string tok; ls >> tok;) args.push_back(tok);
    try {
      if (kw == "vertex" && args.size() == 1) {
        g.add_vertex(args[0]);
      } else if (kw == "edge" && args.size() == 3) {
        g.add_edge(args[0], args[1], args[2]);
      } else {
        throw DomainError("expected 'vertex <name>' or 'edge <name> <src> <dst>'");
      }
    } catch (const DomainError& err) {
      throw DomainError("line " + std::to_string(lineno) + ": " + err.what());
    }
  }
  return g;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex16(std::uint64_t value) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[value & 0xf];
    value >>= 4;
  }
  return s;
}

std::uint64_t Graph::hash() const { return fnv1a64(serialize()); }
std::string Graph::hash_hex() const { return hex16(hash()); }

// ---------------------------------------------------------------------------
// Path

Path Path::vertex(const Graph& g, std::string_view v) {
  g.vertex_id(v);
  return Path{std::string(v), std::string(v), {}};
}

Path Path::from_edges(const Graph& g, std::vector<std::string> edges) {
  if (edges.empty()) throw DomainError("path needs at least one edge");
  Path p;
  p.start = g.source(edges.front());
  std::string at = p.start;
  for (const auto& e : edges) {
    if (g.source(e) != at)
      throw DomainError("edges do not compose at '" + e + "'");
    at = g.range(e);
  }
  p.end = at;
  p.edges = std::move(edges);
  return p;
}

VertexSet Path::vertex_set(const Graph& g) const {
  VertexSet s{start};
  for (const auto& e : edges) s.insert(g.range(e));
  return s;
}

Path Path::concat(const Path& a, const Path& b) {
  Path p{a.start, b.end, a.edges};
  p.edges.insert(p.edges.end(), b.edges.begin(), b.edges.end());
  return p;
}

std::string Path::to_string() const {
  if (edges.empty()) return start;
  std::string s = edges.front();
  for (std::size_t i = 1; i < edges.size(); ++i) {
    s += '.';
    s += edges[i];
  }
  return s;
}

// ---------------------------------------------------------------------------
// Vertex vocabulary and closures

VertexSet all_vertices(const Graph& g) {
  return VertexSet(g.vertices().begin(), g.vertices().end());
}

void require_vertices(const Graph& g, const VertexSet& s) {
  for (const auto& v : s) g.vertex_id(v);
}

VertexClassification classify(const Graph& g) {
  VertexClassification c;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& name = g.vertex_name(v);
    if (g.out_degree(v) == 0) {
      c.sinks.insert(name);
      c.singular.insert(name);
    } else {
      c.regular.insert(name);
    }
    if (g.in_degree(v) == 0) c.sources.insert(name);
  }
  return c;
}

bool has_sinks(const Graph& g) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.out_degree(v) == 0) return true;
  return false;
}

bool has_sources(const Graph& g) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.in_degree(v) == 0) return true;
  return false;
}

namespace {

std::vector<bool> forward_closure(const Graph& g, std::vector<bool> seen) {
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (seen[v]) queue.push_back(v);
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : g.out_edges(v)) {
      const std::size_t w = g.edge(e).dst;
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<bool> to_mask(const Graph& g, const VertexSet& s) {
  std::vector<bool> mask(g.vertex_count(), false);
  for (const auto& v : s) mask[g.vertex_id(v)] = true;
  return mask;
}

VertexSet from_mask(const Graph& g, const std::vector<bool>& mask) {
  VertexSet s;
  for (std::size_t v = 0; v < mask.size(); ++v)
    if (mask[v]) s.insert(g.vertex_name(v));
  return s;
}

}  // namespace

bool reaches(const Graph& g, std::string_view from, std::string_view to) {
  std::vector<bool> seed(g.vertex_count(), false);
  seed[g.vertex_id(from)] = true;
  const std::size_t target = g.vertex_id(to);
  return forward_closure(g, std::move(seed))[target];
}

VertexSet hereditary_closure(const Graph& g, const VertexSet& x) {
  return from_mask(g, forward_closure(g, to_mask(g, x)));
}

bool is_hereditary(const Graph& g, const VertexSet& h) {
  return hereditary_closure(g, h) == h;
}

VertexSet saturated_closure(const Graph& g, const VertexSet& h) {
  auto mask = to_mask(g, h);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (mask[v] || g.out_degree(v) == 0) continue;
      const auto& out = g.out_edges(v);
      if (std::all_of(out.begin(), out.end(),
                      [&](std::size_t e) { return mask[g.edge(e).dst]; })) {
        mask[v] = true;
        changed = true;
      }
    }
  }
  return from_mask(g, mask);
}

VertexSet hs_closure(const Graph& g, const VertexSet& x) {
  VertexSet cur = x;
  while (true) {
    VertexSet next = saturated_closure(g, hereditary_closure(g, cur));
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

std::vector<Path> cycles_without_exits(const Graph& g) {
  // On vertices of out-degree one the successor map is a function; the
  // cycles of that functional graph are exactly the exit-free cycles.
  const std::size_t n = g.vertex_count();
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
  std::vector<Path> cycles;
  for (std::size_t start = 0; start < n; ++start) {
    if (state[start] != 0) continue;
    std::vector<std::size_t> stack;
    std::size_t v = start;
    while (state[v] == 0 && g.out_degree(v) == 1) {
      state[v] = 1;
      stack.push_back(v);
      v = g.edge(g.out_edges(v).front()).dst;
    }
    if (state[v] == 1) {
      auto first = std::find(stack.begin(), stack.end(), v);
      std::vector<std::size_t> cyc(first, stack.end());
      auto least = std::min_element(
          cyc.begin(), cyc.end(), [&](std::size_t a, std::size_t b) {
            return g.vertex_name(a) < g.vertex_name(b);
          });
      std::rotate(cyc.begin(), least, cyc.end());
      std::vector<std::string> edges;
      for (std::size_t u : cyc)
        edges.push_back(g.edge(g.out_edges(u).front()).name);
      cycles.push_back(Path::from_edges(g, std::move(edges)));
    }
    for (std::size_t u : stack) state[u] = 2;
    state[v] = 2;
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const Path& a, const Path& b) { return a.start < b.start; });
  return cycles;
}

std::vector<Path> distinguished_paths(const Graph& g, std::size_t max_len) {
  std::vector<Path> layer;
  for (const auto& c : cycles_without_exits(g))
    for (const auto& v : c.vertex_set(g)) layer.push_back(Path::vertex(g, v));
  std::sort(layer.begin(), layer.end());
  std::vector<Path> all = layer;
  for (std::size_t len = 1; len <= max_len && !layer.empty(); ++len) {
    std::vector<Path> next;
    for (const auto& p : layer) {
      for (std::size_t e : g.in_edges(g.vertex_id(p.start))) {
        Path q{g.vertex_name(g.edge(e).src), p.end, {g.edge(e).name}};
        q.edges.insert(q.edges.end(), p.edges.begin(), p.edges.end());
        next.push_back(std::move(q));
      }
    }
    std::sort(next.begin(), next.end());
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return all;
}

Graph restrict(const Graph& g, const VertexSet& h) {
  require_vertices(g, h);
  if (!is_hereditary(g, h)) throw DomainError("vertex set is not hereditary");
  Graph out;
  for (const auto& v : g.vertices())
    if (h.count(v)) out.add_vertex(v);
  for (const auto& e : g.edges())
    if (h.count(g.vertex_name(e.src)))
      out.add_edge(e.name, g.vertex_name(e.src), g.vertex_name(e.dst));
  return out;
}

Graph complement_graph(const Graph& g, const VertexSet& h) {
  require_vertices(g, h);
  Graph out;
  for (const auto& v : g.vertices())
    if (!h.count(v)) out.add_vertex(v);
  for (const auto& e : g.edges()) {
    const auto& s = g.vertex_name(e.src);
    const auto& d = g.vertex_name(e.dst);
    if (!h.count(s) && !h.count(d)) out.add_edge(e.name, s, d);
  }
  return out;
}

}  // namespace ckalg
