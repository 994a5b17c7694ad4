#include "ckalg/corners.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "ckalg/moves.hpp"

namespace ckalg {

Forest Forest::from_edges(const Graph& g, VertexSet roots,
                          std::set<std::string> edges) {
  require_vertices(g, roots);
  Forest t;
  t.vertices = roots;
  for (const auto& e : edges) {
    const auto& s = g.source(e);
    const auto& r = g.range(e);
    t.vertices.insert(s);
    t.vertices.insert(r);
    if (!t.parent_edge.emplace(r, e).second)
      throw DomainError("vertex '" + r + "' receives two forest edges");
  }
  for (const auto& v : t.vertices)
    if (!t.parent_edge.count(v) && !roots.count(v))
      throw DomainError("vertex '" + v + "' receives no forest edge but is not a root");
  for (const auto& r : roots)
    if (t.parent_edge.count(r))
      throw DomainError("root '" + r + "' receives a forest edge");
  // Following parents from any vertex must end at a root.
  for (const auto& v : t.vertices) {
    std::string at = v;
    for (std::size_t steps = 0; t.parent_edge.count(at); ++steps) {
      if (steps > t.vertices.size()) throw DomainError("forest edges contain a cycle");
      at = g.source(t.parent_edge.at(at));
    }
  }
  t.edges = std::move(edges);
  t.roots = std::move(roots);
  return t;
}

VertexSet Forest::leaves(const Graph& g) const {
  VertexSet l = vertices;
  for (const auto& e : edges) l.erase(g.source(e));
  return l;
}

std::string Forest::serialize() const {
  std::string out;
  for (const auto& r : roots) out += "root " + r + "\n";
  for (const auto& e : edges) out += "tedge " + e + "\n";
  return out;
}

Forest Forest::parse(const Graph& g, std::string_view text) {
  VertexSet roots;
  std::set<std::string> edges;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string s; ls >> s;) tok.push_back(s);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok.size() == 2 && tok[0] == "root") {
      roots.insert(tok[1]);
    } else if (tok.size() == 2 && tok[0] == "tedge") {
      g.edge_id(tok[1]);
      edges.insert(tok[1]);
    } else {
      throw DomainError("forest line " + std::to_string(lineno) +
                        ": expected 'root <v>' or 'tedge <e>'");
    }
  }
  return Forest::from_edges(g, std::move(roots), std::move(edges));
}

Forest build_forest(const Graph& g, const VertexSet& x) {
  require_vertices(g, x);
  if (x.empty()) throw DomainError("root set is empty");
  if (x.size() == g.vertex_count()) throw DomainError("root set is all of E0");
  std::vector<bool> reached(g.vertex_count(), false);
  for (const auto& v : x) reached[g.vertex_id(v)] = true;
  std::set<std::string> tedges;
  for (;;) {
    std::optional<std::size_t> best;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& edge = g.edge(e);
      if (!reached[edge.src] || reached[edge.dst]) continue;
      if (!best || edge.name < g.edge(*best).name) best = e;
    }
    if (!best) break;
    reached[g.edge(*best).dst] = true;
    tedges.insert(g.edge(*best).name);
  }
  return Forest::from_edges(g, x, std::move(tedges));
}

Path tau(const Graph& g, const Forest& t, std::string_view v) {
  if (!t.vertices.count(std::string(v)))
    throw DomainError("vertex '" + std::string(v) + "' is not in the forest");
  std::vector<std::string> rev;
  std::string at(v);
  while (t.parent_edge.count(at)) {
    rev.push_back(t.parent_edge.at(at));
    at = g.source(rev.back());
  }
  if (rev.empty()) return Path::vertex(g, v);
  std::reverse(rev.begin(), rev.end());
  return Path::from_edges(g, std::move(rev));
}

void require_corner_forest(const Graph& g, const Forest& t) {
  if (t.roots.empty()) throw DomainError("forest has no roots");
  if (t.roots.size() == g.vertex_count()) throw DomainError("root set is all of E0");
  if (hereditary_closure(g, t.roots) != t.vertices)
    throw DomainError("forest vertices are not the hereditary closure of its roots");
}

namespace {

// E(T)⁰ in host declaration order.
std::vector<std::string> corner_vertices(const Graph& g, const Forest& t) {
  std::vector<std::string> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& name = g.vertex_name(v);
    if (!t.vertices.count(name)) continue;
    const auto& emitted = g.out_edges(v);
    const bool all_tree = !emitted.empty() &&
                          std::all_of(emitted.begin(), emitted.end(), [&](std::size_t e) {
                            return t.edges.count(g.edge(e).name) != 0;
                          });
    if (!all_tree) out.push_back(name);
  }
  return out;
}

// u ≥_T-reachable from `from` (length-0 paths included).
bool t_reaches(const Graph& g, const Forest& t, const std::string& from,
               const std::string& u) {
  std::string at = u;
  for (;;) {
    if (at == from) return true;
    auto it = t.parent_edge.find(at);
    if (it == t.parent_edge.end()) return false;
    at = g.source(it->second);
  }
}

struct CornerEdge {
  std::string name;  // "<e>_<u>"
  std::string host_edge;
  std::string u;
};

std::vector<CornerEdge> corner_edges(const Graph& g, const Forest& t,
                                     const std::vector<std::string>& verts) {
  std::vector<CornerEdge> out;
  for (const auto& e : g.edges()) {
    if (t.edges.count(e.name) || !t.vertices.count(g.vertex_name(e.src))) continue;
    for (const auto& u : verts)
      if (t_reaches(g, t, g.vertex_name(e.dst), u))
        out.push_back({e.name + "_" + u, e.name, u});
  }
  return out;
}

}  // namespace

Graph t_corner(const Graph& g, const Forest& t) {
  require_corner_forest(g, t);
  const auto verts = corner_vertices(g, t);
  Graph out;
  for (const auto& v : verts) out.add_vertex(v);
  for (const auto& ce : corner_edges(g, t, verts))
    out.add_edge(ce.name, g.source(ce.host_edge), ce.u);
  return out;
}

Element corner_projection(const Graph& g, const Forest& t, std::string_view v) {
  const Path tv = tau(g, t, v);
  const Element p = Element::path(tv);
  Element q = p * star(p);
  for (std::size_t e : g.out_edges(g.vertex_id(v))) {
    if (!t.edges.count(g.edge(e).name)) continue;
    const Element pe = p * Element::edge(g, g.edge(e).name);
    q -= pe * star(pe);
  }
  return q;
}

Family corner_family(const Graph& g, const Forest& t) {
  require_corner_forest(g, t);
  const auto verts = corner_vertices(g, t);
  Family f;
  for (const auto& v : verts) f.vertices[v] = corner_projection(g, t, v);
  for (const auto& ce : corner_edges(g, t, verts)) {
    const Element head = Element::path(tau(g, t, g.source(ce.host_edge)));
    const Element tail = Element::path(tau(g, t, g.range(ce.host_edge)));
    f.edges[ce.name] =
        head * Element::edge(g, ce.host_edge) * star(tail) * f.vertices.at(ce.u);
  }
  return f;
}

WeightMap corner_weights(const Graph& g, const Forest& t) {
  WeightMap w;
  for (const auto& e : g.edges()) {
    const auto& s = g.vertex_name(e.src);
    const auto& r = g.vertex_name(e.dst);
    if (!t.edges.count(e.name) && t.vertices.count(s) && t.vertices.count(r)) {
      w[e.name] = static_cast<std::int64_t>(tau(g, t, r).length()) -
                  static_cast<std::int64_t>(tau(g, t, s).length()) + 1;
    } else {
      w[e.name] = 1;
    }
  }
  return w;
}

bool same_shape(const Graph& a, const Graph& b) {
  if (a.vertices() != b.vertices()) return false;
  std::multiset<std::pair<std::string, std::string>> ea, eb;
  for (const auto& e : a.edges()) ea.emplace(a.vertex_name(e.src), a.vertex_name(e.dst));
  for (const auto& e : b.edges()) eb.emplace(b.vertex_name(e.src), b.vertex_name(e.dst));
  return ea == eb;
}

Graph full_idempotent_corner(const Graph& g,
                             const std::map<std::string, std::size_t>& m,
                             std::size_t n) {
  if (has_sinks(g) || has_sources(g))
    throw DomainError("graph must have no sinks and no sources");
  std::size_t largest = 1;
  for (const auto& v : g.vertices()) {
    auto it = m.find(v);
    if (it == m.end()) throw DomainError("no multiplicity for vertex '" + v + "'");
    if (it->second == 0) throw DomainError("multiplicity of '" + v + "' is zero");
    largest = std::max(largest, it->second);
  }
  for (const auto& [v, mult] : m) g.vertex_id(v);
  if (n < largest) throw DomainError("n is smaller than the largest multiplicity");

  const Graph mn = matrix_graph(g, n);
  VertexSet x;
  for (const auto& [v, mult] : m) {
    x.insert(v);
    for (std::size_t i = 1; i < mult; ++i) x.insert(v + ".h" + std::to_string(i));
  }
  Graph corner = restrict(mn, x);
  if (x.size() < mn.vertex_count()) {
    const Graph via_forest = t_corner(mn, build_forest(mn, x));
    if (!same_shape(corner, via_forest))
      throw std::logic_error("full corner: induced subgraph and T-corner disagree");
  }
  return corner;
}

Graph se_corner(const Graph& g, const VertexSet& x, std::size_t k) {
  const std::size_t depth = std::max<std::size_t>(k, 1);
  const auto at_depth = [&](std::size_t d) {
    const Graph fragment = stabilization_fragment(g, d);
    for (const auto& v : x)
      if (!fragment.has_vertex(v))
        throw DomainError("'" + v + "' lies beyond the depth-" + std::to_string(d) +
                          " fragment (increase k)");
    if (x.size() >= fragment.vertex_count())
      throw DomainError("X covers the whole depth-" + std::to_string(d) +
                        " fragment (increase k)");
    return t_corner(fragment, build_forest(fragment, x));
  };
  Graph result = at_depth(depth);
  if (!(at_depth(depth + 1) == result))
    throw std::logic_error("se_corner depends on the fragment depth");
  return result;
}

}  // namespace ckalg
