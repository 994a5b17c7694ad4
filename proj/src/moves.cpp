#include "ckalg/moves.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace ckalg {

namespace {

std::size_t require_positive(std::size_t n, std::string_view what) {
  if (n == 0) throw DomainError(std::string(what) + ": n must be at least 1");
  return n;
}

std::size_t parse_count(std::string_view text) {
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw DomainError("expected a natural number, got '" + std::string(text) +
                      "'");
  return n;
}

// Copy of g with the given vertices and edges dropped.
Graph copy_without(const Graph& g, const VertexSet& drop_vertices,
                   const std::set<std::string>& drop_edges) {
  Graph out;
  for (const auto& v : g.vertices())
    if (!drop_vertices.count(v)) out.add_vertex(v);
  for (const auto& e : g.edges()) {
    if (drop_edges.count(e.name)) continue;
    out.add_edge(e.name, g.vertex_name(e.src), g.vertex_name(e.dst));
  }
  return out;
}

// Vertices outside H that lie on a cycle of the complement and reach H.
bool complement_cycle_reaches(const Graph& g, const VertexSet& h) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> inside(n, false);
  for (const auto& v : h) inside[g.vertex_id(v)] = true;

  // Kahn's algorithm on the complement restricted to vertices that reach H;
  // anything left over sits on (or behind) a cycle.
  std::vector<bool> reach(n, false);
  for (std::size_t v = 0; v < n; ++v) reach[v] = inside[v];
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : g.edges())
      if (!inside[e.src] && !reach[e.src] && reach[e.dst]) {
        reach[e.src] = true;
        changed = true;
      }
  }
  std::vector<std::size_t> outdeg(n, 0);
  for (const auto& e : g.edges())
    if (!inside[e.src] && !inside[e.dst] && reach[e.src] && reach[e.dst])
      ++outdeg[e.src];
  std::vector<std::size_t> stack;
  std::size_t remaining = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (inside[v] || !reach[v]) continue;
    ++remaining;
    if (outdeg[v] == 0) stack.push_back(v);
  }
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    --remaining;
    for (std::size_t e : g.in_edges(v)) {
      const std::size_t u = g.edge(e).src;
      if (inside[u] || !reach[u]) continue;
      if (--outdeg[u] == 0) stack.push_back(u);
    }
  }
  return remaining != 0;
}

bool complement_acyclic(const Graph& g, const VertexSet& h) {
  const Graph c = complement_graph(g, h);
  std::vector<std::size_t> outdeg(c.vertex_count());
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < c.vertex_count(); ++v) {
    outdeg[v] = c.out_degree(v);
    if (outdeg[v] == 0) stack.push_back(v);
  }
  std::size_t removed = 0;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    ++removed;
    for (std::size_t e : c.in_edges(v))
      if (--outdeg[c.edge(e).src] == 0) stack.push_back(c.edge(e).src);
  }
  return removed == c.vertex_count();
}

}  // namespace

std::string join_vertices(const VertexSet& s, char sep) {
  if (s.empty()) return "-";
  std::string out;
  for (const auto& v : s) {
    if (!out.empty()) out += sep;
    out += v;
  }
  return out;
}

VertexSet split_vertices(std::string_view text, char sep) {
  VertexSet s;
  if (text == "-" || text.empty()) return s;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(sep, pos);
    if (next == std::string_view::npos) next = text.size();
    auto piece = text.substr(pos, next - pos);
    if (piece.empty()) throw DomainError("empty name in vertex list");
    s.emplace(piece);
    pos = next + 1;
  }
  return s;
}

std::vector<Path> boundary_paths(const Graph& g, const VertexSet& h) {
  require_vertices(g, h);
  if (complement_cycle_reaches(g, h))
    throw DomainError("F(H) is infinite: a cycle outside H reaches H");
  std::vector<Path> layer;
  for (const auto& e : g.edges()) {
    const auto& s = g.vertex_name(e.src);
    const auto& d = g.vertex_name(e.dst);
    if (!h.count(s) && h.count(d)) layer.push_back(Path{s, d, {e.name}});
  }
  std::vector<Path> all;
  while (!layer.empty()) {
    std::sort(layer.begin(), layer.end(), [](const Path& a, const Path& b) {
      return a.to_string() < b.to_string();
    });
    all.insert(all.end(), layer.begin(), layer.end());
    std::vector<Path> next;
    for (const auto& p : layer)
      for (std::size_t e : g.in_edges(g.vertex_id(p.start))) {
        Path q{g.vertex_name(g.edge(e).src), p.end, {g.edge(e).name}};
        q.edges.insert(q.edges.end(), p.edges.begin(), p.edges.end());
        next.push_back(std::move(q));
      }
    layer = std::move(next);
  }
  return all;
}

Graph expand_hereditary(const Graph& g, const VertexSet& h) {
  require_vertices(g, h);
  if (!is_hereditary(g, h)) throw DomainError("H is not hereditary");
  if (h.empty() && g.vertex_count() != 0)
    throw DomainError("H is empty: no vertex reaches H");
  const auto fh = boundary_paths(g, h);
  Graph out;
  for (const auto& v : g.vertices())
    if (h.count(v)) out.add_vertex(v);
  for (const auto& p : fh) out.add_vertex(p.to_string());
  for (const auto& e : g.edges())
    if (h.count(g.vertex_name(e.src)))
      out.add_edge(e.name, g.vertex_name(e.src), g.vertex_name(e.dst));
  for (const auto& p : fh) out.add_edge("ov_" + p.to_string(), p.to_string(), p.end);
  return out;
}

Thm1Report thm1_preconditions(const Graph& g, const VertexSet& h) {
  require_vertices(g, h);
  Thm1Report r;
  r.hereditary = is_hereditary(g, h);
  r.complement_acyclic = complement_acyclic(g, h);
  r.all_reach_h = true;
  for (const auto& v : g.vertices()) {
    if (h.count(v)) continue;
    const auto reach = hereditary_closure(g, {v});
    const bool hits = std::any_of(reach.begin(), reach.end(),
                                  [&](const std::string& w) { return h.count(w) != 0; });
    if (!hits) {
      r.all_reach_h = false;
      break;
    }
  }
  r.boundary_finite = true;
  r.verdict = r.hereditary && r.complement_acyclic && r.all_reach_h &&
              r.boundary_finite;
  return r;
}

Graph attach_head(const Graph& g, std::string_view v0, std::size_t n) {
  require_positive(n, "attach_head");
  g.vertex_id(v0);
  Graph out = g;
  const std::string base(v0);
  for (std::size_t i = 1; i <= n; ++i) out.add_vertex(base + ".h" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string dst = i == 1 ? base : base + ".h" + std::to_string(i - 1);
    out.add_edge(base + ".e" + std::to_string(i), base + ".h" + std::to_string(i), dst);
  }
  return out;
}

Graph subdivide_edge(const Graph& g, std::string_view e0, std::size_t n) {
  require_positive(n, "subdivide_edge");
  const Edge old = g.edge(g.edge_id(e0));
  const std::string base(e0);
  const auto vname = [&](std::size_t i) { return base + ".v" + std::to_string(i); };
  const auto ename = [&](std::size_t i) { return base + ".e" + std::to_string(i); };
  Graph out = copy_without(g, {}, {base});
  for (std::size_t i = 1; i <= n; ++i) out.add_vertex(vname(i));
  out.add_edge(ename(1), vname(1), g.vertex_name(old.dst));
  for (std::size_t i = 2; i <= n; ++i) out.add_edge(ename(i), vname(i), vname(i - 1));
  out.add_edge(ename(n + 1), g.vertex_name(old.src), vname(n));
  return out;
}

Graph attach_sources(const Graph& g, std::string_view v0, std::size_t n) {
  require_positive(n, "attach_sources");
  g.vertex_id(v0);
  Graph out = g;
  const std::string base(v0);
  for (std::size_t i = 1; i <= n; ++i) out.add_vertex(base + ".s" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i)
    out.add_edge(base + ".t" + std::to_string(i), base + ".s" + std::to_string(i), base);
  return out;
}

Graph eliminate_source(const Graph& g, std::string_view v) {
  const std::size_t id = g.vertex_id(v);
  if (g.in_degree(id) != 0)
    throw DomainError("vertex '" + std::string(v) + "' is not a source");
  std::set<std::string> edges;
  for (std::size_t e : g.out_edges(id)) edges.insert(g.edge(e).name);
  return copy_without(g, {std::string(v)}, edges);
}

Graph matrix_graph(const Graph& g, std::size_t n) {
  require_positive(n, "matrix_graph");
  Graph out = g;
  if (n == 1) return out;
  for (const auto& v : g.vertices()) out = attach_head(out, v, n - 1);
  return out;
}

Graph stabilization_fragment(const Graph& g, std::size_t k) {
  return matrix_graph(g, k + 1);
}

// ---------------------------------------------------------------------------
// Traces

std::string_view to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::ExpandHereditary: return "ExpandHereditary";
    case MoveKind::AttachHead: return "AttachHead";
    case MoveKind::SubdivideEdge: return "SubdivideEdge";
    case MoveKind::AttachSources: return "AttachSources";
    case MoveKind::EliminateSource: return "EliminateSource";
  }
  return "?";
}

MoveKind parse_move_kind(std::string_view text) {
  for (MoveKind k : {MoveKind::ExpandHereditary, MoveKind::AttachHead,
                     MoveKind::SubdivideEdge, MoveKind::AttachSources,
                     MoveKind::EliminateSource})
    if (to_string(k) == text) return k;
  throw DomainError("unknown move kind '" + std::string(text) + "'");
}

namespace {

std::size_t param_count(MoveKind kind) {
  switch (kind) {
    case MoveKind::ExpandHereditary:
    case MoveKind::EliminateSource: return 1;
    default: return 2;
  }
}

}  // namespace

Graph apply_move(const Graph& g, MoveKind kind,
                 const std::vector<std::string>& params) {
  if (params.size() != param_count(kind))
    throw DomainError("wrong parameter count for " + std::string(to_string(kind)));
  switch (kind) {
    case MoveKind::ExpandHereditary:
      return expand_hereditary(g, split_vertices(params[0]));
    case MoveKind::AttachHead:
      return attach_head(g, params[0], parse_count(params[1]));
    case MoveKind::SubdivideEdge:
      return subdivide_edge(g, params[0], parse_count(params[1]));
    case MoveKind::AttachSources:
      return attach_sources(g, params[0], parse_count(params[1]));
    case MoveKind::EliminateSource:
      return eliminate_source(g, params[0]);
  }
  throw DomainError("unreachable move kind");
}

Graph apply_recorded(const Graph& g, MoveKind kind,
                     std::vector<std::string> params, MoveTrace& trace) {
  Graph out = apply_move(g, kind, params);
  trace.records.push_back(
      MoveRecord{kind, std::move(params), g.hash_hex(), out.hash_hex()});
  return out;
}

std::string MoveTrace::serialize() const {
  std::string out;
  for (const auto& r : records) {
    out += "move ";
    out += to_string(r.kind);
    for (const auto& p : r.params) {
      out += ' ';
      out += p;
    }
    out += ' ';
    out += r.in_hash;
    out += ' ';
    out += r.out_hash;
    out += '\n';
  }
  return out;
}

MoveTrace MoveTrace::parse(std::string_view text) {
  MoveTrace trace;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    const auto fail = [&](const std::string& why) {
      return DomainError("trace line " + std::to_string(lineno) + ": " + why);
    };
    if (tok[0] != "move" || tok.size() < 2) throw fail("expected 'move <kind> ...'");
    MoveKind kind;
    try {
      kind = parse_move_kind(tok[1]);
    } catch (const DomainError& e) {
      throw fail(e.what());
    }
    if (tok.size() != 4 + param_count(kind)) throw fail("wrong field count");
    MoveRecord rec{kind, {tok.begin() + 2, tok.end() - 2}, tok[tok.size() - 2],
                   tok.back()};
    trace.records.push_back(std::move(rec));
  }
  return trace;
}

Graph replay(const Graph& input, const MoveTrace& trace) {
  Graph g = input;
  std::size_t step = 0;
  for (const auto& r : trace.records) {
    ++step;
    if (g.hash_hex() != r.in_hash)
      throw DomainError("replay step " + std::to_string(step) +
                        ": input hash mismatch");
    g = apply_move(g, r.kind, r.params);
    if (g.hash_hex() != r.out_hash)
      throw DomainError("replay step " + std::to_string(step) +
                        ": output hash mismatch");
  }
  return g;
}

std::pair<Graph, MoveTrace> desourcify(const Graph& g) {
  if (has_sinks(g)) throw DomainError("graph has a sink");
  MoveTrace trace;
  if (!has_sources(g)) return {g, trace};

  Graph core = g;
  for (;;) {
    const auto sources = classify(core).sources;
    if (sources.empty()) break;
    core = eliminate_source(core, *sources.begin());
  }
  if (core.vertex_count() == 0)
    throw DomainError("internal: source elimination emptied a sink-free graph");

  const VertexSet h = all_vertices(core);
  const auto fh = boundary_paths(g, h);
  Graph cur = apply_recorded(g, MoveKind::ExpandHereditary, {join_vertices(h)}, trace);

  std::map<std::string, std::vector<std::string>> attached;
  for (const auto& p : fh) attached[p.end].push_back(p.to_string());

  for (const auto& [v, path_vertices] : attached) {
    const std::string n = std::to_string(path_vertices.size());
    // n sources hanging off v become a head of length n ...
    for (const auto& pv : path_vertices)
      cur = apply_recorded(cur, MoveKind::EliminateSource, {pv}, trace);
    cur = apply_recorded(cur, MoveKind::AttachHead, {v, n}, trace);
    // ... which is absorbed into the least incoming edge of v.
    for (std::size_t i = path_vertices.size(); i >= 1; --i)
      cur = apply_recorded(cur, MoveKind::EliminateSource,
                           {v + ".h" + std::to_string(i)}, trace);
    const auto& in = cur.in_edges(cur.vertex_id(v));
    if (in.empty()) throw DomainError("internal: no incoming edge at '" + v + "'");
    std::string e0 = cur.edge(in.front()).name;
    for (std::size_t e : in) e0 = std::min(e0, cur.edge(e).name);
    cur = apply_recorded(cur, MoveKind::SubdivideEdge, {e0, n}, trace);
  }
  return {cur, trace};
}

}  // namespace ckalg
