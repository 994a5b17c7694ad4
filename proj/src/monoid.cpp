#include "ckalg/monoid.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <optional>
#include <sstream>

namespace ckalg {

MonoidElement::MonoidElement(std::map<std::string, std::uint64_t> counts) {
  for (auto& [v, k] : counts)
    if (k != 0) counts_.emplace(v, k);
}

MonoidElement MonoidElement::parse(const Graph& g, std::string_view text) {
  MonoidElement m;
  std::istringstream in{std::string(text)};
  for (std::string tok; in >> tok;) {
    const auto colon = tok.rfind(':');
    if (colon == std::string::npos || colon == 0)
      throw DomainError("expected vertex:multiplicity, got '" + tok + "'");
    const std::string v = tok.substr(0, colon);
    g.vertex_id(v);
    std::uint64_t k = 0;
    const char* first = tok.data() + colon + 1;
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec != std::errc{} || ptr != last || first == last)
      throw DomainError("bad multiplicity in '" + tok + "'");
    m.add(v, k);
  }
  return m;
}

std::uint64_t MonoidElement::operator[](const std::string& v) const {
  auto it = counts_.find(v);
  return it == counts_.end() ? 0 : it->second;
}

void MonoidElement::add(const std::string& v, std::uint64_t k) {
  if (k != 0) counts_[v] += k;
}

void MonoidElement::remove(const std::string& v, std::uint64_t k) {
  auto it = counts_.find(v);
  if (it == counts_.end() || it->second < k)
    throw DomainError("vertex '" + v + "' does not occur often enough");
  it->second -= k;
  if (it->second == 0) counts_.erase(it);
}

VertexSet MonoidElement::support() const {
  VertexSet s;
  for (const auto& [v, k] : counts_) s.insert(v);
  return s;
}

std::uint64_t MonoidElement::size() const {
  std::uint64_t n = 0;
  for (const auto& [v, k] : counts_) n += k;
  return n;
}

std::string MonoidElement::to_string() const {
  if (counts_.empty()) return "0";
  std::string out;
  for (const auto& [v, k] : counts_) {
    if (!out.empty()) out += ' ';
    out += v + ":" + std::to_string(k);
  }
  return out;
}

MonoidElement expand(const Graph& g, const MonoidElement& m, std::string_view v) {
  const std::size_t id = g.vertex_id(v);
  const std::string name(v);
  if (m[name] == 0) throw DomainError("vertex '" + name + "' is not in the support");
  if (g.out_degree(id) == 0) throw DomainError("vertex '" + name + "' is singular");
  MonoidElement out = m;
  out.remove(name);
  for (std::size_t e : g.out_edges(id)) out.add(g.vertex_name(g.edge(e).dst));
  return out;
}

namespace {

using State = std::vector<std::uint64_t>;

struct Relations {
  // For each regular vertex: the multiset of ranges of its edges.
  std::vector<std::pair<std::size_t, State>> rules;
};

Relations relations_of(const Graph& g) {
  Relations rel;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.out_degree(v) == 0) continue;
    State rhs(g.vertex_count(), 0);
    for (std::size_t e : g.out_edges(v)) ++rhs[g.edge(e).dst];
    rel.rules.emplace_back(v, std::move(rhs));
  }
  return rel;
}

State to_state(const Graph& g, const MonoidElement& m) {
  State s(g.vertex_count(), 0);
  for (const auto& [v, k] : m.counts()) s[g.vertex_id(v)] = k;
  return s;
}

std::uint64_t total(const State& s) {
  std::uint64_t n = 0;
  for (auto k : s) n += k;
  return n;
}

// Neighbours under v -> R(v) and R(v) -> v.
std::vector<State> neighbours(const Relations& rel, const State& s,
                              std::size_t size_bound) {
  std::vector<State> out;
  for (const auto& [v, rhs] : rel.rules) {
    if (s[v] > 0) {
      State t = s;
      --t[v];
      for (std::size_t w = 0; w < t.size(); ++w) t[w] += rhs[w];
      if (t != s && total(t) <= size_bound) out.push_back(std::move(t));
    }
    bool contains = true;
    for (std::size_t w = 0; w < s.size() && contains; ++w) contains = s[w] >= rhs[w];
    if (contains) {
      State t = s;
      for (std::size_t w = 0; w < t.size(); ++w) t[w] -= rhs[w];
      ++t[v];
      if (t != s && total(t) <= size_bound) out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

EquivalenceResult equivalent(const Graph& g, const MonoidElement& a,
                             const MonoidElement& b, std::size_t step_bound,
                             std::size_t size_bound) {
  if (step_bound == 0 || size_bound == 0)
    throw DomainError("search bounds must be at least 1");
  const State sa = to_state(g, a);
  const State sb = to_state(g, b);
  if (sa == sb) return {Equivalence::Equivalent, 0};
  if (total(sa) > size_bound || total(sb) > size_bound) return {};

  const Relations rel = relations_of(g);
  std::map<State, std::size_t> dist_a{{sa, 0}}, dist_b{{sb, 0}};
  std::vector<State> frontier_a{sa}, frontier_b{sb};
  std::size_t depth_a = 0, depth_b = 0;
  while (depth_a + depth_b < step_bound && (!frontier_a.empty() || !frontier_b.empty())) {
    // Grow the smaller non-empty side.
    const bool grow_a = frontier_b.empty() ||
                        (!frontier_a.empty() && frontier_a.size() <= frontier_b.size());
    auto& frontier = grow_a ? frontier_a : frontier_b;
    auto& mine = grow_a ? dist_a : dist_b;
    auto& other = grow_a ? dist_b : dist_a;
    std::size_t& depth = grow_a ? depth_a : depth_b;
    ++depth;
    std::vector<State> next;
    std::optional<std::size_t> best;
    for (const auto& s : frontier)
      for (auto& t : neighbours(rel, s, size_bound)) {
        if (mine.count(t)) continue;
        mine.emplace(t, depth);
        if (auto it = other.find(t); it != other.end()) {
          const std::size_t len = depth + it->second;
          if (!best || len < *best) best = len;
        }
        next.push_back(std::move(t));
      }
    if (best) return {Equivalence::Equivalent, *best};
    frontier = std::move(next);
  }
  return {};
}

bool is_full(const Graph& g, const MonoidElement& m) {
  if (m.is_zero()) throw DomainError("zero element");
  return hs_closure(g, m.support()) == all_vertices(g);
}

Rebalanced rebalance_full(const Graph& g, const MonoidElement& m) {
  if (has_sinks(g) || has_sources(g))
    throw DomainError("graph must have no sinks and no sources");
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& out = g.out_edges(v);
    if (std::none_of(out.begin(), out.end(),
                     [&](std::size_t e) { return g.edge(e).dst == v; }))
      throw DomainError("vertex '" + g.vertex_name(v) + "' has no loop");
  }
  for (const auto& v : m.support()) g.vertex_id(v);
  if (!is_full(g, m)) throw DomainError("element is not full");

  Rebalanced r{m, {}, {}};
  std::uint64_t largest = m.size();
  for (const auto& w : all_vertices(g)) {
    if (r.element[w] > 0) continue;
    // Shortest path from the current support to w; BFS visits edges in
    // lexicographic order so ties resolve deterministically.
    std::map<std::string, std::string> parent;
    std::deque<std::string> queue;
    for (const auto& v : r.element.support()) {
      parent[v] = "";
      queue.push_back(v);
    }
    while (!queue.empty() && !parent.count(w)) {
      const std::string v = queue.front();
      queue.pop_front();
      std::vector<std::size_t> out = g.out_edges(g.vertex_id(v));
      std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
        return g.edge(a).name < g.edge(b).name;
      });
      for (std::size_t e : out) {
        const auto& next = g.vertex_name(g.edge(e).dst);
        if (parent.count(next)) continue;
        parent[next] = v;
        queue.push_back(next);
      }
    }
    if (!parent.count(w)) throw DomainError("internal: '" + w + "' is unreachable");
    std::vector<std::string> chain;
    for (std::string at = parent.at(w); !at.empty(); at = parent.at(at)) chain.push_back(at);
    std::reverse(chain.begin(), chain.end());
    for (const auto& v : chain) {
      r.element = expand(g, r.element, v);
      r.expansions.push_back(v);
      largest = std::max(largest, r.element.size());
    }
  }
  r.certificate = r.expansions.empty()
                      ? EquivalenceResult{Equivalence::Equivalent, 0}
                      : equivalent(g, m, r.element, r.expansions.size(),
                                   static_cast<std::size_t>(largest));
  return r;
}

}  // namespace ckalg
