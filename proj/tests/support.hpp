#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>

#include <fstream>
#include <map>
#include <random>
#include <stdexcept>
#include <sstream>
#include <string>
#include <vector>

#include "ckalg/graph.hpp"
#include "ckalg/ktheory.hpp"
#include "ckalg/lpa.hpp"

namespace ckalg::testing {

inline std::string data_path(const std::string& name) {
  return std::string(CKALG_DATA_DIR) + "/" + name;
}

inline Graph load(const std::string& name) {
  std::ifstream in(data_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return Graph::parse(ss.str());
}

// Vertices "v0".."v{n-1}", edges "e0".. with uniformly random endpoints.
inline Graph random_graph(std::mt19937& rng, std::size_t max_vertices,
                          std::size_t max_edges, bool no_sinks = false) {
  std::uniform_int_distribution<std::size_t> nv(1, max_vertices);
  const std::size_t n = nv(rng);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<std::size_t> ne(0, max_edges);
  Graph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  std::size_t edges = 0;
  if (no_sinks)
    for (std::size_t i = 0; i < n; ++i)
      g.add_edge("e" + std::to_string(edges++), "v" + std::to_string(i),
                 "v" + std::to_string(pick(rng)));
  const std::size_t extra = ne(rng);
  for (std::size_t i = 0; i < extra && edges < std::max(max_edges, n); ++i)
    g.add_edge("e" + std::to_string(edges++), "v" + std::to_string(pick(rng)),
               "v" + std::to_string(pick(rng)));
  return g;
}

inline Graph random_graph_exact_cap(std::mt19937& rng, std::size_t max_vertices,
                                    std::size_t max_edges) {
  std::uniform_int_distribution<std::size_t> nv(1, max_vertices);
  const std::size_t n = nv(rng);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<std::size_t> ne(0, max_edges);
  Graph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  const std::size_t m = ne(rng);
  for (std::size_t i = 0; i < m; ++i)
    g.add_edge("e" + std::to_string(i), "v" + std::to_string(pick(rng)),
               "v" + std::to_string(pick(rng)));
  return g;
}

// --- Oracles independent of the library's elimination code. ---

// Determinant by cofactor expansion along the first row.
inline mpz_class det_cofactor(const std::vector<std::vector<mpz_class>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  mpz_class total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<mpz_class> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    const mpz_class term = m[0][j] * det_cofactor(minor);
    total += (j % 2 == 0) ? term : mpz_class(-term);
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t from,
                    std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors d_k = D_k / D_{k-1}, D_k the gcd of all k x k minors.
inline std::vector<mpz_class> invariant_factors_by_minors(const IntMatrix& m) {
  std::vector<mpz_class> factors;
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    mpz_class g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<mpz_class>> sub(k, std::vector<mpz_class>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m(r[i], c[j]);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det_cofactor(sub).get_mpz_t());
      }
    if (g == 0) break;
    factors.push_back(g / prev);
    prev = g;
  }
  return factors;
}

// Rank over Q by fraction-free (Bareiss) elimination.
inline std::size_t rank_bareiss(const IntMatrix& input) {
  std::vector<std::vector<mpz_class>> a(input.rows(), std::vector<mpz_class>(input.cols()));
  for (std::size_t r = 0; r < input.rows(); ++r)
    for (std::size_t c = 0; c < input.cols(); ++c) a[r][c] = input(r, c);
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < input.cols() && rank < input.rows(); ++c) {
    std::size_t p = rank;
    while (p < input.rows() && a[p][c] == 0) ++p;
    if (p == input.rows()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < input.rows(); ++r) {
      for (std::size_t k = c + 1; k < input.cols(); ++k)
      {
        const mpz_class num = a[rank][c] * a[r][k] - a[r][c] * a[rank][k];
        if (mpz_divisible_p(num.get_mpz_t(), prev.get_mpz_t()) == 0)
          throw std::logic_error("Bareiss division not exact");
        a[r][k] = num / prev;
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

// Reachability by Warshall transitive closure on the adjacency relation.
inline std::vector<std::vector<bool>> reach_matrix(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t v = 0; v < n; ++v) r[v][v] = true;
  for (const auto& e : g.edges()) r[e.src][e.dst] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  return r;
}


// Chen module on the tail class of a periodic infinite path. An infinite
// path is a finite prefix followed by a cycle repeated forever; e acts by
// prepending, e* by stripping. The module satisfies every Cuntz-Krieger
// relation at vertices that emit edges, so equal algebra elements act
// identically on it.
struct InfinitePath {
  std::vector<std::string> prefix;
  std::vector<std::string> cycle;  // simple, nonempty
  friend auto operator<=>(const InfinitePath&, const InfinitePath&) = default;
};

inline InfinitePath canonical(InfinitePath p) {
  while (!p.prefix.empty() && p.prefix.back() == p.cycle.back()) {
    p.prefix.pop_back();
    std::rotate(p.cycle.rbegin(), p.cycle.rbegin() + 1, p.cycle.rend());
  }
  return p;
}

inline std::optional<InfinitePath> act(const Graph& g, const Monomial& m,
                                       InfinitePath p) {
  const auto start = [&](const InfinitePath& q) -> const std::string& {
    return g.source(q.prefix.empty() ? q.cycle.front() : q.prefix.front());
  };
  if (start(p) != m.beta.start) return std::nullopt;
  for (const auto& e : m.beta.edges) {
    if (!p.prefix.empty()) {
      if (p.prefix.front() != e) return std::nullopt;
      p.prefix.erase(p.prefix.begin());
    } else {
      if (p.cycle.front() != e) return std::nullopt;
      std::rotate(p.cycle.begin(), p.cycle.begin() + 1, p.cycle.end());
    }
  }
  p.prefix.insert(p.prefix.begin(), m.alpha.edges.begin(), m.alpha.edges.end());
  return canonical(std::move(p));
}

using ChenVector = std::map<InfinitePath, Rational>;

inline ChenVector act(const Graph& g, const Element& x, const InfinitePath& p) {
  ChenVector out;
  for (const auto& [m, c] : x.terms())
    if (auto q = act(g, m, p)) {
      out[*q] += c;
      if (out[*q] == 0) out.erase(*q);
    }
  return out;
}

// A simple cycle found by walking first out-edges from v; requires no sinks.
inline std::vector<std::string> some_cycle(const Graph& g, std::size_t v) {
  std::vector<std::size_t> seen_at(g.vertex_count(), SIZE_MAX);
  std::vector<std::string> walk;
  while (seen_at[v] == SIZE_MAX) {
    seen_at[v] = walk.size();
    const auto& e = g.edge(g.out_edges(v).front());
    walk.push_back(e.name);
    v = e.dst;
  }
  return {walk.begin() + static_cast<std::ptrdiff_t>(seen_at[v]), walk.end()};
}

// Basis vectors: every backward extension of length <= depth of every
// rotation of the cycle.
inline std::vector<InfinitePath> chen_basis(const Graph& g,
                                            const std::vector<std::string>& cycle,
                                            std::size_t depth) {
  std::vector<InfinitePath> out;
  std::vector<std::string> c = cycle;
  for (std::size_t r = 0; r < cycle.size(); ++r) {
    std::vector<std::vector<std::string>> layer{{}};
    for (std::size_t d = 0; d <= depth; ++d) {
      std::vector<std::vector<std::string>> next;
      for (const auto& pre : layer) {
        out.push_back(canonical({pre, c}));
        const std::string& head = g.source(pre.empty() ? c.front() : pre.front());
        for (std::size_t e : g.in_edges(g.vertex_id(head))) {
          auto ext = pre;
          ext.insert(ext.begin(), g.edge(e).name);
          next.push_back(std::move(ext));
        }
      }
      layer = std::move(next);
    }
    std::rotate(c.begin(), c.begin() + 1, c.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ckalg::testing
