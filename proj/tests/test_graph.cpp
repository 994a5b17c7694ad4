#include <doctest.h>

#include <random>

#include "ckalg/graph.hpp"
#include "support.hpp"

using namespace ckalg;
using ckalg::testing::load;

namespace {

Graph single_vertex() {
  Graph g;
  g.add_vertex("v");
  return g;
}

Graph three_cycle() {
  return Graph::parse(
      "vertex v\nvertex u\nvertex w\nedge x v u\nedge y u w\nedge z w v\n");
}

Graph two_disjoint_loops() {
  return Graph::parse("vertex p\nvertex q\nedge lp p p\nedge lq q q\n");
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("parse and serialize") {
    const Graph g = load("tail_into_triangle.graph");
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == 6);
    CHECK(g.source("g1") == "5");
    CHECK(g.range("c") == "1");
    CHECK(Graph::parse(g.serialize()) == g);
    CHECK(g.serialize().starts_with("vertex 1\nvertex 2\n"));
    CHECK(g.hash_hex().size() == 16);
  }

  TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(Graph::parse("vertex a\nvertex a\n"), DomainError);
    CHECK_THROWS_AS(Graph::parse("vertex a\nedge e a b\n"), DomainError);
    CHECK_THROWS_AS(Graph::parse("vertex a-b\n"), DomainError);
    CHECK_THROWS_AS(Graph::parse("vertex a\nedge e a a\nedge e a a\n"), DomainError);
    CHECK_THROWS_AS(Graph::parse("node a\n"), DomainError);
  }

  TEST_CASE("fnv1a matches the reference vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(hex16(0xaf63dc4c8601ec8cULL) == "af63dc4c8601ec8c");
  }

  TEST_CASE("serialization round trip on random graphs") {
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
      const Graph g = ckalg::testing::random_graph(rng, 8, 14);
      const Graph h = Graph::parse(g.serialize());
      CHECK(h == g);
      CHECK(h.hash() == g.hash());
    }
  }

  TEST_CASE("classify") {
    const auto c = classify(load("tail_into_triangle.graph"));
    CHECK(c.sinks.empty());
    CHECK(c.sources == VertexSet{"5"});
    CHECK(c.regular == VertexSet{"1", "2", "3", "4", "5"});
    CHECK(c.singular.empty());

    const auto lone = classify(single_vertex());
    CHECK(lone.sinks == VertexSet{"v"});
    CHECK(lone.sources == VertexSet{"v"});

    CHECK(classify(load("single_edge.graph")).sinks == VertexSet{"2"});
  }

  TEST_CASE("reaches") {
    const Graph g = load("tail_into_triangle.graph");
    CHECK(reaches(g, "5", "1"));
    CHECK(reaches(g, "3", "3"));
    CHECK_FALSE(reaches(g, "1", "5"));
    CHECK_THROWS_AS(reaches(g, "1", "nope"), DomainError);

    std::mt19937 rng(11);
    for (int i = 0; i < 40; ++i) {
      const Graph r = ckalg::testing::random_graph(rng, 7, 10);
      const auto oracle = ckalg::testing::reach_matrix(r);
      for (std::size_t a = 0; a < r.vertex_count(); ++a)
        for (std::size_t b = 0; b < r.vertex_count(); ++b)
          CHECK(reaches(r, r.vertex_name(a), r.vertex_name(b)) == oracle[a][b]);
    }
  }

  TEST_CASE("hereditary closure") {
    const Graph g = load("tail_into_triangle.graph");
    CHECK(hereditary_closure(g, {"1"}) == VertexSet{"1", "2", "3"});
    CHECK(hereditary_closure(g, {}).empty());
    CHECK(hereditary_closure(g, {"5"}) == all_vertices(g));
    CHECK_THROWS_AS(hereditary_closure(g, {"9"}), DomainError);
  }

  TEST_CASE("saturated closure") {
    CHECK(saturated_closure(load("single_edge.graph"), {"2"}) == VertexSet{"1", "2"});
    CHECK(saturated_closure(load("tail_into_triangle.graph"), {}).empty());
    CHECK(saturated_closure(three_cycle(), {"w"}) == VertexSet{"u", "v", "w"});
  }

  TEST_CASE("hereditary-saturated closure") {
    const Graph g = load("tail_into_triangle.graph");
    CHECK(hs_closure(g, {"1"}) == all_vertices(g));
    CHECK(hs_closure(g, all_vertices(g)) == all_vertices(g));
    CHECK(hs_closure(load("loop.graph"), {"v"}) == VertexSet{"v"});
  }

  TEST_CASE("closures are extensive, monotone and idempotent") {
    std::mt19937 rng(3);
    for (int i = 0; i < 80; ++i) {
      const Graph g = ckalg::testing::random_graph(rng, 10, 16);
      VertexSet x, y;
      std::bernoulli_distribution coin(0.3);
      for (const auto& v : g.vertices()) {
        if (coin(rng)) x.insert(v);
        if (coin(rng)) y.insert(v);
      }
      y.insert(x.begin(), x.end());  // x ⊆ y
      for (auto closure : {&hereditary_closure, &saturated_closure, &hs_closure}) {
        const auto cx = closure(g, x);
        const auto cy = closure(g, y);
        CHECK(std::includes(cx.begin(), cx.end(), x.begin(), x.end()));
        CHECK(std::includes(cy.begin(), cy.end(), cx.begin(), cx.end()));
        CHECK(closure(g, cx) == cx);
      }
    }
  }

  TEST_CASE("cycles without exits") {
    const auto cycles = cycles_without_exits(load("tail_into_triangle.graph"));
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0].start == "1");
    CHECK(cycles[0].edges == std::vector<std::string>{"a", "b", "c"});
    CHECK(cycles_without_exits(load("rose2.graph")).empty());
    const auto loop = cycles_without_exits(load("loop.graph"));
    REQUIRE(loop.size() == 1);
    CHECK(loop[0].edges == std::vector<std::string>{"e"});
  }

  TEST_CASE("exit-free cycles are vertex disjoint") {
    std::mt19937 rng(5);
    for (int i = 0; i < 60; ++i) {
      const Graph g = ckalg::testing::random_graph(rng, 9, 9);
      VertexSet seen;
      for (const auto& c : cycles_without_exits(g)) {
        for (const auto& v : c.vertex_set(g)) {
          CHECK(seen.insert(v).second);
          CHECK(g.out_degree(g.vertex_id(v)) == 1);
        }
        CHECK(c.start == *c.vertex_set(g).begin());
      }
    }
  }

  TEST_CASE("distinguished paths") {
    const Graph g = load("tail_into_triangle.graph");
    const auto zero = distinguished_paths(g, 0);
    REQUIRE(zero.size() == 3);
    for (const auto& p : zero) CHECK(p.is_vertex());

    const auto one = distinguished_paths(g, 1);
    std::set<std::string> names;
    for (const auto& p : one) names.insert(p.to_string());
    CHECK(names == std::set<std::string>{"1", "2", "3", "a", "b", "c", "f1", "f2"});
    CHECK(distinguished_paths(load("rose2.graph"), 4).empty());
  }

  TEST_CASE("restrict") {
    const Graph g = load("tail_into_triangle.graph");
    const Graph r = restrict(g, {"1", "2", "3"});
    CHECK(r.vertex_count() == 3);
    CHECK(r.edge_count() == 3);
    CHECK(r.has_edge("a"));
    CHECK(restrict(g, all_vertices(g)) == g);
    const Graph loop = load("loop.graph");
    CHECK(restrict(loop, {"v"}) == loop);
    CHECK_THROWS_AS(restrict(g, {"4"}), DomainError);
  }

  TEST_CASE("restrict to a hereditary set leaves nothing outside") {
    std::mt19937 rng(9);
    for (int i = 0; i < 40; ++i) {
      const Graph g = ckalg::testing::random_graph(rng, 8, 12);
      const auto h = hereditary_closure(g, {g.vertex_name(0)});
      const Graph r = restrict(g, h);
      for (const auto& e : r.edges()) CHECK(h.count(r.vertex_name(e.dst)));
      CHECK(is_hereditary(r, all_vertices(r)));
    }
  }

  TEST_CASE("complement graph") {
    const Graph g = load("tail_into_triangle.graph");
    const Graph c = complement_graph(g, {"1", "2", "3"});
    CHECK(c.vertices() == std::vector<std::string>{"4", "5"});
    REQUIRE(c.edge_count() == 1);
    CHECK(c.edge(0).name == "g1");
    CHECK(complement_graph(g, all_vertices(g)).vertex_count() == 0);
    CHECK(complement_graph(g, {}) == g);
  }

  TEST_CASE("paths") {
    const Graph g = load("tail_into_triangle.graph");
    const Path p = Path::from_edges(g, {"g1", "f1", "a"});
    CHECK(p.start == "5");
    CHECK(p.end == "3");
    CHECK(p.length() == 3);
    CHECK(p.vertex_set(g) == VertexSet{"1", "3", "4", "5"});
    CHECK(p.to_string() == "g1.f1.a");
    CHECK_THROWS_AS(Path::from_edges(g, {"a", "g1"}), DomainError);
  }
}
