#include <doctest.h>

#include <random>

#include "ckalg/ktheory.hpp"
#include "support.hpp"

using namespace ckalg;
using ckalg::testing::load;

namespace {

std::vector<mpz_class> z(std::initializer_list<long> xs) {
  return {xs.begin(), xs.end()};
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t max_dim, long bound) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<long> entry(-bound, bound);
  IntMatrix m(dim(rng), dim(rng));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = entry(rng);
  return m;
}

}  // namespace

TEST_SUITE("ktheory") {
  TEST_CASE("adjacency") {
    CHECK(adjacency(load("single_edge.graph")) == IntMatrix(2, 2, {0, 1, 0, 0}));
    CHECK(adjacency(load("loop.graph")) == IntMatrix(1, 1, {1}));
    CHECK(adjacency(load("rose2.graph")) == IntMatrix(1, 1, {2}));
    const IntMatrix a = adjacency(load("tail_into_triangle.graph"));
    CHECK(a(3, 0) == 2);  // f1, f2 : 4 -> 1
    CHECK(a(4, 3) == 1);
  }

  TEST_CASE("presentation matrix") {
    CHECK(presentation_matrix(load("single_edge.graph")) == IntMatrix(2, 1, {1, -1}));
    CHECK(presentation_matrix(load("loop.graph")) == IntMatrix(1, 1, {0}));
    CHECK(presentation_matrix(load("rose2.graph")) == IntMatrix(1, 1, {-1}));
    Graph sinks;
    sinks.add_vertex("a");
    sinks.add_vertex("b");
    const IntMatrix none = presentation_matrix(sinks);
    CHECK(none.rows() == 2);
    CHECK(none.cols() == 0);
  }

  TEST_CASE("Smith normal form examples") {
    CHECK(smith_normal_form(IntMatrix(2, 2, {2, 0, 0, 3})) == z({1, 6}));
    CHECK(smith_normal_form(IntMatrix(3, 2)).empty());
    CHECK(smith_normal_form(IntMatrix(2, 1, {1, -1})) == z({1}));
    CHECK(smith_normal_form(IntMatrix(2, 2, {2, 4, 6, 8})) == z({2, 4}));
    CHECK(smith_normal_form(IntMatrix(3, 3, {2, 0, 0, 0, 4, 0, 0, 0, 6})) == z({2, 2, 12}));
    CHECK(smith_normal_form(IntMatrix(1, 3, {-6, 10, 15})) == z({1}));
    CHECK(smith_normal_form(IntMatrix(0, 0)).empty());
  }

  TEST_CASE("Smith normal form matches the minors oracle") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 300; ++i) {
      const IntMatrix m = random_matrix(rng, 5, 9);
      const auto d = smith_normal_form(m);
      CHECK(d == ckalg::testing::invariant_factors_by_minors(m));
      CHECK(d.size() == ckalg::testing::rank_bareiss(m));
      for (std::size_t k = 1; k < d.size(); ++k) CHECK(d[k] % d[k - 1] == 0);
      for (const auto& x : d) CHECK(x > 0);
      CHECK(smith_normal_form(m.transpose()) == d);
    }
  }

  TEST_CASE("large entries stay exact") {
    IntMatrix m(2, 2);
    m(0, 0) = mpz_class("1000000000000000000000");
    m(1, 1) = mpz_class("30000000000000000000000000");
    m(0, 1) = mpz_class("7");
    const auto d = smith_normal_form(m);
    CHECK(d == ckalg::testing::invariant_factors_by_minors(m));
  }

  TEST_CASE("K summaries of the small examples") {
    const auto line = k_summary(load("single_edge.graph"), ExtNat::inf());
    CHECK(line.rank_k0 == 1);
    CHECK(line.rank_k1 == ExtNat::inf());
    CHECK(line.singular == 1);
    CHECK(line.rank_k1_cstar == 0);

    const auto loop = k_summary(load("loop.graph"), ExtNat{false, 1});
    CHECK(loop.rank == 0);
    CHECK(loop.rank_k0 == 1);
    CHECK(loop.rank_k1 == ExtNat{false, 2});
    CHECK(loop.singular == 0);

    for (std::uint64_t r = 0; r < 4; ++r) {
      const auto rose = k_summary(load("rose2.graph"), ExtNat{false, r});
      CHECK(rose.rank_k0 == 0);
      CHECK(rose.rank_k1 == ExtNat{false, 0});
      CHECK(rose.torsion.empty());
    }
    // K0 of the rose with three petals is Z/2.
    const auto rose3 = k_summary(
        Graph::parse("vertex v\nedge a v v\nedge b v v\nedge c v v\n"), ExtNat{});
    CHECK(rose3.torsion == z({2}));
    CHECK(torsion_string(rose3.torsion) == "2");
    CHECK(torsion_string({}) == "-");

    // Infinite unit rank with trivial K0 leaves rank K1 finite.
    const auto rose_inf = k_summary(load("rose2.graph"), ExtNat::inf());
    CHECK(rose_inf.rank_k1 == ExtNat{false, 0});
  }

  TEST_CASE("rank identity on random graphs") {
    std::mt19937 rng(10);
    for (int i = 0; i < 300; ++i) {
      const Graph g = ckalg::testing::random_graph_exact_cap(rng, 10, 20);
      const auto cls = classify(g);
      const std::size_t rho = ckalg::testing::rank_bareiss(presentation_matrix(g));
      for (std::uint64_t r = 0; r <= 3; ++r) {
        const auto s = k_summary(g, ExtNat{false, r});
        CHECK(s.rank == rho);
        CHECK(s.rank_k0 == g.vertex_count() - rho);
        CHECK(s.regular == cls.regular.size());
        REQUIRE_FALSE(s.rank_k1.infinite);
        const auto lhs = static_cast<std::int64_t>((r + 1) * s.rank_k0) -
                         static_cast<std::int64_t>(s.rank_k1.value);
        CHECK(lhs == static_cast<std::int64_t>(cls.singular.size()));
      }
    }
  }

  TEST_CASE("classification verdicts") {
    const auto line0 = classify_algebra(load("single_edge.graph"), ExtNat{false, 0});
    CHECK_FALSE(line0.no_sinks);
    CHECK_FALSE(line0.is_ck);
    CHECK_FALSE(line0.criterion4);
    CHECK(line0.criterion5 == false);
    CHECK(line0.consistent);

    const auto loop = classify_algebra(load("loop.graph"), ExtNat{false, 0});
    CHECK(loop.no_sinks);
    CHECK(loop.is_ck);
    CHECK(loop.strongly_graded);
    CHECK(loop.criterion4);
    CHECK(loop.criterion5 == true);
    CHECK(loop.consistent);

    const auto line_inf = classify_algebra(load("single_edge.graph"), ExtNat::inf());
    CHECK_FALSE(line_inf.criterion5.has_value());
    CHECK(line_inf.consistent);

    std::mt19937 rng(6);
    for (int i = 0; i < 200; ++i) {
      const Graph g = ckalg::testing::random_graph_exact_cap(rng, 8, 14);
      for (std::uint64_t r = 0; r <= 3; ++r) {
        const auto v = classify_algebra(g, ExtNat{false, r});
        CHECK(v.consistent);
        CHECK(v.no_sinks == !has_sinks(g));
        CHECK(v.criterion4 == v.no_sinks);
        CHECK(v.criterion5 == v.no_sinks);
      }
    }
  }

  TEST_CASE("extended naturals") {
    CHECK(parse_ext_nat("inf") == ExtNat::inf());
    CHECK(parse_ext_nat("3") == ExtNat{false, 3});
    CHECK(ExtNat::inf().to_string() == "inf");
    CHECK(ExtNat{false, 7}.to_string() == "7");
    CHECK_THROWS_AS(parse_ext_nat("-1"), DomainError);
    CHECK_THROWS_AS(parse_ext_nat("x"), DomainError);
  }

  TEST_CASE("K0 data") {
    const auto rose3 = k0_data(
        Graph::parse("vertex v\nedge a v v\nedge b v v\nedge c v v\n"));
    CHECK(rose3.free_rank == 0);
    CHECK(rose3.torsion == z({2}));
    CHECK(k0_data(load("loop.graph")) == K0Data{1, {}});
  }
}
