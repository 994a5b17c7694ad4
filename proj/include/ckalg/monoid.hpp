#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ckalg/graph.hpp"

namespace ckalg {

// Element of the graph monoid: a finite multiset of vertices. Zero
// multiplicities are never stored.
class MonoidElement {
 public:
  MonoidElement() = default;
  explicit MonoidElement(std::map<std::string, std::uint64_t> counts);

  // "v1:2 v2:1"
  static MonoidElement parse(const Graph& g, std::string_view text);

  std::uint64_t operator[](const std::string& v) const;
  void add(const std::string& v, std::uint64_t k = 1);
  void remove(const std::string& v, std::uint64_t k = 1);

  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }
  VertexSet support() const;
  std::uint64_t size() const;
  bool is_zero() const { return counts_.empty(); }
  std::string to_string() const;

  friend bool operator==(const MonoidElement&, const MonoidElement&) = default;

 private:
  std::map<std::string, std::uint64_t> counts_;
};

// Replaces one copy of a regular vertex v by {r(e) : s(e) = v}.
MonoidElement expand(const Graph& g, const MonoidElement& m, std::string_view v);

enum class Equivalence { Equivalent, NotWithinBound };

struct EquivalenceResult {
  Equivalence verdict = Equivalence::NotWithinBound;
  std::size_t steps = 0;  // length of the connecting chain when Equivalent
};

// Bidirectional search over expand and its inverse, never visiting elements
// of total multiplicity above size_bound and never exceeding step_bound
// moves in total. Equivalent is definitive, NotWithinBound is not.
EquivalenceResult equivalent(const Graph& g, const MonoidElement& a,
                             const MonoidElement& b, std::size_t step_bound,
                             std::size_t size_bound);

bool is_full(const Graph& g, const MonoidElement& m);

struct Rebalanced {
  MonoidElement element;
  std::vector<std::string> expansions;  // vertices expanded, in order
  EquivalenceResult certificate;
};

// Requires a finite graph with no sinks or sources, a loop at every vertex,
// and a full input. Output multiplicities are all positive.
Rebalanced rebalance_full(const Graph& g, const MonoidElement& m);

}  // namespace ckalg
