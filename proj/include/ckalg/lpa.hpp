#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ckalg/graph.hpp"

namespace ckalg {

using Rational = mpq_class;

// αβ* with r(α) = r(β). Vertices are the monomials with α = β = v.
struct Monomial {
  Path alpha;
  Path beta;

  static Monomial vertex(const Graph& g, std::string_view v);
  static Monomial edge(const Graph& g, std::string_view e);
  static Monomial ghost(const Graph& g, std::string_view e);
  // α·r(α)*, i.e. the path itself.
  static Monomial path(const Path& p);

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Finite Q-linear combination of monomials, like terms merged, no zero
// coefficients. Arithmetic is free of relation (4); call normal_form to
// reduce modulo the full set of Cuntz-Krieger relations.
class Element {
 public:
  using Terms = std::map<Monomial, Rational>;

  Element() = default;
  explicit Element(Monomial m, Rational c = 1);

  static Element vertex(const Graph& g, std::string_view v);
  static Element edge(const Graph& g, std::string_view e);
  static Element ghost(const Graph& g, std::string_view e);
  static Element path(const Path& p);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c);

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Rational& c);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Rational(-1); }
  friend Element operator*(Element a, const Rational& c) { return a *= c; }
  friend Element operator*(const Rational& c, Element a) { return a *= c; }
  friend Element operator*(const Element& a, const Element& b);

  // Structural equality of term lists (not equality in the algebra; see
  // ckalg::equals).
  friend bool operator==(const Element&, const Element&) = default;

  std::string to_string() const;

 private:
  Terms terms_;
};

// Product of two monomials: β*γ cancels prefix-wise; zero when neither of
// β, γ is a prefix of the other.
std::optional<Monomial> mono_mul(const Monomial& a, const Monomial& b);

Element star(const Element& x);

// A monomial (α'e)(β'e)* is reducible when e is the designated edge of s(e)
// (the lexicographically least edge it emits).
bool is_reducible(const Graph& g, const Monomial& m);

enum class RewriteOrder { LeastFirst, GreatestFirst };

// Reduces to the unique representative in the span of irreducible
// monomials. The result does not depend on the order; both orders are
// exposed so that confluence can be checked.
Element normal_form(const Graph& g, const Element& x,
                    RewriteOrder order = RewriteOrder::LeastFirst);

bool equals(const Graph& g, const Element& x, const Element& y);

using WeightMap = std::map<std::string, std::int64_t>;

WeightMap standard_weights(const Graph& g);

// Total weight of each monomial after normal form; nullopt when the
// monomials disagree. The zero element has degree 0.
std::optional<std::int64_t> degree(const Graph& g, const Element& x,
                                   const WeightMap& w);

// αλα* for λ an exit-free cycle based at r(α).
Element omega(const Graph& g, const Path& alpha, const Path& lambda);

// Text syntax: terms "[coef *] path [; path]" joined by + and -, where
// "α ; β" stands for αβ*, a path is a vertex name or edge names joined by
// '.', and coef is an integer or p/q. Whitespace is ignored.
Element parse_element(const Graph& g, std::string_view text);

// Resolves a dotted token against the graph (see parse_element).
Path parse_path(const Graph& g, std::string_view token);

// Images of target generators inside the host algebra.
struct Family {
  std::map<std::string, Element> vertices;
  std::map<std::string, Element> edges;
};

struct CkReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Checks that the assignment is a Cuntz-Krieger target-family in L(host):
// nonzero orthogonal idempotents at vertices, s(e)/r(e) absorption, CK-1,
// and CK-2 at every regular target vertex. Throws DomainError if the
// assignment misses a generator.
CkReport verify_ck_family(const Graph& target, const Family& family,
                          const Graph& host);

// "vertex <name> = <element>" and "edge <name> <src> <dst> = <element>"
// lines; the target graph is implied by the declarations.
std::string serialize_family(const Graph& target, const Family& family);
std::pair<Graph, Family> parse_family(const Graph& host, std::string_view text);

}  // namespace ckalg
