#include "ckalg/lpa.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace ckalg {

Monomial Monomial::vertex(const Graph& g, std::string_view v) {
  Path p = Path::vertex(g, v);
  return {p, p};
}

Monomial Monomial::edge(const Graph& g, std::string_view e) {
  Path p = Path::from_edges(g, {std::string(e)});
  return {p, Path::vertex(g, p.end)};
}

Monomial Monomial::ghost(const Graph& g, std::string_view e) {
  Path p = Path::from_edges(g, {std::string(e)});
  return {Path::vertex(g, p.end), p};
}

Monomial Monomial::path(const Path& p) {
  return {p, Path{p.end, p.end, {}}};
}

Element::Element(Monomial m, Rational c) {
  if (c != 0) terms_.emplace(std::move(m), std::move(c));
}

Element Element::vertex(const Graph& g, std::string_view v) {
  return Element(Monomial::vertex(g, v));
}
Element Element::edge(const Graph& g, std::string_view e) {
  return Element(Monomial::edge(g, e));
}
Element Element::ghost(const Graph& g, std::string_view e) {
  return Element(Monomial::ghost(g, e));
}
Element Element::path(const Path& p) { return Element(Monomial::path(p)); }

void Element::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Element& Element::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

std::optional<Monomial> mono_mul(const Monomial& a, const Monomial& b) {
  // (αβ*)(γδ*) = α(β*γ)δ*
  const Path& beta = a.beta;
  const Path& gamma = b.alpha;
  if (beta.start != gamma.start) return std::nullopt;
  const std::size_t common = std::min(beta.length(), gamma.length());
  for (std::size_t i = 0; i < common; ++i)
    if (beta.edges[i] != gamma.edges[i]) return std::nullopt;
  if (beta.length() <= gamma.length()) {
    // γ = βγ'
    Path alpha = a.alpha;
    alpha.edges.insert(alpha.edges.end(), gamma.edges.begin() + common,
                       gamma.edges.end());
    alpha.end = gamma.end;
    return Monomial{std::move(alpha), b.beta};
  }
  // β = γβ'
  Path delta = b.beta;
  delta.edges.insert(delta.edges.end(), beta.edges.begin() + common,
                     beta.edges.end());
  delta.end = beta.end;
  return Monomial{a.alpha, std::move(delta)};
}

Element operator*(const Element& a, const Element& b) {
  Element out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      if (auto m = mono_mul(ma, mb)) out.add_term(*m, ca * cb);
  return out;
}

Element star(const Element& x) {
  Element out;
  for (const auto& [m, c] : x.terms()) out.add_term(Monomial{m.beta, m.alpha}, c);
  return out;
}

bool is_reducible(const Graph& g, const Monomial& m) {
  if (m.alpha.is_vertex() || m.beta.is_vertex()) return false;
  const auto& e = m.alpha.edges.back();
  if (m.beta.edges.back() != e) return false;
  const auto& edge = g.edge(g.edge_id(e));
  return *g.designated_edge(edge.src) == g.edge_id(e);
}

namespace {

Path drop_last(const Graph& g, const Path& p) {
  Path q = p;
  q.edges.pop_back();
  q.end = g.source(p.edges.back());
  return q;
}

Path append(const Path& p, const Graph& g, std::size_t e) {
  Path q = p;
  q.edges.push_back(g.edge(e).name);
  q.end = g.vertex_name(g.edge(e).dst);
  return q;
}

}  // namespace

Element normal_form(const Graph& g, const Element& x, RewriteOrder order) {
  Element done;
  Element work = x;
  while (!work.is_zero()) {
    auto it = order == RewriteOrder::LeastFirst ? work.terms().begin()
                                                : std::prev(work.terms().end());
    const Monomial m = it->first;
    const Rational c = it->second;
    work.add_term(m, -c);
    if (!is_reducible(g, m)) {
      done.add_term(m, c);
      continue;
    }
    // α'γγ*β'* = α'β'* − Σ_{f ≠ γ, s(f) = s(γ)} α'f f*β'*
    const Path a = drop_last(g, m.alpha);
    const Path b = drop_last(g, m.beta);
    const std::size_t designated = g.edge_id(m.alpha.edges.back());
    work.add_term(Monomial{a, b}, c);
    for (std::size_t f : g.out_edges(g.vertex_id(a.end)))
      if (f != designated) work.add_term(Monomial{append(a, g, f), append(b, g, f)}, -c);
  }
  return done;
}

bool equals(const Graph& g, const Element& x, const Element& y) {
  return normal_form(g, x - y).is_zero();
}

WeightMap standard_weights(const Graph& g) {
  WeightMap w;
  for (const auto& e : g.edges()) w[e.name] = 1;
  return w;
}

std::optional<std::int64_t> degree(const Graph& g, const Element& x,
                                   const WeightMap& w) {
  const auto weight = [&](const std::string& e) {
    auto it = w.find(e);
    if (it == w.end()) throw DomainError("weight map misses edge '" + e + "'");
    return it->second;
  };
  std::optional<std::int64_t> deg;
  const Element reduced = normal_form(g, x);
  for (const auto& [m, c] : reduced.terms()) {
    std::int64_t d = 0;
    for (const auto& e : m.alpha.edges) d += weight(e);
    for (const auto& e : m.beta.edges) d -= weight(e);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg.value_or(0);
}

Element omega(const Graph& g, const Path& alpha, const Path& lambda) {
  if (lambda.is_vertex() || lambda.start != lambda.end)
    throw DomainError("lambda is not a cycle");
  if (lambda.start != alpha.end)
    throw DomainError("lambda is not based at the range of alpha");
  for (const auto& e : lambda.edges)
    if (g.out_degree(g.vertex_id(g.source(e))) != 1)
      throw DomainError("lambda has an exit at '" + g.source(e) + "'");
  return Element(Monomial{Path::concat(alpha, lambda), alpha});
}

// ---------------------------------------------------------------------------
// Text syntax

namespace {

std::string path_text(const Path& p) { return p.to_string(); }

std::string monomial_text(const Monomial& m) {
  if (m.beta.is_vertex() && m.beta.start == m.alpha.end) return path_text(m.alpha);
  return path_text(m.alpha) + ";" + path_text(m.beta);
}

}  // namespace

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (mag != 1) out += mag.get_str() + " * ";
    out += monomial_text(m);
  }
  return out;
}

Path parse_path(const Graph& g, std::string_view token) {
  if (token.empty()) throw DomainError("empty path");
  if (g.has_vertex(token)) return Path::vertex(g, token);
  if (g.has_edge(token)) return Path::from_edges(g, {std::string(token)});
  // Segment at '.' boundaries into composable edges, longest piece first.
  std::function<std::optional<std::vector<std::string>>(std::size_t,
                                                        std::optional<std::size_t>)>
      split = [&](std::size_t pos, std::optional<std::size_t> at)
      -> std::optional<std::vector<std::string>> {
    if (pos == token.size()) return std::vector<std::string>{};
    std::vector<std::size_t> cuts;
    for (std::size_t i = pos; i < token.size(); ++i)
      if (token[i] == '.') cuts.push_back(i);
    cuts.push_back(token.size());
    for (auto it = cuts.rbegin(); it != cuts.rend(); ++it) {
      auto piece = token.substr(pos, *it - pos);
      auto e = g.find_edge(piece);
      if (!e || (at && g.edge(*e).src != *at)) continue;
      const std::size_t next = *it == token.size() ? *it : *it + 1;
      if (next == token.size() && *it != token.size()) continue;
      if (auto rest = split(next, g.edge(*e).dst)) {
        rest->insert(rest->begin(), std::string(piece));
        return rest;
      }
    }
    return std::nullopt;
  };
  auto edges = split(0, std::nullopt);
  if (!edges) throw DomainError("cannot read '" + std::string(token) + "' as a path");
  return Path::from_edges(g, std::move(*edges));
}

namespace {

Rational parse_rational(const std::string& text) {
  const bool ok = !text.empty() &&
                  std::all_of(text.begin(), text.end(), [](char c) {
                    return std::isdigit(static_cast<unsigned char>(c)) || c == '/';
                  }) &&
                  std::count(text.begin(), text.end(), '/') <= 1 &&
                  text.front() != '/' && text.back() != '/';
  if (!ok) throw DomainError("bad coefficient '" + text + "'");
  Rational r(text);
  if (r.get_den() == 0) throw DomainError("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

}  // namespace

Element parse_element(const Graph& g, std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw DomainError("empty element");
  if (s == "0" && !g.has_vertex("0")) return {};

  Element out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    Rational sign = 1;
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-') sign = -sign;
      ++pos;
    }
    std::size_t end = s.find_first_of("+-", pos);
    if (end == std::string::npos) end = s.size();
    std::string term = s.substr(pos, end - pos);
    pos = end;
    if (term.empty()) throw DomainError("empty term in '" + std::string(text) + "'");

    Rational coef = 1;
    if (auto star_at = term.find('*'); star_at != std::string::npos) {
      coef = parse_rational(term.substr(0, star_at));
      term = term.substr(star_at + 1);
    }
    Path alpha, beta;
    if (auto semi = term.find(';'); semi != std::string::npos) {
      alpha = parse_path(g, term.substr(0, semi));
      beta = parse_path(g, term.substr(semi + 1));
    } else {
      alpha = parse_path(g, term);
      beta = Path::vertex(g, alpha.end);
    }
    if (alpha.end != beta.end)
      throw DomainError("term '" + term + "': ranges of the two paths differ");
    out.add_term(Monomial{alpha, beta}, sign * coef);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cuntz-Krieger families

CkReport verify_ck_family(const Graph& target, const Family& family,
                          const Graph& host) {
  for (const auto& v : target.vertices())
    if (!family.vertices.count(v))
      throw DomainError("family misses vertex '" + v + "'");
  for (const auto& e : target.edges())
    if (!family.edges.count(e.name))
      throw DomainError("family misses edge '" + e.name + "'");

  CkReport report;
  const auto check = [&](bool holds, std::string name) {
    ++report.checked;
    if (!holds) report.failures.push_back(std::move(name));
  };
  const auto same = [&](const Element& x, const Element& y) {
    return equals(host, x, y);
  };
  const auto& q = family.vertices;
  const auto& t = family.edges;

  for (const auto& v : target.vertices()) {
    const Element& qv = q.at(v);
    check(!normal_form(host, qv).is_zero(), "nonzero(" + v + ")");
    check(same(qv * qv, qv), "idempotent(" + v + ")");
    check(same(star(qv), qv), "selfadjoint(" + v + ")");
  }
  for (std::size_t i = 0; i < target.vertex_count(); ++i)
    for (std::size_t j = i + 1; j < target.vertex_count(); ++j) {
      const auto& v = target.vertex_name(i);
      const auto& w = target.vertex_name(j);
      check(normal_form(host, q.at(v) * q.at(w)).is_zero(),
            "orthogonal(" + v + "," + w + ")");
    }
  for (const auto& e : target.edges()) {
    const Element& te = t.at(e.name);
    check(same(q.at(target.vertex_name(e.src)) * te, te), "source(" + e.name + ")");
    check(same(te * q.at(target.vertex_name(e.dst)), te), "range(" + e.name + ")");
  }
  for (const auto& e : target.edges())
    for (const auto& f : target.edges()) {
      const Element lhs = star(t.at(e.name)) * t.at(f.name);
      const Element rhs =
          e.name == f.name ? q.at(target.vertex_name(e.dst)) : Element{};
      check(same(lhs, rhs), "CK-1(" + e.name + "," + f.name + ")");
    }
  for (std::size_t v = 0; v < target.vertex_count(); ++v) {
    if (target.out_degree(v) == 0) continue;
    Element sum;
    for (std::size_t e : target.out_edges(v)) {
      const Element& te = t.at(target.edge(e).name);
      sum += te * star(te);
    }
    check(same(q.at(target.vertex_name(v)), sum), "CK-2(" + target.vertex_name(v) + ")");
  }
  return report;
}

std::string serialize_family(const Graph& target, const Family& family) {
  std::string out;
  for (const auto& v : target.vertices())
    out += "vertex " + v + " = " + family.vertices.at(v).to_string() + "\n";
  for (const auto& e : target.edges())
    out += "edge " + e.name + " " + target.vertex_name(e.src) + " " +
           target.vertex_name(e.dst) + " = " + family.edges.at(e.name).to_string() +
           "\n";
  return out;
}

std::pair<Graph, Family> parse_family(const Graph& host, std::string_view text) {
  Graph target;
  Family family;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto fail = [&](const std::string& why) {
      return DomainError("family line " + std::to_string(lineno) + ": " + why);
    };
    const auto eq = line.find('=');
    std::istringstream head(line.substr(0, eq));
    std::vector<std::string> tok;
    for (std::string t; head >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (eq == std::string::npos) throw fail("missing '='");
    try {
      Element image = parse_element(host, line.substr(eq + 1));
      if (tok[0] == "vertex" && tok.size() == 2) {
        target.add_vertex(tok[1]);
        family.vertices[tok[1]] = std::move(image);
      } else if (tok[0] == "edge" && tok.size() == 4) {
        target.add_edge(tok[1], tok[2], tok[3]);
        family.edges[tok[1]] = std::move(image);
      } else {
        throw DomainError("expected 'vertex <v> = ...' or 'edge <e> <s> <r> = ...'");
      }
    } catch (const DomainError& e) {
      throw fail(e.what());
    }
  }
  return {std::move(target), std::move(family)};
}

}  // namespace ckalg
