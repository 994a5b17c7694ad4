#include "ckalg/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "ckalg/corners.hpp"
#include "ckalg/graph.hpp"
#include "ckalg/ktheory.hpp"
#include "ckalg/lpa.hpp"
#include "ckalg/monoid.hpp"
#include "ckalg/moves.hpp"

namespace ckalg::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << text;
}

Graph load_graph(const std::string& path) { return Graph::parse(read_file(path)); }

const char* yes_no(bool b) { return b ? "true" : "false"; }

// Writes to the named file, or to `out` when the path is empty.
void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty())
    out << text;
  else
    write_file(path, text);
}

struct Options {
  std::string graph;
  std::string output;
  std::string trace;
  std::string unit_rank = "0";
  // move
  std::string vertex_or_edge;
  std::size_t count = 0;
  std::string vertex_list;
  // corner
  std::string roots;
  std::string forest_file;
  std::string family_out;
  std::string weights_out;
  std::string forest_out;
  // verify / replay
  std::string second_file;
  // monoid
  std::string element_a;
  std::string element_b;
  std::size_t steps = 8;
  std::size_t size = 16;
};

int do_analyze(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o.graph);
  const ExtNat r = parse_ext_nat(o.unit_rank);
  const KSummary s = k_summary(g, r);
  const Verdict v = classify_algebra(g, r);
  out << "rank_k0 " << s.rank_k0 << "\n";
  out << "rank_k1(r=" << r.to_string() << ") " << s.rank_k1.to_string() << "\n";
  out << "torsion " << torsion_string(s.torsion) << "\n";
  out << "singular " << s.singular << "\n";
  out << "is_ck " << yes_no(v.is_ck) << "\n";
  out << "strongly_graded " << yes_no(v.strongly_graded) << "\n";
  out << "criterion4 " << yes_no(v.criterion4) << "\n";
  out << "criterion5 "
      << (v.criterion5 ? yes_no(*v.criterion5) : "inapplicable") << "\n";
  out << "rank_k1_cstar " << s.rank_k1_cstar << "\n";
  out << "consistent " << yes_no(v.consistent) << "\n";
  return kOk;
}

int do_move(MoveKind kind, const Options& o, std::ostream& out) {
  const Graph g = load_graph(o.graph);
  std::vector<std::string> params;
  switch (kind) {
    case MoveKind::ExpandHereditary:
      params = {join_vertices(split_vertices(o.vertex_list))};
      break;
    case MoveKind::EliminateSource:
      params = {o.vertex_or_edge};
      break;
    default:
      params = {o.vertex_or_edge, std::to_string(o.count)};
  }
  MoveTrace trace;
  const Graph result = apply_recorded(g, kind, params, trace);
  emit(out, o.output, result.serialize());
  if (!o.trace.empty()) write_file(o.trace, trace.serialize());
  return kOk;
}

int do_desourcify(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o.graph);
  auto [result, trace] = desourcify(g);
  emit(out, o.output, result.serialize());
  if (!o.trace.empty()) write_file(o.trace, trace.serialize());
  return kOk;
}

int do_replay(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o.graph);
  const MoveTrace trace = MoveTrace::parse(read_file(o.second_file));
  emit(out, o.output, replay(g, trace).serialize());
  return kOk;
}

int do_corner(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o.graph);
  Forest t;
  if (!o.forest_file.empty()) {
    t = Forest::parse(g, read_file(o.forest_file));
    if (!o.roots.empty() && t.roots != split_vertices(o.roots))
      throw DomainError("--roots disagrees with the roots of --forest");
  } else {
    if (o.roots.empty()) throw DomainError("corner needs --roots or --forest");
    t = build_forest(g, split_vertices(o.roots));
  }
  const Graph corner = t_corner(g, t);
  emit(out, o.output, corner.serialize());
  if (!o.family_out.empty())
    write_file(o.family_out, serialize_family(corner, corner_family(g, t)));
  if (!o.weights_out.empty()) {
    std::string text;
    for (const auto& [e, w] : corner_weights(g, t))
      text += "weight " + e + " " + std::to_string(w) + "\n";
    write_file(o.weights_out, text);
  }
  if (!o.forest_out.empty()) write_file(o.forest_out, t.serialize());
  return kOk;
}

int do_verify(const Options& o, std::ostream& out) {
  const Graph host = load_graph(o.graph);
  const auto [target, family] = parse_family(host, read_file(o.second_file));
  const CkReport report = verify_ck_family(target, family, host);
  out << "checked " << report.checked << "\n";
  out << "failed " << report.failures.size() << "\n";
  for (const auto& f : report.failures) out << "fail " << f << "\n";
  out << "verdict " << (report.ok() ? "pass" : "fail") << "\n";
  return report.ok() ? kOk : kDomainError;
}

const char* verdict_name(Equivalence e) {
  return e == Equivalence::Equivalent ? "Equivalent" : "NotWithinBound";
}

int do_monoid_equiv(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o.graph);
  const auto a = MonoidElement::parse(g, o.element_a);
  const auto b = MonoidElement::parse(g, o.element_b);
  const auto r = equivalent(g, a, b, o.steps, o.size);
  out << "verdict " << verdict_name(r.verdict) << "\n";
  if (r.verdict == Equivalence::Equivalent) out << "steps " << r.steps << "\n";
  return kOk;
}

int do_monoid_full(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o.graph);
  const auto m = MonoidElement::parse(g, o.element_a);
  out << "full " << yes_no(is_full(g, m)) << "\n";
  out << "closure " << join_vertices(hs_closure(g, m.support())) << "\n";
  return kOk;
}

int do_monoid_rebalance(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o.graph);
  const auto m = MonoidElement::parse(g, o.element_a);
  const auto r = rebalance_full(g, m);
  std::string expansions;
  for (const auto& v : r.expansions) expansions += (expansions.empty() ? "" : ",") + v;
  out << "element " << r.element.to_string() << "\n";
  out << "expansions " << (expansions.empty() ? "-" : expansions) << "\n";
  out << "certificate " << verdict_name(r.certificate.verdict) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph moves, corners, K-theory and Cuntz-Krieger verification "
               "for Leavitt path algebras of finite graphs",
               "ckalg"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "K-theory ranks and classification verdicts");
  analyze->add_option("graph", o.graph, "graph file")->required();
  analyze->add_option("--unit-rank", o.unit_rank, "rank of the unit group k^x (integer or inf)")
      ->check(CLI::Validator(
          [](std::string& text) -> std::string {
            try {
              parse_ext_nat(text);
              return {};
            } catch (const DomainError& e) {
              return e.what();
            }
          },
          "NAT|inf"));

  auto* move = app.add_subcommand("move", "apply one graph move");
  move->require_subcommand(1);
  const auto common_move = [&](CLI::App* sub) {
    sub->add_option("-o,--output", o.output, "write the graph here instead of stdout");
    sub->add_option("--trace", o.trace, "write the one-step move trace here");
  };
  auto* m_expand = move->add_subcommand("expand-hereditary", "E(H)");
  m_expand->add_option("graph", o.graph)->required();
  m_expand->add_option("H", o.vertex_list, "comma-separated hereditary set")->required();
  auto* m_head = move->add_subcommand("attach-head", "E(v0, n)");
  auto* m_subdiv = move->add_subcommand("subdivide", "E(e0, n)");
  auto* m_sources = move->add_subcommand("attach-sources", "E'(v0, n)");
  for (auto* sub : {m_head, m_subdiv, m_sources}) {
    sub->add_option("graph", o.graph)->required();
    sub->add_option("name", o.vertex_or_edge)->required();
    sub->add_option("n", o.count)->required()->check(CLI::PositiveNumber);
  }
  auto* m_elim = move->add_subcommand("eliminate-source", "remove a source");
  m_elim->add_option("graph", o.graph)->required();
  m_elim->add_option("vertex", o.vertex_or_edge)->required();
  for (auto* sub : {m_expand, m_head, m_subdiv, m_sources, m_elim}) common_move(sub);

  auto* desource = app.add_subcommand("desourcify", "remove sources up to isomorphism");
  desource->add_option("graph", o.graph)->required();
  desource->add_option("-o,--output", o.output);
  desource->add_option("--trace", o.trace, "write the move trace here");

  auto* replay_cmd = app.add_subcommand("replay", "replay a move trace and check its hashes");
  replay_cmd->add_option("graph", o.graph)->required();
  replay_cmd->add_option("trace", o.second_file)->required();
  replay_cmd->add_option("-o,--output", o.output);

  auto* corner = app.add_subcommand("corner", "T-corner graph E(T)");
  corner->add_option("graph", o.graph)->required();
  corner->add_option("--roots", o.roots, "comma-separated root set X");
  corner->add_option("--forest", o.forest_file, "forest file (root/tedge lines)");
  corner->add_option("-o,--output", o.output);
  corner->add_option("--emit-family", o.family_out, "write the Q/T family here");
  corner->add_option("--emit-weights", o.weights_out, "write the weight map here");
  corner->add_option("--emit-forest", o.forest_out, "write the forest here");

  auto* verify = app.add_subcommand("verify", "check a Cuntz-Krieger family");
  verify->add_option("graph", o.graph, "host graph")->required();
  verify->add_option("family", o.second_file, "family file")->required();

  auto* monoid = app.add_subcommand("monoid", "graph monoid operations");
  monoid->require_subcommand(1);
  auto* mo_equiv = monoid->add_subcommand("equiv", "bounded equivalence search");
  mo_equiv->add_option("graph", o.graph)->required();
  mo_equiv->add_option("a", o.element_a)->required();
  mo_equiv->add_option("b", o.element_b)->required();
  mo_equiv->add_option("--steps", o.steps)->check(CLI::PositiveNumber);
  mo_equiv->add_option("--size", o.size)->check(CLI::PositiveNumber);
  auto* mo_full = monoid->add_subcommand("full", "fullness of an element");
  mo_full->add_option("graph", o.graph)->required();
  mo_full->add_option("element", o.element_a)->required();
  auto* mo_rebal = monoid->add_subcommand("rebalance", "all-positive equivalent element");
  mo_rebal->add_option("graph", o.graph)->required();
  mo_rebal->add_option("element", o.element_a)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*analyze) return do_analyze(o, out);
    if (*m_expand) return do_move(MoveKind::ExpandHereditary, o, out);
    if (*m_head) return do_move(MoveKind::AttachHead, o, out);
    if (*m_subdiv) return do_move(MoveKind::SubdivideEdge, o, out);
    if (*m_sources) return do_move(MoveKind::AttachSources, o, out);
    if (*m_elim) return do_move(MoveKind::EliminateSource, o, out);
    if (*desource) return do_desourcify(o, out);
    if (*replay_cmd) return do_replay(o, out);
    if (*corner) return do_corner(o, out);
    if (*verify) return do_verify(o, out);
    if (*mo_equiv) return do_monoid_equiv(o, out);
    if (*mo_full) return do_monoid_full(o, out);
    if (*mo_rebal) return do_monoid_rebalance(o, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return kDomainError;
  }
  err << "usage error: no subcommand\n";
  return kUsageError;
}

}  // namespace ckalg::cli
