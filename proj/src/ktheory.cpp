#include "ckalg/ktheory.hpp"

#include <algorithm>
#include <charconv>
#include <utility>

namespace ckalg {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols,
                     const std::vector<long>& row_major)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (row_major.size() != rows * cols)
    throw DomainError("matrix entry count does not match its shape");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = row_major[i];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::string ExtNat::to_string() const {
  return infinite ? "inf" : std::to_string(value);
}

ExtNat parse_ext_nat(const std::string& text) {
  if (text == "inf") return ExtNat::inf();
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw DomainError("expected a nonnegative integer or 'inf', got '" + text + "'");
  return {false, v};
}

IntMatrix adjacency(const Graph& g) {
  IntMatrix a(g.vertex_count(), g.vertex_count());
  for (const auto& e : g.edges()) a(e.src, e.dst) += 1;
  return a;
}

IntMatrix presentation_matrix(const Graph& g) {
  const IntMatrix a = adjacency(g);
  std::vector<std::size_t> regular;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.out_degree(v) > 0) regular.push_back(v);
  IntMatrix b(g.vertex_count(), regular.size());
  for (std::size_t c = 0; c < regular.size(); ++c) {
    const std::size_t v = regular[c];
    for (std::size_t w = 0; w < g.vertex_count(); ++w)
      b(w, c) = (w == v ? 1 : 0) - a(v, w);
  }
  return b;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

}  // namespace

std::vector<mpz_class> smith_normal_form(IntMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<mpz_class> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Pivot: entry of least nonzero absolute value in the trailing block.
    for (;;) {
      std::size_t pr = rows, pc = cols;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c)
          if (m(r, c) != 0 &&
              (pr == rows || mpz_cmpabs(m(r, c).get_mpz_t(), m(pr, pc).get_mpz_t()) < 0)) {
            pr = r;
            pc = c;
          }
      if (pr == rows) return diag;  // trailing block is zero
      swap_rows(m, t, pr);
      swap_cols(m, t, pc);
      const mpz_class p = m(t, t);

      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (m(r, t) == 0) continue;
        const mpz_class q = m(r, t) / p;  // truncating; remainder is smaller than |p|
        for (std::size_t c = t; c < cols; ++c) m(r, c) -= q * m(t, c);
        if (m(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (m(t, c) == 0) continue;
        const mpz_class q = m(t, c) / p;
        for (std::size_t r = t; r < rows; ++r) m(r, c) -= q * m(r, t);
        if (m(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole trailing block; otherwise fold an
      // offending row into row t and repeat.
      bool divides = true;
      for (std::size_t r = t + 1; r < rows && divides; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (m(r, c) % p != 0) {
            for (std::size_t k = t; k < cols; ++k) m(t, k) += m(r, k);
            divides = false;
            break;
          }
      if (!divides) continue;

      diag.push_back(abs(p));
      break;
    }
  }
  return diag;
}

KSummary k_summary(const Graph& g, ExtNat unit_rank) {
  KSummary s;
  s.presentation = presentation_matrix(g);
  s.vertices = g.vertex_count();
  s.regular = s.presentation.cols();
  s.singular = s.vertices - s.regular;
  s.invariant_factors = smith_normal_form(s.presentation);
  s.rank = s.invariant_factors.size();
  for (const auto& d : s.invariant_factors)
    if (d > 1) s.torsion.push_back(d);
  s.rank_k0 = s.vertices - s.rank;
  s.rank_k1_cstar = s.regular - s.rank;
  s.unit_rank = unit_rank;
  if (unit_rank.infinite) {
    s.rank_k1 = s.rank_k0 == 0 ? ExtNat{false, s.rank_k1_cstar} : ExtNat::inf();
  } else {
    s.rank_k1 = {false, s.rank_k1_cstar + unit_rank.value * s.rank_k0};
  }
  return s;
}

Verdict classify_algebra(const Graph& g, ExtNat unit_rank) {
  const KSummary s = k_summary(g, unit_rank);
  Verdict v;
  v.no_sinks = !has_sinks(g);
  v.is_ck = v.no_sinks;
  v.strongly_graded = v.no_sinks;
  v.criterion4 = s.rank_k0 == s.rank_k1_cstar;
  v.consistent = v.no_sinks == v.criterion4;
  if (!unit_rank.infinite) {
    v.criterion5 = s.rank_k1.value == (unit_rank.value + 1) * s.rank_k0;
    v.consistent = v.consistent && (v.no_sinks == *v.criterion5);
  }
  return v;
}

K0Data k0_data(const Graph& g) {
  const KSummary s = k_summary(g, {false, 0});
  return {s.rank_k0, s.torsion};
}

std::string torsion_string(const std::vector<mpz_class>& torsion) {
  if (torsion.empty()) return "-";
  std::string out;
  for (const auto& d : torsion) {
    if (!out.empty()) out += ',';
    out += d.get_str();
  }
  return out;
}

}  // namespace ckalg
