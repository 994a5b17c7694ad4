#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ckalg/graph.hpp"

namespace ckalg {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols,
            const std::vector<long>& row_major);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  IntMatrix transpose() const;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

// A natural number or infinity.
struct ExtNat {
  bool infinite = false;
  std::uint64_t value = 0;

  static ExtNat inf() { return {true, 0}; }
  std::string to_string() const;
  friend bool operator==(const ExtNat&, const ExtNat&) = default;
};

ExtNat parse_ext_nat(const std::string& text);

// A[v][w] = number of edges v -> w, declaration order.
IntMatrix adjacency(const Graph& g);

// I - A^t with columns restricted to regular vertices; rows indexed by all
// vertices.
IntMatrix presentation_matrix(const Graph& g);

// Invariant factors d1 | d2 | ... | ds, all positive, s = rank over Q.
std::vector<mpz_class> smith_normal_form(IntMatrix m);

struct KSummary {
  IntMatrix presentation;
  std::size_t vertices = 0;
  std::size_t regular = 0;
  std::size_t singular = 0;
  std::size_t rank = 0;  // rational rank of the presentation matrix
  std::vector<mpz_class> invariant_factors;
  std::vector<mpz_class> torsion;  // invariant factors > 1
  std::size_t rank_k0 = 0;
  ExtNat unit_rank;
  ExtNat rank_k1;
  std::size_t rank_k1_cstar = 0;
};

KSummary k_summary(const Graph& g, ExtNat unit_rank);

struct Verdict {
  bool no_sinks = false;
  bool is_ck = false;
  bool strongly_graded = false;
  bool criterion4 = false;
  std::optional<bool> criterion5;  // nullopt: inapplicable, infinite unit rank
  bool consistent = false;
};

Verdict classify_algebra(const Graph& g, ExtNat unit_rank);

// Free rank and nonunit invariant factors of K0.
struct K0Data {
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;
  friend bool operator==(const K0Data&, const K0Data&) = default;
};

K0Data k0_data(const Graph& g);

std::string torsion_string(const std::vector<mpz_class>& torsion);

}  // namespace ckalg
