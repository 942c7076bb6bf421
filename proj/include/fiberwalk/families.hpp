#pragma once

#include <cstdint>
#include <vector>

#include "fiberwalk/cone.hpp"
#include "fiberwalk/graph.hpp"
#include "fiberwalk/tensor.hpp"
#include "fiberwalk/witness.hpp"

namespace fiberwalk {

struct CycleOptions {
  /// Admit n = 3 (the no-three-way interaction model).
  bool allow_three = false;
};

/// Quadrics [a A b B; a A' b B'] - [a A' b B; a A b B'] over non-adjacent
/// cyclic positions, canonically deduplicated.
std::vector<Move> cycle_quadrics(int n, const CycleOptions& options = {});
/// Quartics built from blocks A, B, C and their opposites, over all cyclic shifts.
std::vector<Move> cycle_quartics(int n, const CycleOptions& options = {});
std::vector<Move> cycle_markov_basis(int n, const CycleOptions& options = {});
/// One witness per distinct monomial prime, then the toric marker.
std::vector<PrimeWitness> cycle_prime_witnesses(int n, const CycleOptions& options = {});

/// K_{2,N-2} with vertices 1, 2 binary and levels d_3..d_N.
class K2NShape {
 public:
  explicit K2NShape(std::vector<int> tail_levels);

  int n_total() const noexcept { return static_cast<int>(levels_.size()); }
  /// All N levels, starting with 2, 2.
  const std::vector<int>& levels() const noexcept { return levels_; }
  int level(int vertex) const { return levels_.at(static_cast<std::size_t>(vertex - 1)); }

 private:
  std::vector<int> levels_;
};

LabeledGraph k2n_graph(const K2NShape& shape);
/// Minors of the 2x2 slices B^K and of all flattenings of the slices A^{ij}.
std::vector<Move> k2n_quadrics(const K2NShape& shape);
/// B_{a;k1,k2}^{L11 L12 L21 L22} for every a, k1 != k2 and block tuple.
std::vector<Move> k2n_quartics(const K2NShape& shape);
std::vector<Move> k2n_markov_basis(const K2NShape& shape);

/// Cells of the variables generating P[a,C,b,D]; vertices and states 1-based.
std::vector<Cell> k2n_prime_variables(const K2NShape& shape, const K2NIndex& index);
std::vector<PrimeWitness> k2n_prime_witnesses(const K2NShape& shape);

struct K2NFacetOptions {
  /// Emit every ordered pair a != b instead of only a < b.
  bool ordered_pairs = false;
};

/// The inequalities sum_{k in C} y^{1a}_{1k} + sum_{k notin C} y^{2a}_{2k}
/// + sum_{l in D} y^{2b}_{1l} - sum_{l in D} y^{1b}_{1l} >= 0 over the rows
/// of margin_map(k2n_graph(shape)).
std::vector<Functional> k2n_facet_inequalities(const K2NShape& shape, const K2NFacetOptions& options = {});
Functional k2n_functional(const K2NShape& shape, const MarginMap& am, const K2NIndex& index);

/// base_count ^ d0.
std::uint64_t pyramid_prime_count(std::uint64_t base_count, int d0);

/// Witnesses of the cone over a graph: one base prime per apex level (the
/// apex is the last vertex), excluding the all-toric choice, then the toric marker.
std::vector<PrimeWitness> pyramid_prime_witnesses(const std::vector<PrimeWitness>& base, const StateSpace& base_space,
                                                  int d0);

/// "{1,2}" for a sorted list.
std::string set_string(const std::vector<int>& values);

}  // namespace fiberwalk
