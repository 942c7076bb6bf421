#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fiberwalk/tensor.hpp"

namespace fiberwalk {

/// Sorted list of 0-based vertex ids.
using VertexSet = std::vector<int>;

/// Simple undirected graph whose vertices carry level sizes.
/// Vertices are 0-based internally; JSON and labels use 1-based ids.
class LabeledGraph {
 public:
  static constexpr int max_vertices = 64;

  LabeledGraph(StateSpace levels, std::vector<std::pair<int, int>> edges);

  int n_vertices() const noexcept { return static_cast<int>(space_.n_vertices()); }
  const StateSpace& space() const noexcept { return space_; }
  /// Sorted, each pair with first < second.
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
  bool adjacent(int u, int v) const noexcept { return (adjacency_[u] >> v) & 1u; }
  std::uint64_t neighbor_mask(int v) const noexcept { return adjacency_[v]; }

 private:
  StateSpace space_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint64_t> adjacency_;
};

LabeledGraph cycle_graph(int n, const std::vector<int>& levels);
LabeledGraph path_graph(int n, const std::vector<int>& levels);
LabeledGraph complete_graph(int n, const std::vector<int>& levels);
/// Parts {0..p-1} and {p..p+q-1}.
LabeledGraph complete_bipartite_graph(int p, int q, const std::vector<int>& levels);

/// A _|_ B | C with A, B, C a partition of all vertices.
struct CIStatement {
  VertexSet a;
  VertexSet b;
  VertexSet c;

  friend bool operator==(const CIStatement&, const CIStatement&) = default;
};

std::string to_string(const CIStatement& st);

bool separates(const LabeledGraph& g, const VertexSet& a, const VertexSet& b, const VertexSet& c);

/// All covering separation statements, normalized so min(A) < min(B).
std::vector<CIStatement> global_markov_statements(const LabeledGraph& g);

/// Moves for the 2x2 minors of the A-by-B slices, one per x_C.
std::vector<Move> ci_quadratic_moves(const CIStatement& st, const StateSpace& s);

/// Deduplicated union of ci_quadratic_moves over global_markov_statements.
std::vector<Move> glG_moves(const LabeledGraph& g);

std::vector<VertexSet> maximal_cliques(const LabeledGraph& g);

/// Clique-marginal map A_G indexed by maximal cliques.
class MarginMap {
 public:
  MarginMap(StateSpace space, std::vector<VertexSet> cliques);

  const StateSpace& space() const noexcept { return space_; }
  const std::vector<VertexSet>& cliques() const noexcept { return cliques_; }
  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return n_cols_; }

  /// One row per clique: the rows where column `cell` has a 1.
  std::span<const std::uint32_t> rows_of(Cell cell) const;
  /// Row of (clique, clique-state); clique_state has 1-based entries.
  std::size_t row(std::size_t clique, const std::vector<int>& clique_state) const;
  /// Row of the marginal cell that state x projects to under the clique.
  std::size_t row_of_state(std::size_t clique, const State& x) const;
  std::size_t block_offset(std::size_t clique) const { return offsets_.at(clique); }
  std::size_t block_size(std::size_t clique) const;
  /// Inverse of row(): (clique index, 1-based clique state).
  std::pair<std::size_t, std::vector<int>> row_key(std::size_t row) const;
  std::string row_label(std::size_t row) const;

  /// Dense matrix, n_rows x n_cols.
  std::vector<std::vector<std::int64_t>> dense() const;

 private:
  StateSpace space_;
  std::vector<VertexSet> cliques_;
  std::vector<std::size_t> offsets_;
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<std::uint32_t> cell_rows_;  // n_cols x n_cliques
};

struct MarginVector {
  std::vector<std::int64_t> values;

  friend bool operator==(const MarginVector&, const MarginVector&) = default;
  friend auto operator<=>(const MarginVector&, const MarginVector&) = default;
};

MarginMap margin_map(const LabeledGraph& g);
MarginVector margins(const MarginMap& am, const Table& t);

bool is_chordal(const LabeledGraph& g);
std::optional<std::pair<VertexSet, VertexSet>> reducible_split(const LabeledGraph& g);
/// Adds an apex (new last vertex) adjacent to every old vertex.
LabeledGraph cone_graph(const LabeledGraph& g, int apex_level);

bool is_connected(const LabeledGraph& g);
bool is_two_connected(const LabeledGraph& g);
bool is_triangle_free(const LabeledGraph& g);

}  // namespace fiberwalk
