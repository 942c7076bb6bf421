#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fiberwalk/cone.hpp"
#include "fiberwalk/graph.hpp"
#include "fiberwalk/tensor.hpp"

namespace fiberwalk {

/// d x d array with entries in [d], every row and column a permutation.
class LatinSquare {
 public:
  /// Throws invalid_square unless the Latin property holds.
  explicit LatinSquare(std::vector<std::vector<int>> cells);

  int order() const noexcept { return static_cast<int>(cells_.size()); }
  /// 1-based row and column.
  int at(int i, int j) const { return cells_.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j - 1)); }
  const std::vector<std::vector<int>>& cells() const noexcept { return cells_; }

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

 private:
  std::vector<std::vector<int>> cells_;
};

/// q - 1 mutually orthogonal squares m*i + j over GF(q), q in {2,3,4,5,7,8,9}.
std::vector<LatinSquare> mols(int q);

bool are_orthogonal(const LatinSquare& l1, const LatinSquare& l2);

/// Indicator of the d0^2 states (i, j, L1_ij, ..., L{N-2}_ij); uses the first
/// N - 2 squares.
Table latin_table(const LabeledGraph& g, const std::vector<LatinSquare>& squares);

/// Permutes the states of one vertex (perm is 1-based: state s -> perm[s-1]).
Table permute_states(const Table& t, const StateSpace& space, int vertex, const std::vector<int>& perm);

struct InteriorCheck {
  /// "facets", "uniform-certificate", or "none".
  std::string method = "none";
  bool interior = false;
  std::size_t facet_count = 0;
  std::size_t rank = 0;
};

struct DisconnectionReport {
  bool two_connected = false;
  bool triangle_free = false;
  bool preconditions_hold = false;
  std::optional<std::size_t> component_size;
  bool component_truncated = false;
  bool strictly_positive = false;
  InteriorCheck interior;
  /// Another table with the same margins, from a state permutation.
  std::optional<Table> second_element;
  std::string permutation;
};

struct DisconnectionOptions {
  std::size_t node_cap = 1'000'000;
  FacetLimits facet_limits{.max_columns = 128, .max_rank = 32, .max_rays = 500'000};
};

DisconnectionReport verify_disconnection(const LabeledGraph& g, const Table& t, const DisconnectionOptions& options = {});

}  // namespace fiberwalk
