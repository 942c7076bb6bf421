#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fiberwalk/fiber.hpp"
#include "fiberwalk/graph.hpp"
#include "fiberwalk/tensor.hpp"

namespace fiberwalk {

struct K33Witness {
  Table u_plus;
  Table u_minus;
  Table w;
};

/// Binary K_{3,3} with parts {1,2,3} and {4,5,6}.
LabeledGraph k33_graph();
/// Parses "121|222" into a cell of the binary six-vertex space.
Cell k33_cell(const std::string& state);
K33Witness k33_witness();

struct K33Report {
  std::size_t move_count = 0;
  std::size_t c18a = 0;
  std::size_t c18b = 0;
  std::size_t c90 = 0;
  bool disjoint = false;
  /// Both u+2w and v+2w lie in the computed component.
  bool c90_contains_both = false;
  std::optional<std::size_t> path_length;
  std::vector<PathStep> path;
  bool inconclusive = false;
};

K33Report k33_run(std::size_t cap);

struct SearchOptions {
  std::size_t max_pairs = 50;
  std::size_t node_cap = 200'000;
  std::size_t table_budget = 1'000'000;
};

struct SearchResult {
  std::optional<Move> move;
  std::optional<Table> w;
  std::size_t pairs_examined = 0;
  std::size_t cofactors_examined = 0;
};

/// Looks for a degree-4 move u - v outside the quadric component structure and
/// a square-free degree-2 w with u+w, v+w disconnected and u+2w, v+2w connected.
SearchResult search_nonradical_witness(const LabeledGraph& g, const SearchOptions& options);

}  // namespace fiberwalk
