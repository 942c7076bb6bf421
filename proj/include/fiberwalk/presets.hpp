#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fiberwalk/families.hpp"
#include "fiberwalk/graph.hpp"
#include "fiberwalk/tensor.hpp"
#include "fiberwalk/witness.hpp"

namespace fiberwalk {

enum class Family { none, cycle, k2n, pyramid };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

struct Preset {
  Preset(std::string n, LabeledGraph g) : name(std::move(n)), graph(std::move(g)) {}

  std::string name;
  LabeledGraph graph;
  Family family = Family::none;
  /// Cycle length for cycle graphs and for the base of a pyramid.
  int cycle_length = 0;
  std::optional<K2NShape> k2n_shape;
  std::optional<MarginMap> margin_override;
  std::optional<Table> table;
  std::optional<std::vector<Move>> moves;
};

/// Named models; "k2n(N)" and "k2n(N,d3,...,dN)" are parsed as well.
std::vector<std::string> preset_names();
Preset resolve_preset(const std::string& name);

/// Wraps a graph read from a file, recognizing binary cycles and K_{2,N-2}.
Preset preset_from_graph(std::string name, const LabeledGraph& g);
/// A readable file path is parsed as graph JSON, anything else as a preset name.
Preset resolve_graph_argument(const std::string& arg);

MarginMap preset_margin_map(const Preset& p);

enum class MoveSource { preferred, global_markov, family_basis };

/// preferred: pinned moves, else the family Markov basis, else glG_moves.
std::vector<Move> preset_moves(const Preset& p, MoveSource source = MoveSource::preferred);
/// Throws unsupported when the preset has no known prime decomposition.
std::vector<PrimeWitness> preset_primes(const Preset& p);

bool same_graph(const LabeledGraph& a, const LabeledGraph& b);

}  // namespace fiberwalk
