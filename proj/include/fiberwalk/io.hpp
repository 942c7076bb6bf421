#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fiberwalk/cone.hpp"
#include "fiberwalk/fiber.hpp"
#include "fiberwalk/graph.hpp"
#include "fiberwalk/latin.hpp"
#include "fiberwalk/tensor.hpp"
#include "fiberwalk/witness.hpp"

namespace fiberwalk {

using Json = nlohmann::ordered_json;

/// [[[x1,...,xn], count], ...] with 1-based coordinates, in cell order.
Json cells_to_json(const Table& t, const StateSpace& s);
Table cells_from_json(const Json& j, const StateSpace& s);

/// {"d": [...], "cells": [...]}
Json table_to_json(const Table& t, const StateSpace& s);
struct LoadedTable {
  StateSpace space;
  Table table;
};
LoadedTable table_from_json(const Json& j);

/// {"plus": <cells>, "minus": <cells>}
Json move_to_json(const Move& m, const StateSpace& s);
Move move_from_json(const Json& j, const StateSpace& s);
Json moves_to_json(const std::vector<Move>& moves, const StateSpace& s);
/// Accepts a list of moves or an object with a "moves" list.
std::vector<Move> moves_from_json(const Json& j, const StateSpace& s);

/// {"vertices": n, "d": [...], "edges": [[u,v], ...]}, 1-based.
Json graph_to_json(const LabeledGraph& g);
LabeledGraph graph_from_json(const Json& j);

Json functional_to_json(const Functional& f, const MarginMap& am);
Json prime_to_json(const PrimeWitness& w, const StateSpace& s);
Json component_to_json(const ComponentReport& r, const StateSpace& s, bool dump);
Json path_to_json(const std::vector<PathStep>& path);
Json square_to_json(const LatinSquare& l);
Json disconnection_to_json(const DisconnectionReport& r, const StateSpace& s);

/// Throws invalid_input with the path in the message on read or parse failure.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

/// Reports elide component members above this size unless dumping.
inline constexpr std::size_t member_elision_limit = 10'000;

}  // namespace fiberwalk
