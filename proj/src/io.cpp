#include "fiberwalk/io.hpp"

#include <fstream>

#include "fiberwalk/error.hpp"

namespace fiberwalk {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::invalid_input, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be a list of integers");
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) bad(std::string(what) + " must be a list of integers");
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

Json cells_to_json(const Table& t, const StateSpace& s) {
  Json out = Json::array();
  for (const auto& [cell, count] : t.entries()) out.push_back(Json::array({state_of(cell, s), count}));
  return out;
}

Table cells_from_json(const Json& j, const StateSpace& s) {
  if (!j.is_array()) bad("cells must be a list of [state, count] pairs");
  std::vector<Table::Entry> entries;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[1].is_number_integer()) bad("each cell must be [state, count]");
    const auto count = e[1].get<std::int64_t>();
    if (count < 0) bad("cell counts must be nonnegative");
    entries.emplace_back(state_index(int_list(e[0], "state"), s), static_cast<Count>(count));
  }
  return Table::from_entries(std::move(entries));
}

Json table_to_json(const Table& t, const StateSpace& s) {
  return Json{{"d", s.levels()}, {"cells", cells_to_json(t, s)}};
}

LoadedTable table_from_json(const Json& j) {
  StateSpace s(int_list(field(j, "d"), "d"));
  auto t = cells_from_json(field(j, "cells"), s);
  return {std::move(s), std::move(t)};
}

Json move_to_json(const Move& m, const StateSpace& s) {
  return Json{{"plus", cells_to_json(m.plus(), s)}, {"minus", cells_to_json(m.minus(), s)}};
}

Move move_from_json(const Json& j, const StateSpace& s) {
  return Move(cells_from_json(field(j, "plus"), s), cells_from_json(field(j, "minus"), s));
}

Json moves_to_json(const std::vector<Move>& moves, const StateSpace& s) {
  Json out = Json::array();
  for (const auto& m : moves) out.push_back(move_to_json(m, s));
  return out;
}

std::vector<Move> moves_from_json(const Json& j, const StateSpace& s) {
  const Json& list = j.is_object() ? field(j, "moves") : j;
  if (!list.is_array()) bad("moves must be a list");
  std::vector<Move> out;
  for (const auto& m : list) out.push_back(move_from_json(m, s));
  return out;
}

Json graph_to_json(const LabeledGraph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u + 1, v + 1});
  return Json{{"vertices", g.n_vertices()}, {"d", g.space().levels()}, {"edges", edges}};
}

LabeledGraph graph_from_json(const Json& j) {
  const Json& n = field(j, "vertices");
  if (!n.is_number_integer()) bad("vertices must be an integer");
  auto levels = int_list(field(j, "d"), "d");
  if (static_cast<std::int64_t>(levels.size()) != n.get<std::int64_t>()) bad("d must have one level per vertex");
  std::vector<std::pair<int, int>> edges;
  const Json& e = field(j, "edges");
  if (!e.is_array()) bad("edges must be a list");
  for (const auto& pair : e) {
    auto uv = int_list(pair, "edge");
    if (uv.size() != 2) bad("each edge must have two endpoints");
    edges.emplace_back(uv[0] - 1, uv[1] - 1);
  }
  return LabeledGraph(StateSpace(std::move(levels)), std::move(edges));
}

Json functional_to_json(const Functional& f, const MarginMap& am) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < am.n_rows(); ++r) rows.push_back(am.row_label(r));
  return Json{{"label", f.label}, {"coeffs", f.coeffs}, {"rows", rows}};
}

Json prime_to_json(const PrimeWitness& w, const StateSpace& s) {
  Json out{{"id", w.id}, {"origin", to_string(w.origin)}};
  Json vars = Json::array();
  for (Cell c : w.variables) vars.push_back(state_of(c, s));
  out["variables"] = vars;
  if (w.witness_table) out["witness"] = cells_to_json(*w.witness_table, s);
  return out;
}

Json component_to_json(const ComponentReport& r, const StateSpace& s, bool dump) {
  Json out{{"size", r.size}, {"truncated", r.truncated}};
  if (dump || r.size <= member_elision_limit) {
    Json members = Json::array();
    for (const auto& t : r.members) members.push_back(cells_to_json(t, s));
    out["members"] = members;
  } else {
    out["members_elided"] = true;
  }
  return out;
}

Json path_to_json(const std::vector<PathStep>& path) {
  Json out = Json::array();
  for (const auto& step : path) out.push_back({{"move", step.move_index}, {"reversed", step.reversed}});
  return out;
}

Json square_to_json(const LatinSquare& l) { return Json(l.cells()); }

Json disconnection_to_json(const DisconnectionReport& r, const StateSpace& s) {
  Json out{{"two_connected", r.two_connected},
           {"triangle_free", r.triangle_free},
           {"preconditions_hold", r.preconditions_hold}};
  if (!r.preconditions_hold) return out;
  out["component_size"] = r.component_size ? Json(*r.component_size) : Json(nullptr);
  out["component_truncated"] = r.component_truncated;
  out["strictly_positive"] = r.strictly_positive;
  out["interior"] = {{"method", r.interior.method},
                     {"interior", r.interior.interior},
                     {"facet_count", r.interior.facet_count},
                     {"rank", r.interior.rank}};
  if (r.second_element) {
    out["second_element"] = cells_to_json(*r.second_element, s);
    out["permutation"] = r.permutation;
  }
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    bad("cannot parse " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace fiberwalk
