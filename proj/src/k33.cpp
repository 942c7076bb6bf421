#include "fiberwalk/k33.hpp"

#include <algorithm>
#include <map>

#include "fiberwalk/error.hpp"

namespace fiberwalk {

LabeledGraph k33_graph() { return complete_bipartite_graph(3, 3, std::vector<int>(6, 2)); }

Cell k33_cell(const std::string& state) {
  State x;
  for (char ch : state) {
    if (ch == '|') continue;
    if (ch != '1' && ch != '2') throw Error(ErrorKind::invalid_state, "bad K33 state " + state);
    x.push_back(ch - '0');
  }
  return state_index(x, StateSpace(std::vector<int>(6, 2)));
}

K33Witness k33_witness() {
  auto table = [](std::initializer_list<const char*> states) {
    std::vector<Cell> cells;
    for (const char* s : states) cells.push_back(k33_cell(s));
    return Table::from_cells(cells);
  };
  return {table({"121|222", "212|212", "122|112", "222|122"}), table({"221|222", "112|212", "222|112", "122|122"}),
          table({"111|111", "221|111"})};
}

K33Report k33_run(std::size_t cap) {
  if (cap < 128) throw Error(ErrorKind::invalid_input, "cap must be at least 128");
  const auto moves = glG_moves(k33_graph());
  const MoveIndex index(moves);
  const auto w = k33_witness();
  K33Report report;
  report.move_count = moves.size();

  const auto a = connected_component(w.u_plus + w.w, index, cap);
  const auto b = connected_component(w.u_minus + w.w, index, cap);
  report.c18a = a.size;
  report.c18b = b.size;
  report.disjoint = !a.truncated && !b.truncated &&
                    std::none_of(a.members.begin(), a.members.end(), [&](const Table& t) { return b.contains(t); });

  const Table w2 = w.w.scaled(2);
  const auto c = connected_component(w.u_plus + w2, index, cap);
  report.c90 = c.size;
  report.c90_contains_both = c.contains(w.u_plus + w2) && c.contains(w.u_minus + w2);
  report.inconclusive = a.truncated || b.truncated || c.truncated;

  auto r = are_connected(w.u_plus + w2, w.u_minus + w2, moves, cap);
  if (r.status == Connectivity::connected) {
    report.path_length = r.path.size();
    report.path = std::move(r.path);
  }
  return report;
}

SearchResult search_nonradical_witness(const LabeledGraph& g, const SearchOptions& options) {
  const auto moves = glG_moves(g);
  const MoveIndex index(moves);
  const auto am = margin_map(g);
  const std::size_t n = am.n_cols();
  SearchResult result;

  // Degree-4 fibers split into several quadric components give candidate moves.
  std::map<MarginVector, std::vector<Table>> groups;
  std::size_t seen = 0;
  std::vector<Cell> cells(4, 0);
  while (true) {
    auto t = Table::from_cells(cells);
    groups[margins(am, t)].push_back(std::move(t));
    if (++seen > options.table_budget) throw Error(ErrorKind::too_large, "degree-4 enumeration exceeds the table budget");
    int pos = 3;
    while (pos >= 0 && cells[static_cast<std::size_t>(pos)] + 1 == n) --pos;
    if (pos < 0) break;
    const Cell next = cells[static_cast<std::size_t>(pos)] + 1;
    for (int i = pos; i < 4; ++i) cells[static_cast<std::size_t>(i)] = next;
  }

  std::vector<Move> candidates;
  for (auto& [key, members] : groups) {
    if (members.size() < 2 || candidates.size() >= options.max_pairs) continue;
    std::sort(members.begin(), members.end());
    auto first = connected_component(members.front(), index, options.node_cap);
    for (const auto& other : members) {
      if (first.contains(other)) continue;
      // Cancel the common part so the two sides are disjoint.
      std::vector<Table::Entry> plus, minus;
      for (Cell cell = 0; cell < n; ++cell) {
        const auto x = members.front().count(cell), y = other.count(cell);
        if (x > y) plus.emplace_back(cell, x - y);
        if (y > x) minus.emplace_back(cell, y - x);
      }
      candidates.emplace_back(Table::from_entries(plus), Table::from_entries(minus));
      break;
    }
  }

  for (const auto& m : candidates) {
    ++result.pairs_examined;
    for (Cell c1 = 0; c1 < n; ++c1) {
      for (Cell c2 = c1 + 1; c2 < n; ++c2) {
        ++result.cofactors_examined;
        const auto w = Table::from_entries({{c1, 1}, {c2, 1}});
        auto once = are_connected(m.plus() + w, m.minus() + w, moves, options.node_cap);
        if (once.status != Connectivity::not_connected) continue;
        const auto w2 = w.scaled(2);
        auto twice = are_connected(m.plus() + w2, m.minus() + w2, moves, options.node_cap);
        if (twice.status == Connectivity::connected) {
          result.move = m;
          result.w = w;
          return result;
        }
      }
    }
  }
  return result;
}

}  // namespace fiberwalk
