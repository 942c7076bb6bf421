#include <doctest.h>

#include <map>

#include "fiberwalk/error.hpp"
#include "fiberwalk/fiber.hpp"

using namespace fiberwalk;

namespace {

// Single vertex with two states; the only margin is the total count.
struct SimpleSpace {
  StateSpace space{std::vector<int>{2}};
  MarginMap am{space, {VertexSet{}}};
  std::vector<Move> moves{Move(Table::unit(0, 2), Table::unit(1, 2)), Move(Table::unit(0, 3), Table::unit(1, 3))};
};

Table two_cell(Count a, Count b) { return Table::from_entries({{0, a}, {1, b}}); }

// All tables of the given degree, by brute force over multisets.
std::vector<Table> all_tables(std::size_t cells, int degree) {
  std::vector<Table> out;
  std::vector<Cell> pick(static_cast<std::size_t>(degree), 0);
  auto rec = [&](auto& self, std::size_t i, Cell from) -> void {
    if (i == pick.size()) {
      out.push_back(Table::from_cells(pick));
      return;
    }
    for (Cell c = from; c < cells; ++c) {
      pick[i] = c;
      self(self, i + 1, c);
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace

TEST_CASE("single-vertex components follow the closed-form rule") {
  SimpleSpace s;
  for (Count a1 = 0; a1 <= 5; ++a1) {
    for (Count a2 = 0; a2 + a1 <= 5; ++a2) {
      for (Count b1 = 0; b1 <= 5; ++b1) {
        const Count b2 = a1 + a2 - b1;
        if (b1 > a1 + a2) continue;
        auto comp = connected_component(two_cell(a1, a2), s.moves, 1000);
        const bool expect = (a1 == b1) || std::min(std::max(a1, a2), std::max(b1, b2)) >= 2;
        CHECK(comp.contains(two_cell(b1, b2)) == expect);
      }
    }
  }
}

TEST_CASE("component of a fixed point is a singleton") {
  SimpleSpace s;
  auto comp = connected_component(two_cell(1, 0), s.moves, 10);
  CHECK(comp.size == 1);
  CHECK_FALSE(comp.truncated);
}

TEST_CASE("component reports truncation at the cap") {
  SimpleSpace s;
  auto comp = connected_component(two_cell(10, 0), s.moves, 3);
  CHECK(comp.truncated);
  CHECK(comp.size == 3);
}

TEST_CASE("bidirectional search returns a replayable path") {
  auto g = cycle_graph(4, std::vector<int>(4, 2));
  auto moves = glG_moves(g);
  auto am = margin_map(g);
  auto t = Table::from_entries({{0, 2}, {5, 1}, {15, 1}});
  auto comp = connected_component(t, moves, 100000);
  REQUIRE(comp.size > 1);
  for (const auto& other : comp.members) {
    auto r = are_connected(t, other, moves, 100000);
    REQUIRE(r.status == Connectivity::connected);
    CHECK(replay_path(t, moves, r.path) == other);
    CHECK(margins(am, other) == margins(am, t));
  }
}

TEST_CASE("bidirectional paths are as short as single-source BFS distances") {
  auto g = cycle_graph(4, std::vector<int>(4, 3));
  auto moves = glG_moves(g);
  const MoveIndex index(moves);
  // A diagonal 3x3 slice at x1 = x3 = 1 with line sums 2.
  std::vector<Table::Entry> entries;
  for (int a = 1; a <= 3; ++a) entries.emplace_back(state_index({1, a, 1, a}, g.space()), 2);
  auto t = Table::from_entries(entries);
  std::map<Table, std::size_t> dist{{t, 0}};
  std::vector<Table> frontier{t};
  while (!frontier.empty()) {
    std::vector<Table> next;
    for (const auto& x : frontier) {
      index.for_each_neighbor(x, [&](const Table& n, std::size_t, bool) {
        if (dist.emplace(n, dist.at(x) + 1).second) next.push_back(n);
      });
    }
    frontier = std::move(next);
  }
  REQUIRE(dist.size() == 21);
  std::size_t longest = 0;
  for (const auto& [other, d] : dist) {
    auto r = are_connected(t, other, moves, 100000);
    REQUIRE(r.status == Connectivity::connected);
    CHECK(r.path.size() == d);
    longest = std::max(longest, d);
  }
  CHECK(longest >= 2);
}

TEST_CASE("bidirectional search detects disconnection") {
  SimpleSpace s;
  auto r = are_connected(two_cell(1, 0), two_cell(0, 1), s.moves, 100);
  CHECK(r.status == Connectivity::not_connected);
  auto inc = are_connected(two_cell(40, 1), two_cell(1, 40), s.moves, 2);
  CHECK(inc.status == Connectivity::inconclusive);
}

TEST_CASE("fiber enumeration matches grouping all tables by margins") {
  auto g = complete_bipartite_graph(2, 2, std::vector<int>(4, 2));
  auto am = margin_map(g);
  for (int d = 1; d <= 3; ++d) {
    std::map<MarginVector, std::vector<Table>> groups;
    for (auto& t : all_tables(am.n_cols(), d)) groups[margins(am, t)].push_back(t);
    for (auto& [key, members] : groups) {
      std::sort(members.begin(), members.end());
      CHECK(enumerate_fiber(am, key, 100000) == members);
    }
  }
}

TEST_CASE("fiber enumeration validates its key") {
  auto am = margin_map(cycle_graph(4, std::vector<int>(4, 2)));
  CHECK_THROWS_AS(enumerate_fiber(am, MarginVector{{1, 2}}, 10), Error);
  MarginVector zero{std::vector<std::int64_t>(am.n_rows(), 0)};
  auto f = enumerate_fiber(am, zero, 10);
  REQUIRE(f.size() == 1);
  CHECK(f[0].empty());
  auto t = Table::from_entries({{0, 3}, {5, 3}, {10, 3}, {15, 3}});
  try {
    (void)enumerate_fiber(am, margins(am, t), 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::fiber_too_large);
  }
}

TEST_CASE("markov verification agrees with per-fiber connectivity") {
  auto g = cycle_graph(4, std::vector<int>(4, 2));
  auto am = margin_map(g);
  auto moves = glG_moves(g);
  auto verdict = verify_markov_basis(moves, am, 4);
  // Oracle: enumerate each fiber independently and walk it.
  std::uint64_t first_bad = 0;
  for (int d = 1; d <= 4 && first_bad == 0; ++d) {
    std::map<MarginVector, std::vector<Table>> groups;
    for (auto& t : all_tables(am.n_cols(), d)) groups[margins(am, t)].push_back(t);
    for (auto& [key, members] : groups) {
      auto comp = connected_component(members.front(), moves, 1000000);
      if (comp.size != members.size()) {
        first_bad = static_cast<std::uint64_t>(d);
        break;
      }
    }
  }
  CHECK(verdict.pass == (first_bad == 0));
  if (!verdict.pass) {
    CHECK(verdict.witness_degree == first_bad);
    auto [x, y] = *verdict.witness;
    CHECK(margins(am, x) == margins(am, y));
    CHECK(are_connected(x, y, moves, 1000000).status == Connectivity::not_connected);
  }
}

TEST_CASE("markov verification of the full independence model passes") {
  LabeledGraph g(StateSpace({3, 3}), {});
  auto verdict = verify_markov_basis(glG_moves(g), margin_map(g), 4, {.table_budget = 1000000, .threads = 2});
  CHECK(verdict.pass);
  CHECK(verdict.tables_checked > 0);
}

TEST_CASE("markov verification respects its budget") {
  auto g = cycle_graph(5, std::vector<int>(5, 2));
  try {
    (void)verify_markov_basis(glG_moves(g), margin_map(g), 6, {.table_budget = 1000});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::too_large);
  }
}
