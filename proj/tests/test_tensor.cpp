#include <doctest.h>

#include <set>

#include "fiberwalk/error.hpp"
#include "fiberwalk/tensor.hpp"

using namespace fiberwalk;

TEST_CASE("state index uses last coordinate fastest") {
  StateSpace s({2, 3, 2});
  CHECK(s.total_cells() == 12);
  CHECK(state_index({1, 1, 1}, s) == 0);
  CHECK(state_index({1, 2, 1}, s) == 2);
  CHECK(state_index({2, 3, 2}, s) == 11);
  CHECK(state_of(2, s) == State{1, 2, 1});
  CHECK_THROWS_AS(state_index({3, 1, 1}, s), Error);
  CHECK_THROWS_AS(state_of(12, s), Error);
}

TEST_CASE("state index is a bijection onto the cell range") {
  for (const auto& levels : std::vector<std::vector<int>>{{2}, {2, 2, 2, 2}, {3, 4, 2}, {4, 4, 4, 4, 4, 4}, {2, 3, 4, 5}}) {
    StateSpace s(levels);
    REQUIRE(s.total_cells() <= 4096);
    std::set<State> seen;
    for (Cell c = 0; c < s.total_cells(); ++c) {
      auto x = state_of(c, s);
      CHECK(s.contains(x));
      CHECK(state_index(x, s) == c);
      seen.insert(x);
    }
    CHECK(seen.size() == s.total_cells());
  }
}

TEST_CASE("levels below two are rejected") {
  CHECK_THROWS_AS(StateSpace({2, 1}), Error);
}

TEST_CASE("opposite state needs binary levels") {
  StateSpace bin({2, 2, 2});
  CHECK(opposite_state({1, 2, 1}, bin) == State{2, 1, 2});
  try {
    (void)opposite_state({1, 1}, StateSpace({2, 3}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unsupported_levels);
  }
}

TEST_CASE("tables merge duplicate cells and drop zeros") {
  auto t = Table::from_entries({{3, 1}, {1, 2}, {3, 2}, {5, 0}});
  CHECK(t.support_size() == 2);
  CHECK(t.count(3) == 3);
  CHECK(t.count(5) == 0);
  CHECK(t.degree() == 5);
  Cell cells[] = {4, 4, 0};
  auto u = Table::from_cells(cells);
  CHECK(u.count(4) == 2);
  CHECK((t + u).degree() == 8);
  CHECK(t.scaled(3).count(1) == 6);
  CHECK(t.scaled(0).empty());
}

TEST_CASE("moves apply only where their removal part fits") {
  Move m(Table::from_entries({{0, 1}, {3, 1}}), Table::from_entries({{1, 1}, {2, 1}}));
  auto t = Table::from_entries({{1, 1}, {2, 2}});
  auto after = apply_move(t, m);
  CHECK(after == Table::from_entries({{0, 1}, {3, 1}, {2, 1}}));
  CHECK(apply_move(after, m.reversed()) == t);
  CHECK_FALSE(try_apply_move(Table::unit(1), m).has_value());
  try {
    (void)apply_move(Table::unit(1), m);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::move_not_applicable);
  }
}

TEST_CASE("applying a move preserves degree for homogeneous moves") {
  Move m(Table::from_entries({{0, 2}}), Table::from_entries({{1, 1}, {2, 1}}));
  CHECK(m.is_homogeneous());
  auto t = Table::from_entries({{1, 3}, {2, 1}, {7, 4}});
  CHECK(apply_move(t, m).degree() == t.degree());
}

TEST_CASE("moves reject overlapping or empty parts") {
  CHECK_THROWS_AS(Move(Table::unit(1), Table::unit(1)), Error);
  CHECK_THROWS_AS(Move(Table{}, Table{}), Error);
}

TEST_CASE("canonical orientation and dedup identify moves up to sign") {
  Move m(Table::unit(5), Table::unit(2));
  CHECK(m.canonical().plus() == Table::unit(2));
  auto out = dedup_moves({m, m.reversed(), Move(Table::unit(1), Table::unit(0))});
  CHECK(out.size() == 2);
  CHECK(out.front().plus() == Table::unit(0));
}

TEST_CASE("overflowing counts are reported") {
  auto big = Table::unit(0, 0xFFFFFFFFu);
  CHECK_THROWS_AS(big + Table::unit(0), Error);
}
