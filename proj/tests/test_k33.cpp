#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "fiberwalk/error.hpp"
#include "fiberwalk/k33.hpp"

using namespace fiberwalk;

namespace {

// Edge marginals computed straight from the states, one map per edge.
std::vector<std::map<std::pair<int, int>, Count>> edge_marginals(const Table& t) {
  const auto g = k33_graph();
  std::vector<std::map<std::pair<int, int>, Count>> out;
  for (auto [a, b] : g.edges()) {
    std::map<std::pair<int, int>, Count> m;
    for (const auto& [cell, count] : t.entries()) {
      auto x = state_of(cell, g.space());
      m[{x[static_cast<std::size_t>(a)], x[static_cast<std::size_t>(b)]}] += count;
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

TEST_CASE("pinned K33 witness is well posed") {
  const auto w = k33_witness();
  CHECK(w.u_plus.degree() == 4);
  CHECK(w.u_minus.degree() == 4);
  CHECK(w.w.degree() == 2);
  CHECK(w.u_plus.disjoint_from(w.u_minus));
  CHECK(edge_marginals(w.u_plus) == edge_marginals(w.u_minus));
  const auto am = margin_map(k33_graph());
  CHECK(margins(am, w.u_plus) == margins(am, w.u_minus));
  CHECK(k33_cell("111|111") == 0);
  CHECK(k33_cell("222|222") == 63);
  CHECK_THROWS_AS(k33_cell("131|111"), Error);
}

TEST_CASE("K33 components have sizes 18, 18 and 90") {
  const auto r = k33_run(100'000);
  CHECK(r.c18a == 18);
  CHECK(r.c18b == 18);
  CHECK(r.disjoint);
  CHECK(r.c90 == 90);
  CHECK(r.c90_contains_both);
  CHECK_FALSE(r.inconclusive);
  REQUIRE(r.path_length.has_value());
  CHECK(*r.path_length == r.path.size());

  const auto w = k33_witness();
  const auto moves = glG_moves(k33_graph());
  CHECK(replay_path(w.u_plus + w.w.scaled(2), moves, r.path) == w.u_minus + w.w.scaled(2));
}

TEST_CASE("the size-90 component is closed under every quadric") {
  const auto w = k33_witness();
  const auto moves = glG_moves(k33_graph());
  const auto comp = connected_component(w.u_plus + w.w.scaled(2), moves, 100'000);
  REQUIRE(comp.size == 90);
  for (const auto& t : comp.members) {
    for (const auto& m : moves) {
      for (const auto& o : {m, m.reversed()}) {
        if (auto n = try_apply_move(t, o)) CHECK(comp.contains(*n));
      }
    }
  }
}

TEST_CASE("K33 components do not depend on move order") {
  const auto w = k33_witness();
  auto moves = glG_moves(k33_graph());
  const auto start = w.u_plus + w.w;
  const auto base = connected_component(start, moves, 100'000);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    std::shuffle(moves.begin(), moves.end(), rng);
    CHECK(connected_component(start, moves, 100'000).members == base.members);
  }
}

TEST_CASE("K33 run rejects caps below 128") {
  CHECK_THROWS_AS(k33_run(100), Error);
  CHECK_FALSE(k33_run(128).inconclusive);
}

TEST_CASE("search results satisfy the witness conditions") {
  const auto g = k33_graph();
  const auto r = search_nonradical_witness(g, {.max_pairs = 60, .node_cap = 200'000, .table_budget = 1'000'000});
  REQUIRE(r.move.has_value());
  const auto moves = glG_moves(g);
  const auto& m = *r.move;
  const auto am = margin_map(g);
  CHECK(m.degree() <= 4);
  CHECK(margins(am, m.plus()) == margins(am, m.minus()));
  CHECK(r.w->degree() == 2);
  CHECK(r.w->support_size() == 2);
  CHECK(are_connected(m.plus() + *r.w, m.minus() + *r.w, moves, 200'000).status == Connectivity::not_connected);
  CHECK(are_connected(m.plus() + r.w->scaled(2), m.minus() + r.w->scaled(2), moves, 200'000).status ==
        Connectivity::connected);
}

TEST_CASE("K33 paths are shortest within the size-90 component") {
  const auto w = k33_witness();
  const auto moves = glG_moves(k33_graph());
  const MoveIndex index(moves);
  const auto start = w.u_plus + w.w.scaled(2);
  std::map<Table, std::size_t> dist{{start, 0}};
  std::vector<Table> frontier{start};
  while (!frontier.empty()) {
    std::vector<Table> next;
    for (const auto& x : frontier) {
      index.for_each_neighbor(x, [&](const Table& n, std::size_t, bool) {
        if (dist.emplace(n, dist.at(x) + 1).second) next.push_back(n);
      });
    }
    frontier = std::move(next);
  }
  REQUIRE(dist.size() == 90);
  for (const auto& [t, d] : dist) CHECK(are_connected(start, t, moves, 100'000).path.size() == d);
  CHECK(k33_run(100'000).path_length == dist.at(w.u_minus + w.w.scaled(2)));
}
