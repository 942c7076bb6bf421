#include <doctest.h>

#include <algorithm>
#include <random>

#include "fiberwalk/error.hpp"
#include "fiberwalk/families.hpp"
#include "fiberwalk/fiber.hpp"

using namespace fiberwalk;

namespace {

std::vector<int> binary(int n) { return std::vector<int>(static_cast<std::size_t>(n), 2); }

Cell cell(const StateSpace& s, State x) { return state_index(x, s); }

bool uses_any(const Table& t, const std::vector<Cell>& vars) {
  for (const auto& [c, n] : t.entries()) {
    (void)n;
    if (std::binary_search(vars.begin(), vars.end(), c)) return true;
  }
  return false;
}

std::size_t monomial_count(const std::vector<PrimeWitness>& ws) {
  return static_cast<std::size_t>(std::count_if(ws.begin(), ws.end(), [](const auto& w) { return !w.is_toric(); }));
}

}  // namespace

TEST_CASE("cycle quadrics coincide with the global Markov quadrics") {
  for (int n : {4, 5, 6}) CHECK(cycle_quadrics(n) == glG_moves(cycle_graph(n, binary(n))));
}

TEST_CASE("cycle quartics contain the expanded block example") {
  StateSpace s(binary(4));
  Move expected(Table::from_entries({{cell(s, {1, 1, 1, 1}), 1}, {cell(s, {1, 2, 2, 2}), 1}, {cell(s, {2, 1, 2, 2}), 1},
                                     {cell(s, {2, 2, 1, 1}), 1}}),
                Table::from_entries({{cell(s, {1, 1, 2, 2}), 1}, {cell(s, {1, 2, 1, 1}), 1}, {cell(s, {2, 1, 1, 1}), 1},
                                     {cell(s, {2, 2, 2, 2}), 1}}));
  auto quartics = cycle_quartics(4);
  CHECK(std::find(quartics.begin(), quartics.end(), expected.canonical()) != quartics.end());
  for (const auto& m : quartics) CHECK(m.degree() == 4);
}

TEST_CASE("three-cycle needs the explicit flag") {
  try {
    (void)cycle_markov_basis(3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unsupported);
  }
  CHECK(cycle_quadrics(3, {.allow_three = true}).empty());
  CHECK(cycle_quartics(3, {.allow_three = true}).size() == 1);
}

TEST_CASE("cycle basis moves are margin-neutral") {
  for (int n : {4, 5, 6}) {
    auto am = margin_map(cycle_graph(n, binary(n)));
    for (const auto& m : cycle_markov_basis(n)) CHECK(margins(am, m.plus()) == margins(am, m.minus()));
  }
}

TEST_CASE("cycle prime counts") {
  auto c4 = cycle_prime_witnesses(4);
  CHECK(c4.size() == 9);
  CHECK(c4.back().is_toric());
  CHECK(monomial_count(cycle_prime_witnesses(5)) == 40);
  for (const auto& w : c4) {
    if (w.is_toric()) continue;
    CHECK(w.witness_table->degree() == 8);
    CHECK(w.witness_table->support_size() == 8);
  }
}

TEST_CASE("cycle witnesses fail strict positivity") {
  for (int n : {4, 5}) {
    auto am = margin_map(cycle_graph(n, binary(n)));
    for (const auto& w : cycle_prime_witnesses(n))
      if (!w.is_toric()) CHECK_FALSE(is_strictly_positive(margins(am, *w.witness_table)));
  }
}

TEST_CASE("global Markov quadrics touch cycle primes symmetrically") {
  for (int n : {4, 5}) {
    auto quads = glG_moves(cycle_graph(n, binary(n)));
    for (const auto& w : cycle_prime_witnesses(n)) {
      if (w.is_toric()) continue;
      for (const auto& m : quads) CHECK(uses_any(m.plus(), w.variables) == uses_any(m.minus(), w.variables));
    }
  }
}

TEST_CASE("every cycle prime is cut out by some quartic") {
  for (int n : {4, 5}) {
    auto quartics = cycle_quartics(n);
    for (const auto& w : cycle_prime_witnesses(n)) {
      if (w.is_toric()) continue;
      const bool found = std::any_of(quartics.begin(), quartics.end(), [&](const Move& m) {
        return !uses_any(m.plus(), w.variables) && !uses_any(m.minus(), w.variables);
      });
      CHECK(found);
    }
  }
}

TEST_CASE("prime dedup is idempotent and order independent") {
  auto ws = cycle_prime_witnesses(5);
  CHECK(dedup_primes(ws).size() == ws.size());
  auto shuffled = ws;
  shuffled.insert(shuffled.end(), ws.begin(), ws.end());
  std::mt19937 rng(7);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  auto again = dedup_primes(shuffled);
  REQUIRE(again.size() == ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    CHECK(again[i].id == ws[i].id);
    CHECK(again[i].variables == ws[i].variables);
  }
}

TEST_CASE("K2N shape validation") {
  CHECK_THROWS_AS(K2NShape({2}), Error);
  K2NShape s({2, 4});
  CHECK(s.n_total() == 4);
  CHECK(s.levels() == std::vector<int>{2, 2, 2, 4});
  CHECK(s.level(4) == 4);
}

TEST_CASE("K2N quadrics coincide with the global Markov quadrics") {
  for (const auto& tail : std::vector<std::vector<int>>{{2, 2}, {2, 2, 2}, {2, 4}, {3, 2}, {2, 2, 2, 2}}) {
    K2NShape s(tail);
    CHECK(k2n_quadrics(s) == glG_moves(k2n_graph(s)));
  }
}

TEST_CASE("K2N basis moves are margin-neutral and quartics have distinct states") {
  for (const auto& tail : std::vector<std::vector<int>>{{2, 2}, {2, 2, 2}, {2, 4}}) {
    K2NShape s(tail);
    auto am = margin_map(k2n_graph(s));
    for (const auto& m : k2n_markov_basis(s)) CHECK(margins(am, m.plus()) == margins(am, m.minus()));
    for (const auto& m : k2n_quartics(s)) {
      CHECK(m.degree() == 4);
      CHECK(m.plus().support_size() == 4);
    }
  }
}

TEST_CASE("K2N prime counts") {
  CHECK(k2n_prime_witnesses(K2NShape({2, 2, 2})).size() == 37);
  CHECK(k2n_prime_witnesses(K2NShape({2, 2})).size() == 9);
  auto g48 = k2n_prime_witnesses(K2NShape({2, 4}));
  CHECK(g48.size() == 201);
  const auto small = std::count_if(g48.begin(), g48.end(), [](const auto& w) { return w.k2n && w.k2n->a == 3; });
  CHECK(small == 4);
}

TEST_CASE("K2N witnesses are the complements of their variables") {
  K2NShape s({2, 2, 2});
  for (const auto& w : k2n_prime_witnesses(s)) {
    if (w.is_toric()) continue;
    CHECK(w.witness_table->support_size() + w.variables.size() == 32);
    for (Cell v : w.variables) CHECK(w.witness_table->count(v) == 0);
  }
}

TEST_CASE("K2N quadrics touch the primes symmetrically") {
  for (const auto& tail : std::vector<std::vector<int>>{{2, 2}, {2, 2, 2}, {2, 3}}) {
    K2NShape s(tail);
    auto quads = k2n_quadrics(s);
    for (const auto& w : k2n_prime_witnesses(s)) {
      if (w.is_toric()) continue;
      for (const auto& m : quads) CHECK(uses_any(m.plus(), w.variables) == uses_any(m.minus(), w.variables));
    }
  }
}

TEST_CASE("quartic sides multiplied by p11K p22K or p12K p21K connect by quadrics") {
  K2NShape s({2, 2, 2});
  const StateSpace space(s.levels());
  auto quads = k2n_quadrics(s);
  auto quartics = k2n_quartics(s);
  for (std::size_t q = 0; q < quartics.size(); q += 7) {
    const auto& m = quartics[q];
    for (Cell k = 0; k < 8; ++k) {
      const State tail = state_of(k, StateSpace({2, 2, 2}));
      for (auto [i1, j1, i2, j2] : {std::array{1, 1, 2, 2}, std::array{1, 2, 2, 1}}) {
        State x{i1, j1}, y{i2, j2};
        x.insert(x.end(), tail.begin(), tail.end());
        y.insert(y.end(), tail.begin(), tail.end());
        auto extra = Table::from_entries({{state_index(x, space), 1}, {state_index(y, space), 1}});
        auto r = are_connected(m.plus() + extra, m.minus() + extra, quads, 100000);
        CHECK(r.status == Connectivity::connected);
      }
    }
  }
}

TEST_CASE("K2N inequalities") {
  K2NShape k23({2, 2, 2});
  CHECK(k2n_facet_inequalities(k23).size() == 12);
  CHECK(k2n_facet_inequalities(k23, {.ordered_pairs = true}).size() == 24);
  CHECK(k2n_facet_inequalities(K2NShape({2, 2})).size() == 4);
}

TEST_CASE("K2N inequalities hold on every unit table") {
  for (const auto& tail : std::vector<std::vector<int>>{{2, 2}, {2, 2, 2}, {2, 2, 2, 2}, {3, 2}}) {
    K2NShape s(tail);
    auto am = margin_map(k2n_graph(s));
    for (const auto& f : k2n_facet_inequalities(s, {.ordered_pairs = true})) {
      for (auto v : column_values(am, f)) CHECK(v >= 0);
    }
  }
}

TEST_CASE("matching K2N inequality vanishes on witnesses with the complementary set") {
  K2NShape s({2, 2, 2});
  auto am = margin_map(k2n_graph(s));
  for (const auto& w : k2n_prime_witnesses(s)) {
    if (!w.k2n || w.k2n->a == w.k2n->b) continue;
    const auto y = margins(am, *w.witness_table);
    auto idx = *w.k2n;
    std::vector<int> complement;
    for (int l = 1; l <= s.level(idx.b); ++l)
      if (std::find(idx.d.begin(), idx.d.end(), l) == idx.d.end()) complement.push_back(l);
    CHECK(k2n_functional(s, am, {idx.a, idx.c, idx.b, complement}).evaluate(y) == 0);
    CHECK(k2n_functional(s, am, idx).evaluate(y) > 0);
  }
}

TEST_CASE("K2N inequalities are facets of the K23 cone") {
  K2NShape s({2, 2, 2});
  auto am = margin_map(k2n_graph(s));
  auto cf = cone_facets(am);
  for (const auto& f : k2n_facet_inequalities(s, {.ordered_pairs = true})) {
    const bool found = std::any_of(cf.facets.begin(), cf.facets.end(), [&](const auto& g) { return same_on_columns(am, f, g); });
    CHECK(found);
  }
}

TEST_CASE("pyramid prime count") {
  CHECK(pyramid_prime_count(9, 2) == 81);
  CHECK(pyramid_prime_count(1, 5) == 1);
  CHECK(pyramid_prime_count(41, 2) == 1681);
  CHECK_THROWS_AS(pyramid_prime_count(0, 2), Error);
  auto ws = pyramid_prime_witnesses(cycle_prime_witnesses(4), StateSpace(binary(4)), 2);
  CHECK(ws.size() == 81);
  auto am = margin_map(cone_graph(cycle_graph(4, binary(4)), 2));
  for (const auto& w : ws)
    if (!w.is_toric()) CHECK_FALSE(is_strictly_positive(margins(am, *w.witness_table)));
}
