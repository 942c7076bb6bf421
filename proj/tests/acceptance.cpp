// One line per acceptance criterion; exit code 0 iff every line passes.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "fiberwalk/cone.hpp"
#include "fiberwalk/error.hpp"
#include "fiberwalk/experiments.hpp"
#include "fiberwalk/families.hpp"
#include "fiberwalk/fiber.hpp"
#include "fiberwalk/k33.hpp"
#include "fiberwalk/latin.hpp"
#include "fiberwalk/linalg.hpp"

using namespace fiberwalk;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::vector<int> binary(int n) { return std::vector<int>(static_cast<std::size_t>(n), 2); }

std::string str(std::size_t n) { return std::to_string(n); }

Outcome prime_counts() {
  Outcome o;
  const std::map<std::string, std::size_t> expected{{"c4", 9}, {"c5", 41}, {"k23", 37}, {"g48", 201}, {"square-pyramid", 81}};
  for (const auto& [name, count] : expected) {
    const auto got = preset_primes(resolve_preset(name)).size();
    o.require(got == count, name + " has " + str(got) + " primes, expected " + str(count));
  }
  o.require(pyramid_prime_count(9, 2) == 81, "pyramid formula");
  return o;
}

Outcome property_verdicts() {
  Outcome o;
  const std::vector<std::pair<std::string, bool>> positive{
      {"c4", true}, {"c5", true}, {"k23", false}, {"g48", true}, {"square-pyramid", true}};
  for (const auto& [name, expect] : positive) {
    const auto row = summary_row(name);
    o.require(row.at("positive_margins") == expect, name + " positive margins");
    o.require(row.at("interior_point") == true, name + " interior point");
    o.require(row.at("facet_source") == "double-description", name + " facet source");
  }

  // K23 interior point, second route: the twelve family functionals.
  const K2NShape k23({2, 2, 2});
  const auto am = margin_map(k2n_graph(k23));
  const auto cone = cone_facets(am);
  const auto family = k2n_facet_inequalities(k23);
  o.require(family.size() == 12, "k23 has " + str(family.size()) + " family functionals");
  for (const auto& f : family) {
    const bool found = std::any_of(cone.facets.begin(), cone.facets.end(),
                                   [&](const Functional& g) { return same_on_columns(am, f, g); });
    o.require(found, f.label + " is not a cone facet");
  }
  auto ordered = k2n_facet_inequalities(k23, {.ordered_pairs = true});
  for (std::size_t r = 0; r < am.n_rows(); ++r) {
    Functional e;
    e.coeffs.assign(am.n_rows(), 0);
    e.coeffs[r] = 1;
    ordered.push_back(std::move(e));
  }
  const auto primes = k2n_prime_witnesses(k23);
  o.require(check_margin_property(primes, am, MarginMode::interior_point, &ordered).holds,
            "family functionals leave a k23 witness in the interior");
  for (const auto& w : primes) {
    if (w.is_toric() || w.k2n->a >= w.k2n->b) continue;
    auto matched = *w.k2n;
    std::vector<int> complement;
    for (int l = 1; l <= k23.level(matched.b); ++l) {
      if (!std::binary_search(matched.d.begin(), matched.d.end(), l)) complement.push_back(l);
    }
    matched.d = complement;
    const auto y = margins(am, *w.witness_table);
    o.require(k2n_functional(k23, am, matched).evaluate(y) == 0, w.id + " not on its matching functional");
  }
  return o;
}

Outcome k33_components() {
  Outcome o;
  const auto r = k33_run(1'000'000);
  o.require(r.c18a == 18 && r.c18b == 18, "sizes " + str(r.c18a) + ", " + str(r.c18b));
  o.require(r.disjoint, "18-components intersect");
  o.require(r.c90 == 90, "size " + str(r.c90));
  o.require(r.c90_contains_both, "90-component misses an endpoint");
  o.require(!r.inconclusive, "cap reached");
  o.detail = o.pass ? "18/18 disjoint, 90, path " + str(r.path_length.value_or(0)) : o.detail;
  return o;
}

Outcome isolation() {
  Outcome o;
  for (int d : {3, 4}) {
    const auto g = cycle_graph(4, std::vector<int>(4, d));
    const auto t = latin_table(g, mols(d));
    const auto r = verify_disconnection(g, t);
    const std::string tag = "d=" + std::to_string(d) + " ";
    o.require(r.preconditions_hold, tag + "preconditions");
    o.require(r.component_size == 1u && !r.component_truncated, tag + "component is not a singleton");
    o.require(r.strictly_positive, tag + "margins not strictly positive");
    o.require(r.interior.interior, tag + "margins not interior");
    o.require(r.second_element.has_value() && *r.second_element != t &&
                  margins(margin_map(g), *r.second_element) == margins(margin_map(g), t),
              tag + "no second fiber element");
  }
  return o;
}

Outcome markov_bases() {
  Outcome o;
  auto check = [](const std::vector<Move>& moves, const LabeledGraph& g, int degree) {
    return verify_markov_basis(moves, margin_map(g), degree);
  };
  for (auto [n, degree] : {std::pair{4, 4}, {5, 4}, {6, 3}}) {
    const auto v = check(cycle_markov_basis(n), cycle_graph(n, binary(n)), degree);
    o.require(v.pass, "C" + std::to_string(n) + " basis fails at degree " + std::to_string(v.witness_degree));
  }
  const auto quadrics = check(cycle_quadrics(4), cycle_graph(4, binary(4)), 4);
  o.require(!quadrics.pass && quadrics.witness_degree == 4, "C4 quadrics alone should fail in degree 4");
  for (const auto& tail : {std::vector<int>{2, 2}, std::vector<int>{2, 2, 2}}) {
    const K2NShape s(tail);
    const auto v = check(k2n_markov_basis(s), k2n_graph(s), 4);
    o.require(v.pass, "K2," + std::to_string(tail.size()) + " basis fails");
  }
  return o;
}

Outcome disconnection_witness() {
  Outcome o;
  const K2NShape k23({2, 2, 2});
  const auto g = k2n_graph(k23);
  const auto am = margin_map(g);
  const auto primes = k2n_prime_witnesses(k23);
  const auto verdict = check_margin_property(primes, am, MarginMode::positive_margins);
  if (!verdict.failing_witness) {
    o.require(false, "no failing witness");
    return o;
  }
  const auto f = find_witness_move(*verdict.failing_witness, k2n_markov_basis(k23));
  if (!f) {
    o.require(false, "no witness move");
    return o;
  }
  const auto quadrics = glG_moves(g);
  std::string sizes;
  for (Count c : {1u, 2u, 3u}) {
    const auto [x, y] = build_disconnection_witness(*verdict.failing_witness, *f, c);
    const auto mx = margins(am, x);
    const std::string tag = "c=" + std::to_string(c) + " ";
    o.require(mx == margins(am, y), tag + "margins differ");
    o.require(is_strictly_positive(mx), tag + "margins not strictly positive");
    const auto cx = connected_component(x, quadrics, 5'000'000);
    const auto cy = connected_component(y, quadrics, 5'000'000);
    o.require(!cx.truncated && !cy.truncated, tag + "cap reached");
    o.require(!cx.contains(y) && !cy.contains(x), tag + "components meet");
    sizes += (sizes.empty() ? "" : ", ") + str(cx.size) + "/" + str(cy.size);
  }
  if (o.pass) o.detail = verdict.failing_witness->id + " components " + sizes;
  return o;
}

Outcome simple_rule() {
  Outcome o;
  const std::vector<Move> moves{Move(Table::unit(0, 2), Table::unit(1, 2)), Move(Table::unit(0, 3), Table::unit(1, 3))};
  auto table = [](Count a, Count b) { return Table::from_entries({{0, a}, {1, b}}); };
  std::size_t pairs = 0;
  for (Count sum = 0; sum <= 10; ++sum) {
    for (Count a1 = 0; a1 <= sum; ++a1) {
      const auto comp = connected_component(table(a1, sum - a1), moves, 1000);
      for (Count b1 = 0; b1 <= sum; ++b1) {
        const Count a2 = sum - a1, b2 = sum - b1;
        const bool rule = a1 == b1 || std::min(std::max(a1, a2), std::max(b1, b2)) >= 2;
        o.require(comp.contains(table(b1, b2)) == rule,
                  "(" + str(a1) + "," + str(a2) + ") vs (" + str(b1) + "," + str(b2) + ")");
        ++pairs;
      }
    }
  }
  if (o.pass) o.detail = str(pairs) + " pairs";
  return o;
}

Outcome invariants() {
  Outcome o;
  for (const auto& name : preset_names()) {
    const auto p = resolve_preset(name);
    const auto am = preset_margin_map(p);
    std::vector<Move> all = preset_moves(p);
    const auto glg = preset_moves(p, MoveSource::global_markov);
    all.insert(all.end(), glg.begin(), glg.end());
    for (const auto& m : all) {
      if (margins(am, m.plus()) != margins(am, m.minus())) {
        o.require(false, name + " has a move that changes margins");
        break;
      }
    }
  }

  // Orthogonality by counting symbol pairs directly.
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    const auto squares = mols(q);
    o.require(squares.size() == static_cast<std::size_t>(q - 1), "q=" + std::to_string(q) + " square count");
    for (std::size_t a = 0; a < squares.size(); ++a) {
      for (std::size_t b = a + 1; b < squares.size(); ++b) {
        std::set<std::pair<int, int>> seen;
        for (int i = 1; i <= q; ++i)
          for (int j = 1; j <= q; ++j) seen.emplace(squares[a].at(i, j), squares[b].at(i, j));
        o.require(seen.size() == static_cast<std::size_t>(q * q) && are_orthogonal(squares[a], squares[b]),
                  "q=" + std::to_string(q) + " squares not orthogonal");
      }
    }
  }

  for (const auto& name : {"c4", "c5", "k23", "g48", "square-pyramid"}) {
    const auto am = preset_margin_map(resolve_preset(name));
    const auto dense = am.dense();
    const auto columns = transpose(dense, am.n_cols());
    const auto rank = matrix_rank(dense);
    const auto cone = cone_facets(am);
    o.require(cone.rank == rank, std::string(name) + " rank");
    for (const auto& f : cone.facets) {
      IntMatrix tight;
      bool valid = true;
      for (const auto& col : columns) {
        const auto v = f.evaluate(col);
        if (v < 0) valid = false;
        if (v == 0) tight.push_back(col);
      }
      o.require(valid, std::string(name) + " " + f.label + " negative on a column");
      o.require(matrix_rank(tight) == rank - 1, std::string(name) + " " + f.label + " is not tight on a facet");
    }
  }

  for (int n : {4, 5, 6}) {
    const K2NShape s(binary(n - 2));
    const auto am = margin_map(k2n_graph(s));
    for (const auto& f : k2n_facet_inequalities(s, {.ordered_pairs = true})) {
      for (Cell c = 0; c < am.n_cols(); ++c) {
        if (f.evaluate(margins(am, Table::unit(c))) < 0) {
          o.require(false, "N=" + std::to_string(n) + " " + f.label + " negative on a unit table");
          break;
        }
      }
    }
  }
  return o;
}

struct Criterion {
  int number;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "prime counts", 10.0, prime_counts},
      {2, "property verdicts", 60.0, property_verdicts},
      {3, "K33 components", 5.0, k33_components},
      {4, "isolated Latin tables", 5.0, isolation},
      {5, "Markov basis verification", 600.0, markov_bases},
      {6, "K23 disconnection witness", 30.0, disconnection_witness},
      {7, "single-vertex rule", 1.0, simple_rule},
      {8, "invariant suites", 60.0, invariants},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds) {
      o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + std::string("over the time limit");
    }
    if (!o.pass) ++failures;
    std::printf("criterion %d %-28s %s  %.3fs / %.0fs%s%s\n", c.number, c.name, o.pass ? "PASS" : "FAIL", seconds,
                c.limit_seconds, o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
