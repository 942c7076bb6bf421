#include "fiberwalk/families.hpp"

#include <algorithm>
#include <functional>

#include "fiberwalk/error.hpp"

namespace fiberwalk {

namespace {

/// Calls f(values) for every assignment of values in [levels[i]] (1-based),
/// last position varying fastest.
void for_each_assignment(const std::vector<int>& levels, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> values(levels.size(), 1);
  while (true) {
    f(values);
    std::size_t pos = levels.size();
    while (pos > 0 && values[pos - 1] == levels[pos - 1]) values[--pos] = 1;
    if (pos == 0) return;
    ++values[pos - 1];
  }
}

std::vector<int> binary_digits(unsigned value, int length) {
  std::vector<int> out(static_cast<std::size_t>(length));
  for (int i = length - 1; i >= 0; --i, value >>= 1) out[static_cast<std::size_t>(i)] = static_cast<int>(value & 1u) + 1;
  return out;
}

std::string digit_string(const std::vector<int>& digits) {
  std::string s;
  for (int d : digits) s += std::to_string(d);
  return s;
}

void check_cycle(int n, const CycleOptions& options) {
  if (n > 16) throw Error(ErrorKind::too_large, "cycle length is capped at 16");
  if (n < 4 && !(n == 3 && options.allow_three)) {
    throw Error(ErrorKind::unsupported, "cycle families need n >= 4 (n = 3 only with the explicit flag)");
  }
}

Move two_by_two(Table plus, Table minus) { return Move(std::move(plus), std::move(minus)).canonical(); }

/// Generates each quartic with its parameters (shift s, 0 < k < l < n, blocks A, B, C).
void for_each_cycle_quartic(int n, const std::function<void(const std::string&, const Move&)>& f) {
  const StateSpace space(std::vector<int>(static_cast<std::size_t>(n), 2));
  for (int s = 0; s < n; ++s) {
    for (int k = 1; k < n - 1; ++k) {
      for (int l = k + 1; l < n; ++l) {
        const int lens[3] = {k, l - k, n - l};
        for (unsigned a = 0; a < (1u << lens[0]); ++a) {
          for (unsigned b = 0; b < (1u << lens[1]); ++b) {
            for (unsigned c = 0; c < (1u << lens[2]); ++c) {
              const unsigned blocks[3] = {a, b, c};
              // Row as flip pattern of (A, B, C); returns the cell.
              auto row = [&](bool fa, bool fb, bool fc) {
                const bool flips[3] = {fa, fb, fc};
                State x(static_cast<std::size_t>(n));
                int pos = 0;
                for (int blk = 0; blk < 3; ++blk) {
                  for (int d : binary_digits(blocks[blk], lens[blk])) {
                    x[static_cast<std::size_t>((pos + s) % n)] = flips[blk] ? 3 - d : d;
                    ++pos;
                  }
                }
                return state_index(x, space);
              };
              auto plus = Table::from_entries(
                  {{row(false, false, false), 1}, {row(false, true, true), 1}, {row(true, false, true), 1}, {row(true, true, false), 1}});
              auto minus = Table::from_entries(
                  {{row(false, false, true), 1}, {row(false, true, false), 1}, {row(true, false, false), 1}, {row(true, true, true), 1}});
              const std::string id = "P_f[" + std::to_string(s) + "," + std::to_string(k) + "," + std::to_string(l) + "," +
                                     digit_string(binary_digits(a, lens[0])) + "," +
                                     digit_string(binary_digits(b, lens[1])) + "," +
                                     digit_string(binary_digits(c, lens[2])) + "]";
              f(id, Move(std::move(plus), std::move(minus)));
            }
          }
        }
      }
    }
  }
}

}  // namespace

std::string set_string(const std::vector<int>& values) {
  std::string s = "{";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
  return s + "}";
}

std::vector<Move> cycle_quadrics(int n, const CycleOptions& options) {
  check_cycle(n, options);
  const StateSpace space(std::vector<int>(static_cast<std::size_t>(n), 2));
  std::vector<Move> out;
  for (int k = 0; k < n; ++k) {
    for (int l = k + 2; l < n; ++l) {
      if (k + n - l < 2) continue;
      std::vector<int> pa, pb;
      for (int p = k + 1; p < l; ++p) pa.push_back(p);
      for (int p = l + 1; p < n + k; ++p) pb.push_back(p % n);
      const int la = static_cast<int>(pa.size()), lb = static_cast<int>(pb.size());
      for (int va = 1; va <= 2; ++va) {
        for (int vb = 1; vb <= 2; ++vb) {
          auto cell = [&](unsigned a, unsigned b) {
            State x(static_cast<std::size_t>(n));
            x[static_cast<std::size_t>(k)] = va;
            x[static_cast<std::size_t>(l)] = vb;
            auto da = binary_digits(a, la), db = binary_digits(b, lb);
            for (int i = 0; i < la; ++i) x[static_cast<std::size_t>(pa[static_cast<std::size_t>(i)])] = da[static_cast<std::size_t>(i)];
            for (int i = 0; i < lb; ++i) x[static_cast<std::size_t>(pb[static_cast<std::size_t>(i)])] = db[static_cast<std::size_t>(i)];
            return state_index(x, space);
          };
          for (unsigned a = 0; a < (1u << la); ++a)
            for (unsigned a2 = a + 1; a2 < (1u << la); ++a2)
              for (unsigned b = 0; b < (1u << lb); ++b)
                for (unsigned b2 = b + 1; b2 < (1u << lb); ++b2)
                  out.push_back(two_by_two(Table::from_entries({{cell(a, b), 1}, {cell(a2, b2), 1}}),
                                           Table::from_entries({{cell(a2, b), 1}, {cell(a, b2), 1}})));
        }
      }
    }
  }
  return dedup_moves(std::move(out));
}

std::vector<Move> cycle_quartics(int n, const CycleOptions& options) {
  check_cycle(n, options);
  std::vector<Move> out;
  for_each_cycle_quartic(n, [&](const std::string&, const Move& m) { out.push_back(m); });
  return dedup_moves(std::move(out));
}

std::vector<Move> cycle_markov_basis(int n, const CycleOptions& options) {
  auto moves = cycle_quadrics(n, options);
  auto quartics = cycle_quartics(n, options);
  moves.insert(moves.end(), quartics.begin(), quartics.end());
  return dedup_moves(std::move(moves));
}

std::vector<PrimeWitness> cycle_prime_witnesses(int n, const CycleOptions& options) {
  check_cycle(n, options);
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<PrimeWitness> out;
  for_each_cycle_quartic(n, [&](const std::string& id, const Move& m) {
    const Table used = m.plus() + m.minus();
    std::vector<Cell> variables;
    for (Cell c = 0; c < total; ++c)
      if (used.count(c) == 0) variables.push_back(c);
    out.push_back(make_prime_witness(id, std::move(variables), total, PrimeOrigin::cycle));
  });
  out.push_back(toric_marker());
  return dedup_primes(std::move(out));
}

K2NShape::K2NShape(std::vector<int> tail_levels) {
  if (tail_levels.size() < 2) throw Error(ErrorKind::invalid_input, "K_{2,N-2} needs N >= 4");
  levels_ = {2, 2};
  levels_.insert(levels_.end(), tail_levels.begin(), tail_levels.end());
  (void)StateSpace(levels_);
}

LabeledGraph k2n_graph(const K2NShape& shape) { return complete_bipartite_graph(2, shape.n_total() - 2, shape.levels()); }

namespace {

/// Cell of (i, j, K) where K lists the states of vertices 3..N.
Cell k2n_cell(const StateSpace& space, int i, int j, const std::vector<int>& tail) {
  State x{i, j};
  x.insert(x.end(), tail.begin(), tail.end());
  return state_index(x, space);
}

std::vector<int> tail_vertices(const K2NShape& shape) {
  std::vector<int> out;
  for (int v = 3; v <= shape.n_total(); ++v) out.push_back(v);
  return out;
}

std::vector<int> levels_of(const K2NShape& shape, const std::vector<int>& vertices) {
  std::vector<int> out;
  for (int v : vertices) out.push_back(shape.level(v));
  return out;
}

}  // namespace

std::vector<Move> k2n_quadrics(const K2NShape& shape) {
  const StateSpace space(shape.levels());
  const auto tail = tail_vertices(shape);
  const auto tail_levels = levels_of(shape, tail);
  std::vector<Move> out;
  for_each_assignment(tail_levels, [&](const std::vector<int>& k) {
    out.push_back(two_by_two(Table::from_entries({{k2n_cell(space, 1, 1, k), 1}, {k2n_cell(space, 2, 2, k), 1}}),
                             Table::from_entries({{k2n_cell(space, 1, 2, k), 1}, {k2n_cell(space, 2, 1, k), 1}})));
  });
  const std::size_t m = tail.size();
  // Flattenings: S contains the first tail vertex, T is its nonempty complement.
  for (unsigned mask = 1; mask < (1u << m) - 1; mask += 2) {
    std::vector<int> s_pos, t_pos;
    for (std::size_t p = 0; p < m; ++p) ((mask >> p) & 1u ? s_pos : t_pos).push_back(static_cast<int>(p));
    std::vector<int> s_levels, t_levels;
    for (int p : s_pos) s_levels.push_back(tail_levels[static_cast<std::size_t>(p)]);
    for (int p : t_pos) t_levels.push_back(tail_levels[static_cast<std::size_t>(p)]);
    std::vector<std::vector<int>> ks, ls;
    for_each_assignment(s_levels, [&](const std::vector<int>& v) { ks.push_back(v); });
    for_each_assignment(t_levels, [&](const std::vector<int>& v) { ls.push_back(v); });
    auto merge = [&](const std::vector<int>& k, const std::vector<int>& l) {
      std::vector<int> full(m);
      for (std::size_t i = 0; i < s_pos.size(); ++i) full[static_cast<std::size_t>(s_pos[i])] = k[i];
      for (std::size_t i = 0; i < t_pos.size(); ++i) full[static_cast<std::size_t>(t_pos[i])] = l[i];
      return full;
    };
    for (int i = 1; i <= 2; ++i) {
      for (int j = 1; j <= 2; ++j) {
        for (std::size_t k = 0; k < ks.size(); ++k) {
          for (std::size_t k2 = k + 1; k2 < ks.size(); ++k2) {
            for (std::size_t l = 0; l < ls.size(); ++l) {
              for (std::size_t l2 = l + 1; l2 < ls.size(); ++l2) {
                auto c = [&](std::size_t a, std::size_t b) { return k2n_cell(space, i, j, merge(ks[a], ls[b])); };
                out.push_back(two_by_two(Table::from_entries({{c(k, l), 1}, {c(k2, l2), 1}}),
                                         Table::from_entries({{c(k2, l), 1}, {c(k, l2), 1}})));
              }
            }
          }
        }
      }
    }
  }
  return dedup_moves(std::move(out));
}

std::vector<Move> k2n_quartics(const K2NShape& shape) {
  const StateSpace space(shape.levels());
  const auto tail = tail_vertices(shape);
  std::vector<Move> out;
  for (std::size_t ai = 0; ai < tail.size(); ++ai) {
    const int a = tail[ai];
    std::vector<int> other_levels;
    for (std::size_t p = 0; p < tail.size(); ++p)
      if (p != ai) other_levels.push_back(shape.level(tail[p]));
    std::vector<std::vector<int>> ls;
    for_each_assignment(other_levels, [&](const std::vector<int>& v) { ls.push_back(v); });
    auto with_a = [&](const std::vector<int>& l, int ka) {
      std::vector<int> full = l;
      full.insert(full.begin() + static_cast<std::ptrdiff_t>(ai), ka);
      return full;
    };
    for (int k1 = 1; k1 <= shape.level(a); ++k1) {
      for (int k2 = k1 + 1; k2 <= shape.level(a); ++k2) {
        for (const auto& l11 : ls)
          for (const auto& l12 : ls)
            for (const auto& l21 : ls)
              for (const auto& l22 : ls) {
                auto plus = Table::from_entries({{k2n_cell(space, 1, 1, with_a(l11, k1)), 1},
                                                 {k2n_cell(space, 1, 2, with_a(l12, k2)), 1},
                                                 {k2n_cell(space, 2, 1, with_a(l21, k2)), 1},
                                                 {k2n_cell(space, 2, 2, with_a(l22, k1)), 1}});
                auto minus = Table::from_entries({{k2n_cell(space, 1, 1, with_a(l11, k2)), 1},
                                                  {k2n_cell(space, 1, 2, with_a(l12, k1)), 1},
                                                  {k2n_cell(space, 2, 1, with_a(l21, k1)), 1},
                                                  {k2n_cell(space, 2, 2, with_a(l22, k2)), 1}});
                out.push_back(Move(std::move(plus), std::move(minus)).canonical());
              }
      }
    }
  }
  return dedup_moves(std::move(out));
}

std::vector<Move> k2n_markov_basis(const K2NShape& shape) {
  auto moves = k2n_quadrics(shape);
  auto quartics = k2n_quartics(shape);
  moves.insert(moves.end(), quartics.begin(), quartics.end());
  return dedup_moves(std::move(moves));
}

std::vector<Cell> k2n_prime_variables(const K2NShape& shape, const K2NIndex& index) {
  const int n = shape.n_total();
  if (index.a < 3 || index.a > n || index.b < 3 || index.b > n) throw Error(ErrorKind::invalid_input, "prime vertex out of range");
  const StateSpace space(shape.levels());
  auto in = [](const std::vector<int>& set, int v) { return std::find(set.begin(), set.end(), v) != set.end(); };
  std::vector<Cell> out;
  for (Cell c = 0; c < space.total_cells(); ++c) {
    const State x = state_of(c, space);
    const int xa = x[static_cast<std::size_t>(index.a - 1)], xb = x[static_cast<std::size_t>(index.b - 1)];
    bool var = false;
    if (x[0] == 1 && x[1] == 1) var = in(index.c, xa);
    if (x[0] == 1 && x[1] == 2) var = in(index.d, xb);
    if (x[0] == 2 && x[1] == 1) var = !in(index.d, xb);
    if (x[0] == 2 && x[1] == 2) var = !in(index.c, xa);
    if (var) out.push_back(c);
  }
  return out;
}

namespace {

/// Nonempty proper subsets of [d], by bitmask order.
std::vector<std::vector<int>> proper_subsets(int d) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask + 1 < (1u << d); ++mask) {
    std::vector<int> s;
    for (int k = 1; k <= d; ++k)
      if ((mask >> (k - 1)) & 1u) s.push_back(k);
    out.push_back(std::move(s));
  }
  return out;
}

std::string k2n_label(const std::string& prefix, const K2NIndex& i) {
  return prefix + "[" + std::to_string(i.a) + "," + set_string(i.c) + "," + std::to_string(i.b) + "," + set_string(i.d) + "]";
}

}  // namespace

std::vector<PrimeWitness> k2n_prime_witnesses(const K2NShape& shape) {
  const int n = shape.n_total();
  const auto total = StateSpace(shape.levels()).total_cells();
  std::vector<PrimeWitness> out;
  for (int a = 3; a <= n; ++a) {
    for (int b = 3; b <= n; ++b) {
      if (n == 4 && a != b) continue;
      for (const auto& c : proper_subsets(shape.level(a))) {
        for (const auto& d : proper_subsets(shape.level(b))) {
          K2NIndex index{a, c, b, d};
          auto w = make_prime_witness(k2n_label("P", index), k2n_prime_variables(shape, index), total, PrimeOrigin::k2n);
          w.k2n = index;
          out.push_back(std::move(w));
        }
      }
    }
  }
  out.push_back(toric_marker());
  return dedup_primes(std::move(out));
}

Functional k2n_functional(const K2NShape& shape, const MarginMap& am, const K2NIndex& index) {
  auto clique_of = [&](int u, int v) {
    const VertexSet key{u - 1, v - 1};
    const auto& cl = am.cliques();
    auto it = std::find(cl.begin(), cl.end(), key);
    if (it == cl.end()) throw Error(ErrorKind::incompatible, "margin map has no clique for the requested edge");
    return static_cast<std::size_t>(it - cl.begin());
  };
  auto in = [](const std::vector<int>& set, int v) { return std::find(set.begin(), set.end(), v) != set.end(); };
  Functional f;
  f.coeffs.assign(am.n_rows(), 0);
  f.label = k2n_label("F", index);
  const std::size_t e1a = clique_of(1, index.a), e2a = clique_of(2, index.a);
  const std::size_t e2b = clique_of(2, index.b), e1b = clique_of(1, index.b);
  for (int k = 1; k <= shape.level(index.a); ++k) {
    if (in(index.c, k)) f.coeffs[am.row(e1a, {1, k})] += 1;
    else f.coeffs[am.row(e2a, {2, k})] += 1;
  }
  for (int l : index.d) {
    f.coeffs[am.row(e2b, {1, l})] += 1;
    f.coeffs[am.row(e1b, {1, l})] -= 1;
  }
  return f;
}

std::vector<Functional> k2n_facet_inequalities(const K2NShape& shape, const K2NFacetOptions& options) {
  const auto am = margin_map(k2n_graph(shape));
  std::vector<Functional> out;
  for (int a = 3; a <= shape.n_total(); ++a) {
    for (int b = 3; b <= shape.n_total(); ++b) {
      if (a == b || (a > b && !options.ordered_pairs)) continue;
      for (const auto& c : proper_subsets(shape.level(a)))
        for (const auto& d : proper_subsets(shape.level(b))) out.push_back(k2n_functional(shape, am, {a, c, b, d}));
    }
  }
  return out;
}

std::uint64_t pyramid_prime_count(std::uint64_t base_count, int d0) {
  if (base_count < 1 || d0 < 2) throw Error(ErrorKind::invalid_input, "pyramid count needs base >= 1 and d0 >= 2");
  std::uint64_t out = 1;
  for (int i = 0; i < d0; ++i) {
    if (__builtin_mul_overflow(out, base_count, &out)) throw Error(ErrorKind::too_large, "prime count overflow");
  }
  return out;
}

std::vector<PrimeWitness> pyramid_prime_witnesses(const std::vector<PrimeWitness>& base, const StateSpace& base_space,
                                                  int d0) {
  if (base.empty()) throw Error(ErrorKind::invalid_input, "no base primes");
  const auto count = pyramid_prime_count(base.size(), d0);
  if (count > 1'000'000) throw Error(ErrorKind::too_large, "too many composite primes");
  auto levels = base_space.levels();
  levels.push_back(d0);
  const StateSpace space(levels);
  // Lifted variable cells per (base prime, apex level).
  std::vector<std::vector<std::vector<Cell>>> lifted(base.size(), std::vector<std::vector<Cell>>(static_cast<std::size_t>(d0)));
  for (std::size_t p = 0; p < base.size(); ++p) {
    for (int level = 1; level <= d0; ++level) {
      for (Cell v : base[p].variables) {
        State x = state_of(v, base_space);
        x.push_back(level);
        lifted[p][static_cast<std::size_t>(level - 1)].push_back(state_index(x, space));
      }
    }
  }
  std::vector<PrimeWitness> out;
  std::vector<std::size_t> choice(static_cast<std::size_t>(d0), 0);
  while (true) {
    const bool all_toric = std::all_of(choice.begin(), choice.end(), [&](std::size_t p) { return base[p].is_toric(); });
    if (!all_toric) {
      std::vector<Cell> vars;
      std::string id = "cone[";
      for (std::size_t level = 0; level < choice.size(); ++level) {
        const auto& part = lifted[choice[level]][level];
        vars.insert(vars.end(), part.begin(), part.end());
        id += (level ? ";" : "") + base[choice[level]].id;
      }
      out.push_back(make_prime_witness(id + "]", std::move(vars), space.total_cells(), PrimeOrigin::pyramid));
    }
    std::size_t pos = choice.size();
    while (pos > 0 && choice[pos - 1] + 1 == base.size()) choice[--pos] = 0;
    if (pos == 0) break;
    ++choice[pos - 1];
  }
  out.push_back(toric_marker());
  return dedup_primes(std::move(out));
}

}  // namespace fiberwalk
