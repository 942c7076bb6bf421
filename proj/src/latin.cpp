#include "fiberwalk/latin.hpp"

#include <algorithm>
#include <set>

#include "fiberwalk/error.hpp"
#include "fiberwalk/fiber.hpp"

namespace fiberwalk {

LatinSquare::LatinSquare(std::vector<std::vector<int>> cells) : cells_(std::move(cells)) {
  const int d = order();
  if (d < 1) throw Error(ErrorKind::invalid_square, "empty square");
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(cells_[static_cast<std::size_t>(i)].size()) != d) throw Error(ErrorKind::invalid_square, "square is not d x d");
  }
  for (int i = 0; i < d; ++i) {
    std::vector<bool> row(static_cast<std::size_t>(d) + 1, false), col(static_cast<std::size_t>(d) + 1, false);
    for (int j = 0; j < d; ++j) {
      const int r = cells_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const int c = cells_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (r < 1 || r > d || c < 1 || c > d || row[static_cast<std::size_t>(r)] || col[static_cast<std::size_t>(c)]) {
        throw Error(ErrorKind::invalid_square, "rows and columns must be permutations of [d]");
      }
      row[static_cast<std::size_t>(r)] = col[static_cast<std::size_t>(c)] = true;
    }
  }
}

namespace {

/// GF(p^k) with elements encoded as base-p digit strings (coefficient of x^i at digit i).
class Field {
 public:
  Field(int p, int k, std::vector<int> modulus) : p_(p), k_(k), modulus_(std::move(modulus)) {
    q_ = 1;
    for (int i = 0; i < k; ++i) q_ *= p;
  }

  int size() const { return q_; }

  int add(int a, int b) const {
    auto x = digits(a), y = digits(b);
    for (int i = 0; i < k_; ++i) x[static_cast<std::size_t>(i)] = (x[static_cast<std::size_t>(i)] + y[static_cast<std::size_t>(i)]) % p_;
    return encode(x);
  }

  int mul(int a, int b) const {
    auto x = digits(a), y = digits(b);
    std::vector<int> prod(static_cast<std::size_t>(2 * k_ - 1), 0);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j)
        prod[static_cast<std::size_t>(i + j)] = (prod[static_cast<std::size_t>(i + j)] + x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)]) % p_;
    // Reduce by the monic modulus x^k + sum modulus[i] x^i.
    for (int deg = 2 * k_ - 2; deg >= k_; --deg) {
      const int c = prod[static_cast<std::size_t>(deg)];
      if (c == 0) continue;
      prod[static_cast<std::size_t>(deg)] = 0;
      for (int i = 0; i < k_; ++i) {
        auto& slot = prod[static_cast<std::size_t>(deg - k_ + i)];
        slot = ((slot - c * modulus_[static_cast<std::size_t>(i)]) % p_ + p_) % p_;
      }
    }
    prod.resize(static_cast<std::size_t>(k_));
    return encode(prod);
  }

 private:
  std::vector<int> digits(int a) const {
    std::vector<int> out(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i, a /= p_) out[static_cast<std::size_t>(i)] = a % p_;
    return out;
  }
  int encode(const std::vector<int>& d) const {
    int a = 0;
    for (int i = k_ - 1; i >= 0; --i) a = a * p_ + d[static_cast<std::size_t>(i)];
    return a;
  }

  int p_, k_, q_;
  std::vector<int> modulus_;
};

Field field_of_order(int q) {
  switch (q) {
    case 2: case 3: case 5: case 7: return Field(q, 1, {0});
    case 4: return Field(2, 2, {1, 1});     // x^2 + x + 1
    case 8: return Field(2, 3, {1, 1, 0});  // x^3 + x + 1
    case 9: return Field(3, 2, {1, 0});     // x^2 + 1
    default: throw Error(ErrorKind::unsupported, "mols supports prime powers up to 9, got " + std::to_string(q));
  }
}

}  // namespace

std::vector<LatinSquare> mols(int q) {
  const Field f = field_of_order(q);
  std::vector<LatinSquare> out;
  for (int m = 1; m < q; ++m) {
    std::vector<std::vector<int>> cells(static_cast<std::size_t>(q), std::vector<int>(static_cast<std::size_t>(q)));
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = f.add(f.mul(m, i), j) + 1;
    out.emplace_back(std::move(cells));
  }
  return out;
}

bool are_orthogonal(const LatinSquare& l1, const LatinSquare& l2) {
  if (l1.order() != l2.order()) throw Error(ErrorKind::incompatible, "squares have different orders");
  std::set<std::pair<int, int>> pairs;
  for (int i = 1; i <= l1.order(); ++i)
    for (int j = 1; j <= l1.order(); ++j)
      if (!pairs.emplace(l1.at(i, j), l2.at(i, j)).second) return false;
  return true;
}

Table latin_table(const LabeledGraph& g, const std::vector<LatinSquare>& squares) {
  const int n = g.n_vertices();
  if (n < 3) throw Error(ErrorKind::invalid_input, "latin tables need at least three vertices");
  const auto need = static_cast<std::size_t>(n - 2);
  if (squares.size() < need) {
    throw Error(ErrorKind::invalid_input, "need " + std::to_string(need) + " orthogonal squares, got " + std::to_string(squares.size()));
  }
  const int d0 = squares.front().order();
  for (int v = 0; v < n; ++v) {
    if (g.space().level(static_cast<std::size_t>(v)) != d0) throw Error(ErrorKind::incompatible, "all levels must equal the square order");
  }
  for (std::size_t a = 0; a < need; ++a) {
    if (squares[a].order() != d0) throw Error(ErrorKind::incompatible, "squares have different orders");
    for (std::size_t b = a + 1; b < need; ++b) {
      if (!are_orthogonal(squares[a], squares[b])) throw Error(ErrorKind::invalid_square, "squares are not mutually orthogonal");
    }
  }
  std::vector<Cell> cells;
  for (int i = 1; i <= d0; ++i) {
    for (int j = 1; j <= d0; ++j) {
      State x{i, j};
      for (std::size_t s = 0; s < need; ++s) x.push_back(squares[s].at(i, j));
      cells.push_back(state_index(x, g.space()));
    }
  }
  return Table::from_cells(cells);
}

Table permute_states(const Table& t, const StateSpace& space, int vertex, const std::vector<int>& perm) {
  const int d = space.level(static_cast<std::size_t>(vertex));
  if (static_cast<int>(perm.size()) != d) throw Error(ErrorKind::invalid_input, "permutation has the wrong length");
  std::vector<Table::Entry> out;
  for (const auto& [cell, count] : t.entries()) {
    State x = state_of(cell, space);
    x[static_cast<std::size_t>(vertex)] = perm.at(static_cast<std::size_t>(x[static_cast<std::size_t>(vertex)] - 1));
    out.emplace_back(state_index(x, space), count);
  }
  return Table::from_entries(std::move(out));
}

DisconnectionReport verify_disconnection(const LabeledGraph& g, const Table& t, const DisconnectionOptions& options) {
  DisconnectionReport report;
  report.two_connected = is_two_connected(g);
  report.triangle_free = is_triangle_free(g);
  report.preconditions_hold = report.two_connected && report.triangle_free;
  if (!report.preconditions_hold) return report;

  const auto am = margin_map(g);
  const auto y = margins(am, t);
  report.strictly_positive = is_strictly_positive(y);

  auto comp = connected_component(t, glG_moves(g), options.node_cap);
  report.component_size = comp.size;
  report.component_truncated = comp.truncated;

  try {
    auto cf = cone_facets(am, options.facet_limits);
    report.interior.method = "facets";
    report.interior.rank = cf.rank;
    report.interior.facet_count = cf.facets.size();
    report.interior.interior = is_relative_interior(am, y, cf.facets);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::too_large) throw;
    if (auto cert = uniform_interior_certificate(am, y)) {
      report.interior.method = "uniform-certificate";
      report.interior.interior = true;
    }
  }

  // First transposition of some vertex's states that moves the table.
  for (int v = 0; v < g.n_vertices() && !report.second_element; ++v) {
    const int d = g.space().level(static_cast<std::size_t>(v));
    for (int a = 1; a <= d && !report.second_element; ++a) {
      for (int b = a + 1; b <= d && !report.second_element; ++b) {
        std::vector<int> perm(static_cast<std::size_t>(d));
        for (int s = 1; s <= d; ++s) perm[static_cast<std::size_t>(s - 1)] = s == a ? b : s == b ? a : s;
        auto other = permute_states(t, g.space(), v, perm);
        if (other != t && margins(am, other) == y) {
          report.second_element = std::move(other);
          report.permutation = "vertex " + std::to_string(v + 1) + ": swap states " + std::to_string(a) + "," + std::to_string(b);
        }
      }
    }
  }
  return report;
}

}  // namespace fiberwalk
