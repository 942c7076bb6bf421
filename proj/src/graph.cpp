#include "fiberwalk/graph.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>
#include <tuple>

#include "fiberwalk/error.hpp"

namespace fiberwalk {

namespace {

using Mask = std::uint64_t;

Mask to_mask(const VertexSet& vs, int n) {
  Mask m = 0;
  for (int v : vs) {
    if (v < 0 || v >= n) throw Error(ErrorKind::invalid_partition, "vertex out of range");
    if ((m >> v) & 1u) throw Error(ErrorKind::invalid_partition, "duplicate vertex in set");
    m |= Mask{1} << v;
  }
  return m;
}

VertexSet to_set(Mask m) {
  VertexSet out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

Mask all_vertices(int n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// Vertices reachable from `from` without entering `blocked`.
Mask reach(const LabeledGraph& g, Mask from, Mask blocked) {
  Mask seen = from & ~blocked;
  Mask frontier = seen;
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) next |= g.neighbor_mask(std::countr_zero(f));
    next &= ~blocked & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

std::string set_label(const VertexSet& vs) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << vs[i] + 1;
  os << '}';
  return os.str();
}

/// Strides of the canonical cell index: cell = sum (x_v - 1) * stride_v.
std::vector<std::uint64_t> strides(const StateSpace& s) {
  std::vector<std::uint64_t> out(s.n_vertices());
  std::uint64_t acc = 1;
  for (std::size_t v = s.n_vertices(); v-- > 0;) {
    out[v] = acc;
    acc *= static_cast<std::uint64_t>(s.level(v));
  }
  return out;
}

/// Offsets of every joint state of `vs`, enumerated in mixed-radix order.
std::vector<std::uint64_t> partial_offsets(const VertexSet& vs, const StateSpace& s,
                                           const std::vector<std::uint64_t>& stride) {
  std::vector<std::uint64_t> out{0};
  for (int v : vs) {
    std::vector<std::uint64_t> next;
    next.reserve(out.size() * static_cast<std::size_t>(s.level(v)));
    for (auto base : out) {
      for (int x = 0; x < s.level(v); ++x) next.push_back(base + static_cast<std::uint64_t>(x) * stride[v]);
    }
    out = std::move(next);
  }
  return out;
}

void bron_kerbosch(const LabeledGraph& g, Mask r, Mask p, Mask x, std::vector<Mask>& out) {
  if (!p && !x) {
    out.push_back(r);
    return;
  }
  Mask px = p | x;
  int pivot = std::countr_zero(px);
  int best = -1;
  for (Mask m = px; m; m &= m - 1) {
    int u = std::countr_zero(m);
    int c = std::popcount(p & g.neighbor_mask(u));
    if (c > best) {
      best = c;
      pivot = u;
    }
  }
  for (Mask cand = p & ~g.neighbor_mask(pivot); cand; cand &= cand - 1) {
    int v = std::countr_zero(cand);
    Mask bit = Mask{1} << v;
    bron_kerbosch(g, r | bit, p & g.neighbor_mask(v), x & g.neighbor_mask(v), out);
    p &= ~bit;
    x |= bit;
  }
}

}  // namespace

LabeledGraph::LabeledGraph(StateSpace levels, std::vector<std::pair<int, int>> edges)
    : space_(std::move(levels)) {
  const int n = static_cast<int>(space_.n_vertices());
  if (n < 1) throw Error(ErrorKind::invalid_input, "a graph needs at least one vertex");
  if (n > max_vertices) throw Error(ErrorKind::too_large, "at most 64 vertices are supported");
  adjacency_.assign(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw Error(ErrorKind::invalid_input, "edge endpoint out of range");
    if (u == v) throw Error(ErrorKind::invalid_input, "loops are not allowed");
    if (u > v) std::swap(u, v);
    if (adjacent(u, v)) throw Error(ErrorKind::invalid_input, "duplicate edge");
    adjacency_[u] |= Mask{1} << v;
    adjacency_[v] |= Mask{1} << u;
    edges_.emplace_back(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
}

LabeledGraph cycle_graph(int n, const std::vector<int>& levels) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return LabeledGraph(StateSpace(levels), edges);
}

LabeledGraph path_graph(int n, const std::vector<int>& levels) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return LabeledGraph(StateSpace(levels), edges);
}

LabeledGraph complete_graph(int n, const std::vector<int>& levels) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return LabeledGraph(StateSpace(levels), edges);
}

LabeledGraph complete_bipartite_graph(int p, int q, const std::vector<int>& levels) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < p; ++i)
    for (int j = p; j < p + q; ++j) edges.emplace_back(i, j);
  return LabeledGraph(StateSpace(levels), edges);
}

std::string to_string(const CIStatement& st) {
  return set_label(st.a) + " _|_ " + set_label(st.b) + " | " + set_label(st.c);
}

bool separates(const LabeledGraph& g, const VertexSet& a, const VertexSet& b, const VertexSet& c) {
  const int n = g.n_vertices();
  const Mask ma = to_mask(a, n), mb = to_mask(b, n), mc = to_mask(c, n);
  if (!ma || !mb) throw Error(ErrorKind::invalid_partition, "separated sets must be nonempty");
  if ((ma & mb) || (ma & mc) || (mb & mc)) throw Error(ErrorKind::invalid_partition, "sets must be pairwise disjoint");
  return (reach(g, ma, mc) & mb) == 0;
}

std::vector<CIStatement> global_markov_statements(const LabeledGraph& g) {
  const int n = g.n_vertices();
  if (n > 12) throw Error(ErrorKind::too_large, "statement enumeration is capped at 12 vertices");
  std::uint64_t labelings = 1;
  for (int i = 0; i < n; ++i) labelings *= 3;
  std::vector<std::tuple<Mask, Mask, Mask>> found;
  for (std::uint64_t code = 0; code < labelings; ++code) {
    Mask a = 0, b = 0, c = 0;
    std::uint64_t rest = code;
    for (int v = 0; v < n; ++v, rest /= 3) {
      const Mask bit = Mask{1} << v;
      switch (rest % 3) {
        case 0: a |= bit; break;
        case 1: b |= bit; break;
        default: c |= bit; break;
      }
    }
    if (!a || !b || std::countr_zero(a) > std::countr_zero(b)) continue;
    if (reach(g, a, c) & b) continue;
    found.emplace_back(a, b, c);
  }
  std::vector<CIStatement> out;
  out.reserve(found.size());
  for (auto [a, b, c] : found) out.push_back({to_set(a), to_set(b), to_set(c)});
  std::sort(out.begin(), out.end(), [](const CIStatement& x, const CIStatement& y) {
    return std::forward_as_tuple(x.c.size(), x.c, x.a, x.b) < std::forward_as_tuple(y.c.size(), y.c, y.a, y.b);
  });
  return out;
}

std::vector<Move> ci_quadratic_moves(const CIStatement& st, const StateSpace& s) {
  const int n = static_cast<int>(s.n_vertices());
  const Mask ma = to_mask(st.a, n), mb = to_mask(st.b, n), mc = to_mask(st.c, n);
  if ((ma & mb) || (ma & mc) || (mb & mc) || (ma | mb | mc) != all_vertices(n)) {
    throw Error(ErrorKind::invalid_partition, "statement must partition the vertices");
  }
  const auto stride = strides(s);
  const auto xa = partial_offsets(st.a, s, stride);
  const auto xb = partial_offsets(st.b, s, stride);
  const auto xc = partial_offsets(st.c, s, stride);
  std::vector<Move> out;
  out.reserve(xc.size() * (xa.size() * (xa.size() - 1) / 2) * (xb.size() * (xb.size() - 1) / 2));
  auto cell = [](std::uint64_t v) { return static_cast<Cell>(v); };
  for (auto oc : xc) {
    for (std::size_t i = 0; i < xa.size(); ++i) {
      for (std::size_t i2 = i + 1; i2 < xa.size(); ++i2) {
        for (std::size_t j = 0; j < xb.size(); ++j) {
          for (std::size_t j2 = j + 1; j2 < xb.size(); ++j2) {
            const Cell p1 = cell(oc + xa[i] + xb[j]), p2 = cell(oc + xa[i2] + xb[j2]);
            const Cell m1 = cell(oc + xa[i] + xb[j2]), m2 = cell(oc + xa[i2] + xb[j]);
            out.push_back(Move(Table::from_entries({{p1, 1}, {p2, 1}}),
                               Table::from_entries({{m1, 1}, {m2, 1}}))
                              .canonical());
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Move> glG_moves(const LabeledGraph& g) {
  std::vector<Move> all;
  for (const auto& st : global_markov_statements(g)) {
    auto moves = ci_quadratic_moves(st, g.space());
    all.insert(all.end(), std::make_move_iterator(moves.begin()), std::make_move_iterator(moves.end()));
  }
  return dedup_moves(std::move(all));
}

std::vector<VertexSet> maximal_cliques(const LabeledGraph& g) {
  std::vector<Mask> found;
  bron_kerbosch(g, 0, all_vertices(g.n_vertices()), 0, found);
  std::vector<VertexSet> out;
  out.reserve(found.size());
  for (Mask m : found) out.push_back(to_set(m));
  std::sort(out.begin(), out.end());
  return out;
}

MarginMap::MarginMap(StateSpace space, std::vector<VertexSet> cliques)
    : space_(std::move(space)), cliques_(std::move(cliques)) {
  const int n = static_cast<int>(space_.n_vertices());
  for (const auto& c : cliques_) {
    (void)to_mask(c, n);
    if (!std::is_sorted(c.begin(), c.end())) throw Error(ErrorKind::invalid_input, "clique vertices must be sorted");
  }
  n_cols_ = static_cast<std::size_t>(space_.total_cells());
  offsets_.reserve(cliques_.size());
  for (std::size_t k = 0; k < cliques_.size(); ++k) {
    offsets_.push_back(n_rows_);
    n_rows_ += block_size(k);
  }
  cell_rows_.resize(n_cols_ * cliques_.size());
  for (std::size_t cell = 0; cell < n_cols_; ++cell) {
    const State x = state_of(static_cast<Cell>(cell), space_);
    for (std::size_t k = 0; k < cliques_.size(); ++k) {
      cell_rows_[cell * cliques_.size() + k] = static_cast<std::uint32_t>(row_of_state(k, x));
    }
  }
}

std::span<const std::uint32_t> MarginMap::rows_of(Cell cell) const {
  if (cell >= n_cols_) throw Error(ErrorKind::incompatible, "cell outside the margin map's state space");
  return {cell_rows_.data() + static_cast<std::size_t>(cell) * cliques_.size(), cliques_.size()};
}

std::size_t MarginMap::block_size(std::size_t clique) const {
  std::size_t size = 1;
  for (int v : cliques_.at(clique)) size *= static_cast<std::size_t>(space_.level(static_cast<std::size_t>(v)));
  return size;
}

std::size_t MarginMap::row(std::size_t clique, const std::vector<int>& clique_state) const {
  const auto& vs = cliques_.at(clique);
  if (clique_state.size() != vs.size()) throw Error(ErrorKind::invalid_state, "clique state has the wrong length");
  std::size_t local = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const int d = space_.level(static_cast<std::size_t>(vs[i]));
    if (clique_state[i] < 1 || clique_state[i] > d) throw Error(ErrorKind::invalid_state, "clique state out of range");
    local = local * static_cast<std::size_t>(d) + static_cast<std::size_t>(clique_state[i] - 1);
  }
  return offsets_[clique] + local;
}

std::size_t MarginMap::row_of_state(std::size_t clique, const State& x) const {
  std::vector<int> y;
  y.reserve(cliques_.at(clique).size());
  for (int v : cliques_[clique]) y.push_back(x.at(static_cast<std::size_t>(v)));
  return row(clique, y);
}

std::pair<std::size_t, std::vector<int>> MarginMap::row_key(std::size_t r) const {
  if (r >= n_rows_) throw Error(ErrorKind::incompatible, "row out of range");
  std::size_t k = static_cast<std::size_t>(std::upper_bound(offsets_.begin(), offsets_.end(), r) - offsets_.begin()) - 1;
  std::size_t local = r - offsets_[k];
  const auto& vs = cliques_[k];
  std::vector<int> y(vs.size());
  for (std::size_t i = vs.size(); i-- > 0;) {
    const auto d = static_cast<std::size_t>(space_.level(static_cast<std::size_t>(vs[i])));
    y[i] = static_cast<int>(local % d) + 1;
    local /= d;
  }
  return {k, y};
}

std::string MarginMap::row_label(std::size_t r) const {
  auto [k, y] = row_key(r);
  std::ostringstream os;
  os << '(' << set_label(cliques_[k]) << "; ";
  for (std::size_t i = 0; i < y.size(); ++i) os << (i ? "," : "") << y[i];
  os << ')';
  return os.str();
}

std::vector<std::vector<std::int64_t>> MarginMap::dense() const {
  std::vector<std::vector<std::int64_t>> a(n_rows_, std::vector<std::int64_t>(n_cols_, 0));
  for (std::size_t cell = 0; cell < n_cols_; ++cell) {
    for (auto r : rows_of(static_cast<Cell>(cell))) a[r][cell] = 1;
  }
  return a;
}

MarginMap margin_map(const LabeledGraph& g) { return MarginMap(g.space(), maximal_cliques(g)); }

MarginVector margins(const MarginMap& am, const Table& t) {
  MarginVector y{std::vector<std::int64_t>(am.n_rows(), 0)};
  for (const auto& [cell, count] : t.entries()) {
    for (auto r : am.rows_of(cell)) y.values[r] += count;
  }
  return y;
}

bool is_chordal(const LabeledGraph& g) {
  const int n = g.n_vertices();
  // Maximum cardinality search; the reverse visit order is a perfect
  // elimination ordering iff the graph is chordal.
  std::vector<int> weight(static_cast<std::size_t>(n), 0);
  Mask visited = 0;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!((visited >> v) & 1u) && (best < 0 || weight[v] > weight[best])) best = v;
    }
    const Mask earlier = g.neighbor_mask(best) & visited;
    for (Mask m = earlier; m; m &= m - 1) {
      if ((earlier & ~(Mask{1} << std::countr_zero(m)) & ~g.neighbor_mask(std::countr_zero(m))) != 0) return false;
    }
    visited |= Mask{1} << best;
    for (Mask m = g.neighbor_mask(best) & ~visited; m; m &= m - 1) ++weight[std::countr_zero(m)];
  }
  return true;
}

std::optional<std::pair<VertexSet, VertexSet>> reducible_split(const LabeledGraph& g) {
  const int n = g.n_vertices();
  std::set<Mask> cliques{0};
  for (const auto& mc : maximal_cliques(g)) {
    if (mc.size() > 20) throw Error(ErrorKind::too_large, "clique too large for separator search");
    const Mask m = to_mask(mc, n);
    // All nonempty subsets of the maximal clique.
    for (Mask sub = m; sub; sub = (sub - 1) & m) cliques.insert(sub);
  }
  std::vector<Mask> ordered(cliques.begin(), cliques.end());
  std::sort(ordered.begin(), ordered.end(), [](Mask x, Mask y) {
    const int px = std::popcount(x), py = std::popcount(y);
    if (px != py) return px < py;
    return to_set(x) < to_set(y);
  });
  const Mask all = all_vertices(n);
  for (Mask sep : ordered) {
    const Mask rest = all & ~sep;
    if (!rest) continue;
    const Mask first = reach(g, Mask{1} << std::countr_zero(rest), sep);
    if (first == rest) continue;
    return std::make_pair(to_set(sep | first), to_set(sep | (rest & ~first)));
  }
  return std::nullopt;
}

LabeledGraph cone_graph(const LabeledGraph& g, int apex_level) {
  auto levels = g.space().levels();
  levels.push_back(apex_level);
  auto edges = g.edges();
  const int apex = g.n_vertices();
  for (int v = 0; v < apex; ++v) edges.emplace_back(v, apex);
  return LabeledGraph(StateSpace(levels), edges);
}

bool is_connected(const LabeledGraph& g) {
  return reach(g, 1, 0) == all_vertices(g.n_vertices());
}

bool is_two_connected(const LabeledGraph& g) {
  const int n = g.n_vertices();
  if (n < 2 || !is_connected(g)) return false;
  const Mask all = all_vertices(n);
  for (int v = 0; v < n; ++v) {
    const Mask rest = all & ~(Mask{1} << v);
    if (reach(g, Mask{1} << std::countr_zero(rest), Mask{1} << v) != rest) return false;
  }
  return true;
}

bool is_triangle_free(const LabeledGraph& g) {
  for (auto [u, v] : g.edges()) {
    if (g.neighbor_mask(u) & g.neighbor_mask(v)) return false;
  }
  return true;
}

}  // namespace fiberwalk
