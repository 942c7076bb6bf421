#include "fiberwalk/fiber.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "fiberwalk/error.hpp"

namespace fiberwalk {

MoveIndex::MoveIndex(std::span<const Move> moves) : moves_(moves.begin(), moves.end()) {
  for (std::size_t i = 0; i < moves_.size(); ++i) {
    for (bool reversed : {false, true}) {
      const Table& remove = reversed ? moves_[i].plus() : moves_[i].minus();
      if (remove.empty()) {
        unconditional_.push_back({i, reversed});
        continue;
      }
      const Cell first = remove.entries().front().first;
      if (first >= buckets_.size()) buckets_.resize(static_cast<std::size_t>(first) + 1);
      buckets_[first].push_back({i, reversed});
    }
  }
}

bool ComponentReport::contains(const Table& t) const {
  return std::binary_search(members.begin(), members.end(), t);
}

ComponentReport connected_component(const Table& start, const MoveIndex& moves, std::size_t node_cap) {
  if (node_cap < 1) throw Error(ErrorKind::invalid_input, "node cap must be at least 1");
  ComponentReport report;
  report.start = start;
  std::unordered_set<Table, TableHash> visited{start};
  std::vector<Table> frontier{start};
  while (!frontier.empty() && !report.truncated) {
    std::vector<Table> next;
    for (const auto& t : frontier) {
      moves.for_each_neighbor(t, [&](const Table& n, std::size_t, bool) {
        if (report.truncated || visited.contains(n)) return;
        if (visited.size() >= node_cap) {
          report.truncated = true;
          return;
        }
        visited.insert(n);
        next.push_back(n);
      });
      if (report.truncated) break;
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  report.members.assign(visited.begin(), visited.end());
  std::sort(report.members.begin(), report.members.end());
  report.size = report.members.size();
  return report;
}

ComponentReport connected_component(const Table& start, std::span<const Move> moves, std::size_t node_cap) {
  return connected_component(start, MoveIndex(moves), node_cap);
}

namespace {

struct Parent {
  Table previous;
  PathStep step;
};

struct Visit {
  std::optional<Parent> parent;
  std::size_t depth = 0;
};

using ParentMap = std::unordered_map<Table, Visit, TableHash>;

struct Side {
  ParentMap parents;
  std::vector<Table> frontier;
  std::size_t depth = 0;
  bool capped = false;
};

/// Expands one full BFS layer. Among the new tables also seen by `other`,
/// returns the one closest to other's root, which makes the joined path shortest.
std::optional<Table> expand(Side& side, const Side& other, const MoveIndex& index, std::size_t cap) {
  std::vector<Table> next;
  std::optional<Table> meet;
  std::size_t meet_depth = 0;
  ++side.depth;
  for (const auto& t : side.frontier) {
    index.for_each_neighbor(t, [&](const Table& n, std::size_t i, bool reversed) {
      if (side.capped || side.parents.contains(n)) return;
      if (side.parents.size() >= cap) {
        side.capped = true;
        return;
      }
      side.parents.emplace(n, Visit{Parent{t, {i, reversed}}, side.depth});
      next.push_back(n);
      if (auto it = other.parents.find(n); it != other.parents.end()) {
        if (!meet || it->second.depth < meet_depth || (it->second.depth == meet_depth && n < *meet)) {
          meet = n;
          meet_depth = it->second.depth;
        }
      }
    });
    if (side.capped) break;
  }
  std::sort(next.begin(), next.end());
  side.frontier = std::move(next);
  return meet;
}

std::vector<PathStep> trace(const ParentMap& parents, Table at) {
  std::vector<PathStep> steps;
  while (true) {
    const auto& p = parents.at(at).parent;
    if (!p) break;
    steps.push_back(p->step);
    at = p->previous;
  }
  return steps;
}

}  // namespace

ConnectionResult are_connected(const Table& u, const Table& v, std::span<const Move> moves, std::size_t node_cap) {
  if (node_cap < 1) throw Error(ErrorKind::invalid_input, "node cap must be at least 1");
  ConnectionResult result;
  if (u == v) {
    result.status = Connectivity::connected;
    result.explored = 1;
    return result;
  }
  const MoveIndex index(moves);
  Side forward, backward;
  forward.parents.emplace(u, Visit{});
  forward.frontier = {u};
  backward.parents.emplace(v, Visit{});
  backward.frontier = {v};

  std::optional<Table> meet;
  while (!meet) {
    const bool f_open = !forward.frontier.empty() && !forward.capped;
    const bool b_open = !backward.frontier.empty() && !backward.capped;
    if ((forward.frontier.empty() && !forward.capped) || (backward.frontier.empty() && !backward.capped)) {
      result.status = Connectivity::not_connected;
      break;
    }
    if (!f_open && !b_open) {
      result.status = Connectivity::inconclusive;
      break;
    }
    const bool grow_forward = f_open && (!b_open || forward.frontier.size() <= backward.frontier.size());
    meet = grow_forward ? expand(forward, backward, index, node_cap) : expand(backward, forward, index, node_cap);
  }
  result.explored = forward.parents.size() + backward.parents.size();
  if (!meet) return result;

  auto head = trace(forward.parents, *meet);
  std::reverse(head.begin(), head.end());
  // Backward parents record moves taken from v's side; walking towards v
  // undoes them, i.e. applies the opposite orientation.
  for (auto step : trace(backward.parents, *meet)) {
    step.reversed = !step.reversed;
    head.push_back(step);
  }
  result.status = Connectivity::connected;
  result.path = std::move(head);
  if (replay_path(u, moves, result.path) != v) {
    throw Error(ErrorKind::invalid_input, "internal error: reconstructed path does not replay");
  }
  return result;
}

Table replay_path(const Table& u, std::span<const Move> moves, std::span<const PathStep> path) {
  Table t = u;
  for (const auto& step : path) {
    const Move& m = moves[step.move_index];
    t = apply_move(t, step.reversed ? m.reversed() : m);
  }
  return t;
}

std::vector<Table> enumerate_fiber(const MarginMap& am, const FiberKey& key, std::size_t size_cap) {
  if (key.values.size() != am.n_rows()) throw Error(ErrorKind::incompatible, "fiber key does not match the margin map");
  for (auto v : key.values) {
    if (v < 0) throw Error(ErrorKind::invalid_input, "fiber key has a negative entry");
  }
  std::int64_t degree = -1;
  for (std::size_t k = 0; k < am.cliques().size(); ++k) {
    std::int64_t sum = 0;
    for (std::size_t r = 0; r < am.block_size(k); ++r) sum += key.values[am.block_offset(k) + r];
    if (degree >= 0 && sum != degree) throw Error(ErrorKind::invalid_input, "fiber key has inconsistent block sums");
    degree = sum;
  }

  const std::size_t n = am.n_cols();
  std::vector<std::size_t> last_cell(am.n_rows(), 0);
  std::vector<bool> touched(am.n_rows(), false);
  for (std::size_t c = 0; c < n; ++c) {
    for (auto r : am.rows_of(static_cast<Cell>(c))) {
      last_cell[r] = c;
      touched[r] = true;
    }
  }
  for (std::size_t r = 0; r < am.n_rows(); ++r) {
    if (!touched[r] && key.values[r] != 0) return {};
  }

  std::vector<std::int64_t> residual = key.values;
  std::vector<Table::Entry> current;
  std::vector<Table> out;

  // Depth-first over cells in index order; a row is closed once its last
  // cell has been assigned and must then have zero residual.
  auto recurse = [&](auto& self, std::size_t c) -> void {
    if (c == n) {
      out.push_back(Table::from_entries(current));
      if (out.size() > size_cap) throw Error(ErrorKind::fiber_too_large, "fiber exceeds the size cap");
      return;
    }
    const auto rows = am.rows_of(static_cast<Cell>(c));
    std::int64_t max_count = rows.empty() ? 0 : residual[rows[0]];
    for (auto r : rows) max_count = std::min(max_count, residual[r]);
    for (std::int64_t k = max_count; k >= 0; --k) {
      bool ok = true;
      for (auto r : rows) {
        residual[r] -= k;
        if (last_cell[r] == c && residual[r] != 0) ok = false;
      }
      if (ok) {
        if (k > 0) current.emplace_back(static_cast<Cell>(c), static_cast<Count>(k));
        self(self, c + 1);
        if (k > 0) current.pop_back();
      }
      for (auto r : rows) residual[r] += k;
    }
  };
  recurse(recurse, 0);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::uint64_t multiset_count(std::uint64_t n, std::uint64_t k, std::uint64_t limit) {
  // C(n + k - 1, k), saturating at limit + 1.
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    __uint128_t next = static_cast<__uint128_t>(result) * (n + i - 1) / i;
    if (next > limit) return limit + 1;
    result = static_cast<std::uint64_t>(next);
  }
  return result;
}

}  // namespace

MarkovVerdict verify_markov_basis(std::span<const Move> moves, const MarginMap& am, int degree_bound,
                                  const VerifyOptions& options) {
  if (degree_bound < 1) throw Error(ErrorKind::invalid_input, "degree bound must be at least 1");
  const std::size_t n = am.n_cols();
  std::size_t budget_used = 0;
  for (int d = 1; d <= degree_bound; ++d) {
    budget_used += multiset_count(n, static_cast<std::uint64_t>(d), options.table_budget);
    if (budget_used > options.table_budget) {
      throw Error(ErrorKind::too_large, "markov verification exceeds the table budget at degree " + std::to_string(d));
    }
  }

  const MoveIndex index(moves);
  MarkovVerdict verdict;
  for (int d = 1; d <= degree_bound; ++d) {
    std::map<MarginVector, std::vector<Table>> groups;
    std::vector<Cell> cells(static_cast<std::size_t>(d), 0);
    while (true) {
      auto t = Table::from_cells(cells);
      groups[margins(am, t)].push_back(std::move(t));
      ++verdict.tables_checked;
      // Next nondecreasing sequence.
      int pos = d - 1;
      while (pos >= 0 && cells[static_cast<std::size_t>(pos)] + 1 == n) --pos;
      if (pos < 0) break;
      const Cell next = cells[static_cast<std::size_t>(pos)] + 1;
      for (int i = pos; i < d; ++i) cells[static_cast<std::size_t>(i)] = next;
    }

    std::vector<const std::vector<Table>*> work;
    for (auto& [key, members] : groups) {
      std::sort(members.begin(), members.end());
      if (members.size() > 1) work.push_back(&members);
    }
    verdict.fibers_checked += groups.size();

    // Per group: index of the first member outside the first member's component.
    std::vector<std::size_t> stray(work.size(), 0);
    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    auto worker = [&] {
      for (std::size_t g = cursor++; g < work.size(); g = cursor++) {
        const auto& members = *work[g];
        auto comp = connected_component(members.front(), index, options.table_budget);
        if (comp.truncated) {
          failed = true;
          continue;
        }
        for (std::size_t i = 1; i < members.size(); ++i) {
          if (!comp.contains(members[i])) {
            stray[g] = i;
            break;
          }
        }
      }
    };
    const unsigned threads = std::max(1u, options.threads);
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (failed) throw Error(ErrorKind::too_large, "component exceeded the table budget at degree " + std::to_string(d));
    for (std::size_t g = 0; g < work.size(); ++g) {
      if (stray[g] != 0) {
        verdict.pass = false;
        verdict.witness = std::make_pair((*work[g]).front(), (*work[g])[stray[g]]);
        verdict.witness_degree = static_cast<std::uint64_t>(d);
        return verdict;
      }
    }
  }
  return verdict;
}

}  // namespace fiberwalk
