#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fiberwalk/graph.hpp"
#include "fiberwalk/tensor.hpp"

namespace fiberwalk {

/// Moves prepared for neighbor generation: both orientations, bucketed by the
/// first cell of the part they remove, so only moves whose removal part can
/// fit into the current support are tested.
class MoveIndex {
 public:
  explicit MoveIndex(std::span<const Move> moves);

  std::size_t size() const noexcept { return moves_.size(); }
  const Move& move(std::size_t i) const { return moves_.at(i); }

  /// Calls visit(neighbor, move_index, reversed) for every applicable
  /// orientation of every move.
  template <class Visit>
  void for_each_neighbor(const Table& t, Visit&& visit) const {
    for (const auto& o : unconditional_) emit(t, o, visit);
    for (const auto& [cell, count] : t.entries()) {
      (void)count;
      if (cell >= buckets_.size()) continue;
      for (const auto& o : buckets_[cell]) emit(t, o, visit);
    }
  }

 private:
  struct Oriented {
    std::size_t index;
    bool reversed;
  };

  template <class Visit>
  void emit(const Table& t, const Oriented& o, Visit& visit) const {
    const Move& m = moves_[o.index];
    const Table& remove = o.reversed ? m.plus() : m.minus();
    if (!remove.divides(t)) return;
    auto next = try_apply_move(t, o.reversed ? m.reversed() : m);
    visit(*next, o.index, o.reversed);
  }

  std::vector<Move> moves_;
  std::vector<std::vector<Oriented>> buckets_;
  std::vector<Oriented> unconditional_;
};

struct ComponentReport {
  Table start;
  std::size_t size = 0;
  /// Sorted canonically; complete unless truncated.
  std::vector<Table> members;
  bool truncated = false;

  bool contains(const Table& t) const;
};

ComponentReport connected_component(const Table& start, const MoveIndex& moves, std::size_t node_cap);
ComponentReport connected_component(const Table& start, std::span<const Move> moves, std::size_t node_cap);

struct PathStep {
  std::size_t move_index = 0;
  bool reversed = false;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

enum class Connectivity { connected, not_connected, inconclusive };

struct ConnectionResult {
  Connectivity status = Connectivity::inconclusive;
  /// Replayable from u to v when connected.
  std::vector<PathStep> path;
  std::size_t explored = 0;
};

/// Bidirectional search; each side explores at most node_cap tables. The path
/// is a shortest one unless a side reached the cap.
ConnectionResult are_connected(const Table& u, const Table& v, std::span<const Move> moves, std::size_t node_cap);

/// Applies the path to u; throws move_not_applicable if a step does not fit.
Table replay_path(const Table& u, std::span<const Move> moves, std::span<const PathStep> path);

using FiberKey = MarginVector;

/// Every table with margins equal to key, in canonical order.
std::vector<Table> enumerate_fiber(const MarginMap& am, const FiberKey& key, std::size_t size_cap);

struct VerifyOptions {
  /// Maximum number of tables enumerated over all degrees.
  std::size_t table_budget = 4'000'000;
  unsigned threads = 1;
};

struct MarkovVerdict {
  bool pass = true;
  /// Two tables with equal margins in different components.
  std::optional<std::pair<Table, Table>> witness;
  std::uint64_t witness_degree = 0;
  std::size_t tables_checked = 0;
  std::size_t fibers_checked = 0;
};

/// Checks that every fiber of degree <= degree_bound is connected by moves.
MarkovVerdict verify_markov_basis(std::span<const Move> moves, const MarginMap& am, int degree_bound,
                                  const VerifyOptions& options = {});

}  // namespace fiberwalk
