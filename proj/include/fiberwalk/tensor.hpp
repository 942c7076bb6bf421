#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace fiberwalk {

/// Canonical mixed-radix index of a state (last coordinate varies fastest).
using Cell = std::uint32_t;
using Count = std::uint32_t;

/// A state: one 1-based coordinate per vertex.
using State = std::vector<int>;

class StateSpace {
 public:
  StateSpace() = default;
  explicit StateSpace(std::vector<int> levels);

  const std::vector<int>& levels() const noexcept { return levels_; }
  int level(std::size_t v) const { return levels_.at(v); }
  std::size_t n_vertices() const noexcept { return levels_.size(); }
  std::uint64_t total_cells() const noexcept { return total_; }

  bool contains(const State& x) const noexcept;

  friend bool operator==(const StateSpace&, const StateSpace&) = default;

 private:
  std::vector<int> levels_;
  std::uint64_t total_ = 1;
};

Cell state_index(const State& x, const StateSpace& s);
State state_of(Cell cell, const StateSpace& s);

/// Switches 1 and 2 in every coordinate. Only defined on binary spaces.
State opposite_state(const State& x, const StateSpace& s);

/// A nonnegative integer table stored sparsely as (cell, count) pairs sorted
/// by cell, with no zero counts. Doubles as the exponent vector of a monomial.
class Table {
 public:
  using Entry = std::pair<Cell, Count>;

  Table() = default;

  /// Merges duplicate cells and drops zeros.
  static Table from_entries(std::vector<Entry> entries);
  static Table from_cells(std::span<const Cell> cells);
  static Table unit(Cell cell, Count count = 1);

  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t support_size() const noexcept { return entries_.size(); }
  std::uint64_t degree() const noexcept { return degree_; }
  bool empty() const noexcept { return entries_.empty(); }
  Count count(Cell cell) const noexcept;

  /// True iff this table is entrywise <= other (p^this divides p^other).
  bool divides(const Table& other) const noexcept;
  bool disjoint_from(const Table& other) const noexcept;

  Table operator+(const Table& other) const;
  Table scaled(Count factor) const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Table&, const Table&) = default;
  friend std::strong_ordering operator<=>(const Table& a, const Table& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  std::vector<Entry> entries_;
  std::uint64_t degree_ = 0;
};

struct TableHash {
  std::size_t operator()(const Table& t) const noexcept { return t.hash(); }
};

/// A pure difference plus - minus with disjoint supports.
class Move {
 public:
  Move(Table plus, Table minus);

  const Table& plus() const noexcept { return plus_; }
  const Table& minus() const noexcept { return minus_; }
  std::uint64_t degree() const noexcept { return plus_.degree(); }
  bool is_homogeneous() const noexcept { return plus_.degree() == minus_.degree(); }

  Move reversed() const { return Move(minus_, plus_); }
  /// Orientation with the smallest cell of either support in plus.
  Move canonical() const;

  friend bool operator==(const Move&, const Move&) = default;
  friend std::strong_ordering operator<=>(const Move& a, const Move& b) {
    if (auto c = a.plus_ <=> b.plus_; c != 0) return c;
    return a.minus_ <=> b.minus_;
  }

 private:
  Table plus_;
  Table minus_;
};

/// t - m.minus + m.plus; throws move_not_applicable if m.minus does not fit.
Table apply_move(const Table& t, const Move& m);
std::optional<Table> try_apply_move(const Table& t, const Move& m);

/// Canonicalizes, sorts, and removes duplicate moves (up to sign).
std::vector<Move> dedup_moves(std::vector<Move> moves);

}  // namespace fiberwalk
