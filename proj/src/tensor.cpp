#include "fiberwalk/tensor.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "fiberwalk/error.hpp"

namespace fiberwalk {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_state: return "invalid-state";
    case ErrorKind::move_not_applicable: return "move-not-applicable";
    case ErrorKind::unsupported_levels: return "unsupported-levels";
    case ErrorKind::invalid_partition: return "invalid-partition";
    case ErrorKind::too_large: return "too-large";
    case ErrorKind::incompatible: return "incompatible";
    case ErrorKind::fiber_too_large: return "fiber-too-large";
    case ErrorKind::missing_facets: return "missing-facets";
    case ErrorKind::invalid_witness_move: return "invalid-witness-move";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::invalid_square: return "invalid-square";
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

StateSpace::StateSpace(std::vector<int> levels) : levels_(std::move(levels)) {
  for (int d : levels_) {
    if (d < 2) {
      throw Error(ErrorKind::invalid_input, "every level must be at least 2, got " + std::to_string(d));
    }
    total_ *= static_cast<std::uint64_t>(d);
    if (total_ > std::numeric_limits<Cell>::max()) {
      throw Error(ErrorKind::too_large, "state space exceeds the cell index range");
    }
  }
}

bool StateSpace::contains(const State& x) const noexcept {
  if (x.size() != levels_.size()) return false;
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (x[v] < 1 || x[v] > levels_[v]) return false;
  }
  return true;
}

Cell state_index(const State& x, const StateSpace& s) {
  if (!s.contains(x)) {
    throw Error(ErrorKind::invalid_state, "state outside the state space");
  }
  std::uint64_t index = 0;
  for (std::size_t v = 0; v < x.size(); ++v) {
    index = index * static_cast<std::uint64_t>(s.level(v)) + static_cast<std::uint64_t>(x[v] - 1);
  }
  return static_cast<Cell>(index);
}

State state_of(Cell cell, const StateSpace& s) {
  if (cell >= s.total_cells()) {
    throw Error(ErrorKind::invalid_state, "cell index " + std::to_string(cell) + " out of range");
  }
  State x(s.n_vertices());
  std::uint64_t rest = cell;
  for (std::size_t v = s.n_vertices(); v-- > 0;) {
    const auto d = static_cast<std::uint64_t>(s.level(v));
    x[v] = static_cast<int>(rest % d) + 1;
    rest /= d;
  }
  return x;
}

State opposite_state(const State& x, const StateSpace& s) {
  for (int d : s.levels()) {
    if (d != 2) throw Error(ErrorKind::unsupported_levels, "opposite state needs binary levels");
  }
  if (!s.contains(x)) throw Error(ErrorKind::invalid_state, "state outside the state space");
  State y(x.size());
  std::transform(x.begin(), x.end(), y.begin(), [](int c) { return 3 - c; });
  return y;
}

namespace {

Count checked_add(Count a, Count b) {
  Count out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorKind::too_large, "table count overflow");
  }
  return out;
}

}  // namespace

Table Table::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  Table t;
  for (const auto& [cell, count] : entries) {
    if (count == 0) continue;
    if (!t.entries_.empty() && t.entries_.back().first == cell) {
      t.entries_.back().second = checked_add(t.entries_.back().second, count);
    } else {
      t.entries_.emplace_back(cell, count);
    }
    t.degree_ += count;
  }
  return t;
}

Table Table::from_cells(std::span<const Cell> cells) {
  std::vector<Entry> entries;
  entries.reserve(cells.size());
  for (Cell c : cells) entries.emplace_back(c, 1);
  return from_entries(std::move(entries));
}

Table Table::unit(Cell cell, Count count) { return from_entries({{cell, count}}); }

Count Table::count(Cell cell) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), cell,
                             [](const Entry& e, Cell c) { return e.first < c; });
  return (it != entries_.end() && it->first == cell) ? it->second : 0;
}

bool Table::divides(const Table& other) const noexcept {
  auto it = other.entries_.begin();
  for (const auto& [cell, count] : entries_) {
    while (it != other.entries_.end() && it->first < cell) ++it;
    if (it == other.entries_.end() || it->first != cell || it->second < count) return false;
  }
  return true;
}

bool Table::disjoint_from(const Table& other) const noexcept {
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first == b->first) return false;
    if (a->first < b->first) ++a; else ++b;
  }
  return true;
}

Table Table::operator+(const Table& other) const {
  Table out;
  out.entries_.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      out.entries_.push_back(*b++);
    } else {
      out.entries_.emplace_back(a->first, checked_add(a->second, b->second));
      ++a;
      ++b;
    }
  }
  out.degree_ = degree_ + other.degree_;
  return out;
}

Table Table::scaled(Count factor) const {
  Table out;
  if (factor == 0) return out;
  out.entries_.reserve(entries_.size());
  for (const auto& [cell, count] : entries_) {
    Count c;
    if (__builtin_mul_overflow(count, factor, &c)) throw Error(ErrorKind::too_large, "table count overflow");
    out.entries_.emplace_back(cell, c);
    out.degree_ += c;
  }
  return out;
}

std::size_t Table::hash() const noexcept {
  // FNV-1a over the canonical (cell, count) sequence.
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& [cell, count] : entries_) {
    h = (h ^ cell) * 1099511628211ull;
    h = (h ^ count) * 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

Move::Move(Table plus, Table minus) : plus_(std::move(plus)), minus_(std::move(minus)) {
  if (plus_.empty() && minus_.empty()) {
    throw Error(ErrorKind::invalid_input, "a move needs a nonempty plus or minus part");
  }
  if (!plus_.disjoint_from(minus_)) {
    throw Error(ErrorKind::invalid_input, "plus and minus parts of a move must be disjointly supported");
  }
}

Move Move::canonical() const {
  if (plus_.empty()) return reversed();
  if (minus_.empty()) return *this;
  return plus_.entries().front().first < minus_.entries().front().first ? *this : reversed();
}

std::optional<Table> try_apply_move(const Table& t, const Move& m) {
  if (!m.minus().divides(t)) return std::nullopt;
  std::vector<Table::Entry> out;
  out.reserve(t.support_size() + m.plus().support_size());
  auto minus = m.minus().entries();
  auto mi = minus.begin();
  for (const auto& [cell, count] : t.entries()) {
    Count c = count;
    if (mi != minus.end() && mi->first == cell) {
      c -= mi->second;
      ++mi;
    }
    if (c > 0) out.emplace_back(cell, c);
  }
  auto rest = Table::from_entries(std::move(out));
  return rest + m.plus();
}

Table apply_move(const Table& t, const Move& m) {
  auto out = try_apply_move(t, m);
  if (!out) throw Error(ErrorKind::move_not_applicable, "move does not fit into the table");
  return *std::move(out);
}

std::vector<Move> dedup_moves(std::vector<Move> moves) {
  for (auto& m : moves) m = m.canonical();
  std::sort(moves.begin(), moves.end());
  moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
  return moves;
}

}  // namespace fiberwalk
