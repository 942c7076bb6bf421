#include "fiberwalk/linalg.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>

#include "fiberwalk/error.hpp"

namespace fiberwalk {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using RationalRow = std::vector<cpp_rational>;

RationalRow to_rational(const std::vector<std::int64_t>& row) { return RationalRow(row.begin(), row.end()); }

/// Incremental echelon basis: each stored row has a leading 1 at its pivot,
/// and zeros at the pivots of all other stored rows.
class Echelon {
 public:
  /// Reduces row against the basis; adds it and returns true if independent.
  bool insert(RationalRow row) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const auto& f = row[pivots_[k]];
      if (f == 0) continue;
      const cpp_rational factor = f;
      for (std::size_t j = 0; j < row.size(); ++j) row[j] -= factor * rows_[k][j];
    }
    std::size_t p = 0;
    while (p < row.size() && row[p] == 0) ++p;
    if (p == row.size()) return false;
    const cpp_rational lead = row[p];
    for (auto& x : row) x /= lead;
    for (auto& other : rows_) {
      const cpp_rational f = other[p];
      if (f == 0) continue;
      for (std::size_t j = 0; j < row.size(); ++j) other[j] -= f * row[j];
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(p);
    return true;
  }

  const std::vector<RationalRow>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  std::vector<RationalRow> rows_;
  std::vector<std::size_t> pivots_;
};

std::int64_t to_int64(const cpp_int& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::too_large, "integer entry exceeds 64 bits");
  }
  return static_cast<std::int64_t>(x);
}

}  // namespace

std::size_t matrix_rank(const IntMatrix& m) { return independent_rows(m).size(); }

std::vector<std::size_t> independent_rows(const IntMatrix& m) {
  Echelon e;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (e.insert(to_rational(m[i]))) out.push_back(i);
  }
  return out;
}

std::vector<std::int64_t> kernel_vector(const IntMatrix& m, std::size_t n_cols) {
  Echelon e;
  for (const auto& row : m) {
    if (row.size() != n_cols) throw Error(ErrorKind::invalid_input, "ragged matrix");
    e.insert(to_rational(row));
  }
  if (e.rows().size() + 1 != n_cols) throw Error(ErrorKind::invalid_input, "kernel is not one-dimensional");
  std::vector<bool> is_pivot(n_cols, false);
  for (auto p : e.pivots()) is_pivot[p] = true;
  std::size_t free = 0;
  while (is_pivot[free]) ++free;
  // Reduced rows: x_pivot + row[free] * x_free = 0.
  std::vector<cpp_rational> x(n_cols, 0);
  x[free] = 1;
  for (std::size_t k = 0; k < e.rows().size(); ++k) x[e.pivots()[k]] = -e.rows()[k][free];
  cpp_int denominators = 1;
  for (const auto& v : x) denominators = boost::multiprecision::lcm(denominators, denominator(v));
  std::vector<cpp_int> scaled;
  cpp_int g = 0;
  for (const auto& v : x) {
    scaled.push_back(numerator(v) * (denominators / denominator(v)));
    g = boost::multiprecision::gcd(g, scaled.back());
  }
  std::vector<std::int64_t> out;
  for (auto& v : scaled) out.push_back(to_int64(v / g));
  return out;
}

void make_primitive(std::vector<std::int64_t>& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
}

IntMatrix transpose(const IntMatrix& m, std::size_t n_cols) {
  IntMatrix t(n_cols, std::vector<std::int64_t>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < n_cols; ++j) t[j][i] = m[i].at(j);
  return t;
}

}  // namespace fiberwalk
