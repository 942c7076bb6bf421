#include "fiberwalk/cone.hpp"

#include <algorithm>
#include <bitset>
#include <numeric>

#include "fiberwalk/error.hpp"

namespace fiberwalk {

namespace {

constexpr std::size_t kMaxGenerators = 128;
using ZeroSet = std::bitset<kMaxGenerators>;

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorKind::too_large, "integer overflow in cone computation");
  return out;
}

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorKind::too_large, "integer overflow in cone computation");
  return out;
}

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = add(s, mul(a[i], b[i]));
  return s;
}

struct Ray {
  std::vector<std::int64_t> h;
  ZeroSet zeros;  // generators processed so far with h . g = 0
};

/// Extreme rays of {h : g_i . h >= 0 for all i}, for generators spanning Z^r.
std::vector<Ray> double_description(const IntMatrix& gens, std::size_t r, std::size_t max_rays) {
  const std::size_t n = gens.size();
  std::vector<std::size_t> basis = independent_rows(gens);
  if (basis.size() != r) throw Error(ErrorKind::invalid_input, "generators do not span the coordinate space");

  std::vector<Ray> rays;
  std::vector<bool> processed(n, false);
  for (auto i : basis) processed[i] = true;
  for (std::size_t k = 0; k < r; ++k) {
    IntMatrix others;
    for (std::size_t l = 0; l < r; ++l)
      if (l != k) others.push_back(gens[basis[l]]);
    Ray ray;
    ray.h = r == 1 ? std::vector<std::int64_t>{1} : kernel_vector(others, r);
    if (dot(ray.h, gens[basis[k]]) < 0)
      for (auto& x : ray.h) x = -x;
    for (std::size_t l = 0; l < r; ++l)
      if (l != k) ray.zeros.set(basis[l]);
    rays.push_back(std::move(ray));
  }

  for (std::size_t j = 0; j < n; ++j) {
    if (processed[j]) continue;
    processed[j] = true;
    std::vector<std::int64_t> value(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      value[k] = dot(rays[k].h, gens[j]);
      if (value[k] > 0) pos.push_back(k);
      if (value[k] < 0) neg.push_back(k);
    }
    if (neg.empty()) {
      for (std::size_t k = 0; k < rays.size(); ++k)
        if (value[k] == 0) rays[k].zeros.set(j);
      continue;
    }
    std::vector<Ray> next;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (value[k] < 0) continue;
      Ray kept = rays[k];
      if (value[k] == 0) kept.zeros.set(j);
      next.push_back(std::move(kept));
    }
    for (auto p : pos) {
      for (auto q : neg) {
        const ZeroSet common = rays[p].zeros & rays[q].zeros;
        if (r >= 2 && common.count() + 2 < r) continue;
        // Combinatorial adjacency: no third ray is tight on all common constraints.
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t) {
          if (t != p && t != q && (common & ~rays[t].zeros).none()) adjacent = false;
        }
        if (!adjacent) continue;
        Ray ray;
        ray.h.resize(r);
        for (std::size_t i = 0; i < r; ++i) {
          ray.h[i] = add(mul(value[p], rays[q].h[i]), mul(-value[q], rays[p].h[i]));
        }
        make_primitive(ray.h);
        ray.zeros = common;
        ray.zeros.set(j);
        next.push_back(std::move(ray));
        if (next.size() > max_rays) throw Error(ErrorKind::too_large, "facet enumeration exceeds the ray budget");
      }
    }
    rays = std::move(next);
  }
  return rays;
}

}  // namespace

std::int64_t Functional::evaluate(std::span<const std::int64_t> y) const {
  if (y.size() != coeffs.size()) throw Error(ErrorKind::incompatible, "functional and vector lengths differ");
  return dot(coeffs, y);
}

std::int64_t Functional::evaluate(const MarginVector& y) const { return evaluate(std::span(y.values)); }

std::vector<std::int64_t> column_values(const MarginMap& am, const Functional& f) {
  if (f.coeffs.size() != am.n_rows()) throw Error(ErrorKind::incompatible, "functional does not match the margin map");
  std::vector<std::int64_t> out(am.n_cols(), 0);
  for (std::size_t c = 0; c < am.n_cols(); ++c)
    for (auto r : am.rows_of(static_cast<Cell>(c))) out[c] = add(out[c], f.coeffs[r]);
  return out;
}

bool same_on_columns(const MarginMap& am, const Functional& f, const Functional& g) {
  auto a = column_values(am, f);
  auto b = column_values(am, g);
  make_primitive(a);
  make_primitive(b);
  return a == b;
}

ConeFacets facets_of_generators(const IntMatrix& matrix, std::size_t n_cols, const FacetLimits& limits) {
  if (n_cols > std::min(limits.max_columns, kMaxGenerators)) {
    throw Error(ErrorKind::too_large, "too many columns for facet enumeration");
  }
  ConeFacets out;
  out.basis_rows = independent_rows(matrix);
  out.rank = out.basis_rows.size();
  if (out.rank > limits.max_rank) throw Error(ErrorKind::too_large, "cone rank exceeds the facet enumeration limit");
  if (out.rank <= 1) {
    out.ray = out.rank == 1;
    return out;
  }
  // Coordinates of each column in the independent rows.
  IntMatrix gens(n_cols, std::vector<std::int64_t>(out.rank));
  for (std::size_t c = 0; c < n_cols; ++c)
    for (std::size_t k = 0; k < out.rank; ++k) gens[c][k] = matrix[out.basis_rows[k]].at(c);
  // Zero columns impose nothing.
  std::erase_if(gens, [](const auto& g) { return std::all_of(g.begin(), g.end(), [](auto x) { return x == 0; }); });

  auto rays = double_description(gens, out.rank, limits.max_rays);
  std::vector<std::vector<std::int64_t>> normals;
  for (auto& ray : rays) normals.push_back(std::move(ray.h));
  std::sort(normals.begin(), normals.end());
  normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
  std::sort(normals.begin(), normals.end(), std::greater<>());
  for (std::size_t i = 0; i < normals.size(); ++i) {
    Functional f;
    f.coeffs.assign(matrix.size(), 0);
    for (std::size_t k = 0; k < out.rank; ++k) f.coeffs[out.basis_rows[k]] = normals[i][k];
    f.label = "facet " + std::to_string(i + 1);
    out.facets.push_back(std::move(f));
  }
  return out;
}

ConeFacets cone_facets(const MarginMap& am, const FacetLimits& limits) {
  return facets_of_generators(am.dense(), am.n_cols(), limits);
}

bool is_strictly_positive(const MarginVector& y) {
  return std::all_of(y.values.begin(), y.values.end(), [](auto v) { return v > 0; });
}

bool is_relative_interior(const MarginMap& am, const MarginVector& y, std::span<const Functional> facets) {
  if (y.values.size() != am.n_rows()) throw Error(ErrorKind::incompatible, "margin vector does not match the margin map");
  return std::all_of(facets.begin(), facets.end(), [&](const Functional& f) { return f.evaluate(y) > 0; });
}

std::optional<std::pair<std::int64_t, std::int64_t>> uniform_interior_certificate(const MarginMap& am,
                                                                                  const MarginVector& y) {
  if (y.values.size() != am.n_rows()) throw Error(ErrorKind::incompatible, "margin vector does not match the margin map");
  // Row sums of A: the margins of the all-ones table.
  std::vector<std::int64_t> ones(am.n_rows(), 0);
  for (std::size_t c = 0; c < am.n_cols(); ++c)
    for (auto r : am.rows_of(static_cast<Cell>(c))) ++ones[r];
  std::int64_t num = 0, den = 0;
  for (std::size_t r = 0; r < am.n_rows(); ++r) {
    if (ones[r] == 0) {
      if (y.values[r] != 0) return std::nullopt;
      continue;
    }
    if (den == 0) {
      num = y.values[r];
      den = ones[r];
      const auto g = std::gcd(num, den);
      if (g > 0) {
        num /= g;
        den /= g;
      }
    } else if (mul(y.values[r], den) != mul(num, ones[r])) {
      return std::nullopt;
    }
  }
  if (den == 0 || num <= 0) return std::nullopt;
  return std::make_pair(num, den);
}

PropertyVerdict check_margin_property(std::span<const PrimeWitness> witnesses, const MarginMap& am, MarginMode mode,
                                      const std::vector<Functional>* facets) {
  if (mode == MarginMode::interior_point && facets == nullptr) {
    throw Error(ErrorKind::missing_facets, "interior-point mode needs facet functionals");
  }
  PropertyVerdict verdict;
  for (const auto& w : witnesses) {
    if (w.is_toric() || !w.witness_table) continue;
    const auto y = margins(am, *w.witness_table);
    WitnessProfile profile;
    profile.id = w.id;
    if (mode == MarginMode::positive_margins) {
      for (std::size_t r = 0; r < y.values.size(); ++r)
        if (y.values[r] == 0) profile.zeros.push_back(r);
    } else {
      for (std::size_t k = 0; k < facets->size(); ++k)
        if ((*facets)[k].evaluate(y) == 0) profile.zeros.push_back(k);
    }
    profile.on_boundary = !profile.zeros.empty();
    if (!profile.on_boundary) {
      verdict.holds = false;
      if (!verdict.failing_witness || w.id < verdict.failing_witness->id) verdict.failing_witness = w;
    }
    verdict.margin_profile.push_back(std::move(profile));
  }
  std::sort(verdict.margin_profile.begin(), verdict.margin_profile.end(),
            [](const WitnessProfile& a, const WitnessProfile& b) { return a.id < b.id; });
  return verdict;
}

namespace {

bool avoids(const Table& t, const std::vector<Cell>& variables) {
  for (const auto& [cell, count] : t.entries()) {
    (void)count;
    if (std::binary_search(variables.begin(), variables.end(), cell)) return false;
  }
  return true;
}

}  // namespace

std::pair<Table, Table> build_disconnection_witness(const PrimeWitness& w, const Move& f, Count c) {
  if (!w.witness_table) throw Error(ErrorKind::invalid_input, "the toric component has no witness monomial");
  if (!avoids(f.plus(), w.variables) || !avoids(f.minus(), w.variables)) {
    throw Error(ErrorKind::invalid_witness_move, "move uses variables of prime " + w.id);
  }
  const Table lift = w.witness_table->scaled(c);
  return {f.plus() + lift, f.minus() + lift};
}

std::optional<Move> find_witness_move(const PrimeWitness& w, std::vector<Move> basis, std::uint64_t min_degree) {
  basis = dedup_moves(std::move(basis));
  for (const auto& m : basis) {
    if (m.degree() >= min_degree && avoids(m.plus(), w.variables) && avoids(m.minus(), w.variables)) return m;
  }
  return std::nullopt;
}

}  // namespace fiberwalk
