#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fiberwalk/graph.hpp"
#include "fiberwalk/linalg.hpp"
#include "fiberwalk/tensor.hpp"
#include "fiberwalk/witness.hpp"

namespace fiberwalk {

/// Integer linear functional on margin vectors (one coefficient per row).
struct Functional {
  std::vector<std::int64_t> coeffs;
  std::string label;

  std::int64_t evaluate(const MarginVector& y) const;
  std::int64_t evaluate(std::span<const std::int64_t> y) const;
};

/// Value of f on every column of the margin map.
std::vector<std::int64_t> column_values(const MarginMap& am, const Functional& f);

/// True iff f and g agree on all columns up to a positive factor.
bool same_on_columns(const MarginMap& am, const Functional& f, const Functional& g);

struct ConeFacets {
  /// Primitive, irredundant, sorted by coefficient vector.
  std::vector<Functional> facets;
  std::size_t rank = 0;
  /// Rank one: the cone is a single ray, reported with no facets.
  bool ray = false;
  /// Independent rows whose coordinates carry the facet normals.
  std::vector<std::size_t> basis_rows;
};

struct FacetLimits {
  std::size_t max_columns = 128;
  std::size_t max_rank = 24;
  /// Maximum number of intermediate extreme rays during double description.
  std::size_t max_rays = 500'000;
};

/// Facets of the cone generated by the columns of `matrix` (rows x n_cols).
ConeFacets facets_of_generators(const IntMatrix& matrix, std::size_t n_cols, const FacetLimits& limits = {});
ConeFacets cone_facets(const MarginMap& am, const FacetLimits& limits = {});

bool is_strictly_positive(const MarginVector& y);
bool is_relative_interior(const MarginMap& am, const MarginVector& y, std::span<const Functional> facets);

/// y = s * A * 1 for a rational s > 0; then y is a positive combination of
/// every column and hence in the relative interior. Returns s as num/den.
std::optional<std::pair<std::int64_t, std::int64_t>> uniform_interior_certificate(const MarginMap& am,
                                                                                  const MarginVector& y);

enum class MarginMode { positive_margins, interior_point };

struct WitnessProfile {
  std::string id;
  /// positive-margins: rows with zero margin; interior-point: facets evaluating to zero.
  std::vector<std::size_t> zeros;
  bool on_boundary = false;
};

struct PropertyVerdict {
  bool holds = true;
  std::optional<PrimeWitness> failing_witness;
  std::vector<WitnessProfile> margin_profile;
};

/// Toric markers are skipped. The failing witness is the one with the
/// smallest id, so the verdict does not depend on the input order.
PropertyVerdict check_margin_property(std::span<const PrimeWitness> witnesses, const MarginMap& am, MarginMode mode,
                                      const std::vector<Functional>* facets = nullptr);

/// (f.plus + c u_P, f.minus + c u_P).
std::pair<Table, Table> build_disconnection_witness(const PrimeWitness& w, const Move& f, Count c);

/// First move in canonical order of degree >= min_degree whose support avoids
/// the prime's variables.
std::optional<Move> find_witness_move(const PrimeWitness& w, std::vector<Move> basis, std::uint64_t min_degree = 3);

}  // namespace fiberwalk
