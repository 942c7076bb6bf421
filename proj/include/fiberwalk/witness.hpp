#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fiberwalk/tensor.hpp"

namespace fiberwalk {

enum class PrimeOrigin { cycle, k2n, toric, pyramid };

std::string to_string(PrimeOrigin origin);

/// Parameters (a, C, b, D) of a K_{2,N-2} prime; vertices and states 1-based.
struct K2NIndex {
  int a = 0;
  std::vector<int> c;
  int b = 0;
  std::vector<int> d;

  friend bool operator==(const K2NIndex&, const K2NIndex&) = default;
};

/// A minimal prime that is generated by variables (plus the toric ideal),
/// stored as its variable set and the monomial of the remaining variables.
struct PrimeWitness {
  std::string id;
  /// Sorted cells whose variables generate the prime.
  std::vector<Cell> variables;
  /// Indicator of the complement of `variables`; absent for the toric marker.
  std::optional<Table> witness_table;
  PrimeOrigin origin = PrimeOrigin::toric;
  std::optional<K2NIndex> k2n;

  bool is_toric() const noexcept { return origin == PrimeOrigin::toric; }
};

/// Builds a witness whose table is the indicator of all cells not in `variables`.
PrimeWitness make_prime_witness(std::string id, std::vector<Cell> variables, std::uint64_t total_cells,
                                PrimeOrigin origin);
PrimeWitness toric_marker();

/// Sorts by variable set and removes duplicates; the toric marker (if any) is kept last.
std::vector<PrimeWitness> dedup_primes(std::vector<PrimeWitness> primes);

}  // namespace fiberwalk
