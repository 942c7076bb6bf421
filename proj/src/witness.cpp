#include "fiberwalk/witness.hpp"

#include <algorithm>
#include <tuple>

#include "fiberwalk/error.hpp"

namespace fiberwalk {

std::string to_string(PrimeOrigin origin) {
  switch (origin) {
    case PrimeOrigin::cycle: return "cycle";
    case PrimeOrigin::k2n: return "k2n";
    case PrimeOrigin::toric: return "toric";
    case PrimeOrigin::pyramid: return "pyramid";
  }
  return "unknown";
}

PrimeWitness make_prime_witness(std::string id, std::vector<Cell> variables, std::uint64_t total_cells,
                                PrimeOrigin origin) {
  std::sort(variables.begin(), variables.end());
  variables.erase(std::unique(variables.begin(), variables.end()), variables.end());
  if (!variables.empty() && variables.back() >= total_cells) {
    throw Error(ErrorKind::invalid_state, "prime variable outside the state space");
  }
  std::vector<Cell> rest;
  auto it = variables.begin();
  for (Cell c = 0; c < total_cells; ++c) {
    if (it != variables.end() && *it == c) {
      ++it;
      continue;
    }
    rest.push_back(c);
  }
  PrimeWitness w;
  w.id = std::move(id);
  w.variables = std::move(variables);
  w.witness_table = Table::from_cells(rest);
  w.origin = origin;
  return w;
}

PrimeWitness toric_marker() {
  PrimeWitness w;
  w.id = "toric";
  w.origin = PrimeOrigin::toric;
  return w;
}

std::vector<PrimeWitness> dedup_primes(std::vector<PrimeWitness> primes) {
  bool toric = false;
  std::erase_if(primes, [&](const PrimeWitness& w) {
    if (w.is_toric()) toric = true;
    return w.is_toric();
  });
  // Among equal variable sets the smallest id names the prime.
  std::sort(primes.begin(), primes.end(), [](const PrimeWitness& x, const PrimeWitness& y) {
    return std::tie(x.variables, x.id) < std::tie(y.variables, y.id);
  });
  primes.erase(std::unique(primes.begin(), primes.end(),
                           [](const PrimeWitness& x, const PrimeWitness& y) { return x.variables == y.variables; }),
               primes.end());
  if (toric) primes.push_back(toric_marker());
  return primes;
}

}  // namespace fiberwalk
