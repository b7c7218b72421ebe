#pragma once

#include <optional>
#include <span>
#include <vector>

#include "luniform/values.hpp"

namespace luniform {

/// Row-style Hermite normal form basis of a sublattice of Z^d. Pivots are
/// positive and strictly move right; entries above a pivot lie in [0, pivot).
struct LatticeBasis {
  std::size_t dim = 0;
  std::vector<Exponent> basis;

  int rank() const { return static_cast<int>(basis.size()); }
  bool operator==(const LatticeBasis&) const = default;
};

LatticeBasis hnf(std::span<const Exponent> vectors, std::size_t dim);

/// Nonzero elementary divisors of an integer matrix, in divisibility order.
std::vector<Integer> snf(const std::vector<std::vector<Integer>>& matrix);

/// Coordinates of v in the HNF basis, or nullopt when v is not in the lattice.
std::optional<std::vector<Integer>> lattice_coordinates(const LatticeBasis& lattice, const Exponent& v);

bool lattice_contains(const LatticeBasis& lattice, const Exponent& v);

/// Saturation basis vectors (Q-span(inner) ∩ outer) that inner misses. Empty
/// iff outer / inner is torsion free. inner must be a sublattice of outer.
std::vector<Exponent> saturation_deficit(const LatticeBasis& inner, const LatticeBasis& outer);

/// Integer coefficients c with sum_i c_i gens_i = target, if any exist.
std::optional<std::vector<std::int64_t>> integer_combination(const Exponent& target,
                                                             std::span<const Exponent> gens);

/// integer_combination with the echelon form of gens computed once.
class CombinationSolver {
 public:
  CombinationSolver(std::span<const Exponent> gens, std::size_t dim);
  std::optional<std::vector<std::int64_t>> solve(const Exponent& target) const;

 private:
  std::size_t count_ = 0;
  std::vector<std::vector<Integer>> h_, u_;
  std::vector<std::size_t> pivots_;
  std::size_t rank_ = 0;
};

}  // namespace luniform
