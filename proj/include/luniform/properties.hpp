#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "luniform/trace_io.hpp"

namespace luniform {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  int skipped = 0;  // cases outside the property's precondition
  std::string first_failure;
  double seconds = 0;

  bool ok() const { return cases > 0 && failures == 0; }
};

struct RandomShape {
  int max_dim = 4;
  int max_levels = 3;
  int max_gens = 6;
  int max_entry = 5;
  int max_weight = 3;
};

RingModel random_ring(std::mt19937_64& rng, const RandomShape& shape);

/// Random instance small enough for the full reduction; targets are ring
/// members (sorted by value in embedded mode).
Instance random_instance(std::mt19937_64& rng, int index);

PropertyResult prop_decompose(int cases, std::uint64_t seed);
PropertyResult prop_pivot_tie(int cases, std::uint64_t seed);
PropertyResult prop_lifting(int cases, std::uint64_t seed);
PropertyResult prop_membership(int queries, std::uint64_t seed, int bound = 10);
PropertyResult prop_rank_one_d2(int cases, std::uint64_t seed, int fuel = 64);
PropertyResult prop_reduction(int cases, std::uint64_t seed);
PropertyResult prop_mutation(int mutations, std::uint64_t seed);

/// One text line per property, "PASS"/"FAIL" first.
std::string format_result(const PropertyResult& r);

}  // namespace luniform
