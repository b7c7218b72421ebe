#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "luniform/lattice.hpp"
#include "luniform/values.hpp"

namespace luniform {

/// Localized monomial algebra k[x^g : g in S][x^-g : g inverted], localized at
/// the prime of all elements of lex-positive value under the attached
/// valuation.
///
/// Generators are kept sorted lexicographically, deduplicated, and free of
/// the zero vector. Every generator has lex-nonnegative value; inverted
/// generators have value zero. Generators of value zero lie outside the
/// maximal ideal and are units; together with the inverted ones they span the
/// unit lattice L. The monomial lattice N = group(S) stands for the fraction
/// field and is what regularity is measured against.
class RingModel {
 public:
  RingModel(int dim, std::vector<Exponent> gens, MonomialValuation val,
            std::vector<Exponent> inverted = {});

  int dim() const { return dim_; }
  const std::vector<Exponent>& generators() const { return gens_; }
  const MonomialValuation& valuation() const { return val_; }
  bool inverted(std::size_t i) const { return inverted_[i] != 0; }
  std::vector<Exponent> inverted_generators() const;

  /// Generators of lex-positive value (the ones generating m), lex order.
  const std::vector<Exponent>& positive_generators() const { return derived_->positive; }
  /// Generators of value zero or marked inverted.
  const std::vector<Exponent>& unit_generators() const { return derived_->units; }
  const LatticeBasis& unit_lattice() const { return derived_->unit_lattice; }
  const LatticeBasis& monomial_lattice() const { return derived_->monomial_lattice; }
  /// Minimal generators of m modulo units, computed once per ring.
  const std::vector<Exponent>& irreducible_generators() const;

  /// Same ring with extra (non-inverted) generators merged in.
  RingModel with_generators(std::span<const Exponent> extra) const;

  bool operator==(const RingModel& other) const {
    return dim_ == other.dim_ && gens_ == other.gens_ && inverted_ == other.inverted_ &&
           val_ == other.val_;
  }

 private:
  struct Derived {
    std::vector<Exponent> positive;
    std::vector<Exponent> units;
    LatticeBasis unit_lattice;
    LatticeBasis monomial_lattice;
    mutable std::once_flag irreducible_once;
    mutable std::vector<Exponent> irreducible;
  };

  int dim_;
  std::vector<Exponent> gens_;
  std::vector<char> inverted_;
  MonomialValuation val_;
  std::shared_ptr<const Derived> derived_;
};

/// a = sum_g c_g g + unit_part with c_g >= 0 and unit_part in the unit lattice.
struct MonomialExpression {
  Exponent target;
  std::vector<std::pair<Exponent, std::int64_t>> terms;
  Exponent unit_part;

  Exponent reconstruct() const;
  bool operator==(const MonomialExpression&) const = default;
};

/// Center of the level-j head valuation: generators whose first j value
/// coordinates are lex-positive.
struct PrimeDescriptor {
  int level = 0;
  std::vector<Exponent> members;
  bool operator==(const PrimeDescriptor&) const = default;
};

struct RegularityCertificate {
  std::vector<Exponent> parameters;
};

/// Search nodes a single membership query may visit before it throws
/// ErrorKind::out_of_range.
inline constexpr std::size_t kMembershipNodeLimit = 1'000'000;

/// Decides a in monoid(positives) + units by a level-stratified search: at
/// level k only generators whose value first becomes nonzero at k can absorb
/// the remaining level-k budget, and their coefficients are bounded by it.
std::optional<MonomialExpression> monomial_member_over(const Exponent& a,
                                                       std::span<const Exponent> positives,
                                                       const LatticeBasis& units,
                                                       const MonomialValuation& val);

std::optional<MonomialExpression> monomial_member(const Exponent& a, const RingModel& ring);

/// Exhaustive enumeration of coefficient tuples with total at most `bound`.
/// Test oracle for monomial_member; no value information is used.
std::optional<MonomialExpression> monomial_member_bruteforce(const Exponent& a, const RingModel& ring,
                                                             int bound);

/// Greedy removal, in descending lex order, of positives that lie in the
/// monoid of the others plus units. The generated monoid is unchanged.
std::vector<Exponent> irredundant_generators(std::span<const Exponent> positives, const LatticeBasis& units,
                                            const MonomialValuation& val);
std::vector<Exponent> minimal_generators(const RingModel& ring);
std::optional<RegularityCertificate> is_regular(const RingModel& ring);
int dimension(const RingModel& ring);

PrimeDescriptor center_of(const RingModel& ring, ConvexLevel level);
RingModel localize_at(const RingModel& ring, const PrimeDescriptor& prime);
RingModel residue_ring(const RingModel& ring, const PrimeDescriptor& prime);

/// Both directions of generator membership, units checked with inverses.
bool ring_equal(const RingModel& a, const RingModel& b);

/// Smallest j >= 1 such that some generator has a nonzero value within the
/// first j coordinates.
ConvexLevel split_level(const RingModel& ring);

/// Number of valuation rows that are not identically zero on the generators.
int active_levels(const RingModel& ring);

}  // namespace luniform
