#pragma once

#include <string>
#include <vector>

#include "luniform/blowup.hpp"

namespace luniform {

enum class LiftStage { localization, residue };

/// Simple step a/b taken on R_p or R/p, and the steps on R that realize it.
///
/// For localization lifts the first produced step blows up along
/// (t, a+s+t, b+s+t) with pivot t, the second adjoins a-b (or b-a when
/// nu(a+s) < nu(b+s)). s is a nu_1-unit making both a+s and b+s of
/// nonnegative value; t clears the nu_1-unit denominators of a+s and b+s.
struct LiftRecord {
  LiftStage stage = LiftStage::localization;
  int level = 0;
  Exponent numerator;    // a
  Exponent denominator;  // b
  Exponent multiplier;   // s, zero when not needed
  Exponent clearing;     // t, zero when not needed
  std::vector<BlowupStep> steps;
};

std::string to_string(LiftStage stage);

LiftRecord lift_from_localization(const RingModel& ring, ConvexLevel level, const Exponent& a,
                                  const Exponent& b);

/// Lifts a chain of steps on localize_at(ring) (each step's source being the
/// previous result). Every lift is checked against the chain.
std::vector<LiftRecord> lift_sequence_from_localization(const RingModel& ring, ConvexLevel level,
                                                        const std::vector<BlowupStep>& chain);

LiftRecord lift_from_residue(const RingModel& ring, ConvexLevel level, const Exponent& a, const Exponent& b);

std::vector<LiftRecord> lift_sequence_from_residue(const RingModel& ring, ConvexLevel level,
                                                   const std::vector<BlowupStep>& chain);

/// Regular parameters of R_p, each moved into R by adding the negative part
/// of its nu_1-unit factor.
std::vector<Exponent> parameters_in_p(const RingModel& ring, const PrimeDescriptor& prime);

/// Splits a nu_1-unit exponent over the nu_1-unit generators of R into
/// (positive part, negative part), both nonnegative combinations.
std::pair<Exponent, Exponent> split_unit(const RingModel& ring, ConvexLevel level, const Exponent& unit);

/// Generators of R whose value vanishes on the first j rows.
std::vector<Exponent> head_units(const RingModel& ring, ConvexLevel level);

bool head_unit(const MonomialValuation& val, ConvexLevel level, const Exponent& a);

/// Checks of the lifting invariants; each returns an explanation on failure.
std::optional<std::string> check_localization_lift(const RingModel& before, const RingModel& after,
                                                   ConvexLevel level, const Exponent& a, const Exponent& b);
std::optional<std::string> check_residue_lift(const RingModel& before, const RingModel& after,
                                              ConvexLevel level, const Exponent& a, const Exponent& b);

}  // namespace luniform
