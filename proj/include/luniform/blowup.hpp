#pragma once

#include <memory>
#include <vector>

#include "luniform/ring_model.hpp"

namespace luniform {

/// One local blowing up R -> R[u_i - u_0 : i]_m' along the monomial ideal
/// (u_0, ..., u_q), where u_0 = pivot has minimal value in the ideal.
struct BlowupStep {
  std::vector<Exponent> ideal;     // sorted, deduplicated
  Exponent pivot;
  std::vector<Exponent> adjoined;  // u_i - pivot, sorted, zero dropped
  std::shared_ptr<const RingModel> source;
  std::shared_ptr<const RingModel> result;
};

/// Pivot: minimal value, ties to the lex-smallest exponent.
BlowupStep blowup_along(const RingModel& ring, std::vector<Exponent> ideal);

/// Same with a caller-chosen pivot, which must belong to the ideal and have
/// minimal value there.
BlowupStep blowup_with_pivot(const RingModel& ring, std::vector<Exponent> ideal, const Exponent& pivot);

/// R[a - b], requiring nu(b) <= nu(a).
BlowupStep simple_blowup(const RingModel& ring, const Exponent& a, const Exponent& b);

/// One simple step per non-pivot ideal member, each adjoining u_i - pivot on
/// the running ring.
std::vector<BlowupStep> decompose_to_simple(const BlowupStep& step);

/// Differences u - pivot for u in the ideal, normalized as in BlowupStep.
std::vector<Exponent> adjoined_differences(std::span<const Exponent> ideal, const Exponent& pivot);

}  // namespace luniform
