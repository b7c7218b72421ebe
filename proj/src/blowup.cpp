#include "luniform/blowup.hpp"

#include <algorithm>

namespace luniform {

namespace {

std::vector<Exponent> normalized_ideal(const RingModel& ring, std::vector<Exponent> ideal) {
  if (ideal.empty()) throw Error(ErrorKind::malformed, "blowup along the empty ideal");
  std::sort(ideal.begin(), ideal.end());
  ideal.erase(std::unique(ideal.begin(), ideal.end()), ideal.end());
  for (const auto& u : ideal)
    if (!monomial_member(u, ring))
      throw Error(ErrorKind::not_member, "ideal generator " + to_string(u) + " is not in the ring");
  return ideal;
}

BlowupStep finish(const RingModel& ring, std::vector<Exponent> ideal, Exponent pivot) {
  BlowupStep step;
  step.adjoined = adjoined_differences(ideal, pivot);
  step.ideal = std::move(ideal);
  step.pivot = std::move(pivot);
  step.source = std::make_shared<const RingModel>(ring);
  step.result = std::make_shared<const RingModel>(ring.with_generators(step.adjoined));
  return step;
}

}  // namespace

std::vector<Exponent> adjoined_differences(std::span<const Exponent> ideal, const Exponent& pivot) {
  std::vector<Exponent> out;
  for (const auto& u : ideal) {
    auto d = sub(u, pivot);
    if (!is_zero(d)) out.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BlowupStep blowup_along(const RingModel& ring, std::vector<Exponent> ideal) {
  ideal = normalized_ideal(ring, std::move(ideal));
  const auto& val = ring.valuation();
  // Sorted lex, so the first minimum found is the lex-smallest one.
  std::size_t best = 0;
  for (std::size_t i = 1; i < ideal.size(); ++i)
    if (val.compare(ideal[i], ideal[best]) < 0) best = i;
  Exponent pivot = ideal[best];
  return finish(ring, std::move(ideal), std::move(pivot));
}

BlowupStep blowup_with_pivot(const RingModel& ring, std::vector<Exponent> ideal, const Exponent& pivot) {
  ideal = normalized_ideal(ring, std::move(ideal));
  if (!std::binary_search(ideal.begin(), ideal.end(), pivot))
    throw Error(ErrorKind::malformed, "pivot " + to_string(pivot) + " is not an ideal generator");
  for (const auto& u : ideal)
    if (ring.valuation().compare(u, pivot) < 0)
      throw Error(ErrorKind::pivot_not_minimal,
                  "pivot not minimal: " + to_string(u) + " has smaller value than " + to_string(pivot));
  return finish(ring, std::move(ideal), pivot);
}

BlowupStep simple_blowup(const RingModel& ring, const Exponent& a, const Exponent& b) {
  if (ring.valuation().compare(b, a) > 0)
    throw Error(ErrorKind::pivot_not_minimal,
                "pivot not minimal: value of " + to_string(b) + " exceeds value of " + to_string(a));
  return blowup_with_pivot(ring, {b, a}, b);
}

std::vector<BlowupStep> decompose_to_simple(const BlowupStep& step) {
  std::vector<BlowupStep> out;
  std::shared_ptr<const RingModel> cur = step.source;
  for (const auto& u : step.ideal) {
    if (u == step.pivot) continue;
    out.push_back(simple_blowup(*cur, u, step.pivot));
    cur = out.back().result;
  }
  return out;
}

}  // namespace luniform
