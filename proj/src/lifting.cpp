#include "luniform/lifting.hpp"

#include <algorithm>

namespace luniform {

namespace {

std::vector<std::int64_t> head_scaled(const MonomialValuation& val, ConvexLevel level, const Exponent& a) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(level.j));
  for (int k = 0; k < level.j; ++k) v[k] = val.scaled_row(k, a);
  return v;
}

int head_compare(const MonomialValuation& val, ConvexLevel level, const Exponent& a, const Exponent& b) {
  auto x = head_scaled(val, level, a), y = head_scaled(val, level, b);
  return x < y ? -1 : (x > y ? 1 : 0);
}

RingModel localized(const RingModel& ring, ConvexLevel level) {
  return localize_at(ring, center_of(ring, level));
}

void require(const std::optional<std::string>& failure) {
  if (failure) throw Error(ErrorKind::lift_obstruction, "lift invariant violated: " + *failure);
}

// (a, b) of a simple step: pivot b, the other ideal member a.
std::pair<Exponent, Exponent> ratio_of(const BlowupStep& step) {
  for (const auto& u : step.ideal)
    if (u != step.pivot) return {u, step.pivot};
  return {step.pivot, step.pivot};
}

}  // namespace

std::string to_string(LiftStage stage) { return stage == LiftStage::localization ? "localization" : "residue"; }

bool head_unit(const MonomialValuation& val, ConvexLevel level, const Exponent& a) {
  for (int k = 0; k < level.j; ++k)
    if (val.scaled_row(k, a) != 0) return false;
  return true;
}

std::vector<Exponent> head_units(const RingModel& ring, ConvexLevel level) {
  std::vector<Exponent> out;
  for (const auto& g : ring.generators())
    if (head_unit(ring.valuation(), level, g)) out.push_back(g);
  return out;
}

std::pair<Exponent, Exponent> split_unit(const RingModel& ring, ConvexLevel level, const Exponent& unit) {
  auto gens = head_units(ring, level);
  auto c = integer_combination(unit, gens);
  if (!c) throw Error(ErrorKind::not_member, to_string(unit) + " is not a product of head units");
  Exponent plus = zero_exponent(unit.size()), minus = zero_exponent(unit.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if ((*c)[i] > 0) plus = add(plus, scale(gens[i], (*c)[i]));
    if ((*c)[i] < 0) minus = add(minus, scale(gens[i], -(*c)[i]));
  }
  return {plus, minus};
}

std::optional<std::string> check_localization_lift(const RingModel& before, const RingModel& after,
                                                   ConvexLevel level, const Exponent& a, const Exponent& b) {
  auto direct = simple_blowup(localized(before, level), a, b);
  if (!ring_equal(localized(after, level), *direct.result))
    return "localization of the lifted ring differs from the direct blowup of R_p";
  return std::nullopt;
}

std::optional<std::string> check_residue_lift(const RingModel& before, const RingModel& after,
                                              ConvexLevel level, const Exponent& a, const Exponent& b) {
  auto rb = residue_ring(before, center_of(before, level));
  auto ra = residue_ring(after, center_of(after, level));
  auto direct = simple_blowup(rb, a, b);
  if (!ring_equal(ra, *direct.result)) return "residue ring of the lift differs from the direct blowup of R/p";
  if (!ring_equal(localized(after, level), localized(before, level))) return "lift changed R_p";
  return std::nullopt;
}

LiftRecord lift_from_localization(const RingModel& ring, ConvexLevel level, const Exponent& a,
                                  const Exponent& b) {
  const auto& val = ring.valuation();
  const auto local = localized(ring, level);
  if (head_compare(val, level, b, a) > 0)
    throw Error(ErrorKind::pivot_not_minimal, "localization lift needs nu_1(b) <= nu_1(a)");
  auto ea = monomial_member(a, local);
  auto eb = monomial_member(b, local);
  if (!ea || !eb) throw Error(ErrorKind::not_member, "ratio members are not monomials of R_p");

  LiftRecord rec;
  rec.stage = LiftStage::localization;
  rec.level = level.j;
  rec.numerator = a;
  rec.denominator = b;
  rec.multiplier = zero_exponent(a.size());
  rec.clearing = zero_exponent(a.size());
  if (a == b) return rec;

  if (!val.nonnegative(a) || !val.nonnegative(b)) {
    bool found = false;
    auto va = val.scaled(a), vb = val.scaled(b);
    for (const auto& x : head_units(ring, level)) {
      if (!val.positive(x)) continue;
      auto vx = val.scaled(x);
      auto ka = min_multiple(va, vx, false), kb = min_multiple(vb, vx, false);
      if (ka < 0 || kb < 0) continue;
      rec.multiplier = scale(x, std::max(ka, kb));
      found = true;
      break;
    }
    if (!found)
      throw Error(ErrorKind::lift_obstruction, "lift obstruction: no head unit moves " + to_string(a) + " and " +
                                                   to_string(b) + " to nonnegative value");
  }
  const Exponent as = add(a, rec.multiplier), bs = add(b, rec.multiplier);
  for (const auto& e : {as, bs}) {
    auto m = monomial_member(e, local);
    rec.clearing = add(rec.clearing, split_unit(ring, level, m->unit_part).second);
  }
  const Exponent& t = rec.clearing;

  rec.steps.push_back(blowup_with_pivot(ring, {t, add(as, t), add(bs, t)}, t));
  const auto& r1 = *rec.steps.back().result;
  if (val.compare(bs, as) <= 0)
    rec.steps.push_back(simple_blowup(r1, as, bs));
  else
    rec.steps.push_back(simple_blowup(r1, bs, as));
  require(check_localization_lift(ring, *rec.steps.back().result, level, a, b));
  return rec;
}

std::vector<LiftRecord> lift_sequence_from_localization(const RingModel& ring, ConvexLevel level,
                                                        const std::vector<BlowupStep>& chain) {
  std::vector<LiftRecord> out;
  RingModel cur = ring;
  if (!chain.empty() && !ring_equal(localized(cur, level), *chain.front().source))
    throw Error(ErrorKind::malformed, "chain does not start at R_p");
  for (const auto& step : chain) {
    for (const auto& simple : decompose_to_simple(step)) {
      auto [a, b] = ratio_of(simple);
      out.push_back(lift_from_localization(cur, level, a, b));
      if (!out.back().steps.empty()) cur = *out.back().steps.back().result;
    }
    if (!ring_equal(localized(cur, level), *step.result))
      throw Error(ErrorKind::lift_obstruction, "lifted chain drifted from the R_p chain");
  }
  return out;
}

LiftRecord lift_from_residue(const RingModel& ring, ConvexLevel level, const Exponent& a, const Exponent& b) {
  const auto& val = ring.valuation();
  if (!head_unit(val, level, a) || !head_unit(val, level, b))
    throw Error(ErrorKind::not_a_unit, "representative not a nu_1-unit");
  LiftRecord rec;
  rec.stage = LiftStage::residue;
  rec.level = level.j;
  rec.numerator = a;
  rec.denominator = b;
  rec.multiplier = zero_exponent(a.size());
  rec.clearing = zero_exponent(a.size());
  if (a == b) return rec;
  rec.steps.push_back(simple_blowup(ring, a, b));
  require(check_residue_lift(ring, *rec.steps.back().result, level, a, b));
  return rec;
}

std::vector<LiftRecord> lift_sequence_from_residue(const RingModel& ring, ConvexLevel level,
                                                   const std::vector<BlowupStep>& chain) {
  std::vector<LiftRecord> out;
  RingModel cur = ring;
  for (const auto& step : chain) {
    for (const auto& simple : decompose_to_simple(step)) {
      auto [a, b] = ratio_of(simple);
      out.push_back(lift_from_residue(cur, level, a, b));
      if (!out.back().steps.empty()) cur = *out.back().steps.back().result;
    }
    if (!ring_equal(residue_ring(cur, center_of(cur, level)), *step.result))
      throw Error(ErrorKind::lift_obstruction, "lifted chain drifted from the R/p chain");
  }
  return out;
}

std::vector<Exponent> parameters_in_p(const RingModel& ring, const PrimeDescriptor& prime) {
  const auto local = localize_at(ring, prime);
  auto cert = is_regular(local);
  if (!cert) throw Error(ErrorKind::not_regular, "R_p is not regular");
  const ConvexLevel level{prime.level};
  std::vector<Exponent> out;
  for (const auto& y : cert->parameters) {
    auto e = monomial_member(y, local);
    out.push_back(add(y, split_unit(ring, level, e->unit_part).second));
  }
  return out;
}

}  // namespace luniform
