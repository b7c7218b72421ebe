#include <doctest.h>

#include "luniform/lifting.hpp"

using namespace luniform;

namespace {

MonomialValuation weights(std::vector<std::vector<int>> rows) {
  std::vector<std::vector<Rational>> w;
  for (const auto& r : rows) {
    w.emplace_back();
    for (int x : r) w.back().emplace_back(x);
  }
  return MonomialValuation(std::move(w));
}

RingModel comp2() { return RingModel(2, {{2, 0}, {1, 1}, {0, 2}}, weights({{1, 0}, {0, 1}})); }

constexpr ConvexLevel head{1};

}  // namespace

TEST_CASE("lifting a simple R_p blowup of COMP2") {
  auto r = comp2();
  auto rec = lift_from_localization(r, head, {2, 0}, {1, 1});
  CHECK(rec.stage == LiftStage::localization);
  REQUIRE(!rec.steps.empty());
  CHECK(rec.steps.size() <= 2);
  const auto& after = *rec.steps.back().result;
  // Oracle: blow up R_p directly and compare the localizations.
  auto local = localize_at(r, center_of(r, head));
  auto direct = simple_blowup(local, {2, 0}, {1, 1});
  CHECK(ring_equal(localize_at(after, center_of(after, head)), *direct.result));
  CHECK_FALSE(check_localization_lift(r, after, head, {2, 0}, {1, 1}));
  for (const auto& s : rec.steps)
    for (const auto& g : s.result->generators()) CHECK(s.result->valuation().nonnegative(g));
}

TEST_CASE("trivial ratios lift to nothing") {
  CHECK(lift_from_localization(comp2(), head, {1, 1}, {1, 1}).steps.empty());
  CHECK(lift_from_residue(comp2(), head, {0, 2}, {0, 2}).steps.empty());
  CHECK(lift_sequence_from_localization(comp2(), head, {}).empty());
  CHECK(lift_sequence_from_residue(comp2(), head, {}).empty());
}

TEST_CASE("ratio with nonnegative full value needs no multiplier") {
  auto rec = lift_from_localization(comp2(), head, {2, 0}, {0, 2});
  CHECK(is_zero(rec.multiplier));
}

TEST_CASE("lifting a chain from R_p keeps the localizations in step") {
  auto r = comp2();
  auto local = localize_at(r, center_of(r, head));
  auto s1 = blowup_along(local, {{2, 0}, {1, 1}});
  std::vector<BlowupStep> chain = {s1};
  auto lifts = lift_sequence_from_localization(r, head, chain);
  REQUIRE(!lifts.empty());
  const auto& last = *lifts.back().steps.back().result;
  CHECK(ring_equal(localize_at(last, center_of(last, head)), *s1.result));
}

TEST_CASE("residue lift on a three-dimensional ring") {
  // p = (x); R/p = k[y, z] with weights (1, 2) on (y, z).
  RingModel r(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, weights({{1, 0, 0}, {0, 1, 2}}));
  auto rec = lift_from_residue(r, head, {0, 0, 1}, {0, 1, 0});
  REQUIRE(rec.steps.size() == 1);
  CHECK(rec.steps[0].adjoined == std::vector<Exponent>{{0, -1, 1}});
  const auto& after = *rec.steps[0].result;
  auto direct = simple_blowup(residue_ring(r, center_of(r, head)), {0, 0, 1}, {0, 1, 0});
  CHECK(ring_equal(residue_ring(after, center_of(after, head)), *direct.result));
  CHECK(ring_equal(localize_at(after, center_of(after, head)), localize_at(r, center_of(r, head))));
  CHECK_FALSE(check_residue_lift(r, after, head, {0, 0, 1}, {0, 1, 0}));
  CHECK_THROWS_AS(lift_from_residue(r, head, {1, 0, 0}, {0, 1, 0}), Error);
}

TEST_CASE("parameters of R_p taken inside p") {
  auto r = comp2();
  CHECK(parameters_in_p(r, center_of(r, head)) == std::vector<Exponent>{{1, 1}});
  RingModel plane(2, {{1, 0}, {0, 1}}, weights({{1, 1}}));
  CHECK(parameters_in_p(plane, center_of(plane, head)) == std::vector<Exponent>{{0, 1}, {1, 0}});
}

TEST_CASE("unit splitting over the head units") {
  RingModel r(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, weights({{1, 0, 0}, {0, 1, 2}}));
  CHECK(head_units(r, head) == std::vector<Exponent>{{0, 0, 1}, {0, 1, 0}});
  auto [plus, minus] = split_unit(r, head, {0, 2, -1});
  CHECK(sub(plus, minus) == Exponent{0, 2, -1});
  CHECK(plus == Exponent{0, 2, 0});
  CHECK(minus == Exponent{0, 0, 1});
}
