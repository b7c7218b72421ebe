#include <doctest.h>

#include "luniform/rank_one.hpp"

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

RingModel a1() { return RingModel(2, {{2, 0}, {1, 1}, {0, 2}}, weights({{1, 1}})); }

// Independent regularity check: parameters plus a basis of L must be a basis
// of N, i.e. have the same HNF.
bool spans(const RankOneOutcome& out) {
  std::vector<Exponent> all = out.certificate->parameters;
  const auto& l = out.final.unit_lattice().basis;
  all.insert(all.end(), l.begin(), l.end());
  return static_cast<int>(all.size()) == out.final.monomial_lattice().rank() &&
         hnf(all, static_cast<std::size_t>(out.final.dim())) == out.final.monomial_lattice();
}

}  // namespace

TEST_CASE("A1 resolves in one full-ideal blowup") {
  auto out = uniformize_rank_one(a1(), Strategy{StrategyKind::full_ideal, 10});
  CHECK(out.status == Status::done);
  CHECK(out.steps.size() == 1);
  REQUIRE(out.certificate);
  CHECK(out.certificate->parameters == std::vector<Exponent>{{0, 2}});
  CHECK(spans(out));
}

TEST_CASE("A1 under pairmin takes at most two steps") {
  auto out = uniformize_rank_one(a1(), Strategy{StrategyKind::pair_min, 10});
  CHECK(out.status == Status::done);
  CHECK(out.steps.size() <= 2);
  CHECK(spans(out));
  for (const auto& g : out.final.positive_generators())
    CHECK(monomial_member_bruteforce(g, out.final, 10));
}

TEST_CASE("regular input needs no steps") {
  RingModel plane(2, {{1, 0}, {0, 1}}, weights({{1, 2}}));
  auto out = uniformize_rank_one(plane, Strategy{});
  CHECK(out.status == Status::done);
  CHECK(out.steps.empty());
}

TEST_CASE("fuel exhaustion is an outcome, not an error") {
  RingModel r(2, {{1, 6}, {2, 5}, {3, -1}, {5, 4}}, weights({{6, 4}}));
  auto out = uniformize_rank_one(r, Strategy{StrategyKind::pair_min, 2});
  CHECK(out.status == Status::fuel_exhausted);
  CHECK(out.steps.size() == 2);
  CHECK_FALSE(out.certificate);
  CHECK_THROWS_AS(FuelGauge(0), Error);
}

TEST_CASE("torsion in N/L is removed by adjoining the missing unit") {
  RingModel r(2, {{1, 0}, {0, 1}, {2, -2}}, weights({{1, 1}}));
  auto out = uniformize_rank_one(r, Strategy{StrategyKind::pair_min, 8});
  REQUIRE(out.status == Status::done);
  CHECK(out.steps.size() == 1);
  CHECK(lattice_contains(out.final.unit_lattice(), {1, -1}));
  CHECK(spans(out));
}

TEST_CASE("non-normal surface from a long chain resolves within fuel 64") {
  // Reaches L = Z(38,-57) = 19 Z(2,-3) halfway, so the saturation step is
  // exercised with large witnesses.
  RingModel r(2, {{1, 6}, {2, 5}, {3, -1}, {5, 4}}, weights({{6, 4}}));
  auto out = uniformize_rank_one(r, Strategy{StrategyKind::pair_min, 64});
  REQUIRE(out.status == Status::done);
  CHECK(spans(out));
}

TEST_CASE("targets become parameter monomials times units") {
  auto out = uniformize_rank_one(a1(), Strategy{StrategyKind::full_ideal, 10});
  auto exprs = monomialize_targets(out, {{2, 2}, {0, 2}, {0, 0}});
  REQUIRE(exprs.size() == 3);
  for (const auto& e : exprs) CHECK(e.reconstruct() == e.target);

  auto f = parameter_form({2, 2}, out.certificate->parameters, out.final);
  CHECK(f.gamma == std::vector<std::int64_t>{2});
  CHECK(f.unit == Exponent{2, -2});  // 2 (1,-1), a unit
  CHECK(parameter_form({0, 2}, out.certificate->parameters, out.final).gamma == std::vector<std::int64_t>{1});
  CHECK(parameter_form({0, 0}, out.certificate->parameters, out.final).gamma == std::vector<std::int64_t>{0});
}

TEST_CASE("divisibility chain for x^3 and y^2 on the plane with weights (1,2)") {
  RingModel plane(2, {{1, 0}, {0, 1}}, weights({{1, 2}}));
  Strategy s{StrategyKind::pair_min, 16};
  FuelGauge fuel(s.fuel);
  auto base = uniformize_rank_one(plane, s.kind, fuel);
  auto out = enforce_divisibility(base, {{3, 0}, {0, 2}}, fuel);
  REQUIRE(out.status == Status::done);
  CHECK(out.steps.size() == 2);
  CHECK(out.certificate->parameters == std::vector<Exponent>{{-1, 1}});
  auto f1 = parameter_form({3, 0}, out.certificate->parameters, out.final);
  auto f2 = parameter_form({0, 2}, out.certificate->parameters, out.final);
  CHECK(f1.gamma == std::vector<std::int64_t>{3});
  CHECK(f2.gamma == std::vector<std::int64_t>{4});
  // Hand identities: (3,0) = 3(-1,1) + 3(2,-1), (0,2) = 4(-1,1) + 2(2,-1).
  CHECK(f1.unit == Exponent{6, -3});
  CHECK(f2.unit == Exponent{4, -2});
  CHECK(chain_witnesses({f1, f2}) == std::vector<std::vector<std::int64_t>>{{1}});
}

TEST_CASE("chains that already divide need no blowups") {
  RingModel plane(2, {{1, 0}, {0, 1}}, weights({{1, 2}}));
  auto base = uniformize_rank_one(plane, Strategy{});
  CHECK(enforce_divisibility(base, {{1, 0}, {1, 0}}, Strategy{}).steps.empty());
  CHECK(enforce_divisibility(base, {{1, 0}, {2, 1}}, Strategy{}).steps.empty());
  CHECK_THROWS_AS(enforce_divisibility(base, {{0, 1}, {1, 0}}, Strategy{}), Error);
}

TEST_CASE("strategy names round-trip") {
  CHECK(parse_strategy(to_string(StrategyKind::pair_min)) == StrategyKind::pair_min);
  CHECK(parse_strategy("fullideal") == StrategyKind::full_ideal);
  CHECK_THROWS_AS(parse_strategy("greedy"), Error);
}
