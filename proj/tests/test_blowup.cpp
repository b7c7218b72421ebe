#include <doctest.h>

#include "luniform/blowup.hpp"

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
RingModel plane12() { return RingModel(2, {{1, 0}, {0, 1}}, weights({{1, 2}})); }

}  // namespace

TEST_CASE("A1 blown up along its maximal ideal") {
  auto step = blowup_along(a1(), {{2, 0}, {1, 1}, {0, 2}});
  CHECK(step.pivot == Exponent{0, 2});  // three-way tie, lex-smallest wins
  CHECK(step.adjoined == std::vector<Exponent>{{1, -1}, {2, -2}});
  CHECK(step.result->unit_lattice().basis == std::vector<Exponent>{{1, -1}});
  auto cert = is_regular(*step.result);
  REQUIRE(cert);
  CHECK(cert->parameters == std::vector<Exponent>{{0, 2}});
  CHECK(step.result->monomial_lattice() == a1().monomial_lattice());
}

TEST_CASE("blowup of the plane along (x, y) with unequal weights") {
  auto step = blowup_along(plane12(), {{1, 0}, {0, 1}});
  CHECK(step.pivot == Exponent{1, 0});
  CHECK(step.adjoined == std::vector<Exponent>{{-1, 1}});
  CHECK(minimal_generators(*step.result) == std::vector<Exponent>{{-1, 1}, {1, 0}});
  CHECK(is_regular(*step.result));
}

TEST_CASE("principal ideals and trivial ratios change nothing") {
  auto step = blowup_along(a1(), {{1, 1}});
  CHECK(step.adjoined.empty());
  CHECK(ring_equal(*step.result, a1()));
  auto same = simple_blowup(a1(), {1, 1}, {1, 1});
  CHECK(same.adjoined.empty());
  CHECK(decompose_to_simple(step).empty());
}

TEST_CASE("simple blowups check the value order and membership") {
  auto s = simple_blowup(plane12(), {0, 1}, {1, 0});
  CHECK(s.adjoined == std::vector<Exponent>{{-1, 1}});
  CHECK_THROWS_AS(simple_blowup(plane12(), {1, 0}, {0, 1}), Error);
  CHECK_THROWS_AS(blowup_along(a1(), {{1, 0}, {0, 2}}), Error);  // (1,0) is not in A1
  CHECK_THROWS_AS(blowup_along(a1(), {}), Error);
  CHECK_THROWS_AS(blowup_with_pivot(a1(), {{2, 0}, {1, 1}}, {0, 2}), Error);
}

TEST_CASE("pivot choice among tied minima does not matter") {
  auto left = blowup_with_pivot(a1(), {{2, 0}, {1, 1}, {0, 2}}, {0, 2});
  auto right = blowup_with_pivot(a1(), {{2, 0}, {1, 1}, {0, 2}}, {2, 0});
  CHECK(left.adjoined != right.adjoined);
  CHECK(ring_equal(*left.result, *right.result));
}

TEST_CASE("factoring into simple steps reproduces the one-shot blowup") {
  auto step = blowup_along(a1(), {{2, 0}, {1, 1}, {0, 2}});
  auto simple = decompose_to_simple(step);
  REQUIRE(simple.size() == 2);
  CHECK(ring_equal(*simple.back().result, *step.result));
  for (std::size_t i = 1; i < simple.size(); ++i) CHECK(*simple[i].source == *simple[i - 1].result);

  auto one = decompose_to_simple(blowup_along(plane12(), {{1, 0}, {0, 1}}));
  REQUIRE(one.size() == 1);
  CHECK(one[0].adjoined == std::vector<Exponent>{{-1, 1}});
}

TEST_CASE("redundant ideal members do not change the blowup") {
  auto base = blowup_along(a1(), {{2, 0}, {0, 2}});
  auto padded = blowup_along(a1(), {{2, 0}, {0, 2}, {2, 2}});
  CHECK(ring_equal(*base.result, *padded.result));
}
