#include <doctest.h>

#include "luniform/ring_model.hpp"

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
RingModel comp2() { return RingModel(2, {{2, 0}, {1, 1}, {0, 2}}, weights({{1, 0}, {0, 1}})); }

// 2x2 determinant, enough to decide whether two vectors are a basis of Z^2
// or of a given index-2 lattice.
std::int64_t det2(const Exponent& u, const Exponent& v) { return u[0] * v[1] - u[1] * v[0]; }

}  // namespace

TEST_CASE("hnf and snf on small lattices") {
  std::vector<Exponent> even = {{2, 0}, {1, 1}, {0, 2}};
  auto h = hnf(even, 2);
  CHECK(h.rank() == 2);
  CHECK(h.basis == std::vector<Exponent>{{1, 1}, {0, 2}});
  CHECK(snf({{2}}) == std::vector<Integer>{2});
  CHECK(snf({{1, 0}, {0, 1}}) == std::vector<Integer>{1, 1});
  CHECK(snf({{2, 4}, {6, 8}}) == std::vector<Integer>{2, 4});
  CHECK(lattice_contains(h, {3, 1}));
  CHECK_FALSE(lattice_contains(h, {1, 0}));
}

TEST_CASE("integer combinations reconstruct their target") {
  std::vector<Exponent> gens = {{2, 0}, {1, 1}, {0, 2}};
  auto c = integer_combination({3, 5}, gens);
  REQUIRE(c);
  Exponent back(2, 0);
  for (std::size_t i = 0; i < gens.size(); ++i) back = add(back, scale(gens[i], (*c)[i]));
  CHECK(back == Exponent{3, 5});
  CHECK_FALSE(integer_combination({1, 0}, gens));
}

TEST_CASE("saturation deficit detects torsion in the quotient") {
  auto z2 = hnf(std::vector<Exponent>{{1, 0}, {0, 1}}, 2);
  auto doubled = hnf(std::vector<Exponent>{{2, -2}}, 2);
  auto missing = saturation_deficit(doubled, z2);
  REQUIRE(missing.size() == 1);
  // The missing class is +-(1,-1).
  CHECK((missing[0] == Exponent{1, -1} || missing[0] == Exponent{-1, 1}));
  CHECK(saturation_deficit(hnf(std::vector<Exponent>{{1, -1}}, 2), z2).empty());
  CHECK(saturation_deficit(LatticeBasis{2, {}}, z2).empty());
}

TEST_CASE("ring model normalizes and rejects uncentered generators") {
  RingModel r(2, {{0, 2}, {2, 0}, {0, 2}, {0, 0}, {1, 1}}, weights({{1, 1}}));
  CHECK(r.generators() == std::vector<Exponent>{{0, 2}, {1, 1}, {2, 0}});
  CHECK_THROWS_AS(RingModel(2, {{-1, 0}}, weights({{1, 1}})), Error);
  CHECK_THROWS_AS(RingModel(2, {{1, 0}}, weights({{1, 1}}), {{1, 0}}), Error);  // inverted needs value 0
}

TEST_CASE("membership examples") {
  RingModel squares(2, {{2, 0}, {0, 2}}, weights({{1, 1}}));
  CHECK_FALSE(monomial_member({1, 1}, squares));
  CHECK_FALSE(monomial_member_bruteforce({1, 1}, squares, 8));

  auto e = monomial_member({2, 2}, a1());
  REQUIRE(e);
  CHECK(e->reconstruct() == Exponent{2, 2});
  CHECK(monomial_member_bruteforce({2, 2}, a1(), 8));

  RingModel emb_after(2, {{1, 0}, {0, 1}, {-1, 1}}, weights({{1, 2}}));
  auto f = monomial_member({3, 0}, emb_after);
  REQUIRE(f);
  CHECK(f->reconstruct() == Exponent{3, 0});
  CHECK(monomial_member_bruteforce({3, 0}, emb_after, 8));

  auto zero = monomial_member({0, 0}, a1());
  REQUIRE(zero);
  CHECK(zero->terms.empty());
  CHECK_FALSE(monomial_member_bruteforce({2, 0}, a1(), 0));
}

TEST_CASE("membership uses the units") {
  RingModel r(2, {{1, 0}, {1, -1}}, weights({{1, 1}}), {{1, -1}});
  auto e = monomial_member({0, 1}, r);  // (1,0) - (1,-1)
  REQUIRE(e);
  CHECK(e->reconstruct() == Exponent{0, 1});
  CHECK(lattice_contains(r.unit_lattice(), e->unit_part));
  CHECK_FALSE(monomial_member({-1, -1}, r));
}

TEST_CASE("minimal generators") {
  CHECK(minimal_generators(a1()) == std::vector<Exponent>{{0, 2}, {1, 1}, {2, 0}});
  RingModel r(2, {{1, 0}, {0, 1}, {1, 1}}, weights({{1, 2}}));
  CHECK(minimal_generators(r) == std::vector<Exponent>{{0, 1}, {1, 0}});
  RingModel blown(2, {{2, 0}, {1, 1}, {0, 2}, {2, -2}, {1, -1}}, weights({{1, 1}}));
  CHECK(minimal_generators(blown) == std::vector<Exponent>{{0, 2}});
  // Generators differing by a unit: only the lex-smaller one survives.
  RingModel twins(2, {{1, 0}, {2, -1}, {1, -1}}, weights({{1, 1}}));
  CHECK(minimal_generators(twins) == std::vector<Exponent>{{1, 0}});
}

TEST_CASE("regularity and dimension") {
  CHECK_FALSE(is_regular(a1()));
  CHECK(dimension(a1()) == 2);

  RingModel plane(2, {{1, 0}, {0, 1}}, weights({{1, 2}}));
  auto p = is_regular(plane);
  REQUIRE(p);
  CHECK(p->parameters == std::vector<Exponent>{{0, 1}, {1, 0}});
  CHECK(dimension(plane) == 2);

  RingModel blown(2, {{2, 0}, {1, 1}, {0, 2}, {2, -2}, {1, -1}}, weights({{1, 1}}));
  auto b = is_regular(blown);
  REQUIRE(b);
  CHECK(b->parameters == std::vector<Exponent>{{0, 2}});
  CHECK(dimension(blown) == 1);
  // Oracle: N = even-sum lattice, L = Z(1,-1); (0,2) and (1,-1) form a basis
  // of N exactly when their determinant is +-2 (the index of N in Z^2).
  CHECK(std::abs(det2({0, 2}, {1, -1})) == 2);
}

TEST_CASE("torsion in N/L blocks regularity") {
  // N = Z^2, L = Z(2,-2): two minimal generators for a one-dimensional ring.
  RingModel r(2, {{1, 0}, {0, 1}, {2, -2}}, weights({{1, 1}}));
  CHECK(dimension(r) == 1);
  CHECK_FALSE(is_regular(r));
}

TEST_CASE("centers, localization and residue ring of COMP2") {
  auto r = comp2();
  auto p1 = center_of(r, ConvexLevel{1});
  CHECK(p1.members == std::vector<Exponent>{{1, 1}, {2, 0}});
  CHECK(center_of(r, ConvexLevel{2}).members.size() == 3);
  CHECK(center_of(a1(), ConvexLevel{1}).members.size() == 3);

  auto local = localize_at(r, p1);
  CHECK(local.inverted_generators() == std::vector<Exponent>{{0, 2}});
  CHECK(local.valuation().levels() == 1);
  auto lp = is_regular(local);
  REQUIRE(lp);
  CHECK(lp->parameters == std::vector<Exponent>{{1, 1}});

  auto residue = residue_ring(r, p1);
  CHECK(residue.generators() == std::vector<Exponent>{{0, 2}});
  CHECK(residue.valuation().scaled({0, 2}) == std::vector<std::int64_t>{2});

  CHECK(residue_ring(a1(), center_of(a1(), ConvexLevel{1})).generators().empty());
  CHECK(localize_at(a1(), center_of(a1(), ConvexLevel{1})).inverted_generators().empty());

  RingModel s(2, {{1, 0}, {0, 1}, {-1, 1}}, weights({{1, 1}, {0, 1}}));
  CHECK(residue_ring(s, center_of(s, ConvexLevel{1})).generators() == std::vector<Exponent>{{-1, 1}});
}

TEST_CASE("split level skips rows that vanish on the ring") {
  CHECK(split_level(a1()).j == 1);
  CHECK(split_level(comp2()).j == 1);
  RingModel late(2, {{2, 0}, {1, 1}, {0, 2}}, weights({{0, 0}, {1, 1}}));
  CHECK(split_level(late).j == 2);
  CHECK(active_levels(late) == 1);
  CHECK(active_levels(comp2()) == 2);
}

TEST_CASE("ring equality") {
  CHECK(ring_equal(a1(), a1()));
  RingModel squares(2, {{2, 0}, {0, 2}}, weights({{1, 1}}));
  RingModel plane(2, {{1, 0}, {0, 1}}, weights({{1, 1}}));
  CHECK_FALSE(ring_equal(squares, plane));
  // Same ring presented with a redundant generator.
  RingModel padded(2, {{2, 0}, {1, 1}, {0, 2}, {3, 1}}, weights({{1, 1}}));
  CHECK(ring_equal(a1(), padded));
}
