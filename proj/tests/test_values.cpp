#include <doctest.h>

#include <random>

#include "luniform/values.hpp"

using namespace luniform;

namespace {

ValueVector vv(std::initializer_list<int> xs) {
  ValueVector v;
  for (int x : xs) v.coords.emplace_back(x);
  return v;
}

MonomialValuation weights(std::vector<std::vector<std::string>> rows) {
  std::vector<std::vector<Rational>> w;
  for (const auto& r : rows) {
    w.emplace_back();
    for (const auto& s : r) w.back().push_back(parse_rational(s));
  }
  return MonomialValuation(std::move(w));
}

}  // namespace

TEST_CASE("lex order decides on the first differing coordinate") {
  CHECK(lex_cmp(vv({1, 0}), vv({0, 5})) == std::strong_ordering::greater);
  CHECK(lex_cmp(vv({0, 2}), vv({0, 2})) == std::strong_ordering::equal);
  CHECK(lex_cmp(vv({1, -1}), vv({0, 100})) == std::strong_ordering::greater);
  CHECK_THROWS_AS(lex_cmp(vv({1}), vv({1, 2})), Error);
}

TEST_CASE("lex order is compatible with addition") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int i = 0; i < 200; ++i) {
    ValueVector v, w, u;
    for (int k = 0; k < 3; ++k) {
      v.coords.emplace_back(d(rng), 1 + (d(rng) + 4) % 3);
      w.coords.emplace_back(d(rng), 1 + (d(rng) + 4) % 3);
      u.coords.emplace_back(d(rng), 1 + (d(rng) + 4) % 3);
    }
    CHECK(lex_cmp(v, w) == lex_cmp(v + u, w + u));
  }
}

TEST_CASE("evaluate is the exact product W a") {
  CHECK(weights({{"1", "1"}}).evaluate({2, 0}) == vv({2}));
  CHECK(weights({{"1", "0"}, {"0", "1"}}).evaluate({1, 1}) == vv({1, 1}));
  CHECK(weights({{"1", "2"}}).evaluate({-1, 1}) == vv({1}));
  auto half = weights({{"1/2", "-2/3"}}).evaluate({1, 3});
  CHECK(half.coords[0] == Rational(-3, 2));
  CHECK_THROWS_AS(weights({{"1", "1"}}).evaluate({1, 1, 1}), Error);
}

TEST_CASE("scaled rows keep signs and order") {
  auto val = weights({{"1/2", "-1/3"}, {"2", "1"}});
  for (const Exponent& a : {Exponent{2, 3}, Exponent{1, 0}, Exponent{0, -3}, Exponent{-2, 5}}) {
    auto s = val.scaled(a);
    auto e = val.evaluate(a);
    for (std::size_t k = 0; k < s.size(); ++k) CHECK((s[k] > 0) == (e.coords[k] > 0));
  }
  CHECK(val.compare({2, 3}, {1, 0}) == std::strong_ordering::less);
  CHECK(val.positive({1, 0}));
  CHECK(val.zero({2, 3}) == false);
}

TEST_CASE("rationals parse reduced and print canonically") {
  CHECK(parse_rational("4/6") == Rational(2, 3));
  CHECK(format_rational(Rational(-4, 2)) == "-2");
  CHECK(format_rational(Rational(3, 9)) == "1/3");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("project and residual split a value at a level") {
  CHECK(project(vv({3, 5}), ConvexLevel{1}) == vv({3}));
  CHECK(project(vv({0, 7}), ConvexLevel{1}) == vv({0}));
  CHECK(project(vv({1, 2}), ConvexLevel{2}) == vv({1, 2}));
  CHECK(residual(vv({0, 4}), ConvexLevel{1}) == vv({4}));
  CHECK(residual(vv({0, 0}), ConvexLevel{1}) == vv({0}));
  CHECK_THROWS_AS(residual(vv({2, 1}), ConvexLevel{1}), Error);
}

TEST_CASE("decompose splits rows and round-trips values") {
  auto val = weights({{"1", "1"}, {"0", "1"}});
  auto [head, tail] = decompose(val, ConvexLevel{1});
  CHECK(head.rows() == weights({{"1", "1"}}).rows());
  CHECK(tail.rows() == weights({{"0", "1"}}).rows());
  for (const Exponent& a : {Exponent{2, -1}, Exponent{0, 3}}) {
    auto joined = head.evaluate(a);
    for (const auto& c : tail.evaluate(a).coords) joined.coords.push_back(c);
    CHECK(joined == val.evaluate(a));
  }
  CHECK_THROWS_AS(decompose(weights({{"1", "1"}}), ConvexLevel{1}), Error);
}

TEST_CASE("min_multiple finds the least shift into the nonnegative cone") {
  std::vector<std::int64_t> v = {-3}, w = {1};
  CHECK(min_multiple(v, w, false) == 3);
  CHECK(min_multiple(v, w, true) == 4);
  std::vector<std::int64_t> v2 = {0, -5}, w2 = {0, 2};
  CHECK(min_multiple(v2, w2, false) == 3);
  std::vector<std::int64_t> v3 = {1, -5}, w3 = {0, 2};
  CHECK(min_multiple(v3, w3, false) == 0);
}
