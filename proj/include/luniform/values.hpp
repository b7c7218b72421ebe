#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace luniform {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exponent vector a in Z^d, standing for the Laurent monomial x^a.
using Exponent = std::vector<std::int64_t>;

enum class ErrorKind {
  dimension,
  not_a_unit,
  out_of_range,
  trivial_valuation,
  not_member,
  pivot_not_minimal,
  lift_obstruction,
  not_regular,
  malformed,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Exponent arithmetic. Length mismatches throw ErrorKind::dimension.
Exponent add(const Exponent& a, const Exponent& b);
Exponent sub(const Exponent& a, const Exponent& b);
Exponent scale(const Exponent& a, std::int64_t k);
Exponent zero_exponent(std::size_t d);
bool is_zero(const Exponent& a);
std::string to_string(const Exponent& a);

Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

/// An element of Q^n under the lexicographic order.
struct ValueVector {
  std::vector<Rational> coords;

  std::size_t size() const { return coords.size(); }
  bool operator==(const ValueVector&) const = default;
};

/// Lexicographic comparison; the first differing coordinate decides.
std::strong_ordering lex_cmp(const ValueVector& v, const ValueVector& w);

ValueVector operator+(const ValueVector& v, const ValueVector& w);
ValueVector operator-(const ValueVector& v, const ValueVector& w);
ValueVector operator*(std::int64_t k, const ValueVector& v);

bool is_zero(const ValueVector& v);
bool is_lex_positive(const ValueVector& v);
bool is_lex_nonnegative(const ValueVector& v);
std::string to_string(const ValueVector& v);

/// Convex subgroup Delta_j = {v : v_1 = ... = v_j = 0} of Q^n, 0 <= j <= n.
struct ConvexLevel {
  int j = 0;
};

/// Monomial valuation nu(x^a) = W a with values in Q^n (lex).
///
/// Each row of W is additionally kept scaled to integers by the lcm of its
/// denominators. Scaling a row by a positive constant preserves the lex
/// order, so the integer rows are used wherever only signs and comparisons
/// matter.
class MonomialValuation {
 public:
  MonomialValuation() = default;
  explicit MonomialValuation(std::vector<std::vector<Rational>> rows);

  int levels() const { return static_cast<int>(rows_.size()); }
  int dim() const { return dim_; }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }

  ValueVector evaluate(const Exponent& a) const;
  /// Row-scaled integer value of a; same lex order as evaluate().
  std::vector<std::int64_t> scaled(const Exponent& a) const;
  std::int64_t scaled_row(int level, const Exponent& a) const;

  std::strong_ordering compare(const Exponent& a, const Exponent& b) const;
  bool positive(const Exponent& a) const;
  bool nonnegative(const Exponent& a) const;
  bool zero(const Exponent& a) const;

  /// Rows [begin, end) as a valuation of their own.
  MonomialValuation rows_slice(int begin, int end) const;

  bool operator==(const MonomialValuation& other) const { return rows_ == other.rows_; }

 private:
  void check_dim(const Exponent& a) const;

  std::vector<std::vector<Rational>> rows_;
  std::vector<std::vector<std::int64_t>> scaled_rows_;
  int dim_ = 0;
};

/// Representative of v + Delta_j in Gamma / Delta_j: the first j coordinates.
ValueVector project(const ValueVector& v, ConvexLevel level);

/// Last n - j coordinates of a nu_Delta-unit value. Throws not_a_unit when the
/// first j coordinates are not all zero.
ValueVector residual(const ValueVector& v, ConvexLevel level);

/// Row split of W at level j, 0 < j < n: (rows 1..j, rows j+1..n).
std::pair<MonomialValuation, MonomialValuation> decompose(const MonomialValuation& val,
                                                          ConvexLevel level);

/// Smallest k >= 0 with v + k w >= 0 (lex), or -1 if none exists. Requires w
/// lex-positive. With strict = true the bound is v + k w > 0.
std::int64_t min_multiple(std::span<const std::int64_t> v, std::span<const std::int64_t> w,
                          bool strict);

}  // namespace luniform
