#include "luniform/values.hpp"

#include <limits>
#include <numeric>
#include <sstream>

namespace luniform {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::dimension, std::string(what) + ": length mismatch (" +
                                          std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

std::int64_t checked(__int128 x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::out_of_range, "integer overflow in exponent arithmetic");
  }
  return static_cast<std::int64_t>(x);
}

std::int64_t to_int64(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::out_of_range, "weight too large after scaling");
  }
  return static_cast<std::int64_t>(x);
}

}  // namespace

Exponent add(const Exponent& a, const Exponent& b) {
  require_same_length(a.size(), b.size(), "add");
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked(__int128(a[i]) + b[i]);
  return r;
}

Exponent sub(const Exponent& a, const Exponent& b) {
  require_same_length(a.size(), b.size(), "sub");
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked(__int128(a[i]) - b[i]);
  return r;
}

Exponent scale(const Exponent& a, std::int64_t k) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked(__int128(a[i]) * k);
  return r;
}

Exponent zero_exponent(std::size_t d) { return Exponent(d, 0); }

bool is_zero(const Exponent& a) {
  for (auto x : a)
    if (x != 0) return false;
  return true;
}

std::string to_string(const Exponent& a) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ')';
  return os.str();
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> Integer {
    if (s.empty()) throw Error(ErrorKind::malformed, "empty rational component");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw Error(ErrorKind::malformed, "bad rational '" + std::string(text) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9')
        throw Error(ErrorKind::malformed, "bad rational '" + std::string(text) + "'");
    return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::malformed, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string format_rational(const Rational& q) {
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::strong_ordering lex_cmp(const ValueVector& v, const ValueVector& w) {
  require_same_length(v.size(), w.size(), "lex_cmp");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.coords[i] < w.coords[i]) return std::strong_ordering::less;
    if (v.coords[i] > w.coords[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

ValueVector operator+(const ValueVector& v, const ValueVector& w) {
  require_same_length(v.size(), w.size(), "value add");
  ValueVector r{v.coords};
  for (std::size_t i = 0; i < r.size(); ++i) r.coords[i] += w.coords[i];
  return r;
}

ValueVector operator-(const ValueVector& v, const ValueVector& w) {
  require_same_length(v.size(), w.size(), "value sub");
  ValueVector r{v.coords};
  for (std::size_t i = 0; i < r.size(); ++i) r.coords[i] -= w.coords[i];
  return r;
}

ValueVector operator*(std::int64_t k, const ValueVector& v) {
  ValueVector r{v.coords};
  for (auto& c : r.coords) c *= k;
  return r;
}

bool is_zero(const ValueVector& v) {
  for (const auto& c : v.coords)
    if (c != 0) return false;
  return true;
}

bool is_lex_positive(const ValueVector& v) {
  for (const auto& c : v.coords) {
    if (c > 0) return true;
    if (c < 0) return false;
  }
  return false;
}

bool is_lex_nonnegative(const ValueVector& v) { return is_zero(v) || is_lex_positive(v); }

std::string to_string(const ValueVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_rational(v.coords[i]);
  return s + ")";
}

MonomialValuation::MonomialValuation(std::vector<std::vector<Rational>> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw Error(ErrorKind::dimension, "valuation needs at least one level");
  dim_ = static_cast<int>(rows_.front().size());
  if (dim_ == 0) throw Error(ErrorKind::dimension, "valuation needs positive ambient dimension");
  for (const auto& row : rows_) {
    require_same_length(row.size(), rows_.front().size(), "weight matrix row");
    Integer lcm = 1;
    for (const auto& q : row) {
      Integer den = boost::multiprecision::denominator(q);
      lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    }
    std::vector<std::int64_t> srow;
    srow.reserve(row.size());
    for (const auto& q : row) srow.push_back(to_int64(boost::multiprecision::numerator(q) * (lcm / boost::multiprecision::denominator(q))));
    scaled_rows_.push_back(std::move(srow));
  }
}

void MonomialValuation::check_dim(const Exponent& a) const {
  require_same_length(a.size(), static_cast<std::size_t>(dim_), "evaluate");
}

ValueVector MonomialValuation::evaluate(const Exponent& a) const {
  check_dim(a);
  ValueVector v;
  v.coords.reserve(rows_.size());
  for (const auto& row : rows_) {
    Rational s = 0;
    for (int i = 0; i < dim_; ++i)
      if (a[i] != 0) s += row[i] * a[i];
    v.coords.push_back(s);
  }
  return v;
}

std::int64_t MonomialValuation::scaled_row(int level, const Exponent& a) const {
  const auto& row = scaled_rows_[level];
  __int128 s = 0;
  for (int i = 0; i < dim_; ++i) s += __int128(row[i]) * a[i];
  return checked(s);
}

std::vector<std::int64_t> MonomialValuation::scaled(const Exponent& a) const {
  check_dim(a);
  std::vector<std::int64_t> v(rows_.size());
  for (int k = 0; k < levels(); ++k) v[k] = scaled_row(k, a);
  return v;
}

std::strong_ordering MonomialValuation::compare(const Exponent& a, const Exponent& b) const {
  check_dim(a);
  check_dim(b);
  for (int k = 0; k < levels(); ++k) {
    auto x = scaled_row(k, a), y = scaled_row(k, b);
    if (x != y) return x < y ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

bool MonomialValuation::positive(const Exponent& a) const {
  check_dim(a);
  for (int k = 0; k < levels(); ++k) {
    auto x = scaled_row(k, a);
    if (x != 0) return x > 0;
  }
  return false;
}

bool MonomialValuation::nonnegative(const Exponent& a) const { return zero(a) || positive(a); }

bool MonomialValuation::zero(const Exponent& a) const {
  check_dim(a);
  for (int k = 0; k < levels(); ++k)
    if (scaled_row(k, a) != 0) return false;
  return true;
}

MonomialValuation MonomialValuation::rows_slice(int begin, int end) const {
  if (begin < 0 || end > levels() || begin >= end)
    throw Error(ErrorKind::out_of_range, "row slice [" + std::to_string(begin) + "," +
                                             std::to_string(end) + ") out of range");
  return MonomialValuation(std::vector<std::vector<Rational>>(rows_.begin() + begin, rows_.begin() + end));
}

ValueVector project(const ValueVector& v, ConvexLevel level) {
  if (level.j < 0 || static_cast<std::size_t>(level.j) > v.size())
    throw Error(ErrorKind::out_of_range, "convex level out of range");
  return ValueVector{std::vector<Rational>(v.coords.begin(), v.coords.begin() + level.j)};
}

ValueVector residual(const ValueVector& v, ConvexLevel level) {
  if (!is_zero(project(v, level)))
    throw Error(ErrorKind::not_a_unit, "not a unit for the level-" + std::to_string(level.j) +
                                           " valuation: " + to_string(v));
  return ValueVector{std::vector<Rational>(v.coords.begin() + level.j, v.coords.end())};
}

std::pair<MonomialValuation, MonomialValuation> decompose(const MonomialValuation& val,
                                                          ConvexLevel level) {
  if (level.j <= 0 || level.j >= val.levels())
    throw Error(ErrorKind::out_of_range, "decompose needs 0 < j < n (j=" + std::to_string(level.j) +
                                             ", n=" + std::to_string(val.levels()) + ")");
  return {val.rows_slice(0, level.j), val.rows_slice(level.j, val.levels())};
}

std::int64_t min_multiple(std::span<const std::int64_t> v, std::span<const std::int64_t> w,
                          bool strict) {
  require_same_length(v.size(), w.size(), "min_multiple");
  std::size_t lead = 0;
  while (lead < w.size() && w[lead] == 0) ++lead;
  if (lead == w.size() || w[lead] < 0) throw Error(ErrorKind::malformed, "min_multiple: w not lex-positive");
  for (std::size_t i = 0; i < lead; ++i) {
    if (v[i] > 0) return 0;
    if (v[i] < 0) return -1;
  }
  std::int64_t k = 0;
  if (v[lead] < 0) k = (-v[lead] + w[lead] - 1) / w[lead];
  __int128 at_lead = __int128(v[lead]) + __int128(k) * w[lead];
  if (at_lead > 0) return k;
  for (std::size_t i = lead + 1; i < v.size(); ++i) {
    __int128 t = __int128(v[i]) + __int128(k) * w[i];
    if (t > 0) return k;
    if (t < 0) return k + 1;
  }
  return strict ? k + 1 : k;
}

}  // namespace luniform
