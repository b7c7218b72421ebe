#include "luniform/lattice.hpp"

#include <algorithm>
#include <limits>

namespace luniform {

namespace {

using Row = std::vector<Integer>;

struct Reduction {
  std::vector<Row> h;    // echelon rows (only the first `rank` are nonzero)
  std::vector<Row> u;    // h = u * input
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

void axpy(Row& dst, const Row& src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= q * src[k];
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

Reduction reduce(std::span<const Exponent> vectors, std::size_t dim, bool track) {
  Reduction r;
  const std::size_t m = vectors.size();
  r.h.reserve(m);
  for (const auto& v : vectors) {
    if (v.size() != dim) throw Error(ErrorKind::dimension, "hnf: vector length mismatch");
    r.h.emplace_back(v.begin(), v.end());
  }
  if (track) {
    r.u.assign(m, Row(m, 0));
    for (std::size_t i = 0; i < m; ++i) r.u[i][i] = 1;
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < dim && row < m; ++col) {
    while (true) {
      std::size_t best = m;
      for (std::size_t i = row; i < m; ++i) {
        if (r.h[i][col] == 0) continue;
        if (best == m || abs(r.h[i][col]) < abs(r.h[best][col])) best = i;
      }
      if (best == m) break;
      std::swap(r.h[row], r.h[best]);
      if (track) std::swap(r.u[row], r.u[best]);
      bool clean = true;
      for (std::size_t i = row + 1; i < m; ++i) {
        if (r.h[i][col] == 0) continue;
        Integer q = r.h[i][col] / r.h[row][col];
        axpy(r.h[i], r.h[row], q);
        if (track) axpy(r.u[i], r.u[row], q);
        if (r.h[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (r.h[row][col] == 0) continue;
    if (r.h[row][col] < 0) {
      for (auto& x : r.h[row]) x = -x;
      if (track)
        for (auto& x : r.u[row]) x = -x;
    }
    for (std::size_t i = 0; i < row; ++i) {
      Integer q = floor_div(r.h[i][col], r.h[row][col]);
      axpy(r.h[i], r.h[row], q);
      if (track) axpy(r.u[i], r.u[row], q);
    }
    r.pivots.push_back(col);
    ++row;
  }
  r.rank = row;
  return r;
}

std::int64_t narrow(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorKind::out_of_range, "lattice coefficient overflow");
  return static_cast<std::int64_t>(x);
}

std::optional<std::vector<Integer>> solve_echelon(const std::vector<Row>& h,
                                                  const std::vector<std::size_t>& pivots,
                                                  std::size_t rank, const Exponent& v) {
  Row rest(v.begin(), v.end());
  std::vector<Integer> x(rank);
  std::size_t col = 0;
  for (std::size_t i = 0; i < rank; ++i) {
    for (; col < pivots[i]; ++col)
      if (rest[col] != 0) return std::nullopt;
    const Integer& p = h[i][pivots[i]];
    if (rest[pivots[i]] % p != 0) return std::nullopt;
    x[i] = rest[pivots[i]] / p;
    axpy(rest, h[i], x[i]);
  }
  for (const auto& t : rest)
    if (t != 0) return std::nullopt;
  return x;
}

// Basis of {z : z * rows = 0}.
std::vector<Exponent> left_kernel(const std::vector<Exponent>& rows, std::size_t cols) {
  auto r = reduce(rows, cols, true);
  std::vector<Exponent> out;
  for (std::size_t i = r.rank; i < rows.size(); ++i) {
    Exponent z;
    for (const auto& x : r.u[i]) z.push_back(narrow(x));
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace

LatticeBasis hnf(std::span<const Exponent> vectors, std::size_t dim) {
  auto r = reduce(vectors, dim, false);
  LatticeBasis out;
  out.dim = dim;
  for (std::size_t i = 0; i < r.rank; ++i) {
    Exponent e(dim);
    for (std::size_t k = 0; k < dim; ++k) e[k] = narrow(r.h[i][k]);
    out.basis.push_back(std::move(e));
  }
  return out;
}

std::optional<std::vector<Integer>> lattice_coordinates(const LatticeBasis& lattice, const Exponent& v) {
  if (v.size() != lattice.dim) throw Error(ErrorKind::dimension, "lattice membership: length mismatch");
  std::vector<Row> h;
  std::vector<std::size_t> pivots;
  for (const auto& b : lattice.basis) {
    h.emplace_back(b.begin(), b.end());
    std::size_t p = 0;
    while (b[p] == 0) ++p;
    pivots.push_back(p);
  }
  return solve_echelon(h, pivots, h.size(), v);
}

bool lattice_contains(const LatticeBasis& lattice, const Exponent& v) {
  return lattice_coordinates(lattice, v).has_value();
}

std::optional<std::vector<std::int64_t>> integer_combination(const Exponent& target,
                                                             std::span<const Exponent> gens) {
  return CombinationSolver(gens, target.size()).solve(target);
}

CombinationSolver::CombinationSolver(std::span<const Exponent> gens, std::size_t dim) : count_(gens.size()) {
  if (gens.empty()) return;
  auto r = reduce(gens, dim, true);
  h_ = std::move(r.h);
  u_ = std::move(r.u);
  pivots_ = std::move(r.pivots);
  rank_ = r.rank;
}

std::optional<std::vector<std::int64_t>> CombinationSolver::solve(const Exponent& target) const {
  if (count_ == 0) {
    if (is_zero(target)) return std::vector<std::int64_t>{};
    return std::nullopt;
  }
  auto x = solve_echelon(h_, pivots_, rank_, target);
  if (!x) return std::nullopt;
  std::vector<Integer> c(count_, 0);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t k = 0; k < count_; ++k) c[k] += (*x)[i] * u_[i][k];
  std::vector<std::int64_t> out;
  out.reserve(c.size());
  for (const auto& ci : c) out.push_back(narrow(ci));
  return out;
}

std::vector<Integer> snf(const std::vector<std::vector<Integer>>& matrix) {
  std::vector<Row> a = matrix;
  const std::size_t m = a.size();
  const std::size_t n = m ? a.front().size() : 0;
  std::vector<Integer> divisors;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Move the smallest nonzero entry of the trailing block to (t, t).
    while (true) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (bi == m || abs(a[i][j]) < abs(a[bi][bj]))) bi = i, bj = j;
      if (bi == m) {
        std::sort(divisors.begin(), divisors.end());
        return divisors;
      }
      std::swap(a[t], a[bi]);
      for (std::size_t i = 0; i < m; ++i) std::swap(a[i][t], a[i][bj]);
      bool done = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        Integer q = a[i][t] / a[t][t];
        axpy(a[i], a[t], q);
        if (a[i][t] != 0) done = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        Integer q = a[t][j] / a[t][t];
        if (q != 0)
          for (std::size_t i = 0; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) done = false;
      }
      if (!done) continue;
      // Divisibility: fold a row holding a non-multiple into row t and retry.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      for (std::size_t j = 0; j < n; ++j) a[t][j] += a[bad][j];
    }
    divisors.push_back(abs(a[t][t]));
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

std::vector<Exponent> saturation_deficit(const LatticeBasis& inner, const LatticeBasis& outer) {
  const std::size_t r = outer.basis.size(), k = inner.basis.size();
  // Work in outer coordinates: the saturation is the orthogonal of the kernel.
  std::vector<Exponent> mt(r, Exponent(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    auto c = lattice_coordinates(outer, inner.basis[i]);
    if (!c) throw Error(ErrorKind::dimension, "saturation: inner is not a sublattice of outer");
    for (std::size_t j = 0; j < r; ++j) mt[j][i] = narrow((*c)[j]);
  }
  auto kernel = left_kernel(mt, k);
  std::vector<Exponent> cols(r, Exponent(kernel.size(), 0));
  for (std::size_t s = 0; s < kernel.size(); ++s)
    for (std::size_t j = 0; j < r; ++j) cols[j][s] = kernel[s][j];
  std::vector<Exponent> out;
  for (const auto& x : left_kernel(cols, kernel.size())) {
    Exponent v(outer.dim, 0);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t t = 0; t < outer.dim; ++t) v[t] += x[j] * outer.basis[j][t];
    if (!lattice_contains(inner, v)) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace luniform
