#include "luniform/ring_model.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_set>

namespace luniform {

namespace {

int lead_level(const std::vector<std::int64_t>& v) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) return static_cast<int>(k);
  return -1;
}

void normalize(std::vector<Exponent>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  v.erase(std::remove_if(v.begin(), v.end(), [](const Exponent& e) { return is_zero(e); }), v.end());
}

MonomialExpression collect(const Exponent& a, std::span<const Exponent> gens,
                           const std::vector<std::int64_t>& coeff) {
  MonomialExpression e;
  e.target = a;
  Exponent rest = a;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (coeff[i] == 0) continue;
    e.terms.emplace_back(gens[i], coeff[i]);
    rest = sub(rest, scale(gens[i], coeff[i]));
  }
  e.unit_part = std::move(rest);
  return e;
}

Exponent reduce_mod(const LatticeBasis& lattice, Exponent v) {
  for (const auto& b : lattice.basis) {
    std::size_t p = 0;
    while (b[p] == 0) ++p;
    std::int64_t q = v[p] / b[p];
    if (v[p] % b[p] != 0 && v[p] < 0) --q;
    if (q) v = sub(v, scale(b, q));
  }
  return v;
}

struct ExponentHash {
  std::size_t operator()(const Exponent& e) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto x : e) h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

void check_prime(const RingModel& ring, const PrimeDescriptor& prime) {
  if (prime.level <= 0 || prime.level > ring.valuation().levels())
    throw Error(ErrorKind::out_of_range, "prime level " + std::to_string(prime.level) + " out of range");
  if (center_of(ring, ConvexLevel{prime.level}) != prime)
    throw Error(ErrorKind::malformed, "prime is not the center of the level-" +
                                          std::to_string(prime.level) + " valuation");
}

}  // namespace

RingModel::RingModel(int dim, std::vector<Exponent> gens, MonomialValuation val,
                     std::vector<Exponent> inverted)
    : dim_(dim), val_(std::move(val)) {
  if (dim <= 0) throw Error(ErrorKind::dimension, "ambient dimension must be positive");
  if (val_.dim() != dim)
    throw Error(ErrorKind::dimension, "weight matrix has " + std::to_string(val_.dim()) +
                                          " columns, ring has dimension " + std::to_string(dim));
  for (const auto* list : {&gens, &inverted})
    for (const auto& g : *list)
      if (g.size() != static_cast<std::size_t>(dim))
        throw Error(ErrorKind::dimension, "generator " + to_string(g) + " has wrong length");
  normalize(inverted);
  gens.insert(gens.end(), inverted.begin(), inverted.end());
  normalize(gens);
  gens_ = std::move(gens);
  inverted_.assign(gens_.size(), 0);
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const auto& g = gens_[i];
    if (std::binary_search(inverted.begin(), inverted.end(), g)) {
      if (!val_.zero(g))
        throw Error(ErrorKind::malformed, "inverted generator " + to_string(g) + " has nonzero value");
      inverted_[i] = 1;
    } else if (!val_.nonnegative(g)) {
      throw Error(ErrorKind::malformed, "generator with lex-negative value: " + to_string(g));
    }
  }
  auto d = std::make_shared<Derived>();
  for (const auto& g : gens_) (val_.positive(g) ? d->positive : d->units).push_back(g);
  d->unit_lattice = hnf(d->units, dim_);
  d->monomial_lattice = hnf(gens_, dim_);
  derived_ = std::move(d);
}

const std::vector<Exponent>& RingModel::irreducible_generators() const {
  std::call_once(derived_->irreducible_once, [&] {
    derived_->irreducible = irredundant_generators(derived_->positive, derived_->unit_lattice, val_);
  });
  return derived_->irreducible;
}

std::vector<Exponent> RingModel::inverted_generators() const {
  std::vector<Exponent> out;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (inverted_[i]) out.push_back(gens_[i]);
  return out;
}

RingModel RingModel::with_generators(std::span<const Exponent> extra) const {
  std::vector<Exponent> gens = gens_;
  gens.insert(gens.end(), extra.begin(), extra.end());
  return RingModel(dim_, std::move(gens), val_, inverted_generators());
}

Exponent MonomialExpression::reconstruct() const {
  Exponent r = unit_part;
  for (const auto& [g, c] : terms) r = add(r, scale(g, c));
  return r;
}

std::optional<MonomialExpression> monomial_member_over(const Exponent& a,
                                                       std::span<const Exponent> positives,
                                                       const LatticeBasis& units,
                                                       const MonomialValuation& val) {
  if (!val.nonnegative(a)) return std::nullopt;
  const int n = val.levels();
  std::vector<std::vector<std::int64_t>> values;
  std::vector<std::vector<std::size_t>> by_level(n);
  for (std::size_t i = 0; i < positives.size(); ++i) {
    values.push_back(val.scaled(positives[i]));
    int l = lead_level(values.back());
    if (l < 0 || values.back()[l] < 0)
      throw Error(ErrorKind::malformed, "generator " + to_string(positives[i]) + " is not of positive value");
    by_level[l].push_back(i);
  }

  std::vector<__int128> budget(n);
  {
    auto b = val.scaled(a);
    for (int k = 0; k < n; ++k) budget[k] = b[k];
  }
  std::vector<std::int64_t> coeff(positives.size(), 0);
  Exponent rest = a;

  // Flattened search order. From position free_from on, the remaining
  // generators are independent modulo units, so the completion is unique and
  // a linear solve replaces the enumeration.
  std::vector<std::size_t> order, offset(n + 1, 0);
  for (int k = 0; k < n; ++k) {
    offset[k] = order.size();
    order.insert(order.end(), by_level[k].begin(), by_level[k].end());
  }
  offset[n] = order.size();
  std::size_t free_from = order.size();
  while (free_from > 0) {
    std::vector<Exponent> tail = units.basis;
    for (std::size_t p = free_from - 1; p < order.size(); ++p) tail.push_back(positives[order[p]]);
    if (hnf(tail, a.size()).rank() != static_cast<int>(tail.size())) break;
    --free_from;
  }
  std::vector<std::optional<CombinationSolver>> solvers(order.size() + 1);
  auto solve_tail = [&](std::size_t from) {
    const std::size_t t = order.size() - from;
    if (!solvers[from]) {
      std::vector<Exponent> tail;
      for (std::size_t p = from; p < order.size(); ++p) tail.push_back(positives[order[p]]);
      tail.insert(tail.end(), units.basis.begin(), units.basis.end());
      solvers[from].emplace(tail, a.size());
    }
    auto c = solvers[from]->solve(rest);
    if (!c) return false;
    for (std::size_t p = 0; p < t; ++p)
      if ((*c)[p] < 0) return false;
    for (std::size_t p = 0; p < t; ++p) coeff[order[from + p]] += (*c)[p];
    return true;
  };

  // States that already failed, keyed by position and the residual modulo
  // the unit lattice; the residual determines every remaining budget.
  std::unordered_set<Exponent, ExponentHash> failed;
  auto key = [&](int k, std::size_t idx) {
    Exponent e = reduce_mod(units, rest);
    e.push_back(k);
    e.push_back(static_cast<std::int64_t>(idx));
    return e;
  };

  // Membership is integer programming; rather than run unbounded we give up
  // loudly. No answer is ever guessed.
  std::size_t nodes = 0;
  std::function<bool(int, std::size_t)> search = [&](int k, std::size_t idx) -> bool {
    if (++nodes > kMembershipNodeLimit)
      throw Error(ErrorKind::out_of_range, "membership search for " + to_string(a) + " exceeded " +
                                               std::to_string(kMembershipNodeLimit) + " nodes");
    if (k == n) return is_zero(reduce_mod(units, rest));
    if (budget[k] < 0) return false;
    if (offset[k] + idx >= free_from) return solve_tail(offset[k] + idx);
    const auto& here = by_level[k];
    if (idx == here.size()) return budget[k] == 0 && search(k + 1, 0);
    auto state = key(k, idx);
    if (failed.count(state)) return false;
    const std::size_t g = here[idx];
    const std::int64_t w = values[g][k];
    auto apply = [&](std::int64_t c) {
      for (int l = k; l < n; ++l) budget[l] -= __int128(c) * values[g][l];
      rest = sub(rest, scale(positives[g], c));
      coeff[g] += c;
    };
    if (idx + 1 == here.size()) {
      if (budget[k] % w == 0) {
        const std::int64_t c = static_cast<std::int64_t>(budget[k] / w);
        apply(c);
        if (search(k + 1, 0)) return true;
        apply(-c);
      }
    } else {
      const std::int64_t cmax = static_cast<std::int64_t>(budget[k] / w);
      std::int64_t c = 0;
      for (; c <= cmax; ++c) {
        if (search(k, idx + 1)) return true;
        apply(1);
      }
      apply(-c);
    }
    failed.insert(std::move(state));
    return false;
  };

  if (!search(0, 0)) return std::nullopt;
  return collect(a, positives, coeff);
}

std::optional<MonomialExpression> monomial_member(const Exponent& a, const RingModel& ring) {
  if (a.size() != static_cast<std::size_t>(ring.dim()))
    throw Error(ErrorKind::dimension, "membership: exponent " + to_string(a) + " has wrong length");
  // Generators and units are the common queries; answer them before paying
  // for the irreducibles.
  if (lattice_contains(ring.unit_lattice(), a)) return MonomialExpression{a, {}, a};
  const auto& pos = ring.positive_generators();
  if (std::binary_search(pos.begin(), pos.end(), a))
    return MonomialExpression{a, {{a, 1}}, Exponent(a.size(), 0)};
  return monomial_member_over(a, ring.irreducible_generators(), ring.unit_lattice(), ring.valuation());
}

std::optional<MonomialExpression> monomial_member_bruteforce(const Exponent& a, const RingModel& ring,
                                                             int bound) {
  const auto& gens = ring.positive_generators();
  std::vector<std::int64_t> coeff(gens.size(), 0);
  std::function<bool(std::size_t, int, const Exponent&)> go = [&](std::size_t i, int left,
                                                                  const Exponent& rest) -> bool {
    if (i == gens.size()) return lattice_contains(ring.unit_lattice(), rest);
    for (int c = 0; c <= left; ++c) {
      coeff[i] = c;
      if (go(i + 1, left - c, sub(rest, scale(gens[i], c)))) return true;
    }
    coeff[i] = 0;
    return false;
  };
  if (!go(0, bound, a)) return std::nullopt;
  return collect(a, gens, coeff);
}

std::vector<Exponent> irredundant_generators(std::span<const Exponent> positives, const LatticeBasis& units,
                                            const MonomialValuation& val) {
  // Same outcome as removing, in descending lex order, every generator that
  // the others produce: the survivors are the irreducible classes modulo
  // units, each represented by its lex-smallest member. A reducible element
  // is a sum of elements of strictly smaller value, so scanning by value and
  // testing only against irreducibles found so far keeps the queries small.
  std::vector<Exponent> sorted(positives.begin(), positives.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&](const Exponent& x, const Exponent& y) { return val.compare(x, y) < 0; });
  std::vector<Exponent> kept;
  std::unordered_set<Exponent, ExponentHash> classes;
  for (const auto& g : sorted) {
    if (!classes.insert(reduce_mod(units, g)).second) continue;  // lex-smaller twin already seen
    if (monomial_member_over(g, kept, units, val)) continue;
    kept.push_back(g);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::vector<Exponent> minimal_generators(const RingModel& ring) {
  return ring.irreducible_generators();
}

int dimension(const RingModel& ring) {
  return ring.monomial_lattice().rank() - ring.unit_lattice().rank();
}

std::optional<RegularityCertificate> is_regular(const RingModel& ring) {
  auto gens = minimal_generators(ring);
  if (static_cast<int>(gens.size()) != dimension(ring)) return std::nullopt;
  std::vector<Exponent> all = ring.unit_lattice().basis;
  all.insert(all.end(), gens.begin(), gens.end());
  if (hnf(all, ring.dim()) != ring.monomial_lattice()) return std::nullopt;
  return RegularityCertificate{std::move(gens)};
}

PrimeDescriptor center_of(const RingModel& ring, ConvexLevel level) {
  const auto& val = ring.valuation();
  if (level.j <= 0 || level.j > val.levels())
    throw Error(ErrorKind::out_of_range, "center_of: level " + std::to_string(level.j) + " out of range");
  PrimeDescriptor p{level.j, {}};
  for (const auto& g : ring.generators()) {
    for (int k = 0; k < level.j; ++k) {
      auto x = val.scaled_row(k, g);
      if (x == 0) continue;
      if (x > 0) p.members.push_back(g);
      break;
    }
  }
  return p;
}

RingModel localize_at(const RingModel& ring, const PrimeDescriptor& prime) {
  check_prime(ring, prime);
  MonomialValuation head = ring.valuation().rows_slice(0, prime.level);
  std::vector<Exponent> inverted;
  for (const auto& g : ring.generators())
    if (!std::binary_search(prime.members.begin(), prime.members.end(), g)) inverted.push_back(g);
  return RingModel(ring.dim(), ring.generators(), std::move(head), std::move(inverted));
}

RingModel residue_ring(const RingModel& ring, const PrimeDescriptor& prime) {
  check_prime(ring, prime);
  const auto& val = ring.valuation();
  // With p = m nothing of the valuation is left over; the residue ring is the
  // residue field and gets a zero row so that every generator is a unit.
  MonomialValuation tail =
      prime.level < val.levels()
          ? val.rows_slice(prime.level, val.levels())
          : MonomialValuation({std::vector<Rational>(static_cast<std::size_t>(ring.dim()), Rational(0))});
  std::vector<Exponent> gens, inverted;
  for (std::size_t i = 0; i < ring.generators().size(); ++i) {
    const auto& g = ring.generators()[i];
    if (std::binary_search(prime.members.begin(), prime.members.end(), g)) continue;
    gens.push_back(g);
    if (ring.inverted(i)) inverted.push_back(g);
  }
  return RingModel(ring.dim(), std::move(gens), std::move(tail), std::move(inverted));
}

bool ring_equal(const RingModel& a, const RingModel& b) {
  if (a.dim() != b.dim() || !(a.valuation() == b.valuation()))
    throw Error(ErrorKind::dimension, "ring_equal: rings carry different ambient data");
  auto contained = [](const RingModel& x, const RingModel& y) {
    for (const auto& g : x.generators())
      if (!monomial_member(g, y)) return false;
    for (const auto& u : x.unit_generators())
      if (!monomial_member(scale(u, -1), y)) return false;
    return true;
  };
  return contained(a, b) && contained(b, a);
}

ConvexLevel split_level(const RingModel& ring) {
  const auto& val = ring.valuation();
  for (int k = 0; k < val.levels(); ++k)
    for (const auto& g : ring.generators())
      if (val.scaled_row(k, g) != 0) return ConvexLevel{k + 1};
  throw Error(ErrorKind::trivial_valuation, "valuation is zero on every generator");
}

int active_levels(const RingModel& ring) {
  const auto& val = ring.valuation();
  int count = 0;
  for (int k = 0; k < val.levels(); ++k)
    for (const auto& g : ring.generators())
      if (val.scaled_row(k, g) != 0) {
        ++count;
        break;
      }
  return count;
}

}  // namespace luniform
