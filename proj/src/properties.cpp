#include "luniform/properties.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "luniform/verify.hpp"

namespace luniform {

using nlohmann::json;

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void record_failure(PropertyResult& r, const std::string& what) {
  if (r.failures++ == 0) r.first_failure = what;
}

std::vector<std::vector<Rational>> random_weights(std::mt19937_64& rng, int n, int d, int max_weight) {
  std::vector<std::vector<Rational>> w(static_cast<std::size_t>(n));
  for (auto& row : w) {
    for (int i = 0; i < d; ++i) {
      Rational q = uniform(rng, -max_weight, max_weight);
      if (uniform(rng, 0, 3) == 0) q /= 2;
      row.push_back(q);
    }
  }
  return w;
}

Exponent random_vector(std::mt19937_64& rng, int d, int bound) {
  Exponent e(static_cast<std::size_t>(d));
  for (auto& x : e) x = uniform(rng, -bound, bound);
  return e;
}

// Lex-nonnegative representative of +-e; nullopt for value zero vectors when
// `allow_units` is false.
std::optional<Exponent> centered(const MonomialValuation& val, Exponent e, bool allow_units) {
  if (is_zero(e)) return std::nullopt;
  if (val.zero(e)) return allow_units ? std::optional<Exponent>(e) : std::nullopt;
  if (!val.positive(e)) e = scale(e, -1);
  return e;
}

RingModel ring_from_weights(std::mt19937_64& rng, int d, const std::vector<std::vector<Rational>>& w,
                            int gens, int max_entry) {
  MonomialValuation val(w);
  std::vector<Exponent> s;
  for (int i = 0; i < gens; ++i)
    if (auto g = centered(val, random_vector(rng, d, max_entry), uniform(rng, 0, 4) == 0)) s.push_back(*g);
  return RingModel(d, s, val);
}

// A random monomial of the ring: nonnegative combination of positive
// generators with small coefficients.
Exponent random_member(std::mt19937_64& rng, const RingModel& ring, int max_coeff) {
  Exponent a = zero_exponent(static_cast<std::size_t>(ring.dim()));
  for (const auto& g : ring.positive_generators()) a = add(a, scale(g, uniform(rng, 0, max_coeff)));
  return a;
}

Exponent random_positive_member(std::mt19937_64& rng, const RingModel& ring, int max_coeff) {
  const auto& p = ring.positive_generators();
  Exponent a = random_member(rng, ring, max_coeff);
  if (!ring.valuation().positive(a)) a = add(a, p[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(p.size()) - 1))]);
  return a;
}

std::string describe(const RingModel& r) {
  std::ostringstream os;
  os << "S={";
  for (std::size_t i = 0; i < r.generators().size(); ++i) os << (i ? "," : "") << to_string(r.generators()[i]);
  os << "} W=[";
  for (std::size_t k = 0; k < r.valuation().rows().size(); ++k) {
    os << (k ? ";" : "");
    for (std::size_t i = 0; i < r.valuation().rows()[k].size(); ++i)
      os << (i ? "," : "") << format_rational(r.valuation().rows()[k][i]);
  }
  os << "]";
  return os.str();
}

}  // namespace

RingModel random_ring(std::mt19937_64& rng, const RandomShape& shape) {
  while (true) {
    const int d = uniform(rng, 2, shape.max_dim);
    const int n = uniform(rng, 1, shape.max_levels);
    auto w = random_weights(rng, n, d, shape.max_weight);
    auto ring = ring_from_weights(rng, d, w, uniform(rng, 2, shape.max_gens), shape.max_entry);
    if (!ring.positive_generators().empty()) return ring;
  }
}

Instance random_instance(std::mt19937_64& rng, int index) {
  RandomShape shape{3, 3, 5, 3, 2};
  auto ring = random_ring(rng, shape);
  Instance inst;
  inst.name = "random-" + std::to_string(index);
  inst.dim = ring.dim();
  inst.levels = ring.valuation().levels();
  inst.weights = ring.valuation().rows();
  inst.generators = ring.generators();
  inst.mode = static_cast<Mode>(index % 3);
  inst.strategy.kind = index % 2 ? StrategyKind::full_ideal : StrategyKind::pair_min;
  inst.strategy.fuel = 256;
  if (inst.mode != Mode::lu) {
    const int count = uniform(rng, 1, 3);
    for (int i = 0; i < count; ++i) inst.targets.push_back(random_member(rng, ring, 2));
    if (inst.mode == Mode::embedded)
      std::stable_sort(inst.targets.begin(), inst.targets.end(), [&](const Exponent& a, const Exponent& b) {
        return ring.valuation().compare(a, b) < 0;
      });
  }
  return inst;
}

PropertyResult prop_decompose(int cases, std::uint64_t seed) {
  PropertyResult r;
  r.name = "simple factorization equals one-shot blowup";
  Timer timer;
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    auto ring = random_ring(rng, RandomShape{4, 3, 6, 5, 3});
    std::vector<Exponent> ideal;
    const int size = uniform(rng, 1, 4);
    for (int i = 0; i < size; ++i) ideal.push_back(random_positive_member(rng, ring, 1));
    try {
      auto one = blowup_along(ring, ideal);
      auto parts = decompose_to_simple(one);
      const RingModel& composite = parts.empty() ? ring : *parts.back().result;
      ++r.cases;
      if (!ring_equal(composite, *one.result)) record_failure(r, describe(ring));
    } catch (const Error& e) {
      record_failure(r, describe(ring) + ": " + e.what());
    }
  }
  r.seconds = timer.seconds();
  return r;
}

PropertyResult prop_pivot_tie(int cases, std::uint64_t seed) {
  PropertyResult r;
  r.name = "tied pivots give equal blowups";
  Timer timer;
  std::mt19937_64 rng(seed);
  while (r.cases < cases) {
    auto ring = random_ring(rng, RandomShape{4, 3, 6, 5, 3});
    const auto& val = ring.valuation();
    // Candidates by value; a tie needs two distinct monomials of one value.
    std::map<std::vector<std::int64_t>, std::vector<Exponent>> by_value;
    for (int i = 0; i < 24; ++i) {
      auto m = random_positive_member(rng, ring, 2);
      auto& bucket = by_value[val.scaled(m)];
      if (std::find(bucket.begin(), bucket.end(), m) == bucket.end()) bucket.push_back(m);
    }
    const std::vector<Exponent>* tied = nullptr;
    for (const auto& [v, bucket] : by_value)
      if (bucket.size() >= 2) {
        tied = &bucket;
        break;
      }
    if (!tied) {
      ++r.skipped;
      continue;
    }
    std::vector<Exponent> ideal = {(*tied)[0], (*tied)[1]};
    // Extra members of larger value keep the tie at the minimum.
    for (int i = 0; i < 2; ++i) ideal.push_back(add((*tied)[0], random_positive_member(rng, ring, 1)));
    try {
      auto p = blowup_with_pivot(ring, ideal, (*tied)[0]);
      auto q = blowup_with_pivot(ring, ideal, (*tied)[1]);
      ++r.cases;
      if (!ring_equal(*p.result, *q.result)) record_failure(r, describe(ring));
    } catch (const Error& e) {
      ++r.cases;
      record_failure(r, describe(ring) + ": " + e.what());
    }
  }
  r.seconds = timer.seconds();
  return r;
}

PropertyResult prop_lifting(int cases, std::uint64_t seed) {
  PropertyResult r;
  r.name = "lifts from R_p and R/p satisfy their invariants";
  Timer timer;
  std::mt19937_64 rng(seed);
  while (r.cases < cases) {
    auto ring = random_ring(rng, RandomShape{4, 3, 6, 4, 3});
    if (active_levels(ring) < 2) {
      ++r.skipped;
      continue;
    }
    const ConvexLevel level = split_level(ring);
    const auto& val = ring.valuation();
    std::vector<Exponent> in_p, units;
    for (const auto& g : ring.positive_generators()) (head_unit(val, level, g) ? units : in_p).push_back(g);
    if (in_p.empty() || units.empty()) {
      ++r.skipped;  // center is not proper
      continue;
    }
    ++r.cases;
    try {
      // Ratio of two monomials of positive nu_1-value; with two levels the
      // numerator may also carry a nu_1-unit denominator, which is legal in R_p.
      auto pick = [&](const std::vector<Exponent>& from) {
        Exponent a = from[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(from.size()) - 1))];
        if (uniform(rng, 0, 1)) a = add(a, from[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(from.size()) - 1))]);
        return a;
      };
      Exponent a = pick(in_p), b = pick(in_p);
      if (val.levels() == 2 && uniform(rng, 0, 1))
        a = sub(a, units[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(units.size()) - 1))]);
      auto h = [&](const Exponent& e) {
        std::vector<std::int64_t> v;
        for (int k = 0; k < level.j; ++k) v.push_back(val.scaled_row(k, e));
        return v;
      };
      if (h(a) < h(b)) std::swap(a, b);
      auto rec = lift_from_localization(ring, level, a, b);
      const RingModel& after = rec.steps.empty() ? ring : *rec.steps.back().result;
      if (auto bad = check_localization_lift(ring, after, level, a, b)) record_failure(r, describe(ring) + ": " + *bad);

      Exponent ua = pick(units), ub = pick(units);
      if (val.compare(ua, ub) < 0) std::swap(ua, ub);
      auto res = lift_from_residue(ring, level, ua, ub);
      const RingModel& after2 = res.steps.empty() ? ring : *res.steps.back().result;
      if (auto bad = check_residue_lift(ring, after2, level, ua, ub)) record_failure(r, describe(ring) + ": " + *bad);
    } catch (const Error& e) {
      record_failure(r, describe(ring) + ": " + e.what());
    }
  }
  r.seconds = timer.seconds();
  return r;
}

PropertyResult prop_membership(int queries, std::uint64_t seed, int bound) {
  PropertyResult r;
  r.name = "membership search agrees with brute force";
  Timer timer;
  std::mt19937_64 rng(seed);
  while (r.cases < queries) {
    auto ring = random_ring(rng, RandomShape{4, 3, 6, 3, 3});
    for (int q = 0; q < 10 && r.cases < queries; ++q) {
      Exponent a = random_vector(rng, ring.dim(), 6);
      if (q % 2 == 0) {
        Exponent m = random_member(rng, ring, 1);
        for (const auto& u : ring.unit_generators()) m = add(m, scale(u, uniform(rng, -1, 1)));
        if (std::all_of(m.begin(), m.end(), [](std::int64_t x) { return x >= -6 && x <= 6; })) a = m;
      }
      ++r.cases;
      auto fast = monomial_member(a, ring);
      auto slow = monomial_member_bruteforce(a, ring, bound);
      if (fast.has_value() != slow.has_value()) {
        record_failure(r, describe(ring) + " a=" + to_string(a) + (fast ? " found only by search" : " found only by brute force"));
        continue;
      }
      for (const auto* e : {&fast, &slow})
        if (*e && ((*e)->reconstruct() != a || !lattice_contains(ring.unit_lattice(), (*e)->unit_part)))
          record_failure(r, describe(ring) + " a=" + to_string(a) + ": expression does not reconstruct");
    }
  }
  r.seconds = timer.seconds();
  return r;
}

PropertyResult prop_rank_one_d2(int cases, std::uint64_t seed, int fuel) {
  PropertyResult r;
  r.name = "rank-one surfaces resolve under pairmin";
  Timer timer;
  std::mt19937_64 rng(seed);
  while (r.cases < cases) {
    std::vector<Rational> row = {Rational(uniform(rng, -6, 6)), Rational(uniform(rng, 1, 6))};
    if (uniform(rng, 0, 1)) std::swap(row[0], row[1]);
    if (row[0] == 0 && row[1] == 0) continue;
    auto ring = ring_from_weights(rng, 2, {row}, uniform(rng, 2, 5), 6);
    if (dimension(ring) != 2 || is_regular(ring)) {
      ++r.skipped;
      continue;
    }
    ++r.cases;
    try {
      auto out = uniformize_rank_one(ring, Strategy{StrategyKind::pair_min, fuel});
      if (out.status != Status::done) {
        record_failure(r, describe(ring) + ": fuel exhausted");
        continue;
      }
      // The certificate must survive a check that does not reuse is_regular.
      const auto& params = out.certificate->parameters;
      std::vector<Exponent> basis = out.final.unit_lattice().basis;
      basis.insert(basis.end(), params.begin(), params.end());
      if (hnf(basis, 2) != out.final.monomial_lattice()) record_failure(r, describe(ring) + ": parameters do not span");
      for (const auto& g : out.final.positive_generators())
        if (!monomial_member_over(g, params, out.final.unit_lattice(), out.final.valuation()))
          record_failure(r, describe(ring) + ": generator outside parameter monoid");
    } catch (const Error& e) {
      record_failure(r, describe(ring) + ": " + e.what());
    }
  }
  r.seconds = timer.seconds();
  return r;
}

PropertyResult prop_reduction(int cases, std::uint64_t seed) {
  PropertyResult r;
  r.name = "reduction reaches a verified regular model";
  Timer timer;
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    auto inst = random_instance(rng, c);
    const std::string who = inst.name + " " + to_string(inst.mode) + " " + describe(inst.ring());
    try {
      auto trace = run_instance(inst);
      auto report = verify_trace(trace_to_json(inst, trace));
      // Rank-one strategies carry no termination guarantee beyond surfaces;
      // an exhausted run is inconclusive, but its partial trace must verify.
      if (trace.status != Status::done) {
        ++r.skipped;
        if (!report.valid || !report.partial) record_failure(r, who + ": partial trace rejected: " + report.failure);
        continue;
      }
      ++r.cases;
      if (!report.valid) record_failure(r, who + ": " + report.failure);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::out_of_range) {
        ++r.skipped;  // membership search limit: no claim either way
        continue;
      }
      ++r.cases;
      record_failure(r, who + ": " + e.what());
    }
  }
  r.seconds = timer.seconds();
  return r;
}

namespace {

void collect_vectors(json& j, std::vector<json*>& out) {
  if (j.is_array()) {
    if (!j.empty() && std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_number_integer(); })) {
      out.push_back(&j);
      return;
    }
    for (auto& x : j) collect_vectors(x, out);
  } else if (j.is_object()) {
    for (auto& [k, v] : j.items()) collect_vectors(v, out);
  }
}

std::vector<json> fixture_traces() {
  const char* fixtures[] = {
      R"({"name":"a1","dim":2,"weights":[["1","1"]],"generators":[[2,0],[1,1],[0,2]],"mode":"lu","strategy":"fullideal"})",
      R"({"name":"comp2","dim":2,"weights":[["1","0"],["0","1"]],"generators":[[2,0],[1,1],[0,2]],"mode":"weak","targets":[[2,2]]})",
      R"({"name":"emb1","dim":2,"weights":[["1","2"]],"generators":[[1,0],[0,1]],"mode":"embedded","targets":[[3,0],[0,2]]})",
  };
  std::vector<json> out;
  for (const char* f : fixtures) {
    auto inst = instance_from_json(json::parse(f));
    out.push_back(trace_to_json(inst, run_instance(inst)));
  }
  return out;
}

}  // namespace

PropertyResult prop_mutation(int mutations, std::uint64_t seed) {
  PropertyResult r;
  r.name = "verify rejects mutated traces";
  Timer timer;
  std::mt19937_64 rng(seed);
  std::vector<json> traces = fixture_traces();
  for (int i = 0; static_cast<int>(traces.size()) < 12 && i < 200; ++i) {
    auto inst = random_instance(rng, 1000 + i);
    try {
      auto t = run_instance(inst);
      if (t.status == Status::done && !t.steps.empty()) traces.push_back(trace_to_json(inst, t));
    } catch (const Error&) {
      // covered by prop_reduction
    }
  }
  for (const auto& t : traces) {
    auto report = verify_trace(t);
    if (!report.valid) record_failure(r, "unmutated trace rejected: " + report.failure);
  }
  for (int m = 0; m < mutations; ++m) {
    json t = traces[static_cast<std::size_t>(m) % traces.size()];
    std::string how;
    auto& params = t["certificate"]["parameters"];
    if (m % 5 == 4 && !params.empty()) {
      params.erase(params.size() - 1);
      how = "truncated certificate";
    } else {
      std::vector<json*> vectors;
      collect_vectors(t["steps"], vectors);
      collect_vectors(t["final"], vectors);
      collect_vectors(t["certificate"], vectors);
      json& v = *vectors[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(vectors.size()) - 1))];
      const auto k = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1));
      v[k] = v[k].get<std::int64_t>() + 1;
      how = "perturbed " + v.dump();
    }
    ++r.cases;
    auto report = verify_trace(t);
    if (report.valid) record_failure(r, t["instance"]["name"].get<std::string>() + ": accepted after " + how);
  }
  r.seconds = timer.seconds();
  return r;
}

std::string format_result(const PropertyResult& r) {
  std::ostringstream os;
  os << (r.ok() ? "PASS" : "FAIL") << "  " << r.name << ": " << r.cases << " cases, " << r.failures
     << " failures";
  if (r.skipped) os << ", " << r.skipped << " draws skipped";
  os.setf(std::ios::fixed);
  os.precision(2);
  os << " (" << r.seconds << " s)";
  if (!r.first_failure.empty()) os << "\n      first failure: " << r.first_failure;
  return os.str();
}

}  // namespace luniform
