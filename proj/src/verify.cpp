#include "luniform/verify.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>

#include "luniform/blowup.hpp"

namespace luniform {

using nlohmann::json;

namespace {

struct Invalid {
  std::string what;
};

[[noreturn]] void fail(const std::string& what) { throw Invalid{what}; }

void expect(bool ok, const std::string& what) {
  if (!ok) fail(what);
}

const json& at(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

Exponent vec(const json& j, std::size_t dim, const std::string& what) {
  expect(j.is_array() && j.size() == dim, what + ": not an integer vector of length " + std::to_string(dim));
  Exponent e;
  for (const auto& x : j) {
    expect(x.is_number_integer(), what + ": non-integer entry");
    e.push_back(x.get<std::int64_t>());
  }
  return e;
}

std::vector<Exponent> vecs(const json& j, std::size_t dim, const std::string& what) {
  expect(j.is_array(), what + ": not an array");
  std::vector<Exponent> out;
  for (const auto& e : j) out.push_back(vec(e, dim, what));
  return out;
}

std::vector<std::int64_t> ints(const json& j, const std::string& what) {
  expect(j.is_array(), what + ": not an array");
  std::vector<std::int64_t> out;
  for (const auto& x : j) {
    expect(x.is_number_integer(), what + ": non-integer entry");
    out.push_back(x.get<std::int64_t>());
  }
  return out;
}

std::vector<Exponent> sorted_unique(std::vector<Exponent> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool head_zero(const MonomialValuation& val, int level, const Exponent& a) {
  for (int k = 0; k < level; ++k)
    if (val.scaled_row(k, a) != 0) return false;
  return true;
}

RingModel local_ring(const RingModel& r, int level) { return localize_at(r, center_of(r, ConvexLevel{level})); }
RingModel residue(const RingModel& r, int level) { return residue_ring(r, center_of(r, ConvexLevel{level})); }

struct PendingLift {
  RingModel before;
  int level;
  Exponent a, b, s, t;
};

const std::set<std::string> known_tags = {"rank_one_oracle",    "divisibility",      "localization_lift",
                                          "residue_lift",       "unit_normalization", "value_ordering",
                                          "relation_elimination"};

void check_certificate(const json& c, const RingModel& final, const std::vector<Exponent>& targets,
                       bool embedded) {
  const std::size_t d = static_cast<std::size_t>(final.dim());
  const auto params = vecs(at(c, "parameters"), d, "certificate parameters");
  const auto& val = final.valuation();
  const auto& L = final.unit_lattice();
  const auto& N = final.monomial_lattice();

  for (const auto& p : params) {
    expect(val.positive(p), "parameter " + to_string(p) + " does not have positive value");
    expect(monomial_member(p, final).has_value(), "parameter " + to_string(p) + " is not in the final ring");
  }
  expect(static_cast<int>(params.size()) == N.rank() - L.rank(),
         "parameter count " + std::to_string(params.size()) + " differs from the dimension " +
             std::to_string(N.rank() - L.rank()));

  // Units and parameters together must be a basis of N: in N-coordinates
  // their matrix has rank(N) elementary divisors, all equal to 1.
  std::vector<std::vector<Integer>> rows;
  std::vector<Exponent> all = L.basis;
  all.insert(all.end(), params.begin(), params.end());
  for (const auto& v : all) {
    auto coords = lattice_coordinates(N, v);
    expect(coords.has_value(), "snf check: " + to_string(v) + " lies outside the monomial lattice");
    rows.push_back(*coords);
  }
  auto divisors = snf(rows);
  expect(static_cast<int>(divisors.size()) == N.rank() &&
             std::all_of(divisors.begin(), divisors.end(), [](const Integer& x) { return x == 1; }),
         "snf check: units and parameters do not form a basis of the monomial lattice");

  for (const auto& g : final.positive_generators())
    expect(monomial_member_over(g, params, L, val).has_value(),
           "generator " + to_string(g) + " is not a parameter monomial times a unit");

  const auto& ex = at(c, "expressions");
  expect(ex.is_array() && ex.size() == targets.size(), "expression count differs from the target count");
  std::vector<std::vector<std::int64_t>> gammas;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto target = vec(at(ex[i], "target"), d, "expression target");
    const auto gamma = ints(at(ex[i], "gamma"), "expression gamma");
    const auto unit = vec(at(ex[i], "unit"), d, "expression unit");
    expect(target == targets[i], "expression " + std::to_string(i) + " names the wrong target");
    expect(gamma.size() == params.size(), "expression " + std::to_string(i) + ": gamma has the wrong length");
    Exponent r = unit;
    for (std::size_t k = 0; k < params.size(); ++k) {
      expect(gamma[k] >= 0, "expression " + std::to_string(i) + ": negative parameter exponent");
      r = add(r, scale(params[k], gamma[k]));
    }
    expect(r == target, "expression " + std::to_string(i) + " does not reconstruct " + to_string(target));
    expect(lattice_contains(L, unit), "expression " + std::to_string(i) + ": unit part is not a unit");
    gammas.push_back(gamma);
  }

  const auto& w = at(c, "witnesses");
  expect(w.is_array(), "witnesses: not an array");
  if (!embedded) {
    expect(w.empty(), "witnesses present outside embedded mode");
    return;
  }
  expect(w.size() + 1 == std::max<std::size_t>(targets.size(), 1), "witness count differs from targets - 1");
  for (std::size_t i = 0; i + 1 < gammas.size(); ++i) {
    const auto wi = ints(w[i], "witness");
    expect(wi.size() == params.size(), "witness " + std::to_string(i) + " has the wrong length");
    for (std::size_t k = 0; k < wi.size(); ++k) {
      expect(wi[k] == gammas[i + 1][k] - gammas[i][k], "witness " + std::to_string(i) + " is not the difference");
      expect(wi[k] >= 0, "witness " + std::to_string(i) + " is negative: divisibility fails");
    }
  }
}

void run(const json& trace, VerifyReport& report) {
  expect(at(trace, "format") == 1, "unsupported trace format");
  const auto& inst = at(trace, "instance");
  const int dimi = at(inst, "dim").get<int>();
  expect(dimi > 0, "instance dim must be positive");
  const std::size_t d = static_cast<std::size_t>(dimi);
  std::vector<std::vector<Rational>> weights;
  for (const auto& row : at(inst, "weights")) {
    expect(row.is_array() && row.size() == d, "weight row length");
    weights.emplace_back();
    for (const auto& q : row) {
      expect(q.is_string(), "weights must be strings");
      weights.back().push_back(parse_rational(q.get<std::string>()));
    }
  }
  expect(!weights.empty(), "empty weight matrix");
  const MonomialValuation val(weights);
  const auto targets = vecs(at(inst, "targets"), d, "targets");
  const std::string mode = at(inst, "mode").get<std::string>();
  expect(mode == "lu" || mode == "weak" || mode == "embedded", "unknown mode");

  RingModel cur(dimi, vecs(at(inst, "generators"), d, "instance generators"), val);
  for (const auto& t : targets) expect(monomial_member(t, cur).has_value(), "target " + to_string(t) + " not in R");

  std::optional<PendingLift> pending;
  std::map<std::string, int> phases;
  const auto& steps = at(trace, "steps");
  expect(steps.is_array(), "steps: not an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    const std::string where = "step " + std::to_string(i) + ": ";
    const std::string tag = at(s, "tag").get<std::string>();
    expect(known_tags.count(tag) == 1, where + "unknown tag '" + tag + "'");
    ++phases[tag];
    const auto ideal = vecs(at(s, "ideal"), d, where + "ideal");
    const auto pivot = vec(at(s, "pivot"), d, where + "pivot");
    const auto adjoined = vecs(at(s, "adjoined"), d, where + "adjoined");

    expect(!ideal.empty() && ideal == sorted_unique(ideal), where + "ideal must be sorted and duplicate-free");
    for (const auto& u : ideal) expect(monomial_member(u, cur).has_value(), where + to_string(u) + " not in the ring");
    expect(std::find(ideal.begin(), ideal.end(), pivot) != ideal.end(), where + "pivot is not an ideal member");
    for (const auto& u : ideal) expect(val.compare(u, pivot) >= 0, where + "pivot does not have minimal value");
    expect(adjoined_differences(ideal, pivot) == adjoined, where + "adjoined vectors do not match the ideal");
    std::optional<RingModel> next;
    try {
      next.emplace(cur.with_generators(adjoined));
    } catch (const Error& e) {
      fail(where + "centering: " + e.what());
    }

    const bool lifted = tag == "localization_lift" || tag == "residue_lift";
    expect(lifted == s.contains("lift"), where + "lift data does not match the tag");
    if (lifted) {
      const auto& l = at(s, "lift");
      const int level = at(l, "level").get<int>();
      const int part = at(l, "part").get<int>();
      expect(level >= 1 && level <= val.levels(), where + "lift level out of range");
      const auto a = vec(at(l, "numerator"), d, where + "numerator");
      const auto b = vec(at(l, "denominator"), d, where + "denominator");
      const auto sm = vec(at(l, "multiplier"), d, where + "multiplier");
      const auto t = vec(at(l, "clearing"), d, where + "clearing");
      const std::string stage = at(l, "stage").get<std::string>();
      expect(stage == (tag == "localization_lift" ? "localization" : "residue"), where + "lift stage mismatch");
      if (stage == "localization") {
        expect(head_zero(val, level, sm) && head_zero(val, level, t), where + "multiplier or clearing is not a head unit");
        if (part == 1) {
          expect(!pending, where + "lift part 1 while a lift is open");
          const Exponent as = add(a, sm), bs = add(b, sm);
          expect(ideal == sorted_unique({t, add(as, t), add(bs, t)}) && pivot == t,
                 where + "first lift step is not the blowup along (t, a s t, b s t)");
          pending = PendingLift{cur, level, a, b, sm, t};
        } else {
          expect(part == 2 && pending.has_value(), where + "lift part 2 without part 1");
          expect(pending->level == level && pending->a == a && pending->b == b && pending->s == sm && pending->t == t,
                 where + "lift parts disagree");
          const Exponent as = add(a, sm), bs = add(b, sm);
          expect(ideal == sorted_unique({as, bs}), where + "second lift step is not along (a s, b s)");
          auto direct = simple_blowup(local_ring(pending->before, level), a, b);
          expect(ring_equal(local_ring(*next, level), *direct.result),
                 where + "localization invariant fails: R_p of the lift differs from the direct blowup");
          pending.reset();
        }
      } else {
        expect(part == 1 && !pending, where + "residue lift out of sequence");
        expect(head_zero(val, level, a) && head_zero(val, level, b), where + "residue representatives are not head units");
        expect(ideal == sorted_unique({a, b}) && pivot == b, where + "residue lift is not the blowup a/b");
        auto direct = simple_blowup(residue(cur, level), a, b);
        expect(ring_equal(residue(*next, level), *direct.result),
               where + "residue invariant fails: R/p of the lift differs from the direct blowup");
        expect(ring_equal(local_ring(*next, level), local_ring(cur, level)), where + "residue lift changed R_p");
      }
    } else {
      expect(!pending, where + "unfinished localization lift");
    }
    cur = std::move(*next);
    report.steps_checked = static_cast<int>(i) + 1;
  }
  expect(!pending, "trace ends inside a localization lift");

  const auto& fin = at(trace, "final");
  expect(vecs(at(fin, "generators"), d, "final generators") == cur.generators(),
         "final ring does not match the replayed ring");
  expect(vecs(at(fin, "inverted"), d, "final inverted") == cur.inverted_generators(),
         "final inverted generators do not match");

  const auto& ph = at(trace, "phases");
  expect(ph.is_object(), "phases: not an object");
  std::map<std::string, int> recorded;
  for (auto it = ph.begin(); it != ph.end(); ++it) recorded[it.key()] = it.value().get<int>();
  expect(recorded == phases, "phase counts do not match the steps");

  const std::string status = at(trace, "status").get<std::string>();
  if (status == "fuel_exhausted") {
    expect(at(trace, "certificate").is_null(), "fuel-exhausted trace carries a certificate");
    report.partial = true;
    return;
  }
  expect(status == "done", "unknown status '" + status + "'");
  const auto& c = at(trace, "certificate");
  expect(c.is_object(), "done trace without certificate");
  check_certificate(c, cur, targets, mode == "embedded");
}

}  // namespace

VerifyReport verify_trace(const json& trace) {
  VerifyReport report;
  try {
    run(trace, report);
    report.valid = true;
  } catch (const Invalid& e) {
    report.failure = e.what;
  } catch (const Error& e) {
    report.failure = std::string("step ") + std::to_string(report.steps_checked) + ": " + e.what();
  } catch (const json::exception& e) {
    report.failure = std::string("malformed trace: ") + e.what();
  }
  return report;
}

VerifyReport verify_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::malformed, path.string() + ": " + e.what());
  }
  return verify_trace(j);
}

}  // namespace luniform
