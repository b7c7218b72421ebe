#include "luniform/reduction.hpp"

#include <algorithm>
#include <numeric>

namespace luniform {

namespace {

struct Outcome {
  std::vector<TraceStep> steps;
  RingModel final;
  Status status = Status::done;
};

std::int64_t total(const std::vector<std::int64_t>& gamma) {
  return std::accumulate(gamma.begin(), gamma.end(), std::int64_t{0});
}

std::vector<BlowupStep> chain_of(const std::vector<TraceStep>& steps) {
  std::vector<BlowupStep> out;
  for (const auto& s : steps) out.push_back(s.step);
  return out;
}

void append_lifts(Outcome& out, const std::vector<LiftRecord>& records, const char* tag_name) {
  for (const auto& rec : records) {
    int part = 1;
    for (const auto& step : rec.steps) {
      LiftInfo info{rec.stage, rec.level, part++, rec.numerator, rec.denominator, rec.multiplier, rec.clearing};
      out.steps.push_back(TraceStep{tag_name, step, info});
      out.final = *step.result;
    }
  }
}

void push(Outcome& out, const char* tag_name, BlowupStep step) {
  out.final = *step.result;
  out.steps.push_back(TraceStep{tag_name, std::move(step), std::nullopt});
}

// Blowup along ({pivot} + y). The pivot is a nu_1-unit and every y has
// positive nu_1-value, so the pivot is the unique minimum; y is moved to y - pivot.
BlowupStep blowup_against_parameters(const RingModel& ring, const Exponent& pivot, std::vector<Exponent>& y) {
  std::vector<Exponent> ideal = y;
  ideal.push_back(pivot);
  auto step = blowup_with_pivot(ring, std::move(ideal), pivot);
  for (auto& yj : y) yj = sub(yj, pivot);
  return step;
}

void shift_factors(std::vector<UnitFactor>& factors, const Exponent& pivot) {
  for (auto& f : factors) f.alpha = add(f.alpha, scale(pivot, total(f.gamma)));
}

Outcome solve(const RingModel& ring, Mode mode, const std::vector<Exponent>& targets, StrategyKind kind,
              FuelGauge& fuel) {
  Outcome out{{}, ring, Status::done};
  if (ring.positive_generators().empty()) return out;

  if (active_levels(ring) <= 1) {
    auto r1 = uniformize_rank_one(ring, kind, fuel);
    for (auto& s : r1.steps) push(out, tag::rank_one, s);
    if (r1.status == Status::done && mode == Mode::embedded && targets.size() > 1) {
      const std::size_t before = r1.steps.size();
      r1 = enforce_divisibility(std::move(r1), targets, fuel);
      for (std::size_t i = before; i < r1.steps.size(); ++i) push(out, tag::divisibility, r1.steps[i]);
    }
    out.final = r1.final;
    out.status = r1.status;
    return out;
  }

  const ConvexLevel level = split_level(ring);

  // (a) uniformize R_p along nu_1 and lift the chain to R.
  {
    auto sub = solve(localize_at(ring, center_of(ring, level)), mode, targets, kind, fuel);
    append_lifts(out, lift_sequence_from_localization(ring, level, chain_of(sub.steps)), tag::localization_lift);
    if (sub.status != Status::done) {
      out.status = sub.status;
      return out;
    }
  }

  std::vector<Exponent> y = parameters_in_p(out.final, center_of(out.final, level));
  std::vector<UnitFactor> factors;
  {
    const auto local = localize_at(out.final, center_of(out.final, level));
    for (const auto& f : targets) factors.push_back(factor_over(f, y, local));
  }

  // Factors alpha_i of R_p may have denominators outside R; one blowup along
  // (beta, y) with beta their common denominator moves them into R.
  if (!factors.empty()) {
    Exponent beta = zero_exponent(static_cast<std::size_t>(ring.dim()));
    for (const auto& f : factors)
      if (!monomial_member(f.alpha, out.final)) beta = add(beta, split_unit(out.final, level, f.alpha).second);
    if (!is_zero(beta)) {
      if (fuel.empty()) {
        out.status = Status::fuel_exhausted;
        return out;
      }
      fuel.burn();
      push(out, tag::unit_normalization, blowup_against_parameters(out.final, beta, y));
      shift_factors(factors, beta);
    }
  }

  if (mode == Mode::embedded) {
    if (auto step = order_unit_values(out.final, level, y, factors)) {
      if (fuel.empty()) {
        out.status = Status::fuel_exhausted;
        return out;
      }
      fuel.burn();
      Exponent pivot = step->pivot;
      for (auto& yj : y) yj = sub(yj, pivot);
      push(out, tag::value_ordering, std::move(*step));
      shift_factors(factors, pivot);
    }
  }

  // (b) uniformize R/p along nu_2 and lift.
  {
    auto residue = residue_ring(out.final, center_of(out.final, level));
    if (!residue.positive_generators().empty()) {
      std::vector<Exponent> sub_targets;
      if (mode != Mode::lu)
        for (const auto& f : factors) sub_targets.push_back(f.alpha);
      if (mode == Mode::weak_embedded)
        for (const auto& rel : extract_relations(out.final, level, y)) sub_targets.push_back(rel.a);
      auto sub = solve(residue, mode, sub_targets, kind, fuel);
      append_lifts(out, lift_sequence_from_residue(out.final, level, chain_of(sub.steps)), tag::residue_lift);
      if (sub.status != Status::done) {
        out.status = sub.status;
        return out;
      }
    }
  }

  bool exhausted = false;
  for (auto& s : eliminate_excess_generators(out.final, level, y, fuel, exhausted))
    push(out, tag::relation_elimination, std::move(s));
  if (exhausted) {
    out.status = Status::fuel_exhausted;
    return out;
  }

  if (!is_regular(out.final)) throw Error(ErrorKind::not_regular, "reduction ended on a non-regular ring");
  auto x = is_regular(residue_ring(out.final, center_of(out.final, level)));
  if (!x || static_cast<int>(y.size() + x->parameters.size()) != dimension(out.final))
    throw Error(ErrorKind::not_regular, "parameter count of R_p and R/p does not add up to dim R");
  return out;
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::lu: return "lu";
    case Mode::weak_embedded: return "weak";
    case Mode::embedded: return "embedded";
  }
  return "lu";
}

Mode parse_mode(const std::string& text) {
  if (text == "lu") return Mode::lu;
  if (text == "weak") return Mode::weak_embedded;
  if (text == "embedded") return Mode::embedded;
  throw Error(ErrorKind::malformed, "unknown mode '" + text + "' (expected lu, weak or embedded)");
}

UnitFactor factor_over(const Exponent& f, const std::vector<Exponent>& y, const RingModel& local) {
  auto form = parameter_form(f, y, local);
  return UnitFactor{std::move(form.gamma), std::move(form.unit)};
}

std::optional<BlowupStep> order_unit_values(const RingModel& ring, ConvexLevel level,
                                            const std::vector<Exponent>& y,
                                            const std::vector<UnitFactor>& factors) {
  const auto& val = ring.valuation();
  bool ordered = true;
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    const auto& g = factors[i].gamma;
    const auto& h = factors[i + 1].gamma;
    for (std::size_t k = 0; k < g.size(); ++k)
      if (g[k] > h[k]) throw Error(ErrorKind::malformed, "parameter exponents of the targets are not chained");
    if (val.compare(factors[i].alpha, factors[i + 1].alpha) > 0) {
      if (g == h) throw Error(ErrorKind::malformed, "equal parameter exponents with decreasing unit values");
      ordered = false;
    }
  }
  if (ordered) return std::nullopt;

  for (const auto& x : head_units(ring, level)) {
    if (!val.positive(x)) continue;
    const auto vx = val.scaled(x);
    std::int64_t n = 0;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < factors.size() && ok; ++i) {
      const std::int64_t k = total(factors[i + 1].gamma) - total(factors[i].gamma);
      if (k == 0) continue;
      auto lo = val.scaled(factors[i].alpha), hi = val.scaled(factors[i + 1].alpha);
      std::vector<std::int64_t> v(lo.size()), w(lo.size());
      for (std::size_t c = 0; c < lo.size(); ++c) {
        v[c] = hi[c] - lo[c];
        w[c] = k * vx[c];
      }
      auto m = min_multiple(v, w, true);
      if (m < 0) ok = false;
      n = std::max(n, m);
    }
    if (!ok) continue;
    std::vector<Exponent> yy = y;
    return blowup_against_parameters(ring, scale(x, n), yy);
  }
  throw Error(ErrorKind::lift_obstruction, "no head unit of positive value orders the unit factors");
}

std::vector<BinomialRelation> extract_relations(const RingModel& ring, ConvexLevel level,
                                                const std::vector<Exponent>& y) {
  const auto& val = ring.valuation();
  std::vector<Exponent> positives = y;
  for (const auto& u : head_units(ring, level))
    if (val.positive(u)) positives.push_back(u);
  positives = irredundant_generators(positives, ring.unit_lattice(), val);
  const auto local = localize_at(ring, center_of(ring, level));

  std::vector<BinomialRelation> out;
  for (const auto& g : ring.generators()) {
    if (head_unit(val, level, g) || std::find(y.begin(), y.end(), g) != y.end()) continue;
    if (monomial_member_over(g, positives, ring.unit_lattice(), val)) continue;
    auto form = parameter_form(g, y, local);
    auto [plus, minus] = split_unit(ring, level, form.unit);
    BinomialRelation rel;
    rel.k = static_cast<int>(out.size()) + 1;
    rel.a = minus;
    rel.excess = g;
    rel.rhs.target = add(minus, g);
    for (std::size_t i = 0; i < y.size(); ++i)
      if (form.gamma[i] != 0) rel.rhs.terms.emplace_back(y[i], form.gamma[i]);
    rel.rhs.unit_part = plus;
    out.push_back(std::move(rel));
  }
  return out;
}

std::vector<BlowupStep> eliminate_excess_generators(const RingModel& ring, ConvexLevel level,
                                                    std::vector<Exponent>& y, FuelGauge& fuel,
                                                    bool& exhausted) {
  std::vector<BlowupStep> steps;
  RingModel cur = ring;
  exhausted = false;
  while (true) {
    auto rels = extract_relations(cur, level, y);
    if (rels.empty()) break;
    if (fuel.empty()) {
      exhausted = true;
      break;
    }
    fuel.burn();
    steps.push_back(blowup_against_parameters(cur, rels.front().a, y));
    cur = *steps.back().result;
  }
  return steps;
}

Trace uniformize(const RingModel& ring, Mode mode, const std::vector<Exponent>& targets,
                 const Strategy& strategy) {
  for (const auto& t : targets)
    if (!monomial_member(t, ring)) throw Error(ErrorKind::not_member, "target " + to_string(t) + " is not in the ring");
  if (mode == Mode::embedded)
    for (std::size_t i = 0; i + 1 < targets.size(); ++i)
      if (ring.valuation().compare(targets[i], targets[i + 1]) > 0)
        throw Error(ErrorKind::malformed, "embedded targets must be sorted by value");

  FuelGauge fuel(strategy.fuel);
  auto out = solve(ring, mode, targets, strategy.kind, fuel);
  Trace trace{ring, mode, targets, strategy, std::move(out.steps), out.final, std::nullopt, out.status, {}};
  for (const auto& s : trace.steps) ++trace.phases[s.tag];
  if (trace.status != Status::done) return trace;

  auto cert = is_regular(trace.final);
  if (!cert) throw Error(ErrorKind::not_regular, "final ring is not regular");
  Certificate c;
  c.parameters = cert->parameters;
  std::vector<ParameterForm> forms;
  for (const auto& t : targets) {
    forms.push_back(parameter_form(t, c.parameters, trace.final));
    c.expressions.push_back(TargetExpression{t, forms.back().gamma, forms.back().unit});
  }
  if (mode == Mode::embedded) {
    c.witnesses = chain_witnesses(forms);
    for (const auto& w : c.witnesses)
      for (auto x : w)
        if (x < 0) throw Error(ErrorKind::not_regular, "divisibility chain was not reached");
  }
  trace.certificate = std::move(c);
  return trace;
}

}  // namespace luniform
