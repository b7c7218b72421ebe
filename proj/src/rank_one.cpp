#include "luniform/rank_one.hpp"

#include <algorithm>

namespace luniform {

std::string to_string(StrategyKind kind) {
  return kind == StrategyKind::pair_min ? "pairmin" : "fullideal";
}

StrategyKind parse_strategy(const std::string& text) {
  if (text == "pairmin") return StrategyKind::pair_min;
  if (text == "fullideal") return StrategyKind::full_ideal;
  throw Error(ErrorKind::malformed, "unknown strategy '" + text + "' (expected pairmin or fullideal)");
}

namespace {

// When N / L has torsion no parameter system exists however long the
// strategy runs. A missing unit g = m - m' (m, m' monomials of the ring) has
// value zero, so nu(m) = nu(m') and R[m - m'] is a legal simple blowup.
std::optional<BlowupStep> saturation_step(const RingModel& ring) {
  auto missing = saturation_deficit(ring.unit_lattice(), ring.monomial_lattice());
  if (missing.empty()) return std::nullopt;
  const Exponent& g = missing.front();
  // Small witnesses first: h and h + g (or h - g) both in the ring, h a
  // generator or a sum of two. Queries are bounded by nu(h).
  const auto& irr = ring.irreducible_generators();
  std::vector<Exponent> cands = irr;
  const std::size_t singles = cands.size();
  for (std::size_t i = 0; i < singles; ++i)
    for (std::size_t j = i; j < singles; ++j) cands.push_back(add(cands[i], cands[j]));
  const auto& val = ring.valuation();
  std::stable_sort(cands.begin(), cands.end(),
                   [&](const Exponent& x, const Exponent& y) { return val.compare(x, y) < 0; });
  for (const auto& h : cands) {
    if (monomial_member(add(h, g), ring)) return simple_blowup(ring, add(h, g), h);
    if (monomial_member(sub(h, g), ring)) return simple_blowup(ring, h, sub(h, g));
  }
  // Irreducibles and units generate N; units may enter with either sign.
  std::vector<Exponent> basis = irr;
  basis.insert(basis.end(), ring.unit_lattice().basis.begin(), ring.unit_lattice().basis.end());
  auto c = integer_combination(g, basis);
  if (!c) throw Error(ErrorKind::not_member, "saturation: unit outside the monomial lattice");
  Exponent m(static_cast<std::size_t>(ring.dim()), 0), m2 = m;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if ((*c)[i] >= 0 || i >= irr.size())
      m = add(m, scale(basis[i], (*c)[i]));
    else
      m2 = add(m2, scale(basis[i], -(*c)[i]));
  }
  return simple_blowup(ring, m, m2);
}

}  // namespace

RankOneOutcome uniformize_rank_one(const RingModel& ring, StrategyKind kind, FuelGauge& fuel) {
  if (active_levels(ring) > 1)
    throw Error(ErrorKind::malformed, "rank-one oracle: valuation has more than one active level");
  RankOneOutcome out{{}, ring, std::nullopt, Status::done};
  const auto& val = ring.valuation();
  while (true) {
    if (auto cert = is_regular(out.final)) {
      out.certificate = std::move(cert);
      return out;
    }
    if (fuel.empty()) {
      out.status = Status::fuel_exhausted;
      return out;
    }
    if (auto sat = saturation_step(out.final)) {
      fuel.burn();
      out.steps.push_back(std::move(*sat));
      out.final = *out.steps.back().result;
      continue;
    }
    auto gens = minimal_generators(out.final);
    if (gens.size() < 2)
      throw Error(ErrorKind::not_regular, "rank-one oracle: saturated ring with one generator is not regular");
    std::stable_sort(gens.begin(), gens.end(),
                     [&](const Exponent& a, const Exponent& b) { return val.compare(a, b) < 0; });
    if (kind == StrategyKind::pair_min) gens.resize(2);
    fuel.burn();
    out.steps.push_back(blowup_along(out.final, std::move(gens)));
    out.final = *out.steps.back().result;
  }
}

RankOneOutcome uniformize_rank_one(const RingModel& ring, const Strategy& strategy) {
  FuelGauge fuel(strategy.fuel);
  return uniformize_rank_one(ring, strategy.kind, fuel);
}

ParameterForm parameter_form(const Exponent& a, const std::vector<Exponent>& params, const RingModel& ring) {
  std::vector<Exponent> basis = params;
  const auto& units = ring.unit_lattice().basis;
  basis.insert(basis.end(), units.begin(), units.end());
  auto c = integer_combination(a, basis);
  if (!c) throw Error(ErrorKind::not_member, to_string(a) + " is outside the monomial lattice");
  ParameterForm f;
  f.gamma.assign(c->begin(), c->begin() + static_cast<std::ptrdiff_t>(params.size()));
  f.unit = a;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (f.gamma[i] < 0)
      throw Error(ErrorKind::not_member, to_string(a) + " is not a parameter monomial times a unit");
    f.unit = sub(f.unit, scale(params[i], f.gamma[i]));
  }
  return f;
}

std::vector<MonomialExpression> monomialize_targets(const RankOneOutcome& outcome,
                                                    const std::vector<Exponent>& targets) {
  if (outcome.status != Status::done || !outcome.certificate)
    throw Error(ErrorKind::not_regular, "monomialize_targets needs a finished outcome");
  const auto& params = outcome.certificate->parameters;
  std::vector<MonomialExpression> out;
  for (const auto& t : targets) {
    auto e = monomial_member_over(t, params, outcome.final.unit_lattice(), outcome.final.valuation());
    if (!e) throw Error(ErrorKind::not_member, "target " + to_string(t) + " is not in the ring");
    out.push_back(std::move(*e));
  }
  return out;
}

std::vector<std::vector<std::int64_t>> chain_witnesses(const std::vector<ParameterForm>& forms) {
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t i = 0; i + 1 < forms.size(); ++i) {
    std::vector<std::int64_t> w(forms[i].gamma.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = forms[i + 1].gamma[k] - forms[i].gamma[k];
    out.push_back(std::move(w));
  }
  return out;
}

RankOneOutcome enforce_divisibility(RankOneOutcome outcome, const std::vector<Exponent>& targets,
                                    FuelGauge& fuel) {
  if (outcome.status != Status::done || !outcome.certificate)
    throw Error(ErrorKind::not_regular, "enforce_divisibility needs a finished outcome");
  const auto& val = outcome.final.valuation();
  for (std::size_t i = 0; i + 1 < targets.size(); ++i)
    if (val.compare(targets[i], targets[i + 1]) > 0)
      throw Error(ErrorKind::malformed, "targets are not sorted by value");

  while (true) {
    const auto& params = outcome.certificate->parameters;
    std::vector<ParameterForm> forms;
    for (const auto& t : targets) forms.push_back(parameter_form(t, params, outcome.final));
    std::optional<std::pair<std::size_t, std::size_t>> excess;
    for (std::size_t i = 0; i + 1 < forms.size() && !excess; ++i) {
      const auto& g = forms[i].gamma;
      const auto& h = forms[i + 1].gamma;
      std::size_t a = g.size(), b = g.size();
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (a == g.size() && g[k] > h[k]) a = k;
        if (b == g.size() && h[k] > g[k]) b = k;
      }
      if (a == g.size()) continue;
      if (b == g.size())
        throw Error(ErrorKind::malformed, "target " + to_string(targets[i + 1]) +
                                              " has smaller parameter exponents than its predecessor");
      excess = std::make_pair(a, b);
    }
    if (!excess) return outcome;
    if (fuel.empty()) {
      outcome.status = Status::fuel_exhausted;
      outcome.certificate.reset();
      return outcome;
    }
    fuel.burn();
    outcome.steps.push_back(blowup_along(outcome.final, {params[excess->first], params[excess->second]}));
    outcome.final = *outcome.steps.back().result;
    outcome.certificate = is_regular(outcome.final);
    if (!outcome.certificate)
      throw Error(ErrorKind::not_regular, "pair blowup of two parameters lost regularity");
  }
}

RankOneOutcome enforce_divisibility(RankOneOutcome outcome, const std::vector<Exponent>& targets,
                                    const Strategy& strategy) {
  FuelGauge fuel(strategy.fuel);
  return enforce_divisibility(std::move(outcome), targets, fuel);
}

}  // namespace luniform
