#pragma once

#include <optional>
#include <string>
#include <vector>

#include "luniform/blowup.hpp"

namespace luniform {

enum class StrategyKind { pair_min, full_ideal };

struct Strategy {
  StrategyKind kind = StrategyKind::pair_min;
  int fuel = 256;
};

std::string to_string(StrategyKind kind);
StrategyKind parse_strategy(const std::string& text);

/// Blowup budget shared by every phase of one run.
class FuelGauge {
 public:
  explicit FuelGauge(int fuel) : left_(fuel) {
    if (fuel <= 0) throw Error(ErrorKind::out_of_range, "fuel must be positive");
  }
  bool empty() const { return left_ <= 0; }
  void burn() { --left_; }
  int left() const { return left_; }

 private:
  int left_;
};

enum class Status { done, fuel_exhausted };

struct RankOneOutcome {
  std::vector<BlowupStep> steps;
  RingModel final;
  std::optional<RegularityCertificate> certificate;  // set iff done
  Status status = Status::done;
};

/// Parameter exponents gamma (aligned with `params`) and unit part of a
/// monomial of a regular ring.
struct ParameterForm {
  std::vector<std::int64_t> gamma;
  Exponent unit;
};

/// Requires the valuation to be nonzero in at most one row on the generators.
RankOneOutcome uniformize_rank_one(const RingModel& ring, const Strategy& strategy);
RankOneOutcome uniformize_rank_one(const RingModel& ring, StrategyKind kind, FuelGauge& fuel);

std::vector<MonomialExpression> monomialize_targets(const RankOneOutcome& outcome,
                                                    const std::vector<Exponent>& targets);

/// Coordinates of `a` over params plus the unit lattice; throws not_member
/// when a is not params-monomial times unit.
ParameterForm parameter_form(const Exponent& a, const std::vector<Exponent>& params, const RingModel& ring);

/// Blows up pairs of parameters until the targets' parameter exponents form a
/// componentwise chain. Targets must be sorted by value.
RankOneOutcome enforce_divisibility(RankOneOutcome outcome, const std::vector<Exponent>& targets,
                                    FuelGauge& fuel);
RankOneOutcome enforce_divisibility(RankOneOutcome outcome, const std::vector<Exponent>& targets,
                                    const Strategy& strategy);

/// Differences gamma_{i+1} - gamma_i of consecutive parameter forms.
std::vector<std::vector<std::int64_t>> chain_witnesses(const std::vector<ParameterForm>& forms);

}  // namespace luniform
