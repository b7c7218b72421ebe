#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "luniform/lifting.hpp"
#include "luniform/rank_one.hpp"

namespace luniform {

enum class Mode { lu, weak_embedded, embedded };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

namespace tag {
inline constexpr const char* rank_one = "rank_one_oracle";
inline constexpr const char* divisibility = "divisibility";
inline constexpr const char* localization_lift = "localization_lift";
inline constexpr const char* residue_lift = "residue_lift";
inline constexpr const char* unit_normalization = "unit_normalization";
inline constexpr const char* value_ordering = "value_ordering";
inline constexpr const char* relation_elimination = "relation_elimination";
}  // namespace tag

struct LiftInfo {
  LiftStage stage = LiftStage::localization;
  int level = 0;
  int part = 1;  // 1 or 2 for localization lifts
  Exponent numerator, denominator, multiplier, clearing;
};

struct TraceStep {
  std::string tag;
  BlowupStep step;
  std::optional<LiftInfo> lift;
};

/// a + excess = rhs, with a a nu_1-unit monomial of R and rhs a parameter
/// monomial of R_p times a nu_1-unit monomial of R.
struct BinomialRelation {
  int k = 0;
  Exponent a;
  Exponent excess;
  MonomialExpression rhs;
};

struct TargetExpression {
  Exponent target;
  std::vector<std::int64_t> gamma;  // over Certificate::parameters
  Exponent unit;
};

struct Certificate {
  std::vector<Exponent> parameters;
  std::vector<TargetExpression> expressions;
  std::vector<std::vector<std::int64_t>> witnesses;  // embedded mode only
};

struct Trace {
  RingModel initial;
  Mode mode = Mode::lu;
  std::vector<Exponent> targets;
  Strategy strategy;
  std::vector<TraceStep> steps;
  RingModel final;
  std::optional<Certificate> certificate;  // set iff done
  Status status = Status::done;
  std::map<std::string, int> phases;
};

Trace uniformize(const RingModel& ring, Mode mode, const std::vector<Exponent>& targets,
                 const Strategy& strategy);

/// Factorization f = gamma . y + alpha of a target over parameters y of R_p.
struct UnitFactor {
  std::vector<std::int64_t> gamma;
  Exponent alpha;
};

UnitFactor factor_over(const Exponent& f, const std::vector<Exponent>& y, const RingModel& local);

/// Blowup along (n x, y_1..y_r) that makes the residue values of the alpha
/// factors nondecreasing; none when they already are.
std::optional<BlowupStep> order_unit_values(const RingModel& ring, ConvexLevel level,
                                            const std::vector<Exponent>& y,
                                            const std::vector<UnitFactor>& factors);

/// Relations for the generators of p that are not in
/// monoid(y, nu_1-unit generators) + L.
std::vector<BinomialRelation> extract_relations(const RingModel& ring, ConvexLevel level,
                                                const std::vector<Exponent>& y);

/// Blows up along (a_k, y) until no relation is left; y is replaced by the
/// transformed parameters.
std::vector<BlowupStep> eliminate_excess_generators(const RingModel& ring, ConvexLevel level,
                                                    std::vector<Exponent>& y, FuelGauge& fuel,
                                                    bool& exhausted);

}  // namespace luniform
