#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "luniform/reduction.hpp"

namespace luniform {

struct Instance {
  std::string name;
  int dim = 0;
  int levels = 0;
  std::vector<std::vector<Rational>> weights;
  std::vector<Exponent> generators;
  std::vector<Exponent> targets;
  Mode mode = Mode::lu;
  Strategy strategy;

  RingModel ring() const;
};

/// Validates shape, centering, target membership and (embedded) target order.
Instance instance_from_json(const nlohmann::json& j);
Instance parse_instance(const std::filesystem::path& path);
nlohmann::json instance_to_json(const Instance& inst);

Trace run_instance(const Instance& inst);

nlohmann::json trace_to_json(const Instance& inst, const Trace& trace);

/// Deterministic text form (sorted keys, two-space indent, trailing newline).
std::string dump_json(const nlohmann::json& j);

nlohmann::json exponent_json(const Exponent& e);
Exponent exponent_from_json(const nlohmann::json& j, std::size_t dim, const char* what);

}  // namespace luniform
