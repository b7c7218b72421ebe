#include "luniform/trace_io.hpp"

#include <fstream>
#include <sstream>

namespace luniform {

using nlohmann::json;

namespace {

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw Error(ErrorKind::malformed, "weight entries must be \"p/q\" strings or integers");
}

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::malformed, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<Exponent> exponents_from_json(const json& j, std::size_t dim, const char* what) {
  if (!j.is_array()) throw Error(ErrorKind::malformed, std::string(what) + " must be an array");
  std::vector<Exponent> out;
  for (const auto& e : j) out.push_back(exponent_from_json(e, dim, what));
  return out;
}

json exponents_json(const std::vector<Exponent>& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(exponent_json(e));
  return a;
}

json step_json(const TraceStep& s) {
  json j;
  j["tag"] = s.tag;
  j["ideal"] = exponents_json(s.step.ideal);
  j["pivot"] = exponent_json(s.step.pivot);
  j["adjoined"] = exponents_json(s.step.adjoined);
  if (s.lift) {
    const auto& l = *s.lift;
    j["lift"] = {{"stage", to_string(l.stage)},
                 {"level", l.level},
                 {"part", l.part},
                 {"numerator", exponent_json(l.numerator)},
                 {"denominator", exponent_json(l.denominator)},
                 {"multiplier", exponent_json(l.multiplier)},
                 {"clearing", exponent_json(l.clearing)}};
  }
  return j;
}

}  // namespace

json exponent_json(const Exponent& e) { return json(e); }

Exponent exponent_from_json(const json& j, std::size_t dim, const char* what) {
  if (!j.is_array() || j.size() != dim)
    throw Error(ErrorKind::malformed, std::string(what) + ": expected an integer vector of length " +
                                          std::to_string(dim));
  Exponent e;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw Error(ErrorKind::malformed, std::string(what) + ": non-integer entry");
    e.push_back(x.get<std::int64_t>());
  }
  return e;
}

RingModel Instance::ring() const { return RingModel(dim, generators, MonomialValuation(weights)); }

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::malformed, "instance must be a JSON object");
  Instance inst;
  inst.name = j.value("name", std::string("unnamed"));
  inst.dim = field(j, "dim").get<int>();
  if (inst.dim <= 0) throw Error(ErrorKind::malformed, "dim must be positive");
  const auto& w = field(j, "weights");
  if (!w.is_array() || w.empty()) throw Error(ErrorKind::malformed, "weights must be a nonempty matrix");
  for (const auto& row : w) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(inst.dim))
      throw Error(ErrorKind::malformed, "weight rows must have dim entries");
    inst.weights.emplace_back();
    for (const auto& q : row) inst.weights.back().push_back(rational_from_json(q));
  }
  inst.levels = j.value("levels", static_cast<int>(inst.weights.size()));
  if (inst.levels != static_cast<int>(inst.weights.size()))
    throw Error(ErrorKind::malformed, "levels does not match the number of weight rows");
  inst.generators = exponents_from_json(field(j, "generators"), inst.dim, "generators");
  if (j.contains("targets")) inst.targets = exponents_from_json(j.at("targets"), inst.dim, "targets");
  inst.mode = parse_mode(j.value("mode", std::string("lu")));
  inst.strategy.kind = parse_strategy(j.value("strategy", std::string("pairmin")));
  inst.strategy.fuel = j.value("fuel", 256);
  if (inst.strategy.fuel <= 0) throw Error(ErrorKind::malformed, "fuel must be positive");

  auto ring = inst.ring();  // centering is checked here
  inst.generators = ring.generators();
  for (const auto& t : inst.targets)
    if (!monomial_member(t, ring)) throw Error(ErrorKind::not_member, "target " + to_string(t) + " is not in the ring");
  if (inst.mode == Mode::embedded)
    for (std::size_t i = 0; i + 1 < inst.targets.size(); ++i)
      if (ring.valuation().compare(inst.targets[i], inst.targets[i + 1]) > 0)
        throw Error(ErrorKind::malformed, "embedded targets must be sorted by value");
  return inst;
}

Instance parse_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::malformed, path.string() + ": " + e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::malformed, path.string() + ": " + e.what());
  }
}

json instance_to_json(const Instance& inst) {
  json w = json::array();
  for (const auto& row : inst.weights) {
    json r = json::array();
    for (const auto& q : row) r.push_back(format_rational(q));
    w.push_back(r);
  }
  return {{"name", inst.name},
          {"dim", inst.dim},
          {"levels", inst.levels},
          {"weights", w},
          {"generators", exponents_json(inst.generators)},
          {"targets", exponents_json(inst.targets)},
          {"mode", to_string(inst.mode)},
          {"strategy", to_string(inst.strategy.kind)},
          {"fuel", inst.strategy.fuel}};
}

Trace run_instance(const Instance& inst) { return uniformize(inst.ring(), inst.mode, inst.targets, inst.strategy); }

json trace_to_json(const Instance& inst, const Trace& trace) {
  json j;
  j["format"] = 1;
  j["instance"] = instance_to_json(inst);
  j["steps"] = json::array();
  for (const auto& s : trace.steps) j["steps"].push_back(step_json(s));
  j["final"] = {{"generators", exponents_json(trace.final.generators())},
                {"inverted", exponents_json(trace.final.inverted_generators())}};
  if (trace.certificate) {
    const auto& c = *trace.certificate;
    json ex = json::array();
    for (const auto& e : c.expressions)
      ex.push_back({{"target", exponent_json(e.target)}, {"gamma", e.gamma}, {"unit", exponent_json(e.unit)}});
    j["certificate"] = {{"parameters", exponents_json(c.parameters)}, {"expressions", ex}, {"witnesses", c.witnesses}};
  } else {
    j["certificate"] = nullptr;
  }
  j["status"] = trace.status == Status::done ? "done" : "fuel_exhausted";
  j["phases"] = trace.phases;
  return j;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace luniform
