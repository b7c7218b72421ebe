#include <doctest.h>

#include "luniform/trace_io.hpp"
#include "luniform/verify.hpp"

using namespace luniform;
using nlohmann::json;

namespace {

const std::string fixtures = FIXTURE_DIR;

json traced(const std::string& name) {
  auto inst = parse_instance(fixtures + "/" + name + ".json");
  return trace_to_json(inst, run_instance(inst));
}

json base_instance() {
  return json::parse(R"({"name": "t", "dim": 2, "levels": 1, "weights": [["1", "2"]],
                         "generators": [[1, 0], [0, 1]], "targets": [[3, 0], [0, 2]],
                         "mode": "embedded", "strategy": "pairmin", "fuel": 16})");
}

}  // namespace

TEST_CASE("fixtures parse and their traces verify") {
  for (const char* name : {"a1", "comp2", "emb1"}) {
    auto inst = parse_instance(fixtures + "/" + name + ".json");
    CHECK(inst.name == name);
    auto t = traced(name);
    CHECK(t["status"] == "done");
    auto report = verify_trace(t);
    CHECK_MESSAGE(report.valid, name << ": " << report.failure);
    CHECK_FALSE(report.partial);
  }
}

TEST_CASE("instances are validated on input") {
  auto j = base_instance();
  CHECK_NOTHROW(instance_from_json(j));

  auto neg = j;
  neg["generators"] = json::parse("[[1, 0], [1, -1]]");  // value -1
  CHECK_THROWS_AS(instance_from_json(neg), Error);

  auto unsorted = j;
  unsorted["targets"] = json::parse("[[0, 2], [3, 0]]");
  CHECK_THROWS_AS(instance_from_json(unsorted), Error);
  unsorted["mode"] = "lu";
  CHECK_NOTHROW(instance_from_json(unsorted));

  auto shape = j;
  shape["weights"] = json::parse(R"([["1", "2", "3"]])");
  CHECK_THROWS_AS(instance_from_json(shape), Error);

  auto outside = j;
  outside["generators"] = json::parse("[[2, 0], [0, 1]]");
  CHECK_THROWS_AS(instance_from_json(outside), Error);  // target (3,0) not in the ring
}

TEST_CASE("instance json round-trips") {
  auto inst = instance_from_json(base_instance());
  auto again = instance_from_json(instance_to_json(inst));
  CHECK(dump_json(instance_to_json(again)) == dump_json(instance_to_json(inst)));
}

TEST_CASE("traces are deterministic") {
  for (const char* name : {"a1", "comp2", "emb1"}) CHECK(dump_json(traced(name)) == dump_json(traced(name)));
}

TEST_CASE("tampered traces are rejected") {
  auto t = traced("emb1");
  REQUIRE(t["steps"].size() == 2);

  auto pivot = t;
  pivot["steps"][0]["pivot"] = json::parse("[0, 1]");
  CHECK_FALSE(verify_trace(pivot).valid);

  auto adj = t;
  adj["steps"][1]["adjoined"] = json::parse("[[1, 1]]");
  CHECK_FALSE(verify_trace(adj).valid);

  auto params = t;
  params["certificate"]["parameters"] = json::array();
  CHECK_FALSE(verify_trace(params).valid);

  auto gamma = t;
  gamma["certificate"]["expressions"][0]["gamma"] = json::parse("[2]");
  CHECK_FALSE(verify_trace(gamma).valid);

  auto dropped = t;
  dropped["steps"].erase(dropped["steps"].begin());
  CHECK_FALSE(verify_trace(dropped).valid);
}

TEST_CASE("partial traces verify as partial") {
  auto j = base_instance();
  j["mode"] = "lu";
  j["generators"] = json::parse("[[1, 6], [2, 5], [3, -1], [5, 4]]");
  j["weights"] = json::parse(R"([["6", "4"]])");
  j["targets"] = json::array();
  j["fuel"] = 2;
  auto inst = instance_from_json(j);
  auto trace = run_instance(inst);
  CHECK(trace.status == Status::fuel_exhausted);
  auto report = verify_trace(trace_to_json(inst, trace));
  CHECK(report.valid);
  CHECK(report.partial);
}
