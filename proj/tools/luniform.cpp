// luniform: run the reduction on instance files, verify traces, self-test.

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "luniform/properties.hpp"
#include "luniform/trace_io.hpp"
#include "luniform/verify.hpp"

namespace fs = std::filesystem;
using namespace luniform;

namespace {

enum Exit { ok = 0, input_error = 1, fuel_exhausted = 2 };

struct RunOptions {
  std::vector<std::string> instances;
  std::string mode, strategy, out, out_dir;
  int fuel = 0;
  int jobs = 1;
};

struct RunResult {
  int code = ok;
  std::string text;   // trace JSON
  std::string error;  // message for input errors
};

RunResult run_one(const std::string& path, const RunOptions& opt) {
  RunResult res;
  try {
    auto inst = parse_instance(path);
    if (!opt.mode.empty()) inst.mode = parse_mode(opt.mode);
    if (!opt.strategy.empty()) inst.strategy.kind = parse_strategy(opt.strategy);
    if (opt.fuel > 0) inst.strategy.fuel = opt.fuel;
    // Re-validate with the overrides applied (embedded needs sorted targets).
    inst = instance_from_json(instance_to_json(inst));
    auto trace = run_instance(inst);
    res.text = dump_json(trace_to_json(inst, trace));
    res.code = trace.status == Status::done ? ok : fuel_exhausted;
  } catch (const Error& e) {
    res.code = input_error;
    res.error = path + ": " + e.what();
  }
  return res;
}

bool write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int cmd_run(const RunOptions& opt) {
  if (opt.instances.size() > 1 && !opt.out.empty()) {
    std::cerr << "--out takes a single instance; use --out-dir for several\n";
    return input_error;
  }
  std::vector<RunResult> results(opt.instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < opt.instances.size();) results[i] = run_one(opt.instances[i], opt);
  };
  const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(opt.instances.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = ok;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (r.code == input_error) {
      std::cerr << "error: " << r.error << "\n";
      code = input_error;
      continue;
    }
    if (r.code == fuel_exhausted) {
      std::cerr << opt.instances[i] << ": fuel exhausted, partial trace written\n";
      if (code == ok) code = fuel_exhausted;
    }
    if (!opt.out_dir.empty()) {
      fs::create_directories(opt.out_dir);
      auto target = fs::path(opt.out_dir) / (fs::path(opt.instances[i]).stem().string() + ".trace.json");
      if (!write_file(target, r.text)) {
        std::cerr << "error: cannot write " << target << "\n";
        code = input_error;
      }
    } else if (!opt.out.empty()) {
      if (!write_file(opt.out, r.text)) {
        std::cerr << "error: cannot write " << opt.out << "\n";
        code = input_error;
      }
    } else {
      std::cout << r.text;
    }
  }
  return code;
}

int cmd_verify(const std::string& path) {
  try {
    auto report = verify_file(path);
    if (!report.valid) {
      std::cout << "Invalid: " << report.failure << "\n";
      return input_error;
    }
    std::cout << (report.partial ? "Valid (partial: fuel exhausted, " : "Valid (") << report.steps_checked
              << " steps)\n";
    return ok;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input_error;
  }
}

int cmd_selftest(int scale) {
  std::vector<PropertyResult> results = {
      prop_membership(50 * scale, 7),  prop_decompose(20 * scale, 11), prop_pivot_tie(20 * scale, 13),
      prop_lifting(20 * scale, 17),    prop_rank_one_d2(10 * scale, 19), prop_reduction(10 * scale, 23),
      prop_mutation(10 * scale, 29),
  };
  bool all = true;
  for (const auto& r : results) {
    std::cout << format_result(r) << "\n";
    all = all && r.ok();
  }
  return all ? ok : input_error;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local uniformization of monomial ring models by reduction to rank one"};
  app.require_subcommand(1);

  RunOptions opt;
  auto* run = app.add_subcommand("run", "Uniformize instances and emit traces");
  run->add_option("instances", opt.instances, "Instance JSON files")->required()->check(CLI::ExistingFile);
  run->add_option("--mode", opt.mode, "lu | weak | embedded (overrides the instance)")
      ->check(CLI::IsMember({"lu", "weak", "embedded"}));
  run->add_option("--strategy", opt.strategy, "pairmin | fullideal (overrides the instance)")
      ->check(CLI::IsMember({"pairmin", "fullideal"}));
  run->add_option("--fuel", opt.fuel, "Maximum number of blowups")->check(CLI::PositiveNumber);
  run->add_option("--out", opt.out, "Write the trace here instead of stdout");
  run->add_option("--out-dir", opt.out_dir, "Write <stem>.trace.json per instance into this directory");
  run->add_option("--jobs", opt.jobs, "Instances processed in parallel")->check(CLI::PositiveNumber);

  std::string trace_path;
  auto* verify = app.add_subcommand("verify", "Independently re-check a trace");
  verify->add_option("trace", trace_path, "Trace JSON file")->required()->check(CLI::ExistingFile);

  int scale = 1;
  auto* selftest = app.add_subcommand("selftest", "Run the randomized property suites");
  selftest->add_option("--scale", scale, "Multiply the case counts")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : input_error;
  }
  if (*run) return cmd_run(opt);
  if (*verify) return cmd_verify(trace_path);
  if (*selftest) return cmd_selftest(scale);
  return input_error;
}
