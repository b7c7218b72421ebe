#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace luniform {

struct VerifyReport {
  bool valid = false;
  bool partial = false;  // fuel ran out; the prefix replayed but nothing is certified
  std::string failure;   // first failing check when invalid
  int steps_checked = 0;
};

/// Replays a trace from its instance echo and re-checks every recorded fact.
/// Relies on the ring model and blowup layers only.
VerifyReport verify_trace(const nlohmann::json& trace);
VerifyReport verify_file(const std::filesystem::path& path);

}  // namespace luniform
