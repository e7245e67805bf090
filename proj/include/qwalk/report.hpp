#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace qwalk {

/// Outcome of a verification run. Serializes to
/// {check, parameters, n_steps, max_deviation, tolerance, pass, details}.
struct CheckReport {
  std::string check;
  nlohmann::json parameters = nlohmann::json::object();
  std::int64_t n_steps = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  nlohmann::json details = nlohmann::json::object();

  nlohmann::json to_json() const;
};

}  // namespace qwalk
