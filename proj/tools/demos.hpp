#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace pidec::cli {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct DemoOutcome {
  std::vector<std::string> lines;  // human-readable narration
  std::vector<Check> checks;
  nlohmann::ordered_json facts = nlohmann::ordered_json::object();

  bool passed() const;
};

// Throws Error(UnknownDemo) for an unknown name.
DemoOutcome run_demo(const std::string& name, unsigned max_weight);

}  // namespace pidec::cli
