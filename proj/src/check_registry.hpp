#pragma once

#include <functional>
#include <map>
#include <string>

#include "vex/harness.hpp"

namespace vex::detail {

struct CheckDef {
  Json defaults;
  std::function<void(VerificationReport&)> run;  // fills cases + refinement
};

const std::map<std::string, CheckDef>& check_registry();

// Worst-of aggregation: "fail" > "borderline" > "pass".
void absorb_status(std::string& verdict, const std::string& status);

}  // namespace vex::detail
