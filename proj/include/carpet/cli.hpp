#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "carpet/carpet.hpp"
#include "carpet/geometry.hpp"

namespace carpet::cli {

/// Process exit codes.
enum Exit : int {
  Ok = 0,
  NotEquivalent = 1,
  InvalidInput = 2,
  BudgetExceeded = 3,
  OutsideClass = 4,
  VerificationFailed = 5,
};

/// Class, sigma, dimensions, level parameters for k = 1..K and, inside the hypothesis, the L0 estimate.
nlohmann::json analyze(const DigitSet& c, std::int64_t K, const Budget& budget = {});

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace carpet::cli
