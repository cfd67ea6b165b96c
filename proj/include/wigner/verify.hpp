#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wigner {

enum class CheckCategory { Algebraic, Quadrature };

struct CheckResult {
  std::string name;
  CheckCategory category = CheckCategory::Algebraic;
  double measured = 0.0;
  double threshold = 0.0;
  /// "<=" or ">": how `measured` is compared with `threshold`.
  std::string relation = "<=";
  bool passed = false;
  /// Set when the check aborted (e.g. quadrature did not converge).
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int nodes_per_axis = 48;
  bool include_frame_search = true;
};

/// Self-check of the whole pipeline. Algebraic checks do not depend on the
/// node count; quadrature checks do.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

std::string to_string(CheckCategory category);

}  // namespace wigner
