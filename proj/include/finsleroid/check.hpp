#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace finsleroid {

inline constexpr std::uint64_t default_check_seed = 20240917;

struct CheckConfig {
  std::uint64_t seed = default_check_seed;
  int samples = 40;                        // random points per identity
  std::map<std::string, double> tol;       // overrides keyed by identity name
  double fault_h = 0.0;                    // test hook: relative perturbation of h
};

struct CheckResult {
  std::string name;
  double residual = 0;
  double tol = 0;
  bool passed = false;
};

struct CheckReport {
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<CheckResult> results;
  bool all_passed() const;
};

// Default tolerances, keyed by identity name.
const std::map<std::string, double>& default_tolerances();

CheckReport run_checks(const CheckConfig& cfg);

}  // namespace finsleroid
