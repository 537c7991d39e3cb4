#pragma once

// Named invariant checks across all modules, run with fixed seeds.

#include <functional>
#include <string>
#include <vector>

#include "qmflow/scenario.hpp"

namespace qmflow {

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Hooks for mutation testing the suite itself.
struct PropertyFixtures {
  /// Used by rho.antisymmetry; defaults to Scenario::with_reversed_orientations.
  std::function<Scenario(const Scenario&)> reverse_orientations;
  /// Extra scenarios that flow.flux_zero must accept.
  std::vector<Scenario> extra_flux_scenarios;
};

std::vector<std::string> property_names();

/// Runs every property whose name contains `filter` (all when empty).
std::vector<PropertyResult> run_property_suite(const std::string& filter,
                                               const PropertyFixtures& fixtures = {});

}  // namespace qmflow
