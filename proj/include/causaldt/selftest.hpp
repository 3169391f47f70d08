#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "causaldt/problem.hpp"
#include "causaldt/structural.hpp"

namespace causaldt {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

struct SelftestOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Random queries per property family.
  std::size_t budget = 10000;
  std::vector<DecisionProblem> tables;
  std::vector<StructuralModel> models;
};

struct PropertyOutcome {
  std::string name;
  /// Instances examined, and those whose premise held.
  std::size_t checked = 0;
  std::size_t exercised = 0;
  bool passed = true;
  /// Shrunk counterexample, empty when passed.
  std::string witness;
};

struct SelftestReport {
  std::vector<PropertyOutcome> properties;

  bool passed() const;
};

/// Runs the algebraic property suite on the given fixtures and on seeded
/// random problems and structural models. The first failure of each property
/// is shrunk (dropping states, variables and nodes while it still fails) and
/// kept as its witness.
SelftestReport run_selftest(const SelftestOptions& options);

/// Greedily drops states (renormalizing), chance variables and decisions not
/// named in `keep`, then flattens probabilities to uniform, as long as
/// `fails` stays true.
DecisionProblem shrink_problem(DecisionProblem problem,
                               const std::vector<std::string>& keep,
                               const std::function<bool(const DecisionProblem&)>& fails);

/// Names of the properties, in report order.
std::vector<std::string> selftest_property_names();

}  // namespace causaldt
