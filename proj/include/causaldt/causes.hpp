#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "causaldt/problem.hpp"

namespace causaldt {

using VariableSet = std::vector<std::string>;

/// Minimal cause sets for one target.
///
/// Each set is sorted by name; the list is sorted by size, then
/// lexicographically. `search_bound` is the largest subset size examined in
/// full.
struct CauseReport {
  std::string target;
  std::vector<VariableSet> minimal_sets;
  std::size_t search_bound = 0;
  bool exhaustive = false;
  std::uint64_t subsets_examined = 0;
};

struct CauseSearchOptions {
  /// Defaults to the number of candidates (every subset).
  std::optional<std::size_t> max_size;
  /// Hard cap on unresponsiveness checks; reaching it ends the search with
  /// exhaustive = false.
  std::uint64_t subset_cap = 1u << 20;
  /// Defaults to every variable of the problem other than the target.
  std::optional<VariableSet> candidates;
};

/// C is a minimal set of variables limiting x: x is unresponsive to D limited
/// by C and by no proper subset of C.
bool is_cause_set(const DecisionProblem& problem, const VariableSet& c, const std::string& x);

/// Every minimal cause set of x, by search in increasing subset size.
CauseReport find_causes(const DecisionProblem& problem, const std::string& x, const CauseSearchOptions& options = {});

/// Size, then element-wise name order.
bool set_less(const VariableSet& a, const VariableSet& b);

/// "{}" / "{r, t}".
std::string format_set(const VariableSet& s);

}  // namespace causaldt
