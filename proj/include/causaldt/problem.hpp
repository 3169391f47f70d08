#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causaldt/probability.hpp"

namespace causaldt {

struct DecisionVariable {
  std::string name;
  std::vector<std::string> alternatives;

  friend bool operator==(const DecisionVariable&, const DecisionVariable&) = default;
};

struct ChanceVariable {
  std::string name;
  std::vector<std::string> instances;

  friend bool operator==(const ChanceVariable&, const ChanceVariable&) = default;
};

/// Variable name -> instance symbol.
using Assignment = std::map<std::string, std::string>;

/// Instance index of every chance variable, in declared order.
using Realization = std::vector<int>;

/// A state of the world: the realization produced by every joint alternative.
/// `outcome` is indexed by joint-alternative index (see DecisionProblem).
struct WorldState {
  std::string label;
  std::vector<Realization> outcome;
};

struct WeightedState {
  WorldState state;
  Probability probability;
};

enum class VarKind { decision, chance };

struct VarRef {
  VarKind kind;
  std::size_t index;

  friend bool operator==(const VarRef&, const VarRef&) = default;
};

/// Savage-style decision problem: decision variables D, chance variables U and
/// the weighted world states S.
///
/// Joint alternatives are numbered in mixed radix with the first declared
/// decision most significant; with no decisions there is exactly one (empty)
/// alternative.
struct DecisionProblem {
  std::vector<DecisionVariable> decisions;
  std::vector<ChanceVariable> chances;
  std::vector<WeightedState> states;

  std::size_t alternative_count() const;
  std::vector<int> alternative_digits(std::size_t alternative) const;
  std::size_t alternative_index(const std::vector<int>& digits) const;
  /// Throws InputError unless `alternative` is a total assignment to D with
  /// declared instances.
  std::size_t alternative_index(const Assignment& alternative) const;
  Assignment alternative_assignment(std::size_t alternative) const;
  /// "var=instance" pairs in sorted variable order joined by ';'.
  std::string alternative_key(std::size_t alternative) const;

  std::optional<VarRef> find(const std::string& name) const;
  /// Throws InputError for unknown names.
  VarRef resolve(const std::string& name) const;
  const std::string& name(VarRef ref) const;
  const std::vector<std::string>& instances(VarRef ref) const;
  /// Index of `instance` within the variable; throws InputError if undeclared.
  int instance_index(VarRef ref, const std::string& instance) const;

  /// Instance index of `ref` in state `s` under joint alternative `alternative`.
  int value(std::size_t s, std::size_t alternative, VarRef ref) const;
};

/// Outcome of validate_problem. `path` locates the first offending element.
struct Validation {
  bool ok = true;
  std::string path;
  std::string message;
};

Validation validate_problem(const DecisionProblem& problem);

/// Throws InputError carrying the validation message when the problem is invalid.
void require_valid(const DecisionProblem& problem);

/// Drops probability-0 states, merges states with identical outcome maps
/// (probabilities summed, labels joined with " | ") and sorts states
/// lexicographically by outcome, comparing instance symbols alternative by
/// alternative and variable by variable in declared order.
DecisionProblem normalize(DecisionProblem problem);

/// Every one of the r^a states for the given variables, in the normalize
/// order, labelled "1".."N". Throws BudgetError when r^a exceeds `cap`.
std::vector<WorldState> enumerate_states(const std::vector<DecisionVariable>& decisions,
                                         const std::vector<ChanceVariable>& chances,
                                         std::uint64_t cap = 1u << 20);

/// Distribution over realizations at one joint alternative.
std::map<Realization, Probability> joint_distribution(const DecisionProblem& problem,
                                                      const Assignment& alternative);
std::map<Realization, Probability> joint_distribution(const DecisionProblem& problem,
                                                      std::size_t alternative);

/// Fixes some decisions to given instances and removes them from D.
DecisionProblem restrict_decisions(const DecisionProblem& problem, const Assignment& fixed);

/// Keeps only the named chance variables, in their declared order.
DecisionProblem project(const DecisionProblem& problem, const std::vector<std::string>& keep);

/// Same decisions, the same chance variables in any order and, after
/// normalization, the same weighted outcome maps. State labels are ignored.
bool equivalent(const DecisionProblem& a, const DecisionProblem& b);

/// True when the two states have identical outcome maps.
bool same_outcome(const WorldState& a, const WorldState& b);

}  // namespace causaldt
