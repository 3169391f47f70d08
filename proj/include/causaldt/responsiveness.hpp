#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "causaldt/problem.hpp"

namespace causaldt {

/// A possible state and two joint alternatives under which the limiting
/// variables agree but `variable` does not.
struct Witness {
  std::string state;
  std::size_t state_index = 0;
  Assignment first;
  Assignment second;
  std::size_t first_index = 0;
  std::size_t second_index = 0;
  std::string variable;
  std::string first_instance;
  std::string second_instance;
};

struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;
  std::string detail;

  explicit operator bool() const { return holds; }
};

/// "(good, r=take / r=dont_take, o: six vs five)".
std::string describe(const Witness& w);

/// X is unresponsive to D in states limited by Y: in every possible state,
/// alternatives that agree on Y agree on X. X must hold chance variables only.
/// The witness is the first violation in state order, then alternative-pair
/// order, then X's declared order.
Verdict unresponsive_limited(const DecisionProblem& problem,
                             const std::vector<std::string>& x,
                             const std::vector<std::string>& y);

/// Same implication, restricted to alternative pairs where Y takes the
/// instance `y`, which must bind every member of Y and nothing else.
Verdict unresponsive_at_instance(const DecisionProblem& problem,
                                 const std::vector<std::string>& x,
                                 const std::vector<std::string>& y,
                                 const Assignment& instance);

/// X is unresponsive to the decisions `dsub` limited by Y, i.e. limited by
/// Y together with every decision outside `dsub`.
Verdict unresponsive_to_subset(const DecisionProblem& problem,
                               const std::vector<std::string>& x,
                               const std::vector<std::string>& dsub,
                               const std::vector<std::string>& y);

/// The marginal distribution of X is the same under every joint alternative.
bool independent_of_decisions(const DecisionProblem& problem, const std::vector<std::string>& x);

/// Per-state form of the check: does the state itself satisfy the
/// implication? Probability is ignored.
bool state_respects(const DecisionProblem& problem,
                    std::size_t state,
                    const std::vector<VarRef>& x,
                    const std::vector<VarRef>& y);

/// Resolves names, dropping repeats. With `chance_only` a decision name is
/// an InputError.
std::vector<VarRef> resolve_all(const DecisionProblem& problem,
                                const std::vector<std::string>& names,
                                bool chance_only);

}  // namespace causaldt
