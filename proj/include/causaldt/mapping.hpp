#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "causaldt/error.hpp"
#include "causaldt/problem.hpp"
#include "causaldt/responsiveness.hpp"
#include "causaldt/structural.hpp"

namespace causaldt {

/// Marker for a Y-instance whose image was never observed in a state.
inline constexpr int kUnobserved = -1;

/// Raised when a mapping variable would be ill-defined; carries the
/// responsiveness verdict that shows why.
class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(Verdict verdict)
      : Error("mapping variable is ill-defined: " + verdict.detail), verdict_(std::move(verdict)) {}

  const Verdict& verdict() const { return verdict_; }

 private:
  Verdict verdict_;
};

/// The variable X(Y): its instances are maps from joint Y-instances to joint
/// X-instances.
///
/// `maps[i][y]` is the image of domain point y under instance i, or
/// kUnobserved. `values[s][a]` is the instance taken in source state s under
/// joint alternative a (-1 for probability-0 states). `distribution` is taken
/// at alternative 0.
struct MappingVariable {
  std::string name;
  std::vector<std::string> range_vars;
  std::vector<std::string> domain_vars;
  std::vector<std::string> range_labels;
  std::vector<std::string> domain_labels;
  std::vector<std::vector<int>> maps;
  std::vector<std::string> instance_names;
  std::vector<std::string> state_labels;
  std::vector<std::vector<int>> values;
  std::vector<Probability> distribution;

  bool is_total(std::size_t instance) const;
};

/// Labels of the joint instances of several variables in mixed-radix order
/// (first variable most significant): "yes" for one variable, "(take,a)" for
/// more.
std::vector<std::string> joint_labels(const std::vector<std::vector<std::string>>& vars);

/// "take->yes, dont_take->no", with "?" for kUnobserved entries.
std::string format_map(const std::vector<std::string>& domain_labels,
                       const std::vector<std::string>& range_labels,
                       const std::vector<int>& map);

/// "t_of_r", "c_of_t_g".
std::string mapping_name(const std::vector<std::string>& x, const std::vector<std::string>& y);

/// Builds X(Y) from a table: one (possibly partial) map per possible state.
/// Throws ConsistencyError when X is responsive to D limited by Y.
MappingVariable extract_mapping_variable(const DecisionProblem& problem,
                                         const std::vector<std::string>& x,
                                         const std::vector<std::string>& y);

/// X(Y) on a structural model, by forcing Y to each joint instance in every
/// world and under every joint alternative. Decisions in Y are set directly,
/// other members are overridden the way their set decisions would. Values are
/// aligned with unfold(model).
MappingVariable mapping_variable_structural(const StructuralModel& model,
                                            const std::vector<std::string>& x,
                                            const std::vector<std::string>& y);

/// Appends the mapping variable to the problem as a chance variable. The
/// problem must be the one the variable was built on (same state order).
/// Probability-0 states are dropped; the result is not re-sorted.
DecisionProblem materialize(const DecisionProblem& problem, const MappingVariable& mv);

/// Equal B-instances imply equal X-instances across every possible state and
/// alternative.
bool check_functional(const DecisionProblem& problem,
                      const std::vector<std::string>& x,
                      const std::vector<std::string>& b);

/// "set_<x>", with alternatives "do_nothing" and "set_<k>" per instance k.
std::string set_decision_name(const std::string& target);
inline constexpr const char* kDoNothing = "do_nothing";

/// Adds one set decision per target, after the existing nodes. Under
/// "do_nothing" a target keeps its original behaviour; under "set_<k>" it
/// outputs k and only its deterministic descendants follow. Targets with
/// chance children keep their original node as a latent "<x>_natural" that
/// those children read.
StructuralModel augment_with_set_decisions(const StructuralModel& model, const std::vector<std::string>& targets);

struct SetDecisionVerdict {
  Verdict verdict;
  std::string x;
  std::vector<std::string> y;
  std::vector<std::string> z;
};

/// Checks that the extra decisions of `augmented` behave as set decisions
/// for `original`: with every set decision at "do_nothing" the table equals
/// the original, "set_<k>" forces k, and for every x in U, Y among the
/// targets and Z in U and D (|Y|, |Z| <= bound)
///   x is unresponsive to D limited by Z and Y in the original
///   iff x is unresponsive to D' limited by Z, Y and the set decisions of
///   targets outside Y in the augmented problem.
/// The first failing (x, Y, Z) is reported, x in U order, then Y, then Z by
/// size and name.
SetDecisionVerdict verify_set_decisions(const DecisionProblem& original,
                                        const DecisionProblem& augmented,
                                        std::size_t bound);

}  // namespace causaldt
