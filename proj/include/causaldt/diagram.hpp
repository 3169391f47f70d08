#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "causaldt/causes.hpp"
#include "causaldt/problem.hpp"
#include "causaldt/structural.hpp"

namespace causaldt {

struct CanonicalViolation {
  std::string node;
  int clause = 1;
  std::string explanation;
};

struct CanonicalVerdict {
  bool is_canonical = true;
  std::vector<CanonicalViolation> violations;
};

/// Clause 1: every node responsive to D descends from a decision node.
/// Clause 2: every non-decision node descending from a decision node is
/// deterministic. Responsiveness of nodes that appear in `problem` is read
/// from it; latent nodes are judged on the diagram's own flattened table when
/// the diagram is a structural model. Throws InputError when the diagram's
/// decisions or observable nodes differ from the problem's variables.
CanonicalVerdict check_canonical_form(const InfluenceDiagram& diagram, const DecisionProblem& problem);

struct CanonicalizeOptions {
  /// Order of U; unresponsive variables must come first. Defaults to the
  /// unresponsive variables, then the responsive ones, each in declared order.
  std::optional<std::vector<std::string>> ordering;
  /// Cause set to use per responsive variable. Others default to the minimal
  /// cause set over D and earlier variables with the fewest decisions,
  /// ties broken by name order.
  std::map<std::string, VariableSet> cause_choice;
};

/// Builds a canonical-form influence diagram for the problem.
///
/// Each responsive x gets a latent mechanism x(C) extracted from the table
/// and becomes deterministic with parents C and x(C). The unresponsive
/// variables and mechanisms are chained in order (unresponsive variables,
/// then mechanisms) and every arc whose removal leaves the conditional table
/// exactly unchanged is dropped, latest candidate first.
InfluenceDiagram canonicalize(const DecisionProblem& problem, const CanonicalizeOptions& options = {});

/// Graphical d-separation of X and Y given Z. The three sets must be
/// disjoint.
bool d_separated(const InfluenceDiagram& diagram,
                 const std::vector<std::string>& x,
                 const std::vector<std::string>& y,
                 const std::vector<std::string>& z);

/// Sum over chance nodes of (instances - 1) times the parent configurations.
std::uint64_t count_parameters(const InfluenceDiagram& diagram);

struct PearlReport {
  std::vector<std::string> disturbances;
  bool independent = true;
  std::vector<std::pair<std::string, std::string>> dependent_pairs;
  std::string suggestion;
  std::uint64_t parameters_before = 0;
  std::uint64_t parameters_after = 0;
};

struct PearlExport {
  InfluenceDiagram diagram;
  PearlReport report;
};

/// Rewrites a canonical diagram as a causal theory: every mechanism absorbs
/// its observable parents P into a mapping variable x(C, P) over all maps from
/// C and P to x, and every deterministic observable node gets a set decision.
/// Mechanism values for the different P-instances are coupled independently.
/// Throws InputError for non-canonical input.
PearlExport export_pearl(const InfluenceDiagram& diagram);

/// Conditional independence of X and Y given Z in the node joint at every
/// joint alternative of the diagram's decisions, by exact arithmetic.
bool conditionally_independent(const InfluenceDiagram& diagram,
                               const std::vector<std::string>& x,
                               const std::vector<std::string>& y,
                               const std::vector<std::string>& z);

}  // namespace causaldt
