#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "causaldt/problem.hpp"
#include "causaldt/structural.hpp"

namespace causaldt {

using Rng = std::mt19937_64;

struct RandomShape {
  std::size_t max_decisions = 3;
  std::size_t max_alternatives = 2;
  std::size_t max_chances = 3;
  std::size_t max_instances = 2;
  std::size_t max_states = 6;
};

/// A valid, normalized table. Each chance variable is built in one of a few
/// styles (constant, driven by some decisions, driven by an earlier variable,
/// unrestricted) so that every responsiveness pattern shows up.
DecisionProblem random_problem(Rng& rng, const RandomShape& shape = {});

/// A valid structural model: decision roots, chance nodes over chance
/// parents only, and total deterministic nodes over any earlier nodes.
StructuralModel random_structural(Rng& rng, const RandomShape& shape = {});

/// A valid influence diagram over an arbitrary DAG (chance nodes may have
/// decision ancestors), binary nodes, CPTs with occasional zero entries.
InfluenceDiagram random_diagram(Rng& rng, std::size_t max_nodes = 6);

/// Uniformly chosen subset of `items`.
std::vector<std::string> random_subset(Rng& rng, const std::vector<std::string>& items);

/// Random rational distribution over n outcomes with small integer weights;
/// zero weights allowed when `allow_zero`, but never all zero.
std::vector<Probability> random_distribution(Rng& rng, std::size_t n, bool allow_zero = false);

}  // namespace causaldt
