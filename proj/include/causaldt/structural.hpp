#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "causaldt/probability.hpp"
#include "causaldt/problem.hpp"

namespace causaldt {

enum class NodeKind { decision, chance, deterministic };

const char* to_string(NodeKind kind);

/// Function-table entry for parent configurations no possible state reaches.
inline constexpr int kUnreachable = -1;

/// One node of a structural model or influence diagram.
///
/// Parent configurations are numbered in mixed radix over `parents` in the
/// listed order, first parent most significant. Chance nodes carry
/// `cpt[config][instance]`; deterministic nodes carry `function[config]`.
/// Latent nodes (mechanisms, world roots) are not part of the flattened U.
struct Node {
  std::string name;
  NodeKind kind = NodeKind::chance;
  std::vector<std::string> instances;
  std::vector<std::string> parents;
  bool latent = false;
  std::vector<std::vector<Probability>> cpt;
  std::vector<int> function;
};

struct StructuralModel {
  std::vector<Node> nodes;

  std::size_t index_of(const std::string& name) const;
  bool contains(const std::string& name) const;
  const Node& node(const std::string& name) const { return nodes[index_of(name)]; }
  Node& node(const std::string& name) { return nodes[index_of(name)]; }

  std::vector<std::size_t> parent_indices(std::size_t i) const;
  std::size_t config_count(std::size_t i) const;
  /// Mixed-radix index of the parents' instances taken from `values`.
  std::size_t config_of(std::size_t i, const std::vector<int>& values) const;
  /// Inverse of config_of: the instance of each parent.
  std::vector<int> config_digits(std::size_t i, std::size_t config) const;

  /// Node indices in topological order, ties broken by name.
  std::vector<std::size_t> topological_order() const;
  std::vector<std::vector<std::size_t>> children() const;
  std::vector<bool> descendants_of(const std::vector<std::size_t>& roots) const;
  std::vector<bool> ancestors_of(const std::vector<std::size_t>& targets) const;

  std::vector<std::size_t> decision_nodes() const;
  /// Non-latent chance and deterministic nodes, in node order.
  std::vector<std::size_t> observable_nodes() const;
};

/// Influence diagrams share the representation; their chance nodes may have
/// decision ancestors.
using InfluenceDiagram = StructuralModel;

struct ModelValidation {
  bool ok = true;
  std::string path;
  std::string message;
};

/// Acyclic, names unique, parents known, decision nodes parentless, tables
/// sized to their parent configurations, CPT rows summing to 1 and function
/// entries in range or kUnreachable.
ModelValidation validate_diagram(const InfluenceDiagram& diagram);

/// validate_diagram plus: no chance node has a decision ancestor.
ModelValidation validate_structural(const StructuralModel& model);

/// One joint instance of every node not downstream of a decision.
/// Entries for decision nodes and decision-dependent nodes hold -1.
struct World {
  std::vector<int> values;
  Probability probability;
};

/// Probability-positive worlds in lexicographic order of chance-node
/// instance indices (topological node order). Throws BudgetError beyond `cap`.
std::vector<World> enumerate_worlds(const StructuralModel& model, std::uint64_t cap = 1u << 20);

/// "g=present,t_of_r=complier": the world's chance-node instances.
std::string world_label(const StructuralModel& model, const World& world);

/// Evaluates the model in `world` under the given decision instances (one per
/// decision node, node order). `overrides` forces node index -> instance:
/// deterministic descendants see the forced value, the world's chance values
/// stay as they are. Throws ModelError on an unreachable function row.
std::vector<int> evaluate(const StructuralModel& model,
                          const World& world,
                          const std::vector<int>& decision_values,
                          const std::map<std::size_t, int>& overrides = {});

struct FlattenOptions {
  bool include_latent = false;
  std::uint64_t cap = 1u << 20;
};

/// One table state per probability-positive world, aligned with
/// enumerate_worlds, before any merging. Decision nodes become D, observable
/// nodes (plus latent ones if requested) become U.
DecisionProblem unfold(const StructuralModel& model, const FlattenOptions& options = {});

/// normalize(unfold(model)).
DecisionProblem flatten(const StructuralModel& model, const FlattenOptions& options = {});

/// Encodes a table as one latent root `world` whose instances are the states,
/// plus one deterministic node per chance variable with parents D + world.
StructuralModel encode_structural(const DecisionProblem& problem);

/// Joint distribution over every node at one joint alternative of the
/// diagram's decision nodes, by brute-force forward sampling of all CPTs.
/// Keys hold one instance index per node (node order).
std::map<std::vector<int>, Probability> node_joint(const InfluenceDiagram& diagram,
                                                   const std::vector<int>& decision_values,
                                                   std::uint64_t cap = 1u << 20);

}  // namespace causaldt
