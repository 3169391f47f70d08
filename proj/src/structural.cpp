#include "causaldt/structural.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

#include "causaldt/error.hpp"

namespace causaldt {

namespace {

constexpr std::size_t kMaxConfigs = std::size_t{1} << 24;

bool bad_symbol(const std::string& s) { return s.empty() || s.find_first_of("=;") != std::string::npos; }

std::string node_path(std::size_t i) { return "nodes[" + std::to_string(i) + "]"; }

}  // namespace

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::decision: return "decision";
    case NodeKind::chance: return "chance";
    case NodeKind::deterministic: return "deterministic";
  }
  return "?";
}

std::size_t StructuralModel::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].name == name) return i;
  }
  throw InputError("unknown node: " + name);
}

bool StructuralModel::contains(const std::string& name) const {
  return std::any_of(nodes.begin(), nodes.end(), [&](const Node& n) { return n.name == name; });
}

std::vector<std::size_t> StructuralModel::parent_indices(std::size_t i) const {
  std::vector<std::size_t> out;
  out.reserve(nodes[i].parents.size());
  for (const auto& p : nodes[i].parents) out.push_back(index_of(p));
  return out;
}

std::size_t StructuralModel::config_count(std::size_t i) const {
  std::size_t n = 1;
  for (const auto p : parent_indices(i)) {
    n *= nodes[p].instances.size();
    if (n > kMaxConfigs) throw BudgetError("parent configuration count of " + nodes[i].name + " exceeds budget");
  }
  return n;
}

std::size_t StructuralModel::config_of(std::size_t i, const std::vector<int>& values) const {
  std::size_t c = 0;
  for (const auto p : parent_indices(i)) c = c * nodes[p].instances.size() + static_cast<std::size_t>(values[p]);
  return c;
}

std::vector<int> StructuralModel::config_digits(std::size_t i, std::size_t config) const {
  const auto parents = parent_indices(i);
  std::vector<int> digits(parents.size());
  for (std::size_t k = parents.size(); k-- > 0;) {
    const std::size_t radix = nodes[parents[k]].instances.size();
    digits[k] = static_cast<int>(config % radix);
    config /= radix;
  }
  return digits;
}

std::vector<std::vector<std::size_t>> StructuralModel::children() const {
  std::vector<std::vector<std::size_t>> out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const auto p : parent_indices(i)) out[p].push_back(i);
  }
  return out;
}

std::vector<std::size_t> StructuralModel::topological_order() const {
  std::vector<std::size_t> indegree(nodes.size(), 0);
  const auto kids = children();
  for (std::size_t i = 0; i < nodes.size(); ++i) indegree[i] = nodes[i].parents.size();
  auto by_name = [&](std::size_t a, std::size_t b) { return nodes[a].name > nodes[b].name; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_name)> ready(by_name);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<std::size_t> order;
  order.reserve(nodes.size());
  while (!ready.empty()) {
    const auto i = ready.top();
    ready.pop();
    order.push_back(i);
    for (const auto k : kids[i]) {
      if (--indegree[k] == 0) ready.push(k);
    }
  }
  if (order.size() != nodes.size()) throw InputError("model graph has a cycle");
  return order;
}

std::vector<bool> StructuralModel::descendants_of(const std::vector<std::size_t>& roots) const {
  const auto kids = children();
  std::vector<bool> mark(nodes.size(), false);
  std::vector<std::size_t> stack;
  for (const auto r : roots) {
    for (const auto k : kids[r]) stack.push_back(k);
  }
  while (!stack.empty()) {
    const auto i = stack.back();
    stack.pop_back();
    if (mark[i]) continue;
    mark[i] = true;
    for (const auto k : kids[i]) stack.push_back(k);
  }
  return mark;
}

std::vector<bool> StructuralModel::ancestors_of(const std::vector<std::size_t>& targets) const {
  std::vector<bool> mark(nodes.size(), false);
  std::vector<std::size_t> stack;
  for (const auto t : targets) {
    for (const auto p : parent_indices(t)) stack.push_back(p);
  }
  while (!stack.empty()) {
    const auto i = stack.back();
    stack.pop_back();
    if (mark[i]) continue;
    mark[i] = true;
    for (const auto p : parent_indices(i)) stack.push_back(p);
  }
  return mark;
}

std::vector<std::size_t> StructuralModel::decision_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind == NodeKind::decision) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> StructuralModel::observable_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind != NodeKind::decision && !nodes[i].latent) out.push_back(i);
  }
  return out;
}

ModelValidation validate_diagram(const InfluenceDiagram& m) {
  auto fail = [](std::string path, std::string message) { return ModelValidation{false, std::move(path), std::move(message)}; };

  std::set<std::string> names;
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    const Node& n = m.nodes[i];
    if (bad_symbol(n.name)) return fail(node_path(i) + ".name", "invalid node name \"" + n.name + "\"");
    if (!names.insert(n.name).second) return fail(node_path(i) + ".name", "duplicate node name " + n.name);
    const std::size_t min_instances = n.kind == NodeKind::decision ? 2 : 1;
    if (n.instances.size() < min_instances) return fail(node_path(i) + ".instances", "too few instances");
    std::set<std::string> inst;
    for (const auto& s : n.instances) {
      if (s.empty() || (n.kind == NodeKind::decision && bad_symbol(s))) {
        return fail(node_path(i) + ".instances", "invalid instance symbol \"" + s + "\"");
      }
      if (!inst.insert(s).second) return fail(node_path(i) + ".instances", "duplicate instance symbol " + s);
    }
  }
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    const Node& n = m.nodes[i];
    std::set<std::string> seen;
    for (const auto& p : n.parents) {
      if (!names.count(p)) return fail(node_path(i) + ".parents", "unknown parent " + p);
      if (p == n.name) return fail(node_path(i) + ".parents", "node is its own parent");
      if (!seen.insert(p).second) return fail(node_path(i) + ".parents", "duplicate parent " + p);
    }
    if (n.kind == NodeKind::decision && !n.parents.empty()) {
      return fail(node_path(i) + ".parents", "decision nodes take no parents");
    }
  }
  try {
    m.topological_order();
  } catch (const InputError&) {
    return fail("nodes", "graph has a cycle");
  }

  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    const Node& n = m.nodes[i];
    std::size_t configs = 0;
    try {
      configs = m.config_count(i);
    } catch (const BudgetError& e) {
      return fail(node_path(i), e.what());
    }
    switch (n.kind) {
      case NodeKind::decision:
        if (!n.cpt.empty() || !n.function.empty()) return fail(node_path(i), "decision nodes carry no tables");
        break;
      case NodeKind::chance:
        if (!n.function.empty()) return fail(node_path(i) + ".function", "chance nodes carry no function table");
        if (n.cpt.size() != configs) return fail(node_path(i) + ".cpt", "expected " + std::to_string(configs) + " rows");
        for (std::size_t c = 0; c < configs; ++c) {
          const std::string row = node_path(i) + ".cpt[" + std::to_string(c) + "]";
          if (n.cpt[c].size() != n.instances.size()) return fail(row, "row size differs from instance count");
          Probability sum;
          for (const auto& p : n.cpt[c]) {
            if (!p.in_unit_interval()) return fail(row, "probability " + p.str() + " outside [0, 1]");
            sum += p;
          }
          if (sum != Probability::one()) return fail(row, "row sums to " + sum.str() + ", not 1");
        }
        break;
      case NodeKind::deterministic:
        if (!n.cpt.empty()) return fail(node_path(i) + ".cpt", "deterministic nodes carry no probability table");
        if (n.function.size() != configs) {
          return fail(node_path(i) + ".function", "expected " + std::to_string(configs) + " rows");
        }
        for (std::size_t c = 0; c < configs; ++c) {
          const int v = n.function[c];
          if (v != kUnreachable && (v < 0 || static_cast<std::size_t>(v) >= n.instances.size())) {
            return fail(node_path(i) + ".function[" + std::to_string(c) + "]", "value out of range");
          }
        }
        break;
    }
  }
  return {};
}

ModelValidation validate_structural(const StructuralModel& m) {
  auto v = validate_diagram(m);
  if (!v.ok) return v;
  const auto downstream = m.descendants_of(m.decision_nodes());
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    if (m.nodes[i].kind == NodeKind::chance && downstream[i]) {
      return {false, node_path(i), "chance node " + m.nodes[i].name + " has a decision ancestor"};
    }
  }
  return {};
}

namespace {

void require_structural(const StructuralModel& m) {
  const auto v = validate_structural(m);
  if (!v.ok) throw InputError("invalid structural model at " + v.path + ": " + v.message);
}

int apply_function(const StructuralModel& m, std::size_t i, const std::vector<int>& values) {
  const std::size_t config = m.config_of(i, values);
  const int v = m.nodes[i].function[config];
  if (v == kUnreachable) {
    std::string where;
    const auto parents = m.parent_indices(i);
    for (std::size_t k = 0; k < parents.size(); ++k) {
      if (k) where += ", ";
      where += m.nodes[parents[k]].name + "=" + m.nodes[parents[k]].instances[values[parents[k]]];
    }
    throw ModelError("evaluation of " + m.nodes[i].name + " reached an unreachable row (" + where + ")");
  }
  return v;
}

std::string label_of(const StructuralModel& m, const std::vector<int>& values) {
  std::string label;
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    if (m.nodes[i].kind != NodeKind::chance || values[i] < 0) continue;
    if (!label.empty()) label += ",";
    label += m.nodes[i].name + "=" + m.nodes[i].instances[values[i]];
  }
  return label;
}

}  // namespace

std::string world_label(const StructuralModel& model, const World& world) { return label_of(model, world.values); }

std::vector<World> enumerate_worlds(const StructuralModel& m, std::uint64_t cap) {
  require_structural(m);
  const auto order = m.topological_order();
  const auto downstream = m.descendants_of(m.decision_nodes());
  std::vector<std::size_t> free_nodes;
  for (const auto i : order) {
    if (m.nodes[i].kind != NodeKind::decision && !downstream[i]) free_nodes.push_back(i);
  }

  std::vector<World> out;
  std::vector<int> values(m.nodes.size(), -1);
  std::function<void(std::size_t, const Probability&)> visit = [&](std::size_t k, const Probability& p) {
    if (k == free_nodes.size()) {
      if (out.size() >= cap) throw BudgetError("world count exceeds budget " + std::to_string(cap));
      out.push_back({values, p});
      return;
    }
    const std::size_t i = free_nodes[k];
    const Node& n = m.nodes[i];
    if (n.kind == NodeKind::deterministic) {
      values[i] = apply_function(m, i, values);
      visit(k + 1, p);
      values[i] = -1;
      return;
    }
    const auto& row = n.cpt[m.config_of(i, values)];
    for (std::size_t v = 0; v < row.size(); ++v) {
      if (row[v].is_zero()) continue;
      values[i] = static_cast<int>(v);
      visit(k + 1, p * row[v]);
    }
    values[i] = -1;
  };
  visit(0, Probability::one());
  return out;
}

std::vector<int> evaluate(const StructuralModel& m,
                          const World& world,
                          const std::vector<int>& decision_values,
                          const std::map<std::size_t, int>& overrides) {
  std::vector<int> values = world.values;
  const auto decisions = m.decision_nodes();
  if (decision_values.size() != decisions.size()) throw InputError("one instance per decision node is required");
  for (std::size_t k = 0; k < decisions.size(); ++k) values[decisions[k]] = decision_values[k];
  for (const auto& [i, v] : overrides) {
    if (m.nodes[i].kind != NodeKind::deterministic) values[i] = v;
  }
  for (const auto i : m.topological_order()) {
    if (m.nodes[i].kind != NodeKind::deterministic) continue;
    const auto it = overrides.find(i);
    values[i] = it != overrides.end() ? it->second : apply_function(m, i, values);
  }
  return values;
}

DecisionProblem unfold(const StructuralModel& m, const FlattenOptions& options) {
  const auto worlds = enumerate_worlds(m, options.cap);
  DecisionProblem out;
  const auto decisions = m.decision_nodes();
  for (const auto i : decisions) out.decisions.push_back({m.nodes[i].name, m.nodes[i].instances});
  std::vector<std::size_t> columns;
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    if (m.nodes[i].kind == NodeKind::decision) continue;
    if (m.nodes[i].latent && !options.include_latent) continue;
    columns.push_back(i);
    out.chances.push_back({m.nodes[i].name, m.nodes[i].instances});
  }
  const std::size_t alternatives = out.alternative_count();
  if (worlds.size() * alternatives > options.cap * 16) throw BudgetError("flattened table exceeds budget");
  for (const auto& w : worlds) {
    WeightedState ws{{label_of(m, w.values), {}}, w.probability};
    for (std::size_t a = 0; a < alternatives; ++a) {
      const auto values = evaluate(m, w, out.alternative_digits(a));
      Realization r;
      r.reserve(columns.size());
      for (const auto i : columns) r.push_back(values[i]);
      ws.state.outcome.push_back(std::move(r));
    }
    out.states.push_back(std::move(ws));
  }
  return out;
}

DecisionProblem flatten(const StructuralModel& m, const FlattenOptions& options) {
  return normalize(unfold(m, options));
}

StructuralModel encode_structural(const DecisionProblem& problem) {
  require_valid(problem);
  StructuralModel m;
  for (const auto& d : problem.decisions) m.nodes.push_back({d.name, NodeKind::decision, d.alternatives, {}, false, {}, {}});

  std::string root = "world";
  while (problem.find(root)) root += "_";
  Node world{root, NodeKind::chance, {}, {}, true, {{}}, {}};
  std::set<std::string> labels;
  bool distinct = true;
  for (const auto& ws : problem.states) distinct = distinct && !ws.state.label.empty() && labels.insert(ws.state.label).second;
  for (std::size_t s = 0; s < problem.states.size(); ++s) {
    world.instances.push_back(distinct ? problem.states[s].state.label : "s" + std::to_string(s + 1));
    world.cpt[0].push_back(problem.states[s].probability);
  }
  m.nodes.push_back(std::move(world));

  std::vector<std::string> parents;
  for (const auto& d : problem.decisions) parents.push_back(d.name);
  parents.push_back(root);
  const std::size_t alternatives = problem.alternative_count();
  for (std::size_t u = 0; u < problem.chances.size(); ++u) {
    Node n{problem.chances[u].name, NodeKind::deterministic, problem.chances[u].instances, parents, false, {}, {}};
    n.function.resize(alternatives * problem.states.size());
    for (std::size_t a = 0; a < alternatives; ++a) {
      for (std::size_t s = 0; s < problem.states.size(); ++s) {
        n.function[a * problem.states.size() + s] = problem.states[s].state.outcome[a][u];
      }
    }
    m.nodes.push_back(std::move(n));
  }
  return m;
}

std::map<std::vector<int>, Probability> node_joint(const InfluenceDiagram& m,
                                                   const std::vector<int>& decision_values,
                                                   std::uint64_t cap) {
  const auto v = validate_diagram(m);
  if (!v.ok) throw InputError("invalid diagram at " + v.path + ": " + v.message);
  const auto order = m.topological_order();
  const auto decisions = m.decision_nodes();
  if (decision_values.size() != decisions.size()) throw InputError("one instance per decision node is required");

  std::vector<int> values(m.nodes.size(), -1);
  for (std::size_t k = 0; k < decisions.size(); ++k) values[decisions[k]] = decision_values[k];
  std::map<std::vector<int>, Probability> out;
  std::function<void(std::size_t, const Probability&)> visit = [&](std::size_t k, const Probability& p) {
    if (k == order.size()) {
      if (out.size() >= cap) throw BudgetError("joint support exceeds budget");
      out[values] += p;
      return;
    }
    const std::size_t i = order[k];
    const Node& n = m.nodes[i];
    switch (n.kind) {
      case NodeKind::decision:
        visit(k + 1, p);
        return;
      case NodeKind::deterministic:
        values[i] = apply_function(m, i, values);
        visit(k + 1, p);
        return;
      case NodeKind::chance: {
        const auto& row = n.cpt[m.config_of(i, values)];
        for (std::size_t x = 0; x < row.size(); ++x) {
          if (row[x].is_zero()) continue;
          values[i] = static_cast<int>(x);
          visit(k + 1, p * row[x]);
        }
        values[i] = -1;
        return;
      }
    }
  };
  visit(0, Probability::one());
  return out;
}

}  // namespace causaldt
