#include "causaldt/mapping.hpp"

#include <algorithm>
#include <map>

#include "causaldt/causes.hpp"

namespace causaldt {

namespace {

constexpr std::size_t kMaxDomain = 1u << 16;

std::size_t joint_size(const std::vector<const std::vector<std::string>*>& vars) {
  std::size_t n = 1;
  for (const auto* v : vars) {
    n *= v->size();
    if (n > kMaxDomain) throw BudgetError("joint instance count exceeds budget");
  }
  return n;
}

std::vector<int> digits_of(std::size_t index, const std::vector<const std::vector<std::string>*>& vars) {
  std::vector<int> digits(vars.size());
  for (std::size_t k = vars.size(); k-- > 0;) {
    digits[k] = static_cast<int>(index % vars[k]->size());
    index /= vars[k]->size();
  }
  return digits;
}

std::size_t index_of_digits(const std::vector<int>& digits, const std::vector<const std::vector<std::string>*>& vars) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < vars.size(); ++k) index = index * vars[k]->size() + static_cast<std::size_t>(digits[k]);
  return index;
}

std::vector<std::string> joint_labels(const std::vector<const std::vector<std::string>*>& vars) {
  std::vector<std::string> out;
  const std::size_t n = joint_size(vars);
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = digits_of(i, vars);
    if (vars.size() == 1) {
      out.push_back((*vars[0])[d[0]]);
      continue;
    }
    std::string label = "(";
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (k) label += ",";
      label += (*vars[k])[d[k]];
    }
    out.push_back(label + ")");
  }
  return out;
}

std::string map_symbol(const MappingVariable& mv, const std::vector<int>& map) {
  return format_map(mv.domain_labels, mv.range_labels, map);
}

// Numbers the distinct maps in lexicographic order and fills in the
// instance table, values and distribution.
void index_maps(MappingVariable& mv,
                const std::vector<std::vector<std::vector<int>>>& per_state,
                const std::vector<Probability>& weights) {
  std::map<std::vector<int>, int> index;
  for (const auto& alts : per_state) {
    for (const auto& m : alts) {
      if (!m.empty()) index.emplace(m, 0);
    }
  }
  int next = 0;
  for (auto& [m, i] : index) {
    i = next++;
    mv.maps.push_back(m);
    mv.instance_names.push_back(map_symbol(mv, m));
  }
  mv.distribution.assign(mv.maps.size(), Probability::zero());
  mv.values.clear();
  for (std::size_t s = 0; s < per_state.size(); ++s) {
    std::vector<int> row;
    for (const auto& m : per_state[s]) row.push_back(m.empty() ? -1 : index.at(m));
    if (!row.empty() && row[0] >= 0) mv.distribution[row[0]] += weights[s];
    mv.values.push_back(std::move(row));
  }
}

std::string unique_name(const std::string& base, const std::vector<std::string>& taken) {
  std::string name = base;
  while (std::find(taken.begin(), taken.end(), name) != taken.end()) name += "_";
  return name;
}

}  // namespace

std::vector<std::string> joint_labels(const std::vector<std::vector<std::string>>& vars) {
  std::vector<const std::vector<std::string>*> refs;
  for (const auto& v : vars) refs.push_back(&v);
  return joint_labels(refs);
}

std::string format_map(const std::vector<std::string>& domain_labels,
                       const std::vector<std::string>& range_labels,
                       const std::vector<int>& map) {
  std::string out;
  for (std::size_t y = 0; y < map.size(); ++y) {
    if (y) out += ", ";
    out += domain_labels[y] + "->" + (map[y] == kUnobserved ? std::string("?") : range_labels[map[y]]);
  }
  return out;
}

bool MappingVariable::is_total(std::size_t instance) const {
  return std::none_of(maps[instance].begin(), maps[instance].end(), [](int v) { return v == kUnobserved; });
}

std::string mapping_name(const std::vector<std::string>& x, const std::vector<std::string>& y) {
  std::string name;
  for (std::size_t i = 0; i < x.size(); ++i) name += (i ? "_" : "") + x[i];
  name += "_of";
  for (const auto& v : y) name += "_" + v;
  return name;
}

MappingVariable extract_mapping_variable(const DecisionProblem& p,
                                         const std::vector<std::string>& x,
                                         const std::vector<std::string>& y) {
  const auto xr = resolve_all(p, x, true);
  const auto yr = resolve_all(p, y, false);
  if (xr.empty()) throw InputError("a mapping variable needs at least one range variable");
  auto verdict = unresponsive_limited(p, x, y);
  if (!verdict) throw ConsistencyError(std::move(verdict));

  MappingVariable mv;
  std::vector<const std::vector<std::string>*> xv, yv;
  std::vector<std::string> taken;
  for (const auto& r : xr) {
    mv.range_vars.push_back(p.name(r));
    xv.push_back(&p.instances(r));
  }
  for (const auto& r : yr) {
    mv.domain_vars.push_back(p.name(r));
    yv.push_back(&p.instances(r));
  }
  for (const auto& d : p.decisions) taken.push_back(d.name);
  for (const auto& c : p.chances) taken.push_back(c.name);
  mv.name = unique_name(mapping_name(mv.range_vars, mv.domain_vars), taken);
  mv.range_labels = joint_labels(xv);
  mv.domain_labels = joint_labels(yv);
  const std::size_t domain = mv.domain_labels.size();
  const std::size_t alternatives = p.alternative_count();

  std::vector<std::vector<std::vector<int>>> per_state;
  std::vector<Probability> weights;
  for (std::size_t s = 0; s < p.states.size(); ++s) {
    mv.state_labels.push_back(p.states[s].state.label);
    weights.push_back(p.states[s].probability);
    if (!p.states[s].probability.is_positive()) {
      per_state.emplace_back(alternatives);
      continue;
    }
    std::vector<int> map(domain, kUnobserved);
    for (std::size_t a = 0; a < alternatives; ++a) {
      std::vector<int> yd, xd;
      for (const auto& r : yr) yd.push_back(p.value(s, a, r));
      for (const auto& r : xr) xd.push_back(p.value(s, a, r));
      map[index_of_digits(yd, yv)] = static_cast<int>(index_of_digits(xd, xv));
    }
    per_state.emplace_back(alternatives, map);
  }
  index_maps(mv, per_state, weights);
  return mv;
}

MappingVariable mapping_variable_structural(const StructuralModel& m,
                                            const std::vector<std::string>& x,
                                            const std::vector<std::string>& y) {
  const auto v = validate_structural(m);
  if (!v.ok) throw InputError("invalid structural model at " + v.path + ": " + v.message);
  if (x.empty()) throw InputError("a mapping variable needs at least one range variable");

  std::vector<std::size_t> xi, yi;
  for (const auto& n : x) {
    const auto i = m.index_of(n);
    if (m.nodes[i].kind == NodeKind::decision) throw InputError(n + " is a decision variable; only chance variables are allowed here");
    if (std::find(xi.begin(), xi.end(), i) == xi.end()) xi.push_back(i);
  }
  for (const auto& n : y) {
    const auto i = m.index_of(n);
    if (std::find(yi.begin(), yi.end(), i) == yi.end()) yi.push_back(i);
  }

  MappingVariable mv;
  std::vector<const std::vector<std::string>*> xv, yv;
  std::vector<std::string> taken;
  for (const auto i : xi) {
    mv.range_vars.push_back(m.nodes[i].name);
    xv.push_back(&m.nodes[i].instances);
  }
  for (const auto i : yi) {
    mv.domain_vars.push_back(m.nodes[i].name);
    yv.push_back(&m.nodes[i].instances);
  }
  for (const auto& n : m.nodes) taken.push_back(n.name);
  mv.name = unique_name(mapping_name(mv.range_vars, mv.domain_vars), taken);
  mv.range_labels = joint_labels(xv);
  mv.domain_labels = joint_labels(yv);
  const std::size_t domain = mv.domain_labels.size();

  const auto decisions = m.decision_nodes();
  DecisionProblem shape;
  for (const auto i : decisions) shape.decisions.push_back({m.nodes[i].name, m.nodes[i].instances});
  const std::size_t alternatives = shape.alternative_count();

  const auto worlds = enumerate_worlds(m);
  std::vector<std::vector<std::vector<int>>> per_state;
  std::vector<Probability> weights;
  for (const auto& w : worlds) {
    mv.state_labels.push_back(world_label(m, w));
    weights.push_back(w.probability);
    std::vector<std::vector<int>> row;
    for (std::size_t a = 0; a < alternatives; ++a) {
      const auto base = shape.alternative_digits(a);
      std::vector<int> map(domain);
      for (std::size_t d = 0; d < domain; ++d) {
        const auto forced = digits_of(d, yv);
        auto digits = base;
        std::map<std::size_t, int> overrides;
        for (std::size_t k = 0; k < yi.size(); ++k) {
          const auto pos = std::find(decisions.begin(), decisions.end(), yi[k]);
          if (pos != decisions.end()) {
            digits[pos - decisions.begin()] = forced[k];
          } else {
            overrides[yi[k]] = forced[k];
          }
        }
        const auto values = evaluate(m, w, digits, overrides);
        std::vector<int> xd;
        for (const auto i : xi) xd.push_back(values[i]);
        map[d] = static_cast<int>(index_of_digits(xd, xv));
      }
      row.push_back(std::move(map));
    }
    per_state.push_back(std::move(row));
  }
  index_maps(mv, per_state, weights);
  return mv;
}

DecisionProblem materialize(const DecisionProblem& p, const MappingVariable& mv) {
  if (p.find(mv.name)) throw InputError("variable " + mv.name + " already exists");
  if (mv.values.size() != p.states.size()) throw InputError("mapping variable was built on a different problem");
  const std::size_t alternatives = p.alternative_count();
  DecisionProblem out;
  out.decisions = p.decisions;
  out.chances = p.chances;
  out.chances.push_back({mv.name, mv.instance_names});
  for (std::size_t s = 0; s < p.states.size(); ++s) {
    if (mv.values[s].size() != alternatives) throw InputError("mapping variable was built on a different problem");
    if (mv.values[s][0] < 0) {
      if (p.states[s].probability.is_positive()) throw InputError("mapping variable has no value in a possible state");
      continue;
    }
    WeightedState ws = p.states[s];
    for (std::size_t a = 0; a < alternatives; ++a) ws.state.outcome[a].push_back(mv.values[s][a]);
    out.states.push_back(std::move(ws));
  }
  return out;
}

bool check_functional(const DecisionProblem& p, const std::vector<std::string>& x, const std::vector<std::string>& b) {
  const auto xr = resolve_all(p, x, true);
  const auto br = resolve_all(p, b, false);
  std::map<std::vector<int>, std::vector<int>> image;
  for (std::size_t s = 0; s < p.states.size(); ++s) {
    if (!p.states[s].probability.is_positive()) continue;
    for (std::size_t a = 0; a < p.alternative_count(); ++a) {
      std::vector<int> bk, xk;
      for (const auto& r : br) bk.push_back(p.value(s, a, r));
      for (const auto& r : xr) xk.push_back(p.value(s, a, r));
      const auto [it, fresh] = image.emplace(std::move(bk), xk);
      if (!fresh && it->second != xk) return false;
    }
  }
  return true;
}

std::string set_decision_name(const std::string& target) { return "set_" + target; }

StructuralModel augment_with_set_decisions(const StructuralModel& model, const std::vector<std::string>& targets) {
  const auto v = validate_structural(model);
  if (!v.ok) throw InputError("invalid structural model at " + v.path + ": " + v.message);
  StructuralModel m = model;
  std::vector<std::string> done;
  for (const auto& t : targets) {
    if (std::find(done.begin(), done.end(), t) != done.end() || m.contains(set_decision_name(t))) {
      throw InputError("duplicate augmentation of " + t);
    }
    done.push_back(t);
    const std::size_t ti = m.index_of(t);
    if (m.nodes[ti].kind == NodeKind::decision) throw InputError(t + " is a decision variable");

    Node set{set_decision_name(t), NodeKind::decision, {kDoNothing}, {}, false, {}, {}};
    for (const auto& k : m.nodes[ti].instances) set.instances.push_back("set_" + k);
    const int width = static_cast<int>(set.instances.size());

    const auto kids = m.children()[ti];
    const bool chance_children = std::any_of(kids.begin(), kids.end(),
                                             [&](std::size_t k) { return m.nodes[k].kind == NodeKind::chance; });
    if (m.nodes[ti].kind == NodeKind::deterministic && !chance_children) {
      Node& n = m.nodes[ti];
      std::vector<int> wrapped;
      wrapped.reserve(n.function.size() * width);
      for (const int f : n.function) {
        wrapped.push_back(f);
        for (int k = 0; k + 1 < width; ++k) wrapped.push_back(k);
      }
      n.function = std::move(wrapped);
      n.parents.push_back(set.name);
      m.nodes.push_back(std::move(set));
      continue;
    }

    std::vector<std::string> taken;
    for (const auto& n : m.nodes) taken.push_back(n.name);
    Node natural = m.nodes[ti];
    natural.name = unique_name(t + "_natural", taken);
    natural.latent = true;
    for (const auto k : kids) {
      if (m.nodes[k].kind != NodeKind::chance) continue;
      for (auto& p : m.nodes[k].parents) {
        if (p == t) p = natural.name;
      }
    }
    Node& n = m.nodes[ti];
    const int count = static_cast<int>(n.instances.size());
    n.kind = NodeKind::deterministic;
    n.cpt.clear();
    n.parents = {natural.name, set.name};
    n.function.clear();
    for (int nat = 0; nat < count; ++nat) {
      n.function.push_back(nat);
      for (int k = 0; k < count; ++k) n.function.push_back(k);
    }
    m.nodes.push_back(std::move(natural));
    m.nodes.push_back(std::move(set));
  }
  return m;
}

SetDecisionVerdict verify_set_decisions(const DecisionProblem& original, const DecisionProblem& augmented, std::size_t bound) {
  if (augmented.chances != original.chances) throw InputError("augmented problem has different chance variables");
  if (augmented.decisions.size() < original.decisions.size() ||
      !std::equal(original.decisions.begin(), original.decisions.end(), augmented.decisions.begin())) {
    throw InputError("augmented decisions must start with the original decisions");
  }

  std::vector<std::string> targets;
  std::vector<std::string> set_names;
  Assignment idle;
  for (std::size_t i = original.decisions.size(); i < augmented.decisions.size(); ++i) {
    const auto& d = augmented.decisions[i];
    const std::string prefix = "set_";
    const std::string target = d.name.rfind(prefix, 0) == 0 ? d.name.substr(prefix.size()) : "";
    const auto ref = original.find(target);
    if (!ref || ref->kind != VarKind::chance) throw InputError(d.name + " is not a set decision for a chance variable");
    std::vector<std::string> expected{kDoNothing};
    for (const auto& k : original.chances[ref->index].instances) expected.push_back("set_" + k);
    if (d.alternatives != expected) throw InputError(d.name + " does not have set-decision alternatives");
    targets.push_back(target);
    set_names.push_back(d.name);
    idle[d.name] = kDoNothing;
  }

  SetDecisionVerdict out;
  if (!equivalent(restrict_decisions(augmented, idle), original)) {
    out.verdict.holds = false;
    out.verdict.detail = "with every set decision at do_nothing the augmented table differs from the original";
    return out;
  }

  for (std::size_t s = 0; s < augmented.states.size(); ++s) {
    if (!augmented.states[s].probability.is_positive()) continue;
    for (std::size_t a = 0; a < augmented.alternative_count(); ++a) {
      const auto digits = augmented.alternative_digits(a);
      for (std::size_t k = 0; k < targets.size(); ++k) {
        const int chosen = digits[original.decisions.size() + k];
        if (chosen == 0) continue;
        const VarRef x = original.resolve(targets[k]);
        if (augmented.value(s, a, x) != chosen - 1) {
          out.verdict.holds = false;
          out.x = targets[k];
          out.verdict.detail = "state " + augmented.states[s].state.label + ": " + augmented.alternative_key(a) +
                               " leaves " + targets[k] + "=" + augmented.instances(x)[augmented.value(s, a, x)];
          return out;
        }
      }
    }
  }

  std::vector<std::string> sorted_targets = targets;
  std::sort(sorted_targets.begin(), sorted_targets.end());
  std::vector<std::string> universe;
  for (const auto& d : original.decisions) universe.push_back(d.name);
  for (const auto& c : original.chances) universe.push_back(c.name);
  std::sort(universe.begin(), universe.end());

  auto subsets = [](const std::vector<std::string>& pool, std::size_t limit) {
    std::vector<std::vector<std::string>> out;
    const std::size_t n = pool.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<std::string> s;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::uint64_t{1} << i)) s.push_back(pool[i]);
      }
      if (s.size() <= limit) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), set_less);
    return out;
  };
  if (universe.size() > 20 || sorted_targets.size() > 20) throw BudgetError("too many variables for set-decision verification");
  const auto ys = subsets(sorted_targets, bound);
  const auto zs = subsets(universe, bound);

  for (const auto& x : original.chances) {
    for (const auto& y : ys) {
      for (const auto& z : zs) {
        std::vector<std::string> limit = z;
        limit.insert(limit.end(), y.begin(), y.end());
        Verdict before = unresponsive_limited(original, {x.name}, limit);
        for (std::size_t k = 0; k < targets.size(); ++k) {
          if (std::find(y.begin(), y.end(), targets[k]) == y.end()) limit.push_back(set_names[k]);
        }
        Verdict after = unresponsive_limited(augmented, {x.name}, limit);
        if (before.holds == after.holds) continue;
        out.x = x.name;
        out.y = y;
        out.z = z;
        const std::string side = before.holds ? "augmented" : "original";
        out.verdict = before.holds ? std::move(after) : std::move(before);
        out.verdict.detail = "x=" + x.name + ", Y=" + format_set(y) + ", Z=" + format_set(z) + ": only the " + side +
                             " side fails, " + describe(*out.verdict.witness);
        return out;
      }
    }
  }
  return out;
}

}  // namespace causaldt
