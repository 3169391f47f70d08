#include "causaldt/diagram.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>

#include "causaldt/error.hpp"
#include "causaldt/mapping.hpp"
#include "causaldt/responsiveness.hpp"

namespace causaldt {

namespace {

constexpr std::uint64_t kMaxMaps = 1u << 16;

using Joint = std::map<std::vector<int>, Probability>;

void require_diagram(const InfluenceDiagram& d) {
  const auto v = validate_diagram(d);
  if (!v.ok) throw InputError("invalid diagram at " + v.path + ": " + v.message);
}

std::vector<std::size_t> indices_of(const InfluenceDiagram& d, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& n : names) {
    const auto i = d.index_of(n);
    if (std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
  }
  return out;
}

Joint marginal(const Joint& joint, const std::vector<std::size_t>& keep) {
  Joint out;
  for (const auto& [key, p] : joint) {
    std::vector<int> sub;
    sub.reserve(keep.size());
    for (const auto k : keep) sub.push_back(key[k]);
    out[sub] += p;
  }
  return out;
}

std::vector<int> pick(const std::vector<int>& key, const std::vector<std::size_t>& positions) {
  std::vector<int> out;
  out.reserve(positions.size());
  for (const auto k : positions) out.push_back(key[k]);
  return out;
}

// X and Y independent given Z in a joint keyed by full node vectors.
bool independent_in(const Joint& joint,
                    const std::vector<std::size_t>& x,
                    const std::vector<std::size_t>& y,
                    const std::vector<std::size_t>& z) {
  std::vector<std::size_t> xyz = x, xz = x, yz = y;
  xyz.insert(xyz.end(), y.begin(), y.end());
  xyz.insert(xyz.end(), z.begin(), z.end());
  xz.insert(xz.end(), z.begin(), z.end());
  yz.insert(yz.end(), z.begin(), z.end());
  const Joint pxyz = marginal(joint, xyz);
  const Joint pxz = marginal(joint, xz);
  const Joint pyz = marginal(joint, yz);
  const Joint pz = marginal(joint, z);

  std::map<std::vector<int>, std::vector<std::pair<std::vector<int>, Probability>>> xs_by_z, ys_by_z;
  for (const auto& [key, p] : pxz) {
    const std::vector<int> zk(key.begin() + x.size(), key.end());
    xs_by_z[zk].push_back({std::vector<int>(key.begin(), key.begin() + x.size()), p});
  }
  for (const auto& [key, p] : pyz) {
    const std::vector<int> zk(key.begin() + y.size(), key.end());
    ys_by_z[zk].push_back({std::vector<int>(key.begin(), key.begin() + y.size()), p});
  }
  for (const auto& [zk, zp] : pz) {
    for (const auto& [xk, xp] : xs_by_z[zk]) {
      for (const auto& [yk, yp] : ys_by_z[zk]) {
        std::vector<int> key = xk;
        key.insert(key.end(), yk.begin(), yk.end());
        key.insert(key.end(), zk.begin(), zk.end());
        const auto it = pxyz.find(key);
        const Probability joint_p = it == pxyz.end() ? Probability::zero() : it->second;
        if (joint_p * zp != xp * yp) return false;
      }
    }
  }
  return true;
}

// P(v | s) equals P(v | t) wherever s is possible; t is a subset of s and
// both are position lists into `joint` keys.
bool same_conditional(const Joint& joint, std::size_t v, const std::vector<std::size_t>& s, const std::vector<std::size_t>& t) {
  std::vector<std::size_t> sv = s, tv = t;
  sv.push_back(v);
  tv.push_back(v);
  const Joint ps = marginal(joint, s);
  const Joint pt = marginal(joint, t);
  const Joint psv = marginal(joint, sv);
  const Joint ptv = marginal(joint, tv);
  std::vector<std::size_t> t_in_s;
  for (const auto k : t) t_in_s.push_back(static_cast<std::size_t>(std::find(s.begin(), s.end(), k) - s.begin()));

  std::set<int> values;
  for (const auto& [key, p] : joint) values.insert(key[v]);
  for (const auto& [sk, sp] : ps) {
    const auto tk = pick(sk, t_in_s);
    const Probability& tp = pt.at(tk);
    for (const int val : values) {
      auto skv = sk;
      skv.push_back(val);
      auto tkv = tk;
      tkv.push_back(val);
      const auto a = psv.find(skv);
      const auto b = ptv.find(tkv);
      const Probability pa = a == psv.end() ? Probability::zero() : a->second;
      const Probability pb = b == ptv.end() ? Probability::zero() : b->second;
      if (pa * tp != pb * sp) return false;
    }
  }
  return true;
}

std::vector<Probability> uniform_row(std::size_t n) {
  return std::vector<Probability>(n, Probability(1, static_cast<unsigned long>(n)));
}

}  // namespace

CanonicalVerdict check_canonical_form(const InfluenceDiagram& d, const DecisionProblem& problem) {
  require_diagram(d);
  std::map<std::string, std::vector<std::string>> dd, du, pd, pu;
  for (const auto& n : d.nodes) {
    if (n.kind == NodeKind::decision) {
      dd[n.name] = n.instances;
    } else if (!n.latent) {
      du[n.name] = n.instances;
    }
  }
  for (const auto& v : problem.decisions) pd[v.name] = v.alternatives;
  for (const auto& v : problem.chances) pu[v.name] = v.instances;
  if (dd != pd || du != pu) throw InputError("diagram variables do not match the problem's variables");

  std::optional<DecisionProblem> latent_table;
  bool latent_checked = false;
  const auto downstream = d.descendants_of(d.decision_nodes());

  CanonicalVerdict out;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const Node& n = d.nodes[i];
    if (n.kind == NodeKind::decision) continue;
    if (downstream[i] && n.kind == NodeKind::chance) {
      out.violations.push_back({n.name, 2, "chance node descends from a decision node but is not deterministic"});
    }
    if (downstream[i]) continue;
    bool responsive = false;
    if (problem.find(n.name)) {
      responsive = !unresponsive_limited(problem, {n.name}, {}).holds;
    } else {
      if (!latent_checked) {
        latent_checked = true;
        if (validate_structural(d).ok) latent_table = flatten(d, {true});
      }
      if (latent_table) responsive = !unresponsive_limited(*latent_table, {n.name}, {}).holds;
    }
    if (responsive) {
      out.violations.push_back({n.name, 1, "responsive to D but not a descendant of any decision node"});
    }
  }
  out.is_canonical = out.violations.empty();
  return out;
}

InfluenceDiagram canonicalize(const DecisionProblem& input, const CanonicalizeOptions& options) {
  require_valid(input);
  const DecisionProblem p = normalize(input);
  const std::size_t nu = p.chances.size();

  std::vector<bool> responsive(nu);
  for (std::size_t u = 0; u < nu; ++u) responsive[u] = !unresponsive_limited(p, {p.chances[u].name}, {}).holds;

  std::vector<std::size_t> order;
  if (options.ordering) {
    for (const auto& name : *options.ordering) {
      const VarRef r = p.resolve(name);
      if (r.kind != VarKind::chance) throw InputError("ordering names decision " + name);
      if (std::find(order.begin(), order.end(), r.index) != order.end()) throw InputError("ordering repeats " + name);
      order.push_back(r.index);
    }
    if (order.size() != nu) throw InputError("ordering must list every chance variable");
    bool seen_responsive = false;
    for (const auto u : order) {
      if (responsive[u]) seen_responsive = true;
      if (!responsive[u] && seen_responsive) {
        throw InputError("ordering places unresponsive " + p.chances[u].name + " after a responsive variable");
      }
    }
  } else {
    for (std::size_t u = 0; u < nu; ++u) {
      if (!responsive[u]) order.push_back(u);
    }
    for (std::size_t u = 0; u < nu; ++u) {
      if (responsive[u]) order.push_back(u);
    }
  }
  for (const auto& [name, set] : options.cause_choice) {
    const VarRef r = p.resolve(name);
    if (r.kind != VarKind::chance || !responsive[r.index]) throw InputError("cause choice given for " + name + ", which is not a responsive chance variable");
  }

  struct Mechanism {
    std::size_t var;
    VariableSet cause;
    MappingVariable mv;
  };
  DecisionProblem work = p;
  std::vector<Mechanism> mechanisms;
  VariableSet earlier;
  for (const auto u : order) {
    const std::string& name = p.chances[u].name;
    if (!responsive[u]) {
      earlier.push_back(name);
      continue;
    }
    VariableSet candidates;
    for (const auto& d : p.decisions) candidates.push_back(d.name);
    candidates.insert(candidates.end(), earlier.begin(), earlier.end());

    VariableSet cause;
    if (const auto it = options.cause_choice.find(name); it != options.cause_choice.end()) {
      cause = it->second;
      std::sort(cause.begin(), cause.end());
      cause.erase(std::unique(cause.begin(), cause.end()), cause.end());
      for (const auto& c : cause) {
        if (std::find(candidates.begin(), candidates.end(), c) == candidates.end()) {
          throw InputError("cause choice for " + name + " uses " + c + ", which is neither a decision nor an earlier variable");
        }
      }
      if (!is_cause_set(p, cause, name)) throw InputError("cause choice " + format_set(cause) + " is not a cause set for " + name);
    } else {
      CauseSearchOptions search;
      search.candidates = candidates;
      const auto report = find_causes(p, name, search);
      if (report.minimal_sets.empty()) throw InputError("no cause set for " + name + " among its candidates");
      auto decisions_in = [&](const VariableSet& s) {
        return std::count_if(s.begin(), s.end(), [&](const std::string& v) { return p.resolve(v).kind == VarKind::decision; });
      };
      cause = *std::min_element(report.minimal_sets.begin(), report.minimal_sets.end(), [&](const VariableSet& a, const VariableSet& b) {
        const auto da = decisions_in(a), db = decisions_in(b);
        if (da != db) return da < db;
        return set_less(a, b);
      });
    }
    auto mv = extract_mapping_variable(work, {name}, cause);
    work = materialize(work, mv);
    mechanisms.push_back({u, cause, std::move(mv)});
    earlier.push_back(name);
  }

  InfluenceDiagram out;
  for (const auto& d : p.decisions) out.nodes.push_back({d.name, NodeKind::decision, d.alternatives, {}, false, {}, {}});

  // Step 4 operates on these columns of `work`: unresponsive variables in
  // order, then mechanisms.
  std::vector<std::size_t> columns;
  for (const auto u : order) {
    if (!responsive[u]) columns.push_back(u);
  }
  for (std::size_t k = 0; k < mechanisms.size(); ++k) columns.push_back(nu + k);

  Joint joint;
  for (const auto& ws : work.states) joint[pick(ws.state.outcome[0], columns)] += ws.probability;

  for (std::size_t j = 0; j < columns.size(); ++j) {
    const auto& var = work.chances[columns[j]];
    std::vector<std::size_t> parents(j);
    for (std::size_t k = 0; k < j; ++k) parents[k] = k;
    for (std::size_t k = j; k-- > 0;) {
      std::vector<std::size_t> trial;
      for (const auto q : parents) {
        if (q != k) trial.push_back(q);
      }
      if (trial.size() != parents.size() && same_conditional(joint, j, parents, trial)) parents = std::move(trial);
    }

    Node node{var.name, NodeKind::chance, var.instances, {}, columns[j] >= nu, {}, {}};
    std::size_t configs = 1;
    for (const auto q : parents) {
      node.parents.push_back(work.chances[columns[q]].name);
      configs *= work.chances[columns[q]].instances.size();
    }
    std::vector<std::size_t> pv = parents;
    pv.push_back(j);
    const Joint cond = marginal(joint, pv);
    const Joint base = marginal(joint, parents);
    for (std::size_t c = 0; c < configs; ++c) {
      std::vector<int> key(parents.size());
      std::size_t rest = c;
      for (std::size_t k = parents.size(); k-- > 0;) {
        const std::size_t radix = work.chances[columns[parents[k]]].instances.size();
        key[k] = static_cast<int>(rest % radix);
        rest /= radix;
      }
      const auto b = base.find(key);
      if (b == base.end()) {
        node.cpt.push_back(uniform_row(var.instances.size()));
        continue;
      }
      std::vector<Probability> row;
      for (std::size_t v = 0; v < var.instances.size(); ++v) {
        auto kv = key;
        kv.push_back(static_cast<int>(v));
        const auto it = cond.find(kv);
        row.push_back(it == cond.end() ? Probability::zero() : it->second / b->second);
      }
      node.cpt.push_back(std::move(row));
    }
    out.nodes.push_back(std::move(node));
  }

  for (const auto u : order) {
    if (!responsive[u]) continue;
    const auto& mech = *std::find_if(mechanisms.begin(), mechanisms.end(), [&](const Mechanism& m) { return m.var == u; });
    Node node{p.chances[u].name, NodeKind::deterministic, p.chances[u].instances, mech.mv.domain_vars, false, {}, {}};
    node.parents.push_back(mech.mv.name);
    const std::size_t width = mech.mv.maps.size();
    const std::size_t domain = mech.mv.domain_labels.size();
    node.function.resize(domain * width);
    for (std::size_t c = 0; c < domain; ++c) {
      for (std::size_t m = 0; m < width; ++m) {
        const int v = mech.mv.maps[m][c];
        node.function[c * width + m] = v == kUnobserved ? kUnreachable : v;
      }
    }
    out.nodes.push_back(std::move(node));
  }
  return out;
}

bool d_separated(const InfluenceDiagram& d,
                 const std::vector<std::string>& x,
                 const std::vector<std::string>& y,
                 const std::vector<std::string>& z) {
  require_diagram(d);
  const auto xi = indices_of(d, x);
  const auto yi = indices_of(d, y);
  const auto zi = indices_of(d, z);
  std::vector<bool> in_z(d.nodes.size(), false);
  for (const auto i : zi) in_z[i] = true;
  for (const auto i : xi) {
    if (in_z[i] || std::find(yi.begin(), yi.end(), i) != yi.end()) throw InputError("X, Y and Z must be disjoint");
  }
  for (const auto i : yi) {
    if (in_z[i]) throw InputError("X, Y and Z must be disjoint");
  }

  std::vector<bool> opens = d.ancestors_of(zi);
  for (const auto i : zi) opens[i] = true;
  const auto kids = d.children();

  // Reachability over (node, arrived-from-child) pairs.
  std::vector<std::array<bool, 2>> seen(d.nodes.size(), {false, false});
  std::vector<bool> reached(d.nodes.size(), false);
  std::deque<std::pair<std::size_t, bool>> queue;
  for (const auto i : xi) queue.push_back({i, true});
  while (!queue.empty()) {
    const auto [n, up] = queue.front();
    queue.pop_front();
    if (seen[n][up ? 1 : 0]) continue;
    seen[n][up ? 1 : 0] = true;
    if (!in_z[n]) reached[n] = true;
    if (up) {
      if (in_z[n]) continue;
      for (const auto p : d.parent_indices(n)) queue.push_back({p, true});
      for (const auto c : kids[n]) queue.push_back({c, false});
    } else {
      if (!in_z[n]) {
        for (const auto c : kids[n]) queue.push_back({c, false});
      }
      if (opens[n]) {
        for (const auto p : d.parent_indices(n)) queue.push_back({p, true});
      }
    }
  }
  return std::none_of(yi.begin(), yi.end(), [&](std::size_t i) { return reached[i]; });
}

std::uint64_t count_parameters(const InfluenceDiagram& d) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    if (d.nodes[i].kind != NodeKind::chance) continue;
    total += static_cast<std::uint64_t>(d.nodes[i].instances.size() - 1) * d.config_count(i);
  }
  return total;
}

bool conditionally_independent(const InfluenceDiagram& d,
                               const std::vector<std::string>& x,
                               const std::vector<std::string>& y,
                               const std::vector<std::string>& z) {
  require_diagram(d);
  const auto xi = indices_of(d, x);
  const auto yi = indices_of(d, y);
  const auto zi = indices_of(d, z);
  DecisionProblem shape;
  for (const auto i : d.decision_nodes()) shape.decisions.push_back({d.nodes[i].name, d.nodes[i].instances});
  for (std::size_t a = 0; a < shape.alternative_count(); ++a) {
    if (!independent_in(node_joint(d, shape.alternative_digits(a)), xi, yi, zi)) return false;
  }
  return true;
}

PearlExport export_pearl(const InfluenceDiagram& input) {
  require_diagram(input);
  if (!validate_structural(input).ok) throw InputError("diagram is not in canonical form: a chance node has a decision ancestor");
  const auto verdict = check_canonical_form(input, flatten(input));
  if (!verdict.is_canonical) {
    const auto& v = verdict.violations.front();
    throw InputError("diagram is not in canonical form: " + v.node + " violates clause " + std::to_string(v.clause));
  }

  PearlExport result;
  result.report.parameters_before = count_parameters(input);
  InfluenceDiagram d = input;

  std::vector<std::string> targets;
  for (const auto& n : input.nodes) {
    if (n.kind == NodeKind::deterministic && !n.latent) targets.push_back(n.name);
  }

  for (const auto& x_name : targets) {
    const std::size_t xi = d.index_of(x_name);
    std::vector<std::size_t> mechs;
    for (const auto p : d.parent_indices(xi)) {
      if (d.nodes[p].kind == NodeKind::chance && d.nodes[p].latent) mechs.push_back(p);
    }
    if (mechs.empty()) continue;
    if (mechs.size() > 1) throw InputError(x_name + " has more than one mechanism parent");
    const std::size_t mi = mechs[0];
    const Node mech = d.nodes[mi];
    const Node x = d.nodes[xi];

    std::vector<std::size_t> absorbed, kept;
    for (const auto p : d.parent_indices(mi)) (d.nodes[p].latent ? kept : absorbed).push_back(p);
    if (absorbed.empty()) continue;

    // Domain of the new mechanism: x's other parents, then absorbed nodes
    // not already among them.
    std::vector<std::size_t> domain_nodes;
    for (const auto p : d.parent_indices(xi)) {
      if (p != mi) domain_nodes.push_back(p);
    }
    for (const auto p : absorbed) {
      if (std::find(domain_nodes.begin(), domain_nodes.end(), p) == domain_nodes.end()) domain_nodes.push_back(p);
    }
    std::vector<std::vector<std::string>> domain_vars, absorbed_vars, kept_vars;
    std::vector<std::string> domain_names;
    for (const auto p : domain_nodes) {
      domain_vars.push_back(d.nodes[p].instances);
      domain_names.push_back(d.nodes[p].name);
    }
    for (const auto p : absorbed) absorbed_vars.push_back(d.nodes[p].instances);
    for (const auto p : kept) kept_vars.push_back(d.nodes[p].instances);
    const auto domain_labels = joint_labels(domain_vars);
    const std::size_t domain = domain_labels.size();
    const std::size_t pconfigs = joint_labels(absorbed_vars).size();
    const std::size_t rconfigs = joint_labels(kept_vars).size();
    const std::size_t b = x.instances.size();

    std::uint64_t total_maps = 1;
    for (std::size_t k = 0; k < domain; ++k) {
      total_maps *= b;
      if (total_maps > kMaxMaps) throw BudgetError("mechanism for " + x_name + " would exceed the map budget");
    }
    std::uint64_t tuples = 1;
    for (std::size_t k = 0; k < pconfigs; ++k) {
      tuples *= mech.instances.size();
      if (tuples > kMaxMaps * 16) throw BudgetError("mechanism for " + x_name + " would exceed the coupling budget");
    }

    auto digits = [](std::size_t index, const std::vector<std::size_t>& radix) {
      std::vector<int> out(radix.size());
      for (std::size_t k = radix.size(); k-- > 0;) {
        out[k] = static_cast<int>(index % radix[k]);
        index /= radix[k];
      }
      return out;
    };
    std::vector<std::size_t> domain_radix, absorbed_radix, kept_radix;
    for (const auto p : domain_nodes) domain_radix.push_back(d.nodes[p].instances.size());
    for (const auto p : absorbed) absorbed_radix.push_back(d.nodes[p].instances.size());
    for (const auto p : kept) kept_radix.push_back(d.nodes[p].instances.size());

    // m's CPT row for a given absorbed config and kept config.
    auto mech_row = [&](const std::vector<int>& pd, const std::vector<int>& rd) -> const std::vector<Probability>& {
      std::vector<int> values(d.nodes.size(), 0);
      for (std::size_t k = 0; k < absorbed.size(); ++k) values[absorbed[k]] = pd[k];
      for (std::size_t k = 0; k < kept.size(); ++k) values[kept[k]] = rd[k];
      return mech.cpt[d.config_of(mi, values)];
    };

    // φ(u) = x's function at u's C part and m's value for u's P part.
    auto image = [&](const std::vector<int>& tuple) {
      std::vector<int> phi(domain);
      for (std::size_t u = 0; u < domain; ++u) {
        const auto ud = digits(u, domain_radix);
        std::vector<int> values(d.nodes.size(), 0);
        for (std::size_t k = 0; k < domain_nodes.size(); ++k) values[domain_nodes[k]] = ud[k];
        std::vector<int> pd;
        for (const auto p : absorbed) pd.push_back(values[p]);
        std::size_t pidx = 0;
        for (std::size_t k = 0; k < absorbed.size(); ++k) pidx = pidx * absorbed_radix[k] + static_cast<std::size_t>(pd[k]);
        values[mi] = tuple[pidx];
        const int f = x.function[d.config_of(xi, values)];
        phi[u] = f == kUnreachable ? kUnobserved : f;
      }
      return phi;
    };

    std::map<std::vector<int>, std::size_t> partial_index;
    std::vector<std::vector<int>> partial_maps;
    std::vector<std::map<std::size_t, Probability>> rows(rconfigs);
    for (std::size_t r = 0; r < rconfigs; ++r) {
      const auto rd = digits(r, kept_radix);
      for (std::uint64_t t = 0; t < tuples; ++t) {
        std::vector<int> tuple(pconfigs);
        std::uint64_t rest = t;
        for (std::size_t k = pconfigs; k-- > 0;) {
          tuple[k] = static_cast<int>(rest % mech.instances.size());
          rest /= mech.instances.size();
        }
        Probability weight = Probability::one();
        for (std::size_t k = 0; k < pconfigs && weight.is_positive(); ++k) {
          weight *= mech_row(digits(k, absorbed_radix), rd)[tuple[k]];
        }
        if (weight.is_zero()) continue;
        const auto phi = image(tuple);
        std::size_t index = 0;
        if (std::find(phi.begin(), phi.end(), kUnobserved) == phi.end()) {
          for (const int v : phi) index = index * b + static_cast<std::size_t>(v);
        } else {
          const auto [it, fresh] = partial_index.emplace(phi, partial_maps.size());
          if (fresh) partial_maps.push_back(phi);
          index = static_cast<std::size_t>(total_maps) + it->second;
        }
        rows[r][index] += weight;
      }
    }

    std::vector<std::string> taken;
    for (const auto& n : d.nodes) taken.push_back(n.name);
    std::string eps_name = mapping_name({x_name}, domain_names);
    while (std::find(taken.begin(), taken.end(), eps_name) != taken.end()) eps_name += "_";

    Node eps{eps_name, NodeKind::chance, {}, {}, true, {}, {}};
    for (const auto p : kept) eps.parents.push_back(d.nodes[p].name);
    const std::size_t width = static_cast<std::size_t>(total_maps) + partial_maps.size();
    std::vector<std::vector<int>> maps;
    for (std::uint64_t k = 0; k < total_maps; ++k) {
      std::vector<int> phi(domain);
      std::uint64_t rest = k;
      for (std::size_t u = domain; u-- > 0;) {
        phi[u] = static_cast<int>(rest % b);
        rest /= b;
      }
      maps.push_back(std::move(phi));
    }
    maps.insert(maps.end(), partial_maps.begin(), partial_maps.end());
    for (const auto& phi : maps) eps.instances.push_back(format_map(domain_labels, x.instances, phi));
    for (const auto& row : rows) {
      std::vector<Probability> dense(width);
      for (const auto& [k, p] : row) dense[k] = p;
      eps.cpt.push_back(std::move(dense));
    }

    Node& nx = d.nodes[xi];
    nx.parents = domain_names;
    nx.parents.push_back(eps_name);
    nx.function.assign(domain * width, kUnreachable);
    for (std::size_t u = 0; u < domain; ++u) {
      for (std::size_t e = 0; e < width; ++e) {
        const int v = maps[e][u];
        nx.function[u * width + e] = v == kUnobserved ? kUnreachable : v;
      }
    }
    d.nodes.push_back(std::move(eps));
    if (d.children()[mi].empty()) d.nodes.erase(d.nodes.begin() + static_cast<std::ptrdiff_t>(mi));
  }

  d = augment_with_set_decisions(d, targets);
  result.report.parameters_after = count_parameters(d);

  std::vector<std::size_t> chance;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    if (d.nodes[i].kind == NodeKind::chance) {
      chance.push_back(i);
      result.report.disturbances.push_back(d.nodes[i].name);
    }
  }
  Joint joint;
  for (const auto& w : enumerate_worlds(d)) joint[w.values] += w.probability;
  for (std::size_t a = 0; a < chance.size(); ++a) {
    for (std::size_t b = a + 1; b < chance.size(); ++b) {
      if (!independent_in(joint, {chance[a]}, {chance[b]}, {})) {
        result.report.dependent_pairs.push_back({d.nodes[chance[a]].name, d.nodes[chance[b]].name});
      }
    }
  }
  // Mutual independence: each disturbance independent of all earlier ones.
  for (std::size_t a = 1; a < chance.size() && result.report.independent; ++a) {
    const std::vector<std::size_t> before(chance.begin(), chance.begin() + static_cast<std::ptrdiff_t>(a));
    result.report.independent = independent_in(joint, {chance[a]}, before, {});
  }
  if (!result.report.independent) {
    std::string names;
    for (const auto& [a, b] : result.report.dependent_pairs) {
      if (!names.empty()) names += "; ";
      names += a + " and " + b;
    }
    result.report.suggestion = names.empty()
                                   ? "disturbances are jointly dependent; consider a hidden common cause"
                                   : "consider a hidden common cause of " + names;
  }
  result.diagram = std::move(d);
  return result;
}

}  // namespace causaldt
