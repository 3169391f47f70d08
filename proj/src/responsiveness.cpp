#include "causaldt/responsiveness.hpp"

#include <algorithm>
#include <map>

#include "causaldt/error.hpp"

namespace causaldt {

namespace {

std::vector<int> key_of(const DecisionProblem& p, std::size_t s, std::size_t a, const std::vector<VarRef>& refs) {
  std::vector<int> key;
  key.reserve(refs.size());
  for (const auto& r : refs) key.push_back(p.value(s, a, r));
  return key;
}

std::string assignment_text(const Assignment& a) {
  std::string out;
  for (const auto& [name, value] : a) {
    if (!out.empty()) out += ";";
    out += name + "=" + value;
  }
  return out.empty() ? "(no decisions)" : out;
}

// First alternative pair (i < j) in state s with equal Y keys (matching
// `pinned` when given) and unequal X keys.
std::optional<Witness> first_violation(const DecisionProblem& p,
                                       std::size_t s,
                                       const std::vector<VarRef>& x,
                                       const std::vector<VarRef>& y,
                                       const std::vector<int>* pinned) {
  const std::size_t alternatives = p.alternative_count();
  std::vector<std::vector<int>> ykeys(alternatives), xkeys(alternatives);
  for (std::size_t a = 0; a < alternatives; ++a) {
    ykeys[a] = key_of(p, s, a, y);
    xkeys[a] = key_of(p, s, a, x);
  }

  std::map<std::vector<int>, std::size_t> first_seen;
  bool violated = false;
  for (std::size_t a = 0; a < alternatives && !violated; ++a) {
    if (pinned && ykeys[a] != *pinned) continue;
    const auto [it, fresh] = first_seen.emplace(ykeys[a], a);
    if (!fresh && xkeys[it->second] != xkeys[a]) violated = true;
  }
  if (!violated) return std::nullopt;

  for (std::size_t i = 0; i < alternatives; ++i) {
    if (pinned && ykeys[i] != *pinned) continue;
    for (std::size_t j = i + 1; j < alternatives; ++j) {
      if (ykeys[i] != ykeys[j] || xkeys[i] == xkeys[j]) continue;
      std::size_t k = 0;
      while (xkeys[i][k] == xkeys[j][k]) ++k;
      Witness w;
      w.state = p.states[s].state.label;
      w.state_index = s;
      w.first_index = i;
      w.second_index = j;
      w.first = p.alternative_assignment(i);
      w.second = p.alternative_assignment(j);
      w.variable = p.name(x[k]);
      w.first_instance = p.instances(x[k])[xkeys[i][k]];
      w.second_instance = p.instances(x[k])[xkeys[j][k]];
      return w;
    }
  }
  return std::nullopt;
}

Verdict scan(const DecisionProblem& p,
             std::vector<VarRef> x,
             const std::vector<VarRef>& y,
             const std::vector<int>* pinned) {
  std::sort(x.begin(), x.end(), [](const VarRef& a, const VarRef& b) { return a.index < b.index; });
  for (std::size_t s = 0; s < p.states.size(); ++s) {
    if (!p.states[s].probability.is_positive()) continue;
    if (auto w = first_violation(p, s, x, y, pinned)) {
      Verdict v;
      v.holds = false;
      v.detail = describe(*w);
      v.witness = std::move(w);
      return v;
    }
  }
  return {};
}

}  // namespace

std::string describe(const Witness& w) {
  return "state " + w.state + ": " + assignment_text(w.first) + " gives " + w.variable + "=" + w.first_instance +
         ", " + assignment_text(w.second) + " gives " + w.variable + "=" + w.second_instance;
}

std::vector<VarRef> resolve_all(const DecisionProblem& p, const std::vector<std::string>& names, bool chance_only) {
  std::vector<VarRef> out;
  for (const auto& n : names) {
    const VarRef r = p.resolve(n);
    if (chance_only && r.kind != VarKind::chance) throw InputError(n + " is a decision variable; only chance variables are allowed here");
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  return out;
}

bool state_respects(const DecisionProblem& p, std::size_t state, const std::vector<VarRef>& x, const std::vector<VarRef>& y) {
  return !first_violation(p, state, x, y, nullptr).has_value();
}

Verdict unresponsive_limited(const DecisionProblem& p, const std::vector<std::string>& x, const std::vector<std::string>& y) {
  return scan(p, resolve_all(p, x, true), resolve_all(p, y, false), nullptr);
}

Verdict unresponsive_at_instance(const DecisionProblem& p,
                                 const std::vector<std::string>& x,
                                 const std::vector<std::string>& y,
                                 const Assignment& instance) {
  const auto xr = resolve_all(p, x, true);
  const auto yr = resolve_all(p, y, false);
  std::vector<int> pinned;
  for (const auto& r : yr) {
    const auto it = instance.find(p.name(r));
    if (it == instance.end()) throw InputError("instance does not bind " + p.name(r));
    pinned.push_back(p.instance_index(r, it->second));
  }
  for (const auto& [name, value] : instance) {
    const VarRef r = p.resolve(name);
    if (std::find(yr.begin(), yr.end(), r) == yr.end()) throw InputError("instance binds " + name + ", which is not in Y");
  }
  return scan(p, xr, yr, &pinned);
}

Verdict unresponsive_to_subset(const DecisionProblem& p,
                               const std::vector<std::string>& x,
                               const std::vector<std::string>& dsub,
                               const std::vector<std::string>& y) {
  for (const auto& d : dsub) {
    if (p.resolve(d).kind != VarKind::decision) throw InputError(d + " is not a decision variable");
  }
  std::vector<std::string> limit = y;
  for (const auto& d : p.decisions) {
    if (std::find(dsub.begin(), dsub.end(), d.name) == dsub.end()) limit.push_back(d.name);
  }
  return unresponsive_limited(p, x, limit);
}

bool independent_of_decisions(const DecisionProblem& p, const std::vector<std::string>& x) {
  const auto xr = resolve_all(p, x, true);
  std::map<std::vector<int>, Probability> reference;
  for (std::size_t a = 0; a < p.alternative_count(); ++a) {
    std::map<std::vector<int>, Probability> marginal;
    for (std::size_t s = 0; s < p.states.size(); ++s) {
      if (p.states[s].probability.is_zero()) continue;
      marginal[key_of(p, s, a, xr)] += p.states[s].probability;
    }
    if (a == 0) {
      reference = std::move(marginal);
    } else if (marginal != reference) {
      return false;
    }
  }
  return true;
}

}  // namespace causaldt
