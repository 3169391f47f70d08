#include "causaldt/problem.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <utility>

#include "causaldt/error.hpp"

namespace causaldt {

namespace {

bool bad_symbol(const std::string& s) {
  return s.empty() || s.find_first_of("=;") != std::string::npos;
}

bool has_duplicates(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) != v.end();
}

int compare_outcomes(const DecisionProblem& p, const WorldState& a, const WorldState& b) {
  const std::size_t n = std::min(a.outcome.size(), b.outcome.size());
  for (std::size_t alt = 0; alt < n; ++alt) {
    const Realization& ra = a.outcome[alt];
    const Realization& rb = b.outcome[alt];
    for (std::size_t u = 0; u < p.chances.size() && u < ra.size() && u < rb.size(); ++u) {
      if (ra[u] == rb[u]) continue;
      const auto& inst = p.chances[u].instances;
      const int c = inst[ra[u]].compare(inst[rb[u]]);
      if (c != 0) return c < 0 ? -1 : 1;
      return ra[u] < rb[u] ? -1 : 1;
    }
  }
  return 0;
}

}  // namespace

std::size_t DecisionProblem::alternative_count() const {
  std::size_t n = 1;
  for (const auto& d : decisions) n *= d.alternatives.size();
  return n;
}

std::vector<int> DecisionProblem::alternative_digits(std::size_t alternative) const {
  std::vector<int> digits(decisions.size());
  for (std::size_t i = decisions.size(); i-- > 0;) {
    const std::size_t radix = decisions[i].alternatives.size();
    digits[i] = static_cast<int>(alternative % radix);
    alternative /= radix;
  }
  return digits;
}

std::size_t DecisionProblem::alternative_index(const std::vector<int>& digits) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    index = index * decisions[i].alternatives.size() + static_cast<std::size_t>(digits[i]);
  }
  return index;
}

std::size_t DecisionProblem::alternative_index(const Assignment& alternative) const {
  std::vector<int> digits(decisions.size());
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    const auto it = alternative.find(decisions[i].name);
    if (it == alternative.end()) throw InputError("alternative does not bind decision " + decisions[i].name);
    digits[i] = instance_index({VarKind::decision, i}, it->second);
  }
  for (const auto& [name, value] : alternative) {
    const auto ref = find(name);
    if (!ref || ref->kind != VarKind::decision) throw InputError("alternative binds non-decision " + name);
  }
  return alternative_index(digits);
}

Assignment DecisionProblem::alternative_assignment(std::size_t alternative) const {
  Assignment out;
  const auto digits = alternative_digits(alternative);
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    out[decisions[i].name] = decisions[i].alternatives[digits[i]];
  }
  return out;
}

std::string DecisionProblem::alternative_key(std::size_t alternative) const {
  std::string key;
  for (const auto& [name, value] : alternative_assignment(alternative)) {
    if (!key.empty()) key += ';';
    key += name + "=" + value;
  }
  return key;
}

std::optional<VarRef> DecisionProblem::find(const std::string& name) const {
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (decisions[i].name == name) return VarRef{VarKind::decision, i};
  }
  for (std::size_t i = 0; i < chances.size(); ++i) {
    if (chances[i].name == name) return VarRef{VarKind::chance, i};
  }
  return std::nullopt;
}

VarRef DecisionProblem::resolve(const std::string& name) const {
  if (auto ref = find(name)) return *ref;
  throw InputError("unknown variable: " + name);
}

const std::string& DecisionProblem::name(VarRef ref) const {
  return ref.kind == VarKind::decision ? decisions[ref.index].name : chances[ref.index].name;
}

const std::vector<std::string>& DecisionProblem::instances(VarRef ref) const {
  return ref.kind == VarKind::decision ? decisions[ref.index].alternatives : chances[ref.index].instances;
}

int DecisionProblem::instance_index(VarRef ref, const std::string& instance) const {
  const auto& inst = instances(ref);
  const auto it = std::find(inst.begin(), inst.end(), instance);
  if (it == inst.end()) throw InputError("instance " + instance + " is not declared for " + name(ref));
  return static_cast<int>(it - inst.begin());
}

int DecisionProblem::value(std::size_t s, std::size_t alternative, VarRef ref) const {
  if (ref.kind == VarKind::chance) return states[s].state.outcome[alternative][ref.index];
  std::size_t rest = alternative;
  for (std::size_t i = decisions.size(); i-- > ref.index + 1;) rest /= decisions[i].alternatives.size();
  return static_cast<int>(rest % decisions[ref.index].alternatives.size());
}

Validation validate_problem(const DecisionProblem& p) {
  auto fail = [](std::string path, std::string message) { return Validation{false, std::move(path), std::move(message)}; };

  std::vector<std::string> names;
  for (std::size_t i = 0; i < p.decisions.size(); ++i) {
    const auto& d = p.decisions[i];
    const std::string path = "decisions[" + std::to_string(i) + "]";
    if (bad_symbol(d.name)) return fail(path + ".name", "invalid variable name \"" + d.name + "\"");
    if (d.alternatives.size() < 2) return fail(path + ".alternatives", "a decision needs at least 2 alternatives");
    for (const auto& a : d.alternatives) {
      if (bad_symbol(a)) return fail(path + ".alternatives", "invalid instance symbol \"" + a + "\"");
    }
    if (has_duplicates(d.alternatives)) return fail(path + ".alternatives", "duplicate instance symbol");
    names.push_back(d.name);
  }
  for (std::size_t i = 0; i < p.chances.size(); ++i) {
    const auto& c = p.chances[i];
    const std::string path = "chances[" + std::to_string(i) + "]";
    if (bad_symbol(c.name)) return fail(path + ".name", "invalid variable name \"" + c.name + "\"");
    if (c.instances.empty()) return fail(path + ".instances", "a chance variable needs at least 1 instance");
    for (const auto& a : c.instances) {
      if (a.empty()) return fail(path + ".instances", "empty instance symbol");
    }
    if (has_duplicates(c.instances)) return fail(path + ".instances", "duplicate instance symbol");
    names.push_back(c.name);
  }
  if (has_duplicates(names)) return fail("variables", "duplicate variable name");

  const std::size_t alternatives = p.alternative_count();
  Probability total;
  std::set<std::vector<Realization>> seen;
  for (std::size_t s = 0; s < p.states.size(); ++s) {
    const auto& ws = p.states[s];
    const std::string path = "states[" + std::to_string(s) + "]";
    if (ws.state.outcome.size() < alternatives) {
      return fail(path + ".outcome[" + p.alternative_key(ws.state.outcome.size()) + "]", "outcome not total");
    }
    if (ws.state.outcome.size() > alternatives) {
      return fail(path + ".outcome", "outcome has more entries than joint alternatives");
    }
    for (std::size_t a = 0; a < alternatives; ++a) {
      const Realization& r = ws.state.outcome[a];
      const std::string apath = path + ".outcome[" + p.alternative_key(a) + "]";
      if (r.size() != p.chances.size()) return fail(apath, "realization not total over chance variables");
      for (std::size_t u = 0; u < r.size(); ++u) {
        if (r[u] < 0 || static_cast<std::size_t>(r[u]) >= p.chances[u].instances.size()) {
          return fail(apath + "." + p.chances[u].name, "undeclared instance");
        }
      }
    }
    if (!ws.probability.in_unit_interval()) {
      return fail(path + ".probability", "probability " + ws.probability.str() + " outside [0, 1]");
    }
    if (!seen.insert(ws.state.outcome).second) return fail(path, "duplicate outcome map");
    total += ws.probability;
  }
  if (total != Probability::one()) return fail("states", "probabilities sum to " + total.str() + ", not 1");
  return {};
}

void require_valid(const DecisionProblem& problem) {
  const auto v = validate_problem(problem);
  if (!v.ok) throw InputError("invalid problem at " + v.path + ": " + v.message);
}

bool same_outcome(const WorldState& a, const WorldState& b) { return a.outcome == b.outcome; }

DecisionProblem normalize(DecisionProblem p) {
  std::vector<WeightedState> kept;
  kept.reserve(p.states.size());
  for (auto& ws : p.states) {
    if (!ws.probability.is_zero()) kept.push_back(std::move(ws));
  }
  std::stable_sort(kept.begin(), kept.end(), [&](const WeightedState& a, const WeightedState& b) {
    return compare_outcomes(p, a.state, b.state) < 0;
  });
  p.states.clear();
  for (auto& ws : kept) {
    if (!p.states.empty() && same_outcome(p.states.back().state, ws.state)) {
      auto& last = p.states.back();
      last.probability += ws.probability;
      if (last.state.label != ws.state.label) last.state.label += " | " + ws.state.label;
      continue;
    }
    p.states.push_back(std::move(ws));
  }
  return p;
}

std::vector<WorldState> enumerate_states(const std::vector<DecisionVariable>& decisions,
                                         const std::vector<ChanceVariable>& chances,
                                         std::uint64_t cap) {
  DecisionProblem shape{decisions, chances, {}};
  std::uint64_t r = 1;
  for (const auto& c : chances) {
    r *= c.instances.size();
    if (r > cap) throw BudgetError("realization count exceeds budget");
  }
  const std::size_t a = shape.alternative_count();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < a; ++i) {
    total *= r;
    if (total > cap) throw BudgetError("r^a = " + std::to_string(r) + "^" + std::to_string(a) + " exceeds budget " + std::to_string(cap));
  }
  if (r == 0) return {};

  std::vector<Realization> realizations;
  realizations.reserve(r);
  for (std::uint64_t k = 0; k < r; ++k) {
    Realization real(chances.size());
    std::uint64_t rest = k;
    for (std::size_t u = chances.size(); u-- > 0;) {
      real[u] = static_cast<int>(rest % chances[u].instances.size());
      rest /= chances[u].instances.size();
    }
    realizations.push_back(std::move(real));
  }

  std::vector<WeightedState> states;
  states.reserve(total);
  std::vector<std::uint64_t> pick(a, 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    WorldState ws;
    for (std::size_t alt = 0; alt < a; ++alt) ws.outcome.push_back(realizations[pick[alt]]);
    states.push_back({std::move(ws), Probability::one()});
    for (std::size_t alt = a; alt-- > 0;) {
      if (++pick[alt] < r) break;
      pick[alt] = 0;
    }
  }
  shape.states = std::move(states);
  shape = normalize(std::move(shape));

  std::vector<WorldState> out;
  out.reserve(shape.states.size());
  for (std::size_t i = 0; i < shape.states.size(); ++i) {
    shape.states[i].state.label = std::to_string(i + 1);
    out.push_back(std::move(shape.states[i].state));
  }
  return out;
}

std::map<Realization, Probability> joint_distribution(const DecisionProblem& problem, std::size_t alternative) {
  if (alternative >= problem.alternative_count()) throw InputError("alternative index out of range");
  std::map<Realization, Probability> out;
  for (const auto& ws : problem.states) {
    if (ws.probability.is_zero()) continue;
    out[ws.state.outcome[alternative]] += ws.probability;
  }
  return out;
}

std::map<Realization, Probability> joint_distribution(const DecisionProblem& problem, const Assignment& alternative) {
  return joint_distribution(problem, problem.alternative_index(alternative));
}

DecisionProblem restrict_decisions(const DecisionProblem& problem, const Assignment& fixed) {
  std::vector<int> pinned(problem.decisions.size(), -1);
  for (const auto& [name, value] : fixed) {
    const VarRef ref = problem.resolve(name);
    if (ref.kind != VarKind::decision) throw InputError(name + " is not a decision variable");
    pinned[ref.index] = problem.instance_index(ref, value);
  }

  DecisionProblem out;
  out.chances = problem.chances;
  for (std::size_t i = 0; i < problem.decisions.size(); ++i) {
    if (pinned[i] < 0) out.decisions.push_back(problem.decisions[i]);
  }
  const std::size_t alternatives = out.alternative_count();
  for (const auto& ws : problem.states) {
    WeightedState next{{ws.state.label, {}}, ws.probability};
    for (std::size_t a = 0; a < alternatives; ++a) {
      const auto sub = out.alternative_digits(a);
      std::vector<int> digits(problem.decisions.size());
      for (std::size_t i = 0, j = 0; i < problem.decisions.size(); ++i) {
        digits[i] = pinned[i] >= 0 ? pinned[i] : sub[j++];
      }
      next.state.outcome.push_back(ws.state.outcome[problem.alternative_index(digits)]);
    }
    out.states.push_back(std::move(next));
  }
  return normalize(std::move(out));
}

DecisionProblem project(const DecisionProblem& problem, const std::vector<std::string>& keep) {
  std::vector<std::size_t> columns;
  for (std::size_t u = 0; u < problem.chances.size(); ++u) {
    if (std::find(keep.begin(), keep.end(), problem.chances[u].name) != keep.end()) columns.push_back(u);
  }
  for (const auto& name : keep) {
    const VarRef ref = problem.resolve(name);
    if (ref.kind != VarKind::chance) throw InputError(name + " is not a chance variable");
  }

  DecisionProblem out;
  out.decisions = problem.decisions;
  for (auto u : columns) out.chances.push_back(problem.chances[u]);
  for (const auto& ws : problem.states) {
    WeightedState next{{ws.state.label, {}}, ws.probability};
    for (const auto& r : ws.state.outcome) {
      Realization sub;
      sub.reserve(columns.size());
      for (auto u : columns) sub.push_back(r[u]);
      next.state.outcome.push_back(std::move(sub));
    }
    out.states.push_back(std::move(next));
  }
  return normalize(std::move(out));
}

namespace {

// b with its chance variables permuted into a's order, or nothing if the two
// declare different chance variables.
std::optional<DecisionProblem> align_chances(const DecisionProblem& a, const DecisionProblem& b) {
  if (a.chances.size() != b.chances.size()) return std::nullopt;
  std::vector<std::size_t> from;
  for (const auto& c : a.chances) {
    const auto it = std::find_if(b.chances.begin(), b.chances.end(), [&](const ChanceVariable& v) { return v.name == c.name; });
    if (it == b.chances.end() || it->instances != c.instances) return std::nullopt;
    from.push_back(static_cast<std::size_t>(it - b.chances.begin()));
  }
  DecisionProblem out = b;
  out.chances = a.chances;
  for (auto& ws : out.states) {
    for (auto& r : ws.state.outcome) {
      Realization moved(from.size());
      for (std::size_t k = 0; k < from.size(); ++k) moved[k] = r[from[k]];
      r = std::move(moved);
    }
  }
  return out;
}

}  // namespace

bool equivalent(const DecisionProblem& a, const DecisionProblem& b) {
  if (a.decisions != b.decisions) return false;
  const auto aligned = align_chances(a, b);
  if (!aligned) return false;
  const auto na = normalize(a);
  const auto nb = normalize(*aligned);
  if (na.states.size() != nb.states.size()) return false;
  for (std::size_t i = 0; i < na.states.size(); ++i) {
    if (!same_outcome(na.states[i].state, nb.states[i].state)) return false;
    if (na.states[i].probability != nb.states[i].probability) return false;
  }
  return true;
}

}  // namespace causaldt
