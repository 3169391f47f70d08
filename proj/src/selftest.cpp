#include "causaldt/selftest.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "causaldt/causes.hpp"
#include "causaldt/document.hpp"
#include "causaldt/error.hpp"
#include "causaldt/mapping.hpp"
#include "causaldt/random_models.hpp"
#include "causaldt/responsiveness.hpp"

namespace causaldt {

namespace {

using Names = std::vector<std::string>;

struct Query {
  Names x, y, z, w;
};

Names unite(const Names& a, const Names& b) {
  Names out = a;
  for (const auto& s : b) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

bool contains(const Names& set, const std::string& s) { return std::find(set.begin(), set.end(), s) != set.end(); }

Names chance_names(const DecisionProblem& p) {
  Names out;
  for (const auto& c : p.chances) out.push_back(c.name);
  return out;
}

Names decision_names(const DecisionProblem& p) {
  Names out;
  for (const auto& d : p.decisions) out.push_back(d.name);
  return out;
}

bool ul(const DecisionProblem& p, const Names& x, const Names& y) {
  if (x.empty()) return true;
  return unresponsive_limited(p, x, y).holds;
}

std::string show(const Names& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + s[i];
  return out + "}";
}

std::string show(const Query& q) {
  return "X=" + show(q.x) + " Y=" + show(q.y) + " Z=" + show(q.z) + " W=" + show(q.w);
}

// Properties over a table and a query. Each returns true when the property
// holds for that input and sets `premise` when the implication's hypothesis
// was met.
struct TableProperty {
  std::string name;
  std::function<bool(const DecisionProblem&, const Query&, bool&)> check;
};

std::vector<TableProperty> table_properties() {
  std::vector<TableProperty> out;
  out.push_back({"pointwise", [](const DecisionProblem& p, const Query& q, bool& premise) {
                   premise = true;
                   bool each = true;
                   for (const auto& x : q.x) each = each && ul(p, {x}, q.y);
                   return ul(p, q.x, q.y) == each;
                 }});
  out.push_back({"self-limiting", [](const DecisionProblem& p, const Query& q, bool& premise) {
                   premise = true;
                   return ul(p, q.x, q.w) == ul(p, unite(q.x, q.w), q.w);
                 }});
  out.push_back({"decisions-limit", [](const DecisionProblem& p, const Query& q, bool& premise) {
                   premise = true;
                   return ul(p, q.x, decision_names(p));
                 }});
  out.push_back({"monotonicity", [](const DecisionProblem& p, const Query& q, bool& premise) {
                   premise = ul(p, q.x, q.y);
                   return !premise || ul(p, q.x, unite(q.y, q.z));
                 }});
  out.push_back({"cut", [](const DecisionProblem& p, const Query& q, bool& premise) {
                   Names yu;
                   bool decisions_covered = true;
                   for (const auto& v : q.y) {
                     if (p.resolve(v).kind == VarKind::chance) {
                       yu.push_back(v);
                     } else if (!contains(q.z, v)) {
                       decisions_covered = false;
                     }
                   }
                   premise = decisions_covered && ul(p, q.x, unite(q.y, q.z)) && ul(p, yu, q.z);
                   return !premise || ul(p, q.x, q.z);
                 }});
  out.push_back({"composition", [](const DecisionProblem& p, const Query& q, bool& premise) {
                   premise = ul(p, q.x, q.z) && ul(p, q.w, q.z);
                   return !premise || ul(p, unite(q.x, q.w), unite(q.w, q.z));
                 }});
  out.push_back({"redundant-limit", [](const DecisionProblem& p, const Query& q, bool& premise) {
                   premise = ul(p, q.w, q.z);
                   return !premise || ul(p, q.x, unite(q.w, q.z)) == ul(p, q.x, q.z);
                 }});
  out.push_back({"unresponsive-independent", [](const DecisionProblem& p, const Query& q, bool& premise) {
                   premise = ul(p, q.x, {});
                   return !premise || independent_of_decisions(p, q.x);
                 }});
  return out;
}

// Properties over a whole table.
struct ProblemProperty {
  std::string name;
  std::function<bool(const DecisionProblem&, bool&, std::string&)> check;
};

std::vector<ProblemProperty> problem_properties() {
  std::vector<ProblemProperty> out;
  out.push_back({"cause-members-responsive", [](const DecisionProblem& p, bool& premise, std::string& where) {
                   premise = false;
                   for (const auto& c : p.chances) {
                     for (const auto& set : find_causes(p, c.name).minimal_sets) {
                       for (const auto& v : set) {
                         if (p.resolve(v).kind != VarKind::chance) continue;
                         premise = true;
                         if (ul(p, {v}, {})) {
                           where = "x=" + c.name + " cause " + format_set(set);
                           return false;
                         }
                       }
                     }
                   }
                   return true;
                 }});
  out.push_back({"cause-antichain", [](const DecisionProblem& p, bool& premise, std::string& where) {
                   premise = true;
                   for (const auto& c : p.chances) {
                     const auto sets = find_causes(p, c.name).minimal_sets;
                     where = "x=" + c.name;
                     const bool unresponsive = ul(p, {c.name}, {});
                     const bool only_empty = sets.size() == 1 && sets[0].empty();
                     if (unresponsive != only_empty) return false;
                     if (!unresponsive && std::none_of(sets.begin(), sets.end(), [&](const VariableSet& s) {
                           return std::all_of(s.begin(), s.end(), [&](const std::string& v) { return p.resolve(v).kind == VarKind::decision; });
                         })) {
                       return false;
                     }
                     for (std::size_t i = 0; i < sets.size(); ++i) {
                       for (std::size_t j = 0; j < sets.size(); ++j) {
                         if (i != j && std::includes(sets[j].begin(), sets[j].end(), sets[i].begin(), sets[i].end())) return false;
                       }
                     }
                   }
                   return true;
                 }});
  out.push_back({"transitivity", [](const DecisionProblem& p, bool& premise, std::string& where) {
                   premise = false;
                   std::map<std::string, std::vector<VariableSet>> causes;
                   for (const auto& c : p.chances) causes[c.name] = find_causes(p, c.name).minimal_sets;
                   auto singleton = [&](const std::string& target, const std::string& v) {
                     const auto& sets = causes[target];
                     return std::find(sets.begin(), sets.end(), VariableSet{v}) != sets.end();
                   };
                   Names all = unite(decision_names(p), chance_names(p));
                   for (const auto& y : chance_names(p)) {
                     for (const auto& z : chance_names(p)) {
                       if (!singleton(z, y)) continue;
                       for (const auto& x : all) {
                         if (!singleton(y, x)) continue;
                         premise = true;
                         if (!ul(p, {z}, {x})) {
                           where = "x=" + x + " y=" + y + " z=" + z;
                           return false;
                         }
                       }
                     }
                   }
                   return true;
                 }});
  out.push_back({"mechanisms-unresponsive", [](const DecisionProblem& p, bool& premise, std::string& where) {
                   premise = false;
                   for (const auto& c : p.chances) {
                     for (const auto& set : find_causes(p, c.name).minimal_sets) {
                       premise = true;
                       const auto mv = extract_mapping_variable(p, {c.name}, set);
                       if (!ul(materialize(p, mv), {mv.name}, {})) {
                         where = mv.name;
                         return false;
                       }
                     }
                   }
                   return true;
                 }});
  return out;
}

struct ModelQuery {
  Names x, y, z, w;
};

std::string show(const ModelQuery& q) {
  return "X=" + show(q.x) + " Y=" + show(q.y) + " Z=" + show(q.z) + " W=" + show(q.w);
}

// Forcing needs every function row defined, and the set decisions must
// behave as such.
bool set_decisions_valid(const StructuralModel& m) {
  for (const auto& n : m.nodes) {
    if (std::find(n.function.begin(), n.function.end(), kUnreachable) != n.function.end()) return false;
  }
  Names targets;
  for (const auto i : m.observable_nodes()) {
    if (m.nodes[i].kind != NodeKind::decision) targets.push_back(m.nodes[i].name);
  }
  if (targets.empty()) return true;
  try {
    return verify_set_decisions(flatten(m), flatten(augment_with_set_decisions(m, targets)), 1).verdict.holds;
  } catch (const InputError&) {
    return false;
  }
}

bool descends(const StructuralModel& m, const Names& from, const Names& to) {
  std::vector<std::size_t> roots;
  for (const auto& f : from) roots.push_back(m.index_of(f));
  const auto below = m.descendants_of(roots);
  return std::any_of(to.begin(), to.end(), [&](const std::string& t) { return below[m.index_of(t)]; });
}

// Per-model values shared by every query on the model.
struct ModelFacts {
  bool forcing_ok = false;
  DecisionProblem flat;
  DecisionProblem unfolded;
};

ModelFacts facts_of(const StructuralModel& m) {
  ModelFacts f;
  f.forcing_ok = set_decisions_valid(m);
  if (f.forcing_ok) {
    f.flat = flatten(m);
    f.unfolded = unfold(m);
  }
  return f;
}

struct ModelProperty {
  std::string name;
  std::function<bool(const StructuralModel&, const ModelFacts&, const ModelQuery&, bool&)> check;
};

std::vector<ModelProperty> model_properties() {
  std::vector<ModelProperty> out;
  out.push_back({"mapping-dependence", [](const StructuralModel& m, const ModelFacts& f, const ModelQuery& q, bool& premise) {
                   premise = f.forcing_ok;
                   if (!premise) return true;
                   const bool lhs = ul(f.flat, q.x, q.y);
                   const auto mv = mapping_variable_structural(m, q.x, q.y);
                   return lhs == ul(materialize(f.unfolded, mv), {mv.name}, {});
                 }});
  out.push_back({"mapping-absorption", [](const StructuralModel& m, const ModelFacts& f, const ModelQuery& q, bool& premise) {
                   premise = f.forcing_ok && !descends(m, q.w, q.y) && !descends(m, q.y, q.z);
                   if (!premise) return true;
                   const auto small = mapping_variable_structural(m, q.x, q.w);
                   auto large = mapping_variable_structural(m, q.x, unite(q.w, q.y));
                   while (large.name == small.name) large.name += "_";
                   const auto table = materialize(materialize(f.unfolded, small), large);
                   return ul(table, {small.name}, unite(q.z, q.y)) == ul(table, {large.name}, q.z);
                 }});
  return out;
}

// Shrinking.

DecisionProblem without_state(const DecisionProblem& p, std::size_t s) {
  DecisionProblem out = p;
  const Probability removed = out.states[s].probability;
  out.states.erase(out.states.begin() + static_cast<std::ptrdiff_t>(s));
  const Probability rest = Probability::one() - removed;
  for (auto& ws : out.states) ws.probability = ws.probability / rest;
  return out;
}

DecisionProblem uniform(const DecisionProblem& p) {
  DecisionProblem out = p;
  for (auto& ws : out.states) ws.probability = Probability(1, static_cast<unsigned long>(out.states.size()));
  return out;
}

StructuralModel shrink_model(StructuralModel m, const Names& keep, const std::function<bool(const StructuralModel&)>& fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    const auto kids = m.children();
    for (std::size_t i = m.nodes.size(); i-- > 0 && !progress;) {
      if (!kids[i].empty() || contains(keep, m.nodes[i].name)) continue;
      StructuralModel c = m;
      c.nodes.erase(c.nodes.begin() + static_cast<std::ptrdiff_t>(i));
      try {
        if (validate_structural(c).ok && fails(c)) m = std::move(c), progress = true;
      } catch (const Error&) {
      }
    }
  }
  return m;
}

class Runner {
 public:
  explicit Runner(const SelftestOptions& options) : options_(options), rng_(options.seed) {
    for (const auto& name : selftest_property_names()) {
      report_.properties.push_back({name, 0, 0, true, ""});
    }
  }

  SelftestReport run() {
    for (const auto& p : options_.tables) {
      problem_round(p);
      for (int k = 0; k < 25; ++k) table_round(p, random_query(p));
    }
    for (const auto& m : options_.models) {
      const auto facts = facts_of(m);
      for (int k = 0; k < 10; ++k) {
        if (auto q = random_model_query(m)) model_round(m, facts, *q);
      }
    }
    const std::size_t per_problem = 10;
    DecisionProblem p;
    for (std::size_t k = 0; k < options_.budget; ++k) {
      if (k % per_problem == 0) {
        p = random_problem(rng_);
        problem_round(p);
      }
      table_round(p, random_query(p));
    }
    StructuralModel m;
    ModelFacts facts;
    for (std::size_t k = 0; k < options_.budget; ++k) {
      if (k % per_problem == 0) {
        m = random_structural(rng_);
        facts = facts_of(m);
      }
      if (auto q = random_model_query(m)) model_round(m, facts, *q);
    }
    return report_;
  }

 private:
  PropertyOutcome& outcome(const std::string& name) {
    for (auto& o : report_.properties) {
      if (o.name == name) return o;
    }
    throw InputError("unknown property " + name);
  }

  Query random_query(const DecisionProblem& p) {
    const Names chances = chance_names(p);
    const Names all = unite(decision_names(p), chances);
    Query q;
    while (q.x.empty()) q.x = random_subset(rng_, chances);
    if (q.x.size() > 2) q.x.resize(2);
    q.y = random_subset(rng_, all);
    q.z = random_subset(rng_, all);
    q.w = random_subset(rng_, chances);
    return q;
  }

  std::optional<ModelQuery> random_model_query(const StructuralModel& m) {
    Names observable, decisions;
    for (const auto i : m.observable_nodes()) {
      (m.nodes[i].kind == NodeKind::decision ? decisions : observable).push_back(m.nodes[i].name);
    }
    if (observable.empty()) return std::nullopt;
    std::shuffle(observable.begin(), observable.end(), rng_);
    ModelQuery q;
    q.x.push_back(observable.back());
    Names rest(observable.begin(), observable.end() - 1);
    rest = unite(rest, decisions);
    for (const auto& v : rest) {
      switch (std::uniform_int_distribution<int>(0, 3)(rng_)) {
        case 0:
          q.y.push_back(v);
          break;
        case 1:
          q.z.push_back(v);
          break;
        case 2:
          q.w.push_back(v);
          break;
        default:
          break;
      }
    }
    return q;
  }

  void table_round(const DecisionProblem& p, const Query& q) {
    for (const auto& prop : table_properties()) {
      auto& o = outcome(prop.name);
      bool premise = false;
      const bool ok = prop.check(p, q, premise);
      ++o.checked;
      if (premise) ++o.exercised;
      if (ok || !o.passed) continue;
      o.passed = false;
      const Names keep = unite(unite(q.x, q.y), unite(q.z, q.w));
      const auto small = shrink_problem(p, keep, [&](const DecisionProblem& c) {
        bool pr = false;
        return !prop.check(c, q, pr);
      });
      o.witness = show(q) + "\n" + serialize_problem(small);
    }
  }

  void problem_round(const DecisionProblem& p) {
    for (const auto& prop : problem_properties()) {
      auto& o = outcome(prop.name);
      bool premise = false;
      std::string where;
      const bool ok = prop.check(p, premise, where);
      ++o.checked;
      if (premise) ++o.exercised;
      if (ok || !o.passed) continue;
      o.passed = false;
      const auto small = shrink_problem(p, {}, [&](const DecisionProblem& c) {
        bool pr = false;
        std::string w;
        return !prop.check(c, pr, w);
      });
      bool pr = false;
      prop.check(small, pr, where);
      o.witness = where + "\n" + serialize_problem(small);
    }
  }

  void model_round(const StructuralModel& m, const ModelFacts& facts, const ModelQuery& q) {
    for (const auto& prop : model_properties()) {
      auto& o = outcome(prop.name);
      bool premise = false;
      const bool ok = prop.check(m, facts, q, premise);
      ++o.checked;
      if (premise) ++o.exercised;
      if (ok || !o.passed) continue;
      o.passed = false;
      const Names keep = unite(unite(q.x, q.y), unite(q.z, q.w));
      const auto small = shrink_model(m, keep, [&](const StructuralModel& c) {
        bool pr = false;
        return !prop.check(c, facts_of(c), q, pr);
      });
      o.witness = show(q) + "\n" + serialize_model(small);
    }
  }

  const SelftestOptions& options_;
  Rng rng_;
  SelftestReport report_;
};

}  // namespace

bool SelftestReport::passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyOutcome& o) { return o.passed; });
}

DecisionProblem shrink_problem(DecisionProblem p, const Names& keep, const std::function<bool(const DecisionProblem&)>& fails) {
  auto still = [&](const DecisionProblem& candidate) {
    try {
      return validate_problem(candidate).ok && fails(candidate);
    } catch (const Error&) {
      return false;
    }
  };
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t s = 0; s < p.states.size() && p.states.size() > 1 && !progress; ++s) {
      auto c = without_state(p, s);
      if (still(c)) p = std::move(c), progress = true;
    }
    for (std::size_t u = 0; u < p.chances.size() && !progress; ++u) {
      if (contains(keep, p.chances[u].name) || p.chances.size() == 1) continue;
      Names rest = chance_names(p);
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(u));
      auto c = project(p, rest);
      if (still(c)) p = std::move(c), progress = true;
    }
    for (std::size_t d = 0; d < p.decisions.size() && !progress; ++d) {
      if (contains(keep, p.decisions[d].name)) continue;
      auto c = restrict_decisions(p, {{p.decisions[d].name, p.decisions[d].alternatives[0]}});
      if (still(c)) p = std::move(c), progress = true;
    }
    if (!progress) {
      const bool flat = std::all_of(p.states.begin(), p.states.end(), [&](const WeightedState& ws) {
        return ws.probability == p.states.front().probability;
      });
      auto c = uniform(p);
      if (!flat && still(c)) p = std::move(c), progress = true;
    }
  }
  return p;
}

std::vector<std::string> selftest_property_names() {
  std::vector<std::string> out;
  for (const auto& p : table_properties()) out.push_back(p.name);
  for (const auto& p : problem_properties()) out.push_back(p.name);
  for (const auto& p : model_properties()) out.push_back(p.name);
  return out;
}

SelftestReport run_selftest(const SelftestOptions& options) { return Runner(options).run(); }

}  // namespace causaldt
