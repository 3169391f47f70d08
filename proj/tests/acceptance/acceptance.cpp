#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <string>

#include "causaldt/causes.hpp"
#include "causaldt/diagram.hpp"
#include "causaldt/mapping.hpp"
#include "causaldt/random_models.hpp"
#include "causaldt/responsiveness.hpp"
#include "causaldt/selftest.hpp"
#include "fixtures.hpp"
#include "golden.hpp"
#include "naive.hpp"

using namespace causaldt;

namespace {

using Names = std::vector<std::string>;

struct Criterion {
  int number;
  const char* summary;
  long limit_ms;
  std::function<std::string()> run;  // empty string on success
};

std::string expect(bool ok, const std::string& what) { return ok ? "" : what; }

std::string states_and_violations() {
  const auto medical = fixtures::table("medical.table.json");
  const auto states = enumerate_states(medical.decisions, medical.chances);
  if (states.size() != 16) return "expected 16 states, got " + std::to_string(states.size());
  DecisionProblem all{medical.decisions, medical.chances, {}};
  for (const auto& s : states) all.states.push_back({s, Probability(1, 16)});
  const auto x = resolve_all(all, {"c"}, true);
  const auto y = resolve_all(all, {"t"}, false);
  std::set<std::string> violating;
  DecisionProblem respecting{medical.decisions, medical.chances, {}};
  for (std::size_t s = 0; s < all.states.size(); ++s) {
    if (state_respects(all, s, x, y)) {
      respecting.states.push_back(all.states[s]);
    } else {
      violating.insert(all.states[s].state.label);
    }
  }
  if (violating != std::set<std::string>{"2", "5", "12", "15"}) return "unexpected violating states";
  // The possible states of the story are exactly the respecting ones.
  if (respecting.states.size() != medical.states.size()) return "respecting count differs";
  for (std::size_t s = 0; s < medical.states.size(); ++s) {
    if (!same_outcome(respecting.states[s].state, medical.states[s].state)) return "respecting states differ";
  }
  return "";
}

std::string treatment_maps() {
  const auto mv = extract_mapping_variable(fixtures::table("medical.table.json"), {"t"}, {"r"});
  std::set<std::string> maps;
  for (std::size_t i = 0; i < mv.maps.size(); ++i) {
    if (!mv.is_total(i)) return "partial map in t(r)";
    maps.insert(format_map(mv.domain_labels, mv.range_labels, mv.maps[i]));
  }
  return expect(maps == std::set<std::string>{"take->yes, dont_take->yes", "take->yes, dont_take->no",
                                              "take->no, dont_take->yes", "take->no, dont_take->no"},
                "t(r) maps differ");
}

std::string cause_sets() {
  for (const auto& file : fixtures::corpus_files()) {
    const auto doc = fixtures::load(file);
    if (!doc.is_table() && !validate_structural(doc.model).ok) continue;
    const auto p = fixtures::table(file);
    for (const auto& x : p.chances) {
      if (find_causes(p, x.name).minimal_sets != naive::minimal_causes(p, x.name)) return file + ": " + x.name;
    }
  }
  const auto medical = fixtures::table("medical.table.json");
  return expect(find_causes(medical, "c").minimal_sets == std::vector<VariableSet>{{"r"}, {"t"}}, "medical c");
}

std::string parameter_counts() {
  const auto gene = fixtures::model("gene-canonical.diagram.json");
  const auto exported = export_pearl(gene);
  if (count_parameters(gene) != 13) return "gene diagram parameters";
  if (exported.report.parameters_after != 31) return "exported parameters";
  for (const char* node : {"t_of_r_g", "c_of_t_g"}) {
    if (exported.diagram.node(node).instances.size() != 16) return std::string(node) + " instances";
  }
  return "";
}

std::string canonicalization() {
  std::vector<DecisionProblem> problems;
  for (const auto& file : fixtures::corpus_files()) {
    const auto doc = fixtures::load(file);
    if (doc.is_table() || validate_structural(doc.model).ok) problems.push_back(fixtures::table(file));
  }
  Rng rng(kDefaultSeed);
  RandomShape wide;
  wide.max_alternatives = 3;
  wide.max_instances = 3;
  for (int i = 0; i < 1000; ++i) problems.push_back(random_problem(rng, i % 2 == 0 ? RandomShape{} : wide));
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const auto d = canonicalize(problems[i]);
    if (!check_canonical_form(d, problems[i]).is_canonical) return "not canonical: problem " + std::to_string(i);
    if (!equivalent(flatten(d), problems[i])) return "not equivalent: problem " + std::to_string(i);
  }
  return "";
}

std::string property_suite() {
  auto options = fixtures::corpus_selftest_options();
  options.budget = 10000;
  for (const auto& p : run_selftest(options).properties) {
    if (!p.passed) return p.name + ": " + p.witness;
  }
  return "";
}

std::string independent_but_responsive() {
  const auto bet = fixtures::table("bet.table.json");
  if (!independent_of_decisions(bet, {"w"})) return "w depends on b";
  return expect(!unresponsive_limited(bet, {"w"}, {}).holds, "w unresponsive");
}

bool separation_sound(const InfluenceDiagram& d, std::size_t x, std::size_t y, const std::vector<std::size_t>& z) {
  Names zn;
  for (auto k : z) zn.push_back(d.nodes[k].name);
  return !d_separated(d, {d.nodes[x].name}, {d.nodes[y].name}, zn) || naive::conditionally_independent(d, {x}, {y}, z);
}

std::string dseparation() {
  std::vector<InfluenceDiagram> diagrams;
  for (const auto& file : fixtures::corpus_files()) {
    const auto doc = fixtures::load(file);
    if (!doc.is_table()) diagrams.push_back(doc.model);
  }
  for (const auto& d : diagrams) {
    const std::size_t n = d.nodes.size();
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
          if (mask >> x & 1 || mask >> y & 1) continue;
          std::vector<std::size_t> z;
          for (std::size_t k = 0; k < n; ++k) {
            if (mask >> k & 1) z.push_back(k);
          }
          if (!separation_sound(d, x, y, z)) return "corpus: " + d.nodes[x].name + ", " + d.nodes[y].name;
        }
      }
    }
  }
  Rng rng(kDefaultSeed);
  for (int round = 0; round < 500; ++round) {
    const auto d = random_diagram(rng, 5);
    const std::size_t n = d.nodes.size();
    if (n < 2) continue;
    for (int q = 0; q < 4; ++q) {
      const std::size_t x = rng() % n, y = rng() % n;
      if (x == y) continue;
      std::vector<std::size_t> z;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != x && k != y && rng() % 2 == 0) z.push_back(k);
      }
      if (!separation_sound(d, x, y, z)) return "random diagram " + std::to_string(round);
    }
  }
  return "";
}

std::string set_decisions() {
  const auto gene = fixtures::model("medical-gene.model.json");
  const auto original = flatten(gene);
  const std::size_t bound = original.decisions.size() + original.chances.size();
  for (const Names& targets : {Names{"t", "c"}, Names{"g", "t", "c"}}) {
    const auto v = verify_set_decisions(original, flatten(augment_with_set_decisions(gene, targets)), bound);
    if (!v.verdict.holds) return "gene: " + v.verdict.detail;
  }
  const auto force = flatten(fixtures::model("medical-force.model.json"));
  const auto v = verify_set_decisions(restrict_decisions(force, {{"set_t", kDoNothing}}), force, bound);
  return expect(!v.verdict.holds && v.x == "c", "forcing model accepted");
}

std::string transcripts() {
  const auto previous = std::filesystem::current_path();
  std::filesystem::current_path(CAUSALDT_SOURCE_DIR);
  const auto mismatched = golden::check_all("tests/golden");
  std::filesystem::current_path(previous);
  return mismatched.empty() ? "" : "mismatch: " + mismatched.front();
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "16 states, 4 violate c limited by t, 12 are the table", 1000, states_and_violations},
      {2, "t(r) has the four total maps", 1000, treatment_maps},
      {3, "cause sets match exhaustive search", 5000, cause_sets},
      {4, "parameters 13 -> 31, 16-instance mechanisms", 1000, parameter_counts},
      {5, "canonicalize is canonical and equivalent", 60000, canonicalization},
      {6, "property suite at budget 10000", 120000, property_suite},
      {7, "bet outcome independent yet responsive", 1000, independent_but_responsive},
      {8, "d-separation implies independence", 60000, dseparation},
      {9, "set decisions verified, forcing rejected", 10000, set_decisions},
      {10, "CLI transcripts", 10000, transcripts},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string problem;
    try {
      problem = c.run();
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    const long ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (problem.empty() && ms > c.limit_ms) problem = "too slow";
    const bool pass = problem.empty();
    failures += pass ? 0 : 1;
    std::printf("criterion %d %s %ld ms (limit %ld ms) %s%s%s\n", c.number, pass ? "PASS" : "FAIL", ms, c.limit_ms,
                c.summary, pass ? "" : ": ", problem.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
