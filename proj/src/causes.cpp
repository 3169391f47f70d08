#include "causaldt/causes.hpp"

#include <algorithm>

#include "causaldt/error.hpp"
#include "causaldt/responsiveness.hpp"

namespace causaldt {

namespace {

bool includes(const VariableSet& big, const VariableSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Advances `pick` to the next k-combination of n in lexicographic order.
bool next_combination(std::vector<std::size_t>& pick, std::size_t n) {
  const std::size_t k = pick.size();
  for (std::size_t i = k; i-- > 0;) {
    if (pick[i] < n - k + i) {
      ++pick[i];
      for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

bool set_less(const VariableSet& a, const VariableSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::string format_set(const VariableSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += s[i];
  }
  return out + "}";
}

bool is_cause_set(const DecisionProblem& problem, const VariableSet& c, const std::string& x) {
  const VarRef target = problem.resolve(x);
  if (target.kind != VarKind::chance) throw InputError(x + " is a decision variable");
  VariableSet set = c;
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  for (const auto& v : set) {
    problem.resolve(v);
    if (v == x) throw InputError("a variable is never its own cause: " + x + " is in the candidate set");
  }
  if (set.size() > 24) throw BudgetError("candidate set too large for the minimality check");

  if (!unresponsive_limited(problem, {x}, set)) return false;
  const std::uint64_t full = (std::uint64_t{1} << set.size()) - 1;
  for (std::uint64_t mask = 0; mask < full; ++mask) {
    VariableSet sub;
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) sub.push_back(set[i]);
    }
    if (unresponsive_limited(problem, {x}, sub)) return false;
  }
  return true;
}

CauseReport find_causes(const DecisionProblem& problem, const std::string& x, const CauseSearchOptions& options) {
  const VarRef target = problem.resolve(x);
  if (target.kind != VarKind::chance) throw InputError(x + " is a decision variable");

  VariableSet candidates;
  if (options.candidates) {
    candidates = *options.candidates;
    for (const auto& c : candidates) {
      problem.resolve(c);
      if (c == x) throw InputError("the target cannot be a candidate cause of itself");
    }
  } else {
    for (const auto& d : problem.decisions) candidates.push_back(d.name);
    for (const auto& c : problem.chances) {
      if (c.name != x) candidates.push_back(c.name);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  CauseReport report;
  report.target = x;
  const std::size_t n = candidates.size();
  const std::size_t limit = std::min(options.max_size.value_or(n), n);

  for (std::size_t k = 0; k <= limit; ++k) {
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    std::vector<VariableSet> admitted;
    do {
      VariableSet set;
      for (const auto i : pick) set.push_back(candidates[i]);
      const bool dominated = std::any_of(report.minimal_sets.begin(), report.minimal_sets.end(),
                                         [&](const VariableSet& m) { return includes(set, m); });
      if (dominated) continue;
      if (report.subsets_examined >= options.subset_cap) {
        report.minimal_sets.insert(report.minimal_sets.end(), admitted.begin(), admitted.end());
        report.exhaustive = false;
        return report;
      }
      ++report.subsets_examined;
      if (unresponsive_limited(problem, {x}, set)) admitted.push_back(std::move(set));
    } while (next_combination(pick, n));
    report.minimal_sets.insert(report.minimal_sets.end(), admitted.begin(), admitted.end());
    report.search_bound = k;
  }
  report.exhaustive = report.search_bound >= n;
  return report;
}

}  // namespace causaldt
