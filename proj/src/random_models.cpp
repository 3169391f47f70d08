#include "causaldt/random_models.hpp"

#include <algorithm>

namespace causaldt {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

std::vector<std::string> symbols(const std::string& stem, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

std::vector<int> random_table(Rng& rng, std::size_t rows, std::size_t values) {
  std::vector<int> out(rows);
  for (auto& v : out) v = static_cast<int>(uniform(rng, 0, values - 1));
  return out;
}

}  // namespace

std::vector<std::string> random_subset(Rng& rng, const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& s : items) {
    if (coin(rng)) out.push_back(s);
  }
  return out;
}

std::vector<Probability> random_distribution(Rng& rng, std::size_t n, bool allow_zero) {
  std::vector<long> weights(n);
  long total = 0;
  while (total == 0) {
    total = 0;
    for (auto& w : weights) {
      w = static_cast<long>(uniform(rng, allow_zero ? 0 : 1, 4));
      total += w;
    }
  }
  std::vector<Probability> out;
  for (const long w : weights) out.push_back(Probability(w, static_cast<unsigned long>(total)));
  return out;
}

DecisionProblem random_problem(Rng& rng, const RandomShape& shape) {
  DecisionProblem p;
  const std::size_t nd = uniform(rng, 0, shape.max_decisions);
  const std::size_t nu = uniform(rng, 1, shape.max_chances);
  for (std::size_t i = 0; i < nd; ++i) {
    p.decisions.push_back({"d" + std::to_string(i), symbols("a", uniform(rng, 2, std::max<std::size_t>(2, shape.max_alternatives)))});
  }
  for (std::size_t i = 0; i < nu; ++i) {
    p.chances.push_back({"u" + std::to_string(i), symbols("v", uniform(rng, 2, std::max<std::size_t>(2, shape.max_instances)))});
  }
  const std::size_t alternatives = p.alternative_count();

  enum class Style { constant, decisions, chained, free };
  struct Plan {
    Style style;
    std::vector<std::size_t> inputs;
    std::size_t source = 0;
  };
  std::vector<Plan> plans;
  for (std::size_t u = 0; u < nu; ++u) {
    Plan plan{static_cast<Style>(uniform(rng, 0, u == 0 ? 1 : 3)), {}, 0};
    if (plan.style == Style::decisions && nd == 0) plan.style = Style::constant;
    if (plan.style == Style::chained && u == 0) plan.style = Style::free;
    for (std::size_t d = 0; d < nd; ++d) {
      if (coin(rng)) plan.inputs.push_back(d);
    }
    if (u > 0) plan.source = uniform(rng, 0, u - 1);
    plans.push_back(std::move(plan));
  }

  const std::size_t ns = uniform(rng, 1, shape.max_states);
  const auto weights = random_distribution(rng, ns);
  for (std::size_t s = 0; s < ns; ++s) {
    WeightedState ws{{"s" + std::to_string(s + 1), std::vector<Realization>(alternatives, Realization(nu))}, weights[s]};
    for (std::size_t u = 0; u < nu; ++u) {
      const Plan& plan = plans[u];
      const std::size_t values = p.chances[u].instances.size();
      std::size_t rows = 1;
      for (const auto d : plan.inputs) rows *= p.decisions[d].alternatives.size();
      if (plan.style == Style::chained) rows *= p.chances[plan.source].instances.size();
      if (plan.style == Style::free) rows = alternatives;
      const auto table = random_table(rng, rows, values);
      for (std::size_t a = 0; a < alternatives; ++a) {
        const auto digits = p.alternative_digits(a);
        std::size_t row = 0;
        switch (plan.style) {
          case Style::constant:
            break;
          case Style::decisions:
          case Style::chained:
            for (const auto d : plan.inputs) row = row * p.decisions[d].alternatives.size() + static_cast<std::size_t>(digits[d]);
            if (plan.style == Style::chained) {
              row = row * p.chances[plan.source].instances.size() + static_cast<std::size_t>(ws.state.outcome[a][plan.source]);
            }
            break;
          case Style::free:
            row = a;
            break;
        }
        ws.state.outcome[a][u] = table[row];
      }
    }
    p.states.push_back(std::move(ws));
  }
  return normalize(std::move(p));
}

StructuralModel random_structural(Rng& rng, const RandomShape& shape) {
  StructuralModel m;
  const std::size_t nd = uniform(rng, 1, std::min<std::size_t>(2, shape.max_decisions));
  const std::size_t nc = uniform(rng, 1, 2);
  const std::size_t nf = uniform(rng, 1, 3);
  for (std::size_t i = 0; i < nd; ++i) m.nodes.push_back({"d" + std::to_string(i), NodeKind::decision, symbols("a", 2), {}, false, {}, {}});
  for (std::size_t i = 0; i < nc; ++i) {
    Node n{"e" + std::to_string(i), NodeKind::chance, symbols("v", 2), {}, false, {}, {}};
    for (std::size_t j = 0; j < i; ++j) {
      if (coin(rng, 0.3)) n.parents.push_back("e" + std::to_string(j));
    }
    m.nodes.push_back(std::move(n));
    const std::size_t idx = m.nodes.size() - 1;
    for (std::size_t c = 0; c < m.config_count(idx); ++c) m.nodes[idx].cpt.push_back(random_distribution(rng, 2, coin(rng, 0.2)));
  }
  for (std::size_t i = 0; i < nf; ++i) {
    Node n{"x" + std::to_string(i), NodeKind::deterministic, symbols("v", 2), {}, false, {}, {}};
    std::vector<std::string> earlier;
    for (const auto& node : m.nodes) earlier.push_back(node.name);
    n.parents = random_subset(rng, earlier);
    if (n.parents.size() > 3) n.parents.resize(3);
    if (n.parents.empty()) n.parents.push_back(earlier[uniform(rng, 0, earlier.size() - 1)]);
    m.nodes.push_back(std::move(n));
    const std::size_t idx = m.nodes.size() - 1;
    m.nodes[idx].function = random_table(rng, m.config_count(idx), 2);
  }
  return m;
}

InfluenceDiagram random_diagram(Rng& rng, std::size_t max_nodes) {
  InfluenceDiagram d;
  const std::size_t n = uniform(rng, 2, std::max<std::size_t>(2, max_nodes));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t roll = uniform(rng, 0, 5);
    const NodeKind kind = roll == 0 ? NodeKind::decision : roll == 1 ? NodeKind::deterministic : NodeKind::chance;
    Node node{"n" + std::to_string(i), kind, symbols("v", 2), {}, false, {}, {}};
    if (kind != NodeKind::decision) {
      for (std::size_t j = 0; j < i; ++j) {
        if (coin(rng, 0.4) && node.parents.size() < 3) node.parents.push_back("n" + std::to_string(j));
      }
    }
    d.nodes.push_back(std::move(node));
    const std::size_t idx = d.nodes.size() - 1;
    if (kind == NodeKind::chance) {
      for (std::size_t c = 0; c < d.config_count(idx); ++c) d.nodes[idx].cpt.push_back(random_distribution(rng, 2, coin(rng, 0.2)));
    } else if (kind == NodeKind::deterministic) {
      d.nodes[idx].function = random_table(rng, d.config_count(idx), 2);
    }
  }
  return d;
}

}  // namespace causaldt
