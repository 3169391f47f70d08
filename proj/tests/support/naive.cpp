#include "naive.hpp"

#include <algorithm>

namespace naive {

using causaldt::DecisionProblem;
using causaldt::Probability;
using causaldt::StructuralModel;

namespace {

std::vector<std::vector<int>> all_alternatives(const DecisionProblem& p) {
  std::vector<std::vector<int>> out{{}};
  for (const auto& d : p.decisions) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : out) {
      for (int k = 0; k < static_cast<int>(d.alternatives.size()); ++k) {
        auto v = prefix;
        v.push_back(k);
        next.push_back(v);
      }
    }
    out = next;
  }
  return out;
}

// Value of a named variable in state s under the a-th alternative.
int lookup(const DecisionProblem& p, std::size_t s, std::size_t a, const std::vector<int>& digits, const std::string& name) {
  for (std::size_t d = 0; d < p.decisions.size(); ++d) {
    if (p.decisions[d].name == name) return digits[d];
  }
  for (std::size_t u = 0; u < p.chances.size(); ++u) {
    if (p.chances[u].name == name) return p.states[s].state.outcome[a][u];
  }
  return -2;
}

}  // namespace

bool unresponsive(const DecisionProblem& p, const Names& x, const Names& y) {
  const auto alts = all_alternatives(p);
  for (std::size_t s = 0; s < p.states.size(); ++s) {
    if (!(p.states[s].probability > Probability::zero())) continue;
    for (std::size_t a = 0; a < alts.size(); ++a) {
      for (std::size_t b = 0; b < alts.size(); ++b) {
        bool agree_y = true;
        for (const auto& v : y) agree_y = agree_y && lookup(p, s, a, alts[a], v) == lookup(p, s, b, alts[b], v);
        if (!agree_y) continue;
        for (const auto& v : x) {
          if (lookup(p, s, a, alts[a], v) != lookup(p, s, b, alts[b], v)) return false;
        }
      }
    }
  }
  return true;
}

std::vector<Names> minimal_causes(const DecisionProblem& p, const std::string& x) {
  Names pool;
  for (const auto& d : p.decisions) pool.push_back(d.name);
  for (const auto& c : p.chances) {
    if (c.name != x) pool.push_back(c.name);
  }
  std::sort(pool.begin(), pool.end());
  const std::size_t n = pool.size();
  auto members = [&](unsigned mask) {
    Names out;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) out.push_back(pool[i]);
    }
    return out;
  };
  std::vector<Names> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!unresponsive(p, {x}, members(mask))) continue;
    bool minimal = true;
    for (unsigned sub = (mask - 1) & mask; mask != 0 && minimal; sub = (sub - 1) & mask) {
      if (unresponsive(p, {x}, members(sub))) minimal = false;
      if (sub == 0) break;
    }
    if (minimal) out.push_back(members(mask));
  }
  std::sort(out.begin(), out.end(), [](const Names& a, const Names& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::map<std::vector<int>, Probability> node_joint(const StructuralModel& m, const std::vector<int>& decisions) {
  const std::size_t n = m.nodes.size();
  std::map<std::vector<int>, Probability> out;
  std::vector<int> values(n, 0);
  auto index_of = [&](const std::string& name) {
    for (std::size_t i = 0; i < n; ++i) {
      if (m.nodes[i].name == name) return i;
    }
    return n;
  };
  auto config = [&](std::size_t i) {
    std::size_t c = 0;
    for (const auto& parent : m.nodes[i].parents) {
      const auto pi = index_of(parent);
      c = c * m.nodes[pi].instances.size() + static_cast<std::size_t>(values[pi]);
    }
    return c;
  };
  while (true) {
    bool consistent = true;
    std::size_t d = 0;
    Probability weight = Probability::one();
    for (std::size_t i = 0; i < n && consistent; ++i) {
      const auto& node = m.nodes[i];
      if (node.kind == causaldt::NodeKind::decision) {
        consistent = values[i] == decisions[d++];
      } else if (node.kind == causaldt::NodeKind::chance) {
        weight = weight * node.cpt[config(i)][static_cast<std::size_t>(values[i])];
      } else {
        consistent = node.function[config(i)] == values[i];
      }
    }
    if (consistent && weight > Probability::zero()) out[values] = out[values] + weight;
    std::size_t k = 0;
    while (k < n && ++values[k] == static_cast<int>(m.nodes[k].instances.size())) values[k++] = 0;
    if (k == n) break;
  }
  return out;
}

bool conditionally_independent(const StructuralModel& m,
                               const std::vector<std::size_t>& x,
                               const std::vector<std::size_t>& y,
                               const std::vector<std::size_t>& z) {
  DecisionProblem shape;
  for (const auto& node : m.nodes) {
    if (node.kind == causaldt::NodeKind::decision) shape.decisions.push_back({node.name, node.instances});
  }
  auto pick = [](const std::vector<int>& v, const std::vector<std::size_t>& idx) {
    std::vector<int> out;
    for (const auto i : idx) out.push_back(v[i]);
    return out;
  };
  for (const auto& alt : all_alternatives(shape)) {
    const auto joint = naive::node_joint(m, alt);
    std::map<std::vector<int>, Probability> pz, pxz, pyz, pxyz;
    for (const auto& [v, p] : joint) {
      const auto zv = pick(v, z);
      auto xz = pick(v, x), yz = pick(v, y), xyz = pick(v, x);
      xz.insert(xz.end(), zv.begin(), zv.end());
      yz.insert(yz.end(), zv.begin(), zv.end());
      const auto yv = pick(v, y);
      xyz.insert(xyz.end(), yv.begin(), yv.end());
      xyz.insert(xyz.end(), zv.begin(), zv.end());
      pz[zv] = pz[zv] + p;
      pxz[xz] = pxz[xz] + p;
      pyz[yz] = pyz[yz] + p;
      pxyz[xyz] = pxyz[xyz] + p;
    }
    for (const auto& [xz, a] : pxz) {
      for (const auto& [yz, b] : pyz) {
        const std::vector<int> zx(xz.end() - static_cast<std::ptrdiff_t>(z.size()), xz.end());
        const std::vector<int> zy(yz.end() - static_cast<std::ptrdiff_t>(z.size()), yz.end());
        if (zx != zy) continue;
        std::vector<int> key(xz.begin(), xz.end() - static_cast<std::ptrdiff_t>(z.size()));
        key.insert(key.end(), yz.begin(), yz.end());
        const auto it = pxyz.find(key);
        const Probability joint_p = it == pxyz.end() ? Probability::zero() : it->second;
        if (joint_p * pz[zx] != a * b) return false;
      }
    }
  }
  return true;
}

}  // namespace naive
