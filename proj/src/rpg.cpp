#include "planrec/rpg.hpp"

#include <algorithm>
#include <sstream>

namespace planrec {

FactSet Rpg::facts_at_level(int level) const {
  std::vector<FactId> ids;
  for (FactId f = 0; f < static_cast<FactId>(fact_level.size()); ++f)
    if (fact_level[f] <= level) ids.push_back(f);
  return FactSet::from_unsorted(std::move(ids));
}

Rpg build_rpg(const PlanningProblem &problem,
              const std::vector<ActionId> &excluded_actions) {
  const int num_facts = problem.facts.size();
  const int num_actions = static_cast<int>(problem.actions.size());

  std::vector<char> excluded(num_actions, 0);
  for (ActionId a : excluded_actions) excluded[a] = 1;

  Rpg rpg;
  rpg.fact_level.assign(num_facts, kUnreached);
  rpg.action_level.assign(num_actions, kUnreached);

  // Counting pass per layer: an action fires at the first layer containing
  // its whole precondition; its adds join the next layer.
  std::vector<int> missing_pre(num_actions, 0);
  std::vector<FactId> frontier;
  for (ActionId a = 0; a < num_actions; ++a)
    missing_pre[a] = static_cast<int>(problem.actions[a].pre.size());

  for (FactId f : problem.init) {
    rpg.fact_level[f] = 0;
    frontier.push_back(f);
  }

  int level = 0;
  while (true) {
    std::vector<ActionId> newly_applicable;
    for (FactId f : frontier)
      for (ActionId a : problem.consumers(f))
        if (!excluded[a] && --missing_pre[a] == 0) newly_applicable.push_back(a);
    if (level == 0)  // actions with empty preconditions fire immediately
      for (ActionId a = 0; a < num_actions; ++a)
        if (!excluded[a] && problem.actions[a].pre.empty())
          newly_applicable.push_back(a);

    frontier.clear();
    for (ActionId a : newly_applicable) {
      rpg.action_level[a] = level;
      for (FactId f : problem.actions[a].add) {
        if (rpg.fact_level[f] == kUnreached) {
          rpg.fact_level[f] = level + 1;
          frontier.push_back(f);
        }
      }
    }
    if (frontier.empty()) break;
    ++level;
  }
  // Layers 0..level exist plus the repeated fixpoint layer.
  rpg.num_layers = level + 2;
  return rpg;
}

bool relaxed_solvable(const Rpg &rpg, const FactSet &goal) {
  for (FactId f : goal)
    if (!rpg.reached(f)) return false;
  return true;
}

std::string rpg_dump(const PlanningProblem &problem, const Rpg &rpg) {
  std::ostringstream out;
  for (int level = 0; level < rpg.num_layers; ++level) {
    out << "level " << level << ":";
    for (FactId f : rpg.facts_at_level(level)) out << " " << problem.facts.text(f);
    out << "\n";
  }
  return out.str();
}

}  // namespace planrec
