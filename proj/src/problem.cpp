#include "planrec/problem.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "planrec/errors.hpp"

namespace planrec {

ActionId PlanningProblem::action_id(const std::string &name) const {
  auto it = action_index_.find(name);
  return it == action_index_.end() ? -1 : it->second;
}

void PlanningProblem::build_indices() {
  action_index_.clear();
  pre_index_.assign(facts.size(), {});
  add_index_.assign(facts.size(), {});
  for (ActionId a = 0; a < static_cast<ActionId>(actions.size()); ++a) {
    auto [it, inserted] = action_index_.emplace(actions[a].name, a);
    if (!inserted)
      throw GroundingError("duplicate grounded action: " + actions[a].name);
    for (FactId f : actions[a].pre) pre_index_[f].push_back(a);
    for (FactId f : actions[a].add) add_index_[f].push_back(a);
  }
}

bool applicable(const PlanningProblem &problem, const State &state, ActionId a) {
  return problem.actions[a].pre.subset_of(state);
}

State apply(const PlanningProblem &problem, const State &state, ActionId a) {
  const GroundAction &action = problem.actions[a];
  if (!action.pre.subset_of(state)) {
    std::vector<std::string> missing;
    for (FactId f : action.pre.set_difference(state))
      missing.push_back(problem.facts.text(f));
    throw InapplicableActionError(action.name, std::move(missing));
  }
  return state.set_union(action.add).set_difference(action.del);
}

PlanCheck validate_plan(const PlanningProblem &problem, const Plan &plan) {
  PlanCheck result;
  result.end_state = problem.init;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const GroundAction &action = problem.actions[plan[i]];
    if (!action.pre.subset_of(result.end_state)) {
      result.failing_step = static_cast<int>(i);
      return result;
    }
    result.end_state =
        result.end_state.set_union(action.add).set_difference(action.del);
    result.cost += action.cost;
  }
  result.valid = problem.goal().subset_of(result.end_state);
  return result;
}

std::string canonical_dump(const PlanningProblem &problem) {
  std::ostringstream out;
  out << "domain " << problem.domain_name << "\n";
  out << "problem " << problem.problem_name << "\n";
  for (FactId f = 0; f < problem.facts.size(); ++f)
    out << "fact " << problem.facts.text(f) << "\n";
  auto facts_of = [&](const FactSet &set) {
    std::string joined;
    for (FactId f : set) {
      if (!joined.empty()) joined += ",";
      joined += problem.facts.text(f);
    }
    return "{" + joined + "}";
  };
  for (const auto &action : problem.actions)
    out << "action " << action.name << " cost=" << to_string(action.cost)
        << " pre=" << facts_of(action.pre) << " add=" << facts_of(action.add)
        << " del=" << facts_of(action.del) << "\n";
  for (FactId f : problem.init) out << "init " << problem.facts.text(f) << "\n";
  for (std::size_t g = 0; g < problem.goal_hypotheses.size(); ++g)
    for (FactId f : problem.goal_hypotheses[g])
      out << "goal g" << g << " " << problem.facts.text(f) << "\n";
  return out.str();
}

PddlPair problem_to_pddl(const PlanningProblem &problem) {
  std::ostringstream dom;
  dom << "(define (domain " << problem.domain_name << ")\n";
  dom << "  (:requirements :strips :typing :action-costs)\n";

  std::set<std::string> types;
  for (const auto &obj : problem.objects)
    if (obj.type != "object") types.insert(obj.type);
  if (!types.empty()) {
    dom << "  (:types";
    for (const auto &t : types) dom << " " << t;
    dom << ")\n";
  }
  dom << "  (:constants";
  for (const auto &obj : problem.objects) {
    dom << " " << obj.name;
    if (obj.type != "object") dom << " - " << obj.type;
  }
  dom << ")\n";

  // Predicate declarations recovered from the arity table, sorted.
  dom << "  (:predicates";
  std::map<std::string, int> arity(problem.predicate_arity.begin(),
                                   problem.predicate_arity.end());
  for (const auto &[pred, n] : arity) {
    dom << " (" << pred;
    for (int i = 0; i < n; ++i) dom << " ?a" << i;
    dom << ")";
  }
  dom << ")\n";

  bool any_cost = false;
  for (const auto &a : problem.actions)
    if (a.cost != Rational(1)) any_cost = true;
  if (any_cost) dom << "  (:functions (total-cost))\n";

  for (std::size_t i = 0; i < problem.actions.size(); ++i) {
    const GroundAction &a = problem.actions[i];
    // Grounded action "(move c0 c1)" becomes the nullary schema "move|c0|c1";
    // the grounder decodes '|' back to spaces when it forms instance names,
    // so re-grounding reproduces the original canonical names.
    std::string mangled = a.name.substr(1, a.name.size() - 2);
    for (auto &ch : mangled)
      if (ch == ' ') ch = '|';
    dom << "  (:action " << mangled << "\n    :parameters ()\n";
    dom << "    :precondition (and";
    for (FactId f : a.pre) dom << " " << problem.facts.text(f);
    dom << ")\n    :effect (and";
    for (FactId f : a.add) dom << " " << problem.facts.text(f);
    for (FactId f : a.del) dom << " (not " << problem.facts.text(f) << ")";
    if (a.cost != Rational(1)) {
      // Costs enter via decimal literals, so the denominator divides 10^k.
      std::int64_t num = a.cost.numerator(), den = a.cost.denominator();
      dom << " (increase (total-cost) " << num / den;
      if (num % den != 0) {
        std::string frac;
        std::int64_t rem = num % den;
        while (rem != 0) {
          rem *= 10;
          frac += static_cast<char>('0' + rem / den);
          rem %= den;
        }
        dom << "." << frac;
      }
      dom << ")";
    }
    dom << "))\n";
  }
  dom << ")\n";

  std::ostringstream prob;
  prob << "(define (problem " << problem.problem_name << ")\n";
  prob << "  (:domain " << problem.domain_name << ")\n";
  prob << "  (:init";
  for (FactId f : problem.init) prob << " " << problem.facts.text(f);
  prob << ")\n";
  for (const auto &goal : problem.goal_hypotheses) {
    prob << "  (:goal (and";
    for (FactId f : goal) prob << " " << problem.facts.text(f);
    prob << "))\n";
  }
  prob << ")\n";
  return {dom.str(), prob.str()};
}

}  // namespace planrec
