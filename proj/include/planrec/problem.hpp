#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "planrec/fact.hpp"
#include "planrec/rational.hpp"

namespace planrec {

// Grounded STRIPS action. Preconditions are the flattened positive-fact
// projection of the schema's condition tree; add and del are disjoint
// (a fact occurring in both is kept in add only).
struct GroundAction {
  std::string name;  // canonical "(schema arg1 ... argk)"
  FactSet pre;
  FactSet add;
  FactSet del;
  Rational cost{1};
};

using State = FactSet;
using Plan = std::vector<ActionId>;

struct TypedName {
  std::string name;
  std::string type;
};

struct PlanningProblem {
  std::string domain_name;
  std::string problem_name;

  FactTable facts;
  std::vector<GroundAction> actions;  // sorted by canonical name
  State init;
  std::vector<FactSet> goal_hypotheses;  // at least one

  // Kept for canonical PDDL emission.
  std::vector<TypedName> objects;
  std::unordered_map<std::string, std::string> type_parent;
  std::unordered_map<std::string, int> predicate_arity;

  const FactSet &goal() const { return goal_hypotheses.front(); }

  ActionId action_id(const std::string &name) const;  // -1 when absent
  const GroundAction &action(ActionId id) const { return actions[id]; }

  // Per-fact indices over the action set, fixed at construction.
  const std::vector<ActionId> &consumers(FactId f) const { return pre_index_[f]; }
  const std::vector<ActionId> &achievers(FactId f) const { return add_index_[f]; }

  void build_indices();  // called once by the grounder

 private:
  std::unordered_map<std::string, ActionId> action_index_;
  std::vector<std::vector<ActionId>> pre_index_;
  std::vector<std::vector<ActionId>> add_index_;
};

bool applicable(const PlanningProblem &problem, const State &state, ActionId a);

// s' = (s u Add) \ Del. Throws InapplicableActionError listing missing facts.
State apply(const PlanningProblem &problem, const State &state, ActionId a);

struct PlanCheck {
  bool valid = false;
  State end_state;
  Rational cost{0};
  std::optional<int> failing_step;  // first inapplicable index when invalid
};

// Never throws: invalid plans come back with valid=false and the failing index.
PlanCheck validate_plan(const PlanningProblem &problem, const Plan &plan);

// Debug dump, one fact/action per line, canonically sorted.
std::string canonical_dump(const PlanningProblem &problem);

// Canonical PDDL emission of the grounded problem (parameterless schemas).
// Parsing and grounding the emitted pair reproduces an equal problem.
struct PddlPair {
  std::string domain;
  std::string problem;
};
PddlPair problem_to_pddl(const PlanningProblem &problem);

}  // namespace planrec
