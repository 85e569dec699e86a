#pragma once

#include <limits>
#include <vector>

#include "planrec/problem.hpp"

namespace planrec {

constexpr int kUnreached = std::numeric_limits<int>::max();

// Layered reachability structure of the delete relaxation. Fact layer l is
// derived as {f : fact_level[f] <= l}, which makes the layers monotone by
// construction; num_layers counts layers up to and including the fixpoint
// repetition (the last two derived layers are equal).
struct Rpg {
  std::vector<int> fact_level;    // first layer containing the fact
  std::vector<int> action_level;  // first layer where the action is applicable
  int num_layers = 0;

  bool reached(FactId f) const { return fact_level[f] != kUnreached; }
  FactSet facts_at_level(int level) const;
};

// Layer 0 is the initial state; layer l+1 adds every add effect of a
// non-excluded action whose precondition is contained in layer l; iterates
// to fixpoint. Pure function of its inputs.
Rpg build_rpg(const PlanningProblem &problem,
              const std::vector<ActionId> &excluded_actions = {});

// True iff every goal fact is contained in the final fact layer.
bool relaxed_solvable(const Rpg &rpg, const FactSet &goal);

// Debug dump: per-level fact lists in canonical order.
std::string rpg_dump(const PlanningProblem &problem, const Rpg &rpg);

}  // namespace planrec
