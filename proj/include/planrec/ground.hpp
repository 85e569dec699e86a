#pragma once

#include <cstdint>
#include <vector>

#include "planrec/pddl.hpp"
#include "planrec/problem.hpp"

namespace planrec {

struct GroundOptions {
  // Blow-up guard: grounding aborts with GroundingError beyond this count.
  std::int64_t max_ground_actions = 5'000'000;
  // Drop instances whose precondition facts can never hold in the delete
  // relaxation (this is what removes non-adjacent move instances).
  bool prune_statically_inapplicable = true;
};

// Instantiates all schemas over type-compatible objects, flattens the
// precondition trees to positive fact sets, normalizes add/del overlap
// (add wins) and assembles the canonical fact universe. Deterministic.
PlanningProblem ground(const LiftedModel &model, const GroundOptions &options = {});

// Collects every positive atom occurring anywhere in a grounded condition
// tree (existentials already expanded); atoms under negation are excluded.
// Returned in canonical text order, duplicates removed.
std::vector<std::string> flatten_condition(const Condition &grounded);

}  // namespace planrec
