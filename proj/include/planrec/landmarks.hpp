#pragma once

#include <map>
#include <string>
#include <vector>

#include "planrec/problem.hpp"
#include "planrec/rpg.hpp"

namespace planrec {

// Verified fact landmarks of one goal, partitioned by triviality. A fact in
// both the initial state and the goal belongs to both trivial subsets.
struct LandmarkSet {
  FactSet goal;
  FactSet all;
  FactSet trivial_init;
  FactSet trivial_goal;
  FactSet non_trivial;

  // The landmarks actually used for scoring: with init landmarks ignored
  // (the default) the trivial_init part drops out of every computation.
  FactSet scoring_set(bool use_init_landmarks) const {
    return use_init_landmarks ? all : all.set_difference(trivial_init);
  }
};

// Back-chains from the goal facts through the RPG: a fact first reached at
// layer l > 0 contributes the intersection of the flattened preconditions of
// its achievers from action layer l-1. Facts at layer 0 stop the recursion;
// every fact is processed once, at its own first layer. Returns candidates
// plus the goal facts. Throws UnsolvableGoalError if the goal is unreached.
FactSet generate_candidates(const PlanningProblem &problem, const FactSet &goal,
                            const Rpg &rpg);

// A candidate is a landmark if removing every action that adds it makes the
// delete relaxation unsolvable. Callers handle trivial candidates (facts in
// the initial state or the goal) without probing.
bool verify_candidate(const PlanningProblem &problem, const FactSet &goal,
                      FactId candidate);

// Two phases: candidate generation, then per-candidate verification probes.
// No ordering information is produced.
LandmarkSet extract_landmarks(const PlanningProblem &problem,
                              const FactSet &goal);

// extract_landmarks once per singleton sub-goal. Unsolvable sub-goals are
// collected into one ExtractionError.
std::map<FactId, LandmarkSet> extract_per_subgoal(const PlanningProblem &problem,
                                                  const FactSet &goal);

// One line per landmark: "<goal-id> <TRIVIAL_INIT|TRIVIAL_GOAL|NONTRIVIAL>
// <canonical fact>", lines sorted.
std::string landmark_dump(
    const PlanningProblem &problem,
    const std::vector<std::pair<std::string, LandmarkSet>> &sets);

}  // namespace planrec
