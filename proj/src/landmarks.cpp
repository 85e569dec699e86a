#include "planrec/landmarks.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "planrec/errors.hpp"

namespace planrec {

FactSet generate_candidates(const PlanningProblem &problem, const FactSet &goal,
                            const Rpg &rpg) {
  if (!relaxed_solvable(rpg, goal))
    throw UnsolvableGoalError("goal unreachable in the delete relaxation");

  FactSet candidates = goal;
  std::vector<char> queued(problem.facts.size(), 0);
  std::deque<FactId> worklist;
  for (FactId f : goal) {
    queued[f] = 1;
    worklist.push_back(f);
  }

  while (!worklist.empty()) {
    FactId fact = worklist.front();
    worklist.pop_front();
    int level = rpg.fact_level[fact];
    if (level == 0) continue;  // initial-state facts stop the chain

    // Achievers from the previous action layer. Facts are processed at their
    // first layer, so these are exactly the achievers with level l-1.
    bool first = true;
    FactSet intersection;
    for (ActionId a : problem.achievers(fact)) {
      if (rpg.action_level[a] != level - 1) continue;
      const FactSet &pre = problem.actions[a].pre;
      intersection = first ? pre : intersection.set_intersection(pre);
      first = false;
      if (intersection.empty() && !first) break;
    }
    for (FactId c : intersection) {
      if (queued[c]) continue;
      queued[c] = 1;
      candidates.insert(c);
      worklist.push_back(c);
    }
  }
  return candidates;
}

bool verify_candidate(const PlanningProblem &problem, const FactSet &goal,
                      FactId candidate) {
  Rpg probe = build_rpg(problem, problem.achievers(candidate));
  return !relaxed_solvable(probe, goal);
}

LandmarkSet extract_landmarks(const PlanningProblem &problem,
                              const FactSet &goal) {
  Rpg rpg = build_rpg(problem);
  FactSet candidates = generate_candidates(problem, goal, rpg);

  LandmarkSet result;
  result.goal = goal;
  for (FactId c : candidates) {
    bool trivial = problem.init.contains(c) || goal.contains(c);
    if (trivial || verify_candidate(problem, goal, c)) result.all.insert(c);
  }
  result.trivial_init = result.all.set_intersection(problem.init);
  result.trivial_goal = result.all.set_intersection(goal);
  result.non_trivial =
      result.all.set_difference(problem.init).set_difference(goal);
  return result;
}

std::map<FactId, LandmarkSet> extract_per_subgoal(const PlanningProblem &problem,
                                                  const FactSet &goal) {
  std::map<FactId, LandmarkSet> result;
  std::string errors;
  for (FactId sg : goal) {
    FactSet singleton;
    singleton.insert(sg);
    try {
      result.emplace(sg, extract_landmarks(problem, singleton));
    } catch (const UnsolvableGoalError &) {
      if (!errors.empty()) errors += "; ";
      errors += "sub-goal " + problem.facts.text(sg) +
                " unreachable in the delete relaxation";
    }
  }
  if (!errors.empty()) throw ExtractionError(errors);
  return result;
}

std::string landmark_dump(
    const PlanningProblem &problem,
    const std::vector<std::pair<std::string, LandmarkSet>> &sets) {
  std::vector<std::string> lines;
  for (const auto &[goal_id, set] : sets) {
    for (FactId f : set.trivial_init)
      lines.push_back(goal_id + " TRIVIAL_INIT " + problem.facts.text(f));
    for (FactId f : set.trivial_goal)
      lines.push_back(goal_id + " TRIVIAL_GOAL " + problem.facts.text(f));
    for (FactId f : set.non_trivial)
      lines.push_back(goal_id + " NONTRIVIAL " + problem.facts.text(f));
  }
  std::sort(lines.begin(), lines.end());
  std::ostringstream out;
  for (const auto &line : lines) out << line << "\n";
  return out.str();
}

}  // namespace planrec
