#pragma once

#include <map>
#include <string>
#include <vector>

#include "planrec/landmarks.hpp"
#include "planrec/problem.hpp"
#include "planrec/rational.hpp"

namespace planrec {

// One goal hypothesis of a recognition problem.
struct Goal {
  std::string id;
  FactSet facts;
};

// Observed actions by canonical grounded name, revealed left to right.
struct ObservationSequence {
  std::vector<std::string> actions;
};

// Per-goal achieved landmarks AL_g, aligned with the goals vector.
struct AchievedLandmarks {
  std::vector<FactSet> per_goal;
};

// Scans the observations once per goal: a landmark counts as achieved when it
// occurs in the precondition or add list of any observed action. Initial-state
// landmarks are ignored entirely unless use_init_landmarks is set, in which
// case they start out achieved (the ablation the paper argues against).
AchievedLandmarks compute_achieved(const PlanningProblem &problem,
                                   const std::vector<Goal> &goals,
                                   const ObservationSequence &observations,
                                   const std::vector<LandmarkSet> &landmarks,
                                   bool use_init_landmarks = false);

// |achieved| / |landmarks|; 0 when the landmark set is empty.
Rational h_completion(const FactSet &achieved, const FactSet &landmarks);

// Sub-goal-averaged completion: mean over sub-goals of per-sub-goal
// completion. sub-goal order follows the map; empty sets contribute 0.
Rational h_completion_subgoal(const std::map<FactId, FactSet> &achieved_per_subgoal,
                              const std::map<FactId, FactSet> &landmarks_per_subgoal);

// Inverse count of goals whose landmark set contains the fact.
// Throws Error when no set contains it.
Rational landmark_uniqueness(FactId landmark,
                             const std::vector<FactSet> &all_landmark_sets);

// Uniqueness-weighted completion; 0 when the denominator vanishes.
Rational h_uniqueness(const FactSet &achieved, const FactSet &landmarks,
                      const std::vector<FactSet> &all_landmark_sets);

struct GoalScores {
  std::vector<double> scores;        // aligned with the scored goals
  std::vector<int> most_probable;    // indices tying the maximum
};

// Max-set with 1e-12 tie tolerance; ties are preserved, never broken.
// Throws Error on an empty score vector.
GoalScores rank_goals(const std::vector<double> &scores);

// CSV dump "t,goal,AL_size,L_size,h_gc,h_uniq", one row per goal and step.
std::string scores_csv(const PlanningProblem &problem,
                       const std::vector<Goal> &goals,
                       const ObservationSequence &observations,
                       const std::vector<LandmarkSet> &landmarks,
                       bool use_init_landmarks = false);

}  // namespace planrec
