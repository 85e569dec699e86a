#include "planrec/recognizer.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "planrec/errors.hpp"

namespace planrec {

AchievedLandmarks compute_achieved(const PlanningProblem &problem,
                                   const std::vector<Goal> &goals,
                                   const ObservationSequence &observations,
                                   const std::vector<LandmarkSet> &landmarks,
                                   bool use_init_landmarks) {
  std::vector<FactSet> relevant;
  relevant.reserve(goals.size());
  for (std::size_t g = 0; g < goals.size(); ++g)
    relevant.push_back(landmarks[g].scoring_set(use_init_landmarks));

  AchievedLandmarks achieved;
  achieved.per_goal.resize(goals.size());
  if (use_init_landmarks)
    for (std::size_t g = 0; g < goals.size(); ++g)
      achieved.per_goal[g] = relevant[g].set_intersection(problem.init);

  for (const auto &name : observations.actions) {
    ActionId a = problem.action_id(name);
    if (a < 0) throw UnknownActionError(name);
    FactSet touched = problem.actions[a].pre.set_union(problem.actions[a].add);
    for (std::size_t g = 0; g < goals.size(); ++g)
      achieved.per_goal[g] =
          achieved.per_goal[g].set_union(touched.set_intersection(relevant[g]));
  }
  return achieved;
}

Rational h_completion(const FactSet &achieved, const FactSet &landmarks) {
  if (landmarks.empty()) return Rational(0);
  return Rational(static_cast<std::int64_t>(achieved.size()),
                  static_cast<std::int64_t>(landmarks.size()));
}

Rational h_completion_subgoal(
    const std::map<FactId, FactSet> &achieved_per_subgoal,
    const std::map<FactId, FactSet> &landmarks_per_subgoal) {
  if (landmarks_per_subgoal.empty()) return Rational(0);
  Rational sum(0);
  for (const auto &[sg, landmark_set] : landmarks_per_subgoal) {
    auto it = achieved_per_subgoal.find(sg);
    const FactSet empty;
    const FactSet &achieved = it == achieved_per_subgoal.end() ? empty : it->second;
    sum += h_completion(achieved, landmark_set);
  }
  return sum / Rational(static_cast<std::int64_t>(landmarks_per_subgoal.size()));
}

Rational landmark_uniqueness(FactId landmark,
                             const std::vector<FactSet> &all_landmark_sets) {
  std::int64_t count = 0;
  for (const auto &set : all_landmark_sets)
    if (set.contains(landmark)) ++count;
  if (count == 0)
    throw Error("fact is a landmark of no goal: id " + std::to_string(landmark));
  return Rational(1, count);
}

Rational h_uniqueness(const FactSet &achieved, const FactSet &landmarks,
                      const std::vector<FactSet> &all_landmark_sets) {
  Rational denominator(0);
  for (FactId l : landmarks)
    denominator += landmark_uniqueness(l, all_landmark_sets);
  if (denominator == Rational(0)) return Rational(0);
  Rational numerator(0);
  for (FactId l : achieved)
    numerator += landmark_uniqueness(l, all_landmark_sets);
  return numerator / denominator;
}

GoalScores rank_goals(const std::vector<double> &scores) {
  if (scores.empty()) throw Error("rank_goals: empty goal set");
  GoalScores result;
  result.scores = scores;
  double best = *std::max_element(scores.begin(), scores.end());
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (scores[i] >= best - 1e-12)
      result.most_probable.push_back(static_cast<int>(i));
  return result;
}

std::string scores_csv(const PlanningProblem &problem,
                       const std::vector<Goal> &goals,
                       const ObservationSequence &observations,
                       const std::vector<LandmarkSet> &landmarks,
                       bool use_init_landmarks) {
  std::vector<FactSet> scoring_sets;
  for (const auto &set : landmarks)
    scoring_sets.push_back(set.scoring_set(use_init_landmarks));

  std::ostringstream out;
  out << "t,goal,AL_size,L_size,h_gc,h_uniq\n";
  ObservationSequence prefix;
  for (std::size_t t = 0; t <= observations.actions.size(); ++t) {
    if (t > 0) prefix.actions.push_back(observations.actions[t - 1]);
    AchievedLandmarks achieved =
        compute_achieved(problem, goals, prefix, landmarks, use_init_landmarks);
    for (std::size_t g = 0; g < goals.size(); ++g) {
      Rational gc = h_completion(achieved.per_goal[g], scoring_sets[g]);
      Rational uniq =
          h_uniqueness(achieved.per_goal[g], scoring_sets[g], scoring_sets);
      out << t << "," << goals[g].id << "," << achieved.per_goal[g].size()
          << "," << scoring_sets[g].size() << "," << std::setprecision(17)
          << to_double(gc) << "," << to_double(uniq) << "\n";
    }
  }
  return out.str();
}

}  // namespace planrec
