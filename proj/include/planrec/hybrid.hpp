#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "planrec/landmarks.hpp"
#include "planrec/nbm.hpp"
#include "planrec/recognizer.hpp"

namespace planrec {

enum class Heuristic { kCompletion, kCompletionSubgoal, kUniqueness };

struct HybridConfig {
  double a = 0.7;
  double b = 0.45;
  double c = 11.5;
  Heuristic heuristic = Heuristic::kCompletion;
  double n = 0;  // NBM training-set size, fixed per session
  // Overrides the logistic weight entirely (0 pins pure PLR, 1 pure NBM).
  std::optional<double> forced_nbm_weight;
  bool use_init_landmarks = false;
};

// w_NBM(n) = a / (1 + e^(-b (n - c))).
double weight_nbm(double n, double a, double b, double c);

double nbm_weight_of(const HybridConfig &config);

struct RecognitionSnapshot {
  int t = 0;
  std::vector<double> plr_scores;     // raw heuristic values
  std::vector<double> plr_dist;       // normalized; uniform when all zero
  std::vector<double> nbm_posterior;  // uniform when the session has no model
  std::vector<double> hybrid;         // convex combination, sums to 1
  std::vector<int> most_probable;     // argmax set on hybrid, 1e-12 ties
  double plr_ms = 0;
  double nbm_ms = 0;
};

struct RunResult {
  std::vector<RecognitionSnapshot> snapshots;
  std::optional<std::string> error;  // set when aborted on an unknown action
};

// Normalizes non-negative scores into a distribution; uniform when all zero.
std::vector<double> normalize_scores(const std::vector<double> &scores);

// Posterior over the session's goals: the model posterior restricted to the
// given goal ids and renormalized. Both evidence routes share this path.
std::vector<double> posterior_for_goals(const NbmModel &model,
                                        const std::vector<char> &vocab_mask,
                                        const std::vector<Goal> &goals);

// Online recognition state. Landmarks are extracted exactly once, when the
// session starts; each step only touches the facts of the new observation.
// The problem and model passed to start_session must outlive the session.
class RecognitionSession {
 public:
  RecognitionSnapshot step(const std::string &action_name);
  RunResult run_online(const ObservationSequence &observations);

  // Snapshot of the current state without consuming an observation;
  // immediately after start this is the t = 0 (empty evidence) snapshot.
  RecognitionSnapshot snapshot() const;

  const std::vector<Goal> &goals() const { return goals_; }
  const std::vector<LandmarkSet> &landmarks() const { return landmark_sets_; }
  const std::vector<std::string> &warnings() const { return warnings_; }
  double extraction_seconds() const { return extraction_seconds_; }
  double mean_step_seconds() const;
  int current_t() const { return t_; }

  // Snapshot stream CSV: t,goal,plr_score,plr_dist,nbm,hybrid,is_argmax,...
  static std::string snapshots_csv(const std::vector<Goal> &goals,
                                   const std::vector<RecognitionSnapshot> &snaps);

 private:
  friend RecognitionSession start_session(const PlanningProblem &,
                                          const std::vector<Goal> &,
                                          const NbmModel *, const HybridConfig &);
  RecognitionSession() = default;

  std::vector<double> plr_raw_scores() const;

  const PlanningProblem *problem_ = nullptr;
  const NbmModel *model_ = nullptr;
  HybridConfig config_;
  std::vector<Goal> goals_;
  std::vector<std::string> warnings_;
  std::vector<LandmarkSet> landmark_sets_;
  std::vector<FactSet> scoring_sets_;
  std::vector<FactSet> achieved_;
  // Per-goal sub-goal decomposition, only for the sub-goal heuristic.
  std::vector<std::map<FactId, FactSet>> subgoal_scoring_;
  std::vector<std::map<FactId, FactSet>> subgoal_achieved_;

  std::vector<std::vector<int>> fact_to_goals_;  // fact -> goal indices
  std::vector<std::vector<std::pair<int, FactId>>> fact_to_subgoals_;
  std::vector<int> fact_to_vocab_;
  std::vector<char> evidence_mask_;

  int t_ = 0;
  double extraction_seconds_ = 0;
  double step_seconds_total_ = 0;
};

// Extracts (and init-filters) landmark sets for every goal; goals whose
// extraction fails are dropped with a warning. Throws Error when the goal
// list is empty or nothing survives.
RecognitionSession start_session(const PlanningProblem &problem,
                                 const std::vector<Goal> &goals,
                                 const NbmModel *model,
                                 const HybridConfig &config);

}  // namespace planrec
