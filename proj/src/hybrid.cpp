#include "planrec/hybrid.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "planrec/errors.hpp"

namespace planrec {

namespace {
using Clock = std::chrono::steady_clock;

double seconds_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}
}  // namespace

double weight_nbm(double n, double a, double b, double c) {
  return a / (1.0 + std::exp(-b * (n - c)));
}

double nbm_weight_of(const HybridConfig &config) {
  if (config.forced_nbm_weight) return *config.forced_nbm_weight;
  return weight_nbm(config.n, config.a, config.b, config.c);
}

std::vector<double> normalize_scores(const std::vector<double> &scores) {
  double total = 0;
  for (double s : scores) total += s;
  std::vector<double> out(scores.size());
  if (total <= 0) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(scores.size()));
  } else {
    for (std::size_t i = 0; i < scores.size(); ++i) out[i] = scores[i] / total;
  }
  return out;
}

std::vector<double> posterior_for_goals(const NbmModel &model,
                                        const std::vector<char> &vocab_mask,
                                        const std::vector<Goal> &goals) {
  std::vector<double> full = posterior_mask(model, vocab_mask);
  std::vector<double> restricted(goals.size());
  double total = 0;
  for (std::size_t g = 0; g < goals.size(); ++g) {
    int idx = model.goal_index(goals[g].id);
    if (idx < 0) throw Error("nbm model lacks goal " + goals[g].id);
    restricted[g] = full[idx];
    total += restricted[g];
  }
  for (auto &p : restricted) p /= total;
  return restricted;
}

RecognitionSession start_session(const PlanningProblem &problem,
                                 const std::vector<Goal> &goals,
                                 const NbmModel *model,
                                 const HybridConfig &config) {
  if (goals.empty()) throw Error("start_session: empty goal list");
  if (config.a < 0.0 || config.a > 1.0)
    throw Error("start_session: weight parameter a must lie in [0, 1]");
  if (config.forced_nbm_weight &&
      (*config.forced_nbm_weight < 0.0 || *config.forced_nbm_weight > 1.0))
    throw Error("start_session: forced NBM weight must lie in [0, 1]");

  RecognitionSession session;
  session.problem_ = &problem;
  session.model_ = model;
  session.config_ = config;

  auto t0 = Clock::now();
  for (const auto &goal : goals) {
    try {
      LandmarkSet set = extract_landmarks(problem, goal.facts);
      std::map<FactId, FactSet> sub_scoring;
      if (config.heuristic == Heuristic::kCompletionSubgoal) {
        for (auto &[sg, sub] : extract_per_subgoal(problem, goal.facts))
          sub_scoring.emplace(sg, sub.scoring_set(config.use_init_landmarks));
      }
      session.goals_.push_back(goal);
      session.scoring_sets_.push_back(set.scoring_set(config.use_init_landmarks));
      session.landmark_sets_.push_back(std::move(set));
      session.subgoal_scoring_.push_back(std::move(sub_scoring));
    } catch (const Error &e) {
      session.warnings_.push_back("goal " + goal.id + " dropped: " + e.what());
    }
  }
  session.extraction_seconds_ = seconds_between(t0, Clock::now());
  if (session.goals_.empty())
    throw Error("start_session: landmark extraction failed for every goal");

  const std::size_t num_goals = session.goals_.size();
  session.achieved_.resize(num_goals);
  session.subgoal_achieved_.resize(num_goals);
  session.fact_to_goals_.resize(problem.facts.size());
  session.fact_to_subgoals_.resize(problem.facts.size());
  for (std::size_t g = 0; g < num_goals; ++g) {
    for (FactId f : session.scoring_sets_[g])
      session.fact_to_goals_[f].push_back(static_cast<int>(g));
    if (config.use_init_landmarks)
      session.achieved_[g] =
          session.scoring_sets_[g].set_intersection(problem.init);
    for (const auto &[sg, sub_set] : session.subgoal_scoring_[g]) {
      FactSet initial;
      if (config.use_init_landmarks)
        initial = sub_set.set_intersection(problem.init);
      session.subgoal_achieved_[g].emplace(sg, std::move(initial));
      for (FactId f : sub_set)
        session.fact_to_subgoals_[f].push_back({static_cast<int>(g), sg});
    }
  }

  session.fact_to_vocab_.assign(problem.facts.size(), -1);
  if (model) {
    for (const auto &goal : session.goals_)
      if (model->goal_index(goal.id) < 0)
        throw Error("nbm model lacks goal " + goal.id);
    for (FactId f = 0; f < problem.facts.size(); ++f)
      session.fact_to_vocab_[f] = model->vocab_index(problem.facts.text(f));
    session.evidence_mask_.assign(model->vocabulary.size(), 0);
  }
  return session;
}

std::vector<double> RecognitionSession::plr_raw_scores() const {
  std::vector<double> scores(goals_.size());
  for (std::size_t g = 0; g < goals_.size(); ++g) {
    Rational score(0);
    switch (config_.heuristic) {
      case Heuristic::kCompletion:
        score = h_completion(achieved_[g], scoring_sets_[g]);
        break;
      case Heuristic::kCompletionSubgoal:
        score = h_completion_subgoal(subgoal_achieved_[g], subgoal_scoring_[g]);
        break;
      case Heuristic::kUniqueness:
        score = h_uniqueness(achieved_[g], scoring_sets_[g], scoring_sets_);
        break;
    }
    scores[g] = to_double(score);
  }
  return scores;
}

RecognitionSnapshot RecognitionSession::snapshot() const {
  RecognitionSnapshot snap;
  snap.t = t_;
  snap.plr_scores = plr_raw_scores();
  snap.plr_dist = normalize_scores(snap.plr_scores);
  snap.nbm_posterior =
      model_ ? posterior_for_goals(*model_, evidence_mask_, goals_)
             : std::vector<double>(goals_.size(), 1.0 / goals_.size());
  double w = nbm_weight_of(config_);
  snap.hybrid.resize(goals_.size());
  for (std::size_t g = 0; g < goals_.size(); ++g)
    snap.hybrid[g] = (1.0 - w) * snap.plr_dist[g] + w * snap.nbm_posterior[g];
  snap.most_probable = rank_goals(snap.hybrid).most_probable;
  return snap;
}

RecognitionSnapshot RecognitionSession::step(const std::string &action_name) {
  ActionId a = problem_->action_id(action_name);
  if (a < 0) throw UnknownActionError(action_name);
  const GroundAction &action = problem_->actions[a];

  auto t0 = Clock::now();
  FactSet touched = action.pre.set_union(action.add);
  for (FactId f : touched) {
    for (int g : fact_to_goals_[f]) achieved_[g].insert(f);
    for (auto &[g, sg] : fact_to_subgoals_[f]) subgoal_achieved_[g][sg].insert(f);
  }
  std::vector<double> plr_scores = plr_raw_scores();
  std::vector<double> plr_dist = normalize_scores(plr_scores);
  auto t1 = Clock::now();

  if (model_)
    for (FactId f : touched)
      if (fact_to_vocab_[f] >= 0) evidence_mask_[fact_to_vocab_[f]] = 1;
  std::vector<double> nbm =
      model_ ? posterior_for_goals(*model_, evidence_mask_, goals_)
             : std::vector<double>(goals_.size(), 1.0 / goals_.size());
  auto t2 = Clock::now();

  RecognitionSnapshot snap;
  snap.t = ++t_;
  snap.plr_scores = std::move(plr_scores);
  snap.plr_dist = std::move(plr_dist);
  snap.nbm_posterior = std::move(nbm);
  double w = nbm_weight_of(config_);
  snap.hybrid.resize(goals_.size());
  for (std::size_t g = 0; g < goals_.size(); ++g)
    snap.hybrid[g] = (1.0 - w) * snap.plr_dist[g] + w * snap.nbm_posterior[g];
  snap.most_probable = rank_goals(snap.hybrid).most_probable;
  snap.plr_ms = seconds_between(t0, t1) * 1000.0;
  snap.nbm_ms = seconds_between(t1, t2) * 1000.0;
  step_seconds_total_ += seconds_between(t0, t2);
  return snap;
}

RunResult RecognitionSession::run_online(const ObservationSequence &observations) {
  RunResult result;
  for (const auto &name : observations.actions) {
    try {
      result.snapshots.push_back(step(name));
    } catch (const UnknownActionError &e) {
      result.error = e.what();
      break;
    }
  }
  return result;
}

double RecognitionSession::mean_step_seconds() const {
  return t_ == 0 ? 0 : step_seconds_total_ / t_;
}

std::string RecognitionSession::snapshots_csv(
    const std::vector<Goal> &goals,
    const std::vector<RecognitionSnapshot> &snaps) {
  std::ostringstream out;
  out << "t,goal,plr_score,plr_dist,nbm,hybrid,is_argmax,plr_ms,nbm_ms\n";
  out << std::setprecision(17);
  for (const auto &snap : snaps) {
    for (std::size_t g = 0; g < goals.size(); ++g) {
      bool argmax = std::find(snap.most_probable.begin(),
                              snap.most_probable.end(),
                              static_cast<int>(g)) != snap.most_probable.end();
      out << snap.t << "," << goals[g].id << "," << snap.plr_scores[g] << ","
          << snap.plr_dist[g] << "," << snap.nbm_posterior[g] << ","
          << snap.hybrid[g] << "," << (argmax ? 1 : 0) << "," << snap.plr_ms
          << "," << snap.nbm_ms << "\n";
    }
  }
  return out.str();
}

}  // namespace planrec
