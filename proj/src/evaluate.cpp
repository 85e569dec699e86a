#include "planrec/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include "planrec/errors.hpp"

namespace planrec {

CvPlan make_cv_plan(int dataset_size, int n, unsigned seed) {
  if (n < 1) throw Error("make_cv_plan: n must be at least 1");
  if (n > dataset_size) throw Error("make_cv_plan: n exceeds dataset size");
  if (n == dataset_size)
    throw Error("make_cv_plan: n equals dataset size, validation would be empty");

  std::mt19937 rng(seed);
  std::vector<int> order(dataset_size);
  for (int i = 0; i < dataset_size; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);

  CvPlan plan;
  plan.n = n;
  plan.seed = seed;
  int full_chunks = dataset_size / n;
  int remainder = dataset_size % n;
  for (int k = 0; k < full_chunks; ++k) {
    CvFold fold;
    fold.train.assign(order.begin() + k * n, order.begin() + (k + 1) * n);
    plan.folds.push_back(std::move(fold));
  }
  if (remainder > 0) {
    CvFold fold;
    fold.train.assign(order.begin() + full_chunks * n, order.end());
    // Top up to exactly n with examples sampled from the other chunks.
    std::vector<int> others(order.begin(), order.begin() + full_chunks * n);
    std::shuffle(others.begin(), others.end(), rng);
    fold.train.insert(fold.train.end(), others.begin(),
                      others.begin() + (n - remainder));
    plan.folds.push_back(std::move(fold));
  }

  for (auto &fold : plan.folds) {
    std::set<int> train_set(fold.train.begin(), fold.train.end());
    for (int i = 0; i < dataset_size; ++i)
      if (!train_set.count(i)) fold.validation.push_back(i);
  }
  return plan;
}

namespace {

int snapshot_index(int total_steps, double lambda) {
  // floor(T * lambda); the epsilon keeps exact decimal products (e.g.
  // 20 * 0.95) from landing one below the intended index.
  return static_cast<int>(std::floor(total_steps * lambda + 1e-9));
}

bool recognized(const ProblemResult &result, double lambda, bool strict) {
  if (result.true_goal < 0 || result.snapshots.empty()) return false;
  int total_steps = static_cast<int>(result.snapshots.size()) - 1;
  int t = snapshot_index(total_steps, lambda);
  if (t < 0 || t >= static_cast<int>(result.snapshots.size())) return false;
  const auto &most_probable = result.snapshots[t].most_probable;
  if (strict)
    return most_probable.size() == 1 && most_probable[0] == result.true_goal;
  return std::find(most_probable.begin(), most_probable.end(),
                   result.true_goal) != most_probable.end();
}

}  // namespace

double accuracy(const std::vector<ProblemResult> &results, double lambda,
                bool strict) {
  if (results.empty()) return 0.0;
  int correct = 0;
  for (const auto &r : results)
    if (recognized(r, lambda, strict)) ++correct;
  return static_cast<double>(correct) / static_cast<double>(results.size());
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 5; ++k) grid.push_back(k / 100.0);
  for (int k = 10; k <= 95; k += 5) grid.push_back(k / 100.0);
  return grid;
}

const char *method_name(Method method) {
  switch (method) {
    case Method::kPlr:
      return "plr";
    case Method::kNbm:
      return "nbm";
    case Method::kHybrid:
      return "hybrid";
  }
  return "?";
}

namespace {

AccuracyTable tabulate(const std::vector<ProblemResult> &results,
                       const std::vector<double> &grid) {
  AccuracyTable table;
  table.lambdas = grid;
  for (double lambda : grid) {
    table.strict.push_back(accuracy(results, lambda, true));
    table.lenient.push_back(accuracy(results, lambda, false));
  }
  return table;
}

NbmModel train_fold_model(const RecognitionDataset &dataset,
                          const CvFold &fold,
                          const std::vector<std::string> &goal_ids,
                          double alpha) {
  std::vector<std::pair<FactEvidence, std::string>> data;
  for (int index : fold.train) {
    const LoadedProblem &entry = dataset.problems[index];
    data.emplace_back(featurize(*entry.problem, entry.observations),
                      entry.goals[entry.true_goal].id);
  }
  // Vocabulary covers every problem's fact universe, one RV per domain fact.
  std::set<std::string> vocab;
  for (const auto &entry : dataset.problems)
    for (FactId f = 0; f < entry.problem->facts.size(); ++f)
      vocab.insert(entry.problem->facts.text(f));
  return train_nbm(data, goal_ids,
                   alpha, {vocab.begin(), vocab.end()});
}

}  // namespace

ExperimentResult run_experiment(const RecognitionDataset &dataset,
                                const ExperimentConfig &config) {
  if (dataset.problems.empty()) throw Error("run_experiment: empty dataset");

  std::vector<double> grid =
      config.lambda_grid.empty() ? default_lambda_grid() : config.lambda_grid;

  std::set<std::string> goal_id_set;
  for (const auto &entry : dataset.problems)
    for (const auto &goal : entry.goals) goal_id_set.insert(goal.id);
  std::vector<std::string> goal_ids(goal_id_set.begin(), goal_id_set.end());

  CvPlan plan =
      make_cv_plan(static_cast<int>(dataset.problems.size()), config.n, config.seed);

  HybridConfig hybrid = config.hybrid;
  hybrid.n = config.n;
  switch (config.method) {
    case Method::kPlr:
      hybrid.forced_nbm_weight = 0.0;
      break;
    case Method::kNbm:
      hybrid.forced_nbm_weight = 1.0;
      break;
    case Method::kHybrid:
      break;  // logistic weight in n
  }

  ExperimentResult result;
  result.folds = static_cast<int>(plan.folds.size());
  std::vector<ProblemResult> all_results;

  for (std::size_t fold_index = 0; fold_index < plan.folds.size(); ++fold_index) {
    const CvFold &fold = plan.folds[fold_index];
    NbmModel model;
    bool use_model = config.method != Method::kPlr;
    if (use_model)
      model = train_fold_model(dataset, fold, goal_ids, config.alpha);

    std::vector<ProblemResult> fold_results;
    for (int index : fold.validation) {
      const LoadedProblem &entry = dataset.problems[index];
      ProblemResult problem_result;
      try {
        RecognitionSession session = start_session(
            *entry.problem, entry.goals, use_model ? &model : nullptr, hybrid);
        for (const auto &warning : session.warnings())
          result.log.push_back(entry.label + ": " + warning);

        const std::string &true_id = entry.goals[entry.true_goal].id;
        for (std::size_t g = 0; g < session.goals().size(); ++g)
          if (session.goals()[g].id == true_id)
            problem_result.true_goal = static_cast<int>(g);

        problem_result.snapshots.push_back(session.snapshot());  // t = 0
        RunResult run = session.run_online(entry.observations);
        for (auto &snap : run.snapshots)
          problem_result.snapshots.push_back(std::move(snap));
        if (run.error) result.log.push_back(entry.label + ": " + *run.error);
      } catch (const Error &e) {
        // Failed recognitions score 0 at every lambda instead of dropping.
        result.log.push_back(entry.label + ": " + e.what());
        problem_result = ProblemResult{};
      }
      fold_results.push_back(std::move(problem_result));
    }
    result.per_fold.push_back(tabulate(fold_results, grid));
    for (auto &r : fold_results) all_results.push_back(std::move(r));
  }

  result.table = tabulate(all_results, grid);
  return result;
}

std::string accuracy_csv(Method method, int n, unsigned seed,
                         const ExperimentResult &result) {
  std::ostringstream out;
  out << "method,n,lambda,accuracy,folds,seed\n";
  for (std::size_t i = 0; i < result.table.lambdas.size(); ++i) {
    out << method_name(method) << "," << n << "," << std::setprecision(6)
        << result.table.lambdas[i] << "," << std::setprecision(17)
        << result.table.strict[i] << "," << result.folds << "," << seed << "\n";
  }
  return out.str();
}

}  // namespace planrec
