#pragma once

#include <string>
#include <vector>

#include "planrec/dataset.hpp"
#include "planrec/hybrid.hpp"

namespace planrec {

struct CvFold {
  std::vector<int> train;       // exactly n indices
  std::vector<int> validation;  // everything else
};

// K-fold-like plan: shuffled indices split into chunks of size n; one fold
// per chunk, trained on that chunk only. A short final chunk is topped up to
// exactly n by sampling (without replacement) from the other chunks; the
// sampled examples keep their validation role in the other folds.
struct CvPlan {
  int n = 0;
  unsigned seed = 0;
  std::vector<CvFold> folds;
};

CvPlan make_cv_plan(int dataset_size, int n, unsigned seed);

// Snapshot trajectory of one evaluated problem; index 0 is the t = 0
// (empty evidence) snapshot, index t the state after t observations.
struct ProblemResult {
  std::vector<RecognitionSnapshot> snapshots;
  int true_goal = -1;  // index into the session's goal order, -1 when dropped
};

// Mean over problems of [snapshot at floor(T * lambda) recognizes the true
// goal]. Strict scoring requires the true goal to be the unique argmax;
// lenient only requires membership in the argmax set.
double accuracy(const std::vector<ProblemResult> &results, double lambda,
                bool strict = true);

struct AccuracyTable {
  std::vector<double> lambdas;
  std::vector<double> strict;
  std::vector<double> lenient;
};

enum class Method { kPlr, kNbm, kHybrid };

struct ExperimentConfig {
  Method method = Method::kPlr;
  int n = 1;
  unsigned seed = 0;
  double alpha = 1.0;
  HybridConfig hybrid;  // heuristic, a/b/c, init-landmark flag
  std::vector<double> lambda_grid;  // default grid when empty
};

struct ExperimentResult {
  AccuracyTable table;                   // aggregated over all folds
  std::vector<AccuracyTable> per_fold;
  int folds = 0;
  std::vector<std::string> log;          // dropped goals, failed problems
};

// The paper's protocol: for every fold, train the NBM on the fold's training
// sequences (skipped for pure PLR), evaluate all validation problems online,
// aggregate accuracy per lambda. Deterministic given the seed.
ExperimentResult run_experiment(const RecognitionDataset &dataset,
                                const ExperimentConfig &config);

// {0.01..0.05 step 0.01} then {0.10..0.95 step 0.05}.
std::vector<double> default_lambda_grid();

const char *method_name(Method method);

// CSV rows "method,n,lambda,accuracy,folds,seed".
std::string accuracy_csv(Method method, int n, unsigned seed,
                         const ExperimentResult &result);

}  // namespace planrec
