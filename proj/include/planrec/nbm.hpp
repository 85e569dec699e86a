#pragma once

#include <set>
#include <string>
#include <vector>

#include "planrec/problem.hpp"
#include "planrec/recognizer.hpp"

namespace planrec {

// Truth assignment over observable planning facts derived from an
// observation prefix; everything not listed is false.
struct FactEvidence {
  std::set<std::string> true_facts;  // canonical fact texts
};

// Union over observed actions of precondition and add facts.
FactEvidence featurize(const PlanningProblem &problem,
                       const ObservationSequence &prefix);

// Naive Bayes over Bernoulli fact variables: one smoothed P(F=true | g) per
// (fact, goal), uniform prior over the declared goals.
struct NbmModel {
  std::vector<std::string> goals;
  std::vector<double> prior;
  std::vector<std::string> vocabulary;    // sorted canonical fact texts
  std::vector<std::vector<double>> cpt;   // cpt[goal][vocab] = P(true | goal)
  double alpha = 1.0;

  int goal_index(const std::string &id) const;
  int vocab_index(const std::string &fact) const;
};

// cpt(f,g) = (count(f true in g's sequences) + alpha) / (count(g's
// sequences) + 2 alpha); goals without training data land on 1/2. The
// vocabulary is every fact seen in training plus extra_vocabulary (pass the
// problem's fact universe there to model unobserved facts as evidence).
NbmModel train_nbm(const std::vector<std::pair<FactEvidence, std::string>> &data,
                   const std::vector<std::string> &goals, double alpha,
                   const std::vector<std::string> &extra_vocabulary = {});

// Normalized P(g | evidence), computed in log space. Evidence facts outside
// the vocabulary are ignored.
std::vector<double> posterior(const NbmModel &model, const FactEvidence &evidence);

// Fast path over a vocabulary-aligned truth mask; posterior() delegates here
// so both routes produce bit-identical results.
std::vector<double> posterior_mask(const NbmModel &model,
                                   const std::vector<char> &vocab_mask);

// Versioned plain-text persistence ("nbm-v1").
std::string save_nbm(const NbmModel &model);
NbmModel load_nbm(const std::string &text);

}  // namespace planrec
