#include "planrec/nbm.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include "planrec/errors.hpp"

namespace planrec {

FactEvidence featurize(const PlanningProblem &problem,
                       const ObservationSequence &prefix) {
  FactEvidence evidence;
  for (const auto &name : prefix.actions) {
    ActionId a = problem.action_id(name);
    if (a < 0) throw UnknownActionError(name);
    for (FactId f : problem.actions[a].pre)
      evidence.true_facts.insert(problem.facts.text(f));
    for (FactId f : problem.actions[a].add)
      evidence.true_facts.insert(problem.facts.text(f));
  }
  return evidence;
}

int NbmModel::goal_index(const std::string &id) const {
  for (std::size_t i = 0; i < goals.size(); ++i)
    if (goals[i] == id) return static_cast<int>(i);
  return -1;
}

int NbmModel::vocab_index(const std::string &fact) const {
  auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), fact);
  if (it == vocabulary.end() || *it != fact) return -1;
  return static_cast<int>(it - vocabulary.begin());
}

NbmModel train_nbm(const std::vector<std::pair<FactEvidence, std::string>> &data,
                   const std::vector<std::string> &goals, double alpha,
                   const std::vector<std::string> &extra_vocabulary) {
  if (goals.empty()) throw Error("train_nbm: empty goal list");
  if (!(alpha > 0)) throw Error("train_nbm: alpha must be positive");

  NbmModel model;
  model.goals = goals;
  model.alpha = alpha;
  model.prior.assign(goals.size(), 1.0 / static_cast<double>(goals.size()));

  std::set<std::string> vocab(extra_vocabulary.begin(), extra_vocabulary.end());
  for (const auto &[evidence, label] : data)
    vocab.insert(evidence.true_facts.begin(), evidence.true_facts.end());
  model.vocabulary.assign(vocab.begin(), vocab.end());

  std::vector<int> sequences(goals.size(), 0);
  std::vector<std::vector<int>> true_counts(
      goals.size(), std::vector<int>(model.vocabulary.size(), 0));
  for (const auto &[evidence, label] : data) {
    int g = model.goal_index(label);
    if (g < 0) throw Error("train_nbm: sequence labeled with unknown goal " + label);
    ++sequences[g];
    for (const auto &fact : evidence.true_facts) {
      int v = model.vocab_index(fact);
      if (v >= 0) ++true_counts[g][v];
    }
  }

  model.cpt.assign(goals.size(),
                   std::vector<double>(model.vocabulary.size(), 0.5));
  for (std::size_t g = 0; g < goals.size(); ++g)
    for (std::size_t v = 0; v < model.vocabulary.size(); ++v)
      model.cpt[g][v] = (true_counts[g][v] + alpha) / (sequences[g] + 2 * alpha);
  return model;
}

std::vector<double> posterior_mask(const NbmModel &model,
                                   const std::vector<char> &vocab_mask) {
  std::vector<double> log_scores(model.goals.size());
  for (std::size_t g = 0; g < model.goals.size(); ++g) {
    double sum = std::log(model.prior[g]);
    const auto &row = model.cpt[g];
    for (std::size_t v = 0; v < row.size(); ++v)
      sum += std::log(vocab_mask[v] ? row[v] : 1.0 - row[v]);
    log_scores[g] = sum;
  }
  double best = *std::max_element(log_scores.begin(), log_scores.end());
  double total = 0;
  std::vector<double> out(log_scores.size());
  for (std::size_t g = 0; g < out.size(); ++g) {
    out[g] = std::exp(log_scores[g] - best);
    total += out[g];
  }
  for (auto &p : out) p /= total;
  return out;
}

std::vector<double> posterior(const NbmModel &model, const FactEvidence &evidence) {
  std::vector<char> mask(model.vocabulary.size(), 0);
  for (const auto &fact : evidence.true_facts) {
    int v = model.vocab_index(fact);
    if (v >= 0) mask[v] = 1;  // facts outside the vocabulary are ignored
  }
  return posterior_mask(model, mask);
}

std::string save_nbm(const NbmModel &model) {
  std::ostringstream out;
  out << "nbm-v1\n" << std::setprecision(17);
  for (std::size_t g = 0; g < model.goals.size(); ++g)
    out << "goal " << model.goals[g] << " " << model.prior[g] << "\n";
  for (std::size_t v = 0; v < model.vocabulary.size(); ++v)
    for (std::size_t g = 0; g < model.goals.size(); ++g)
      out << "cpt " << model.vocabulary[v] << " " << model.goals[g] << " "
          << model.cpt[g][v] << "\n";
  return out.str();
}

NbmModel load_nbm(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "nbm-v1")
    throw Error("nbm model: missing nbm-v1 header");

  NbmModel model;
  struct Row {
    std::string fact, goal;
    double p;
  };
  std::vector<Row> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "goal") {
      std::string name;
      double p;
      if (!(ls >> name >> p))
        throw Error("nbm model: bad goal line " + std::to_string(line_no));
      model.goals.push_back(name);
      model.prior.push_back(p);
    } else if (kind == "cpt") {
      // The fact is a parenthesized span with inner spaces.
      auto open = line.find('(');
      auto close = line.find(')');
      if (open == std::string::npos || close == std::string::npos || close < open)
        throw Error("nbm model: bad cpt line " + std::to_string(line_no));
      Row row;
      row.fact = line.substr(open, close - open + 1);
      std::istringstream rest(line.substr(close + 1));
      if (!(rest >> row.goal >> row.p))
        throw Error("nbm model: bad cpt line " + std::to_string(line_no));
      rows.push_back(std::move(row));
    } else {
      throw Error("nbm model: unknown record '" + kind + "' on line " +
                  std::to_string(line_no));
    }
  }

  std::set<std::string> vocab;
  for (const auto &row : rows) vocab.insert(row.fact);
  model.vocabulary.assign(vocab.begin(), vocab.end());
  model.cpt.assign(model.goals.size(),
                   std::vector<double>(model.vocabulary.size(), 0.5));
  for (const auto &row : rows) {
    int g = model.goal_index(row.goal);
    int v = model.vocab_index(row.fact);
    if (g < 0) throw Error("nbm model: cpt row for undeclared goal " + row.goal);
    model.cpt[g][v] = row.p;
  }
  return model;
}

}  // namespace planrec
