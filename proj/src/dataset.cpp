#include "planrec/dataset.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "planrec/errors.hpp"
#include "planrec/ground.hpp"
#include "planrec/pddl.hpp"

namespace planrec {

namespace {

std::string slurp(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string trim(const std::string &s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::vector<Goal> goals_of(const PlanningProblem &problem) {
  std::vector<Goal> goals;
  for (std::size_t i = 0; i < problem.goal_hypotheses.size(); ++i)
    goals.push_back({"g" + std::to_string(i), problem.goal_hypotheses[i]});
  return goals;
}

std::shared_ptr<const PlanningProblem> make_problem(
    const std::string &domain_text, const std::string &problem_text) {
  LiftedModel model = parse_domain_and_problem(domain_text, problem_text);
  return std::make_shared<const PlanningProblem>(ground(model));
}

namespace {

struct ObsLine {
  std::string action;
  int line;
};

std::vector<ObsLine> read_observation_lines(const std::filesystem::path &path) {
  std::string text = slurp(path);
  std::vector<ObsLine> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() != '(' || line.back() != ')')
      throw DatasetError(path.string() + ":" + std::to_string(line_no) +
                         ": observation must be a parenthesized action name");
    out.push_back({line, line_no});
  }
  return out;
}

}  // namespace

ObservationSequence read_observations(const std::filesystem::path &path) {
  ObservationSequence obs;
  for (auto &entry : read_observation_lines(path))
    obs.actions.push_back(std::move(entry.action));
  return obs;
}

RecognitionDataset load_dataset(const std::filesystem::path &manifest_path) {
  std::string manifest = slurp(manifest_path);
  std::filesystem::path base = manifest_path.parent_path();

  RecognitionDataset dataset;
  std::vector<std::string> errors;
  // Problems repeat across entries; parse and ground each pair once.
  std::map<std::pair<std::string, std::string>,
           std::shared_ptr<const PlanningProblem>>
      cache;

  std::istringstream in(manifest);
  std::string line;
  int line_no = 0;
  int entry_index = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string domain_file, problem_file, obs_file, true_goal;
    if (!(ls >> domain_file)) continue;
    if (!(ls >> problem_file >> obs_file >> true_goal)) {
      errors.push_back(manifest_path.string() + ":" + std::to_string(line_no) +
                       ": entry needs <domain> <problem> <observations> "
                       "<true-goal>");
      continue;
    }
    ++entry_index;
    try {
      LoadedProblem loaded;
      auto key = std::make_pair(domain_file, problem_file);
      auto cached = cache.find(key);
      if (cached != cache.end()) {
        loaded.problem = cached->second;
      } else {
        loaded.problem = make_problem(slurp(base / domain_file),
                                      slurp(base / problem_file));
        cache.emplace(key, loaded.problem);
      }
      loaded.goals = goals_of(*loaded.problem);
      loaded.label = problem_file + "#" + std::to_string(entry_index);

      for (std::size_t i = 0; i < loaded.goals.size(); ++i)
        if (loaded.goals[i].id == true_goal) loaded.true_goal = static_cast<int>(i);
      if (loaded.true_goal < 0)
        throw DatasetError(manifest_path.string() + ":" +
                           std::to_string(line_no) + ": true goal '" +
                           true_goal + "' is not a goal hypothesis");

      auto obs_lines = read_observation_lines(base / obs_file);
      if (obs_lines.empty())
        throw DatasetError(obs_file + ": empty observation sequence");
      for (const auto &entry : obs_lines) {
        if (loaded.problem->action_id(entry.action) < 0)
          throw DatasetError(obs_file + ":" + std::to_string(entry.line) +
                             ": observation names no grounded action: " +
                             entry.action);
        loaded.observations.actions.push_back(entry.action);
      }
      dataset.problems.push_back(std::move(loaded));
    } catch (const Error &e) {
      errors.push_back(std::string(e.what()));
    }
  }

  if (!errors.empty()) {
    std::string joined;
    for (const auto &e : errors) {
      if (!joined.empty()) joined += "\n";
      joined += e;
    }
    throw DatasetError(joined);
  }
  return dataset;
}

}  // namespace planrec
