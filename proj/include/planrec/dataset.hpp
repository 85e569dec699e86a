#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "planrec/problem.hpp"
#include "planrec/recognizer.hpp"

namespace planrec {

// One online recognition problem: a grounded planning problem, its goal
// hypotheses (ids g0, g1, ... in declaration order), the full observation
// sequence and the true goal.
struct LoadedProblem {
  std::shared_ptr<const PlanningProblem> problem;
  std::vector<Goal> goals;
  ObservationSequence observations;
  int true_goal = -1;  // index into goals
  std::string label;   // "<problem file>#<entry index>" for logs
};

struct RecognitionDataset {
  std::vector<LoadedProblem> problems;
};

// Goal hypotheses of a grounded problem under their harness ids.
std::vector<Goal> goals_of(const PlanningProblem &problem);

// Observation file: one canonical grounded action per line, e.g.
// "(move c0 c1)"; blank lines and '#' comments ignored.
ObservationSequence read_observations(const std::filesystem::path &path);

// Manifest: one entry per line, "<domain> <problem> <observations>
// <true-goal-id>", paths relative to the manifest. Parse and resolution
// errors are collected across entries and thrown as one DatasetError.
RecognitionDataset load_dataset(const std::filesystem::path &manifest_path);

// Shared helper for building problems from in-memory PDDL (used by the
// loader, the CLI and the test fixtures).
std::shared_ptr<const PlanningProblem> make_problem(const std::string &domain_text,
                                                    const std::string &problem_text);

}  // namespace planrec
