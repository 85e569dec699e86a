#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "planrec/dataset.hpp"
#include "planrec/gridgen.hpp"
#include "planrec/hybrid.hpp"
#include "planrec/problem.hpp"
#include "planrec/recognizer.hpp"

namespace planrec::testing {

struct GridProblem {
  GridSpec spec;
  GridFixture fixture;
  std::shared_ptr<const PlanningProblem> problem;
  std::vector<Goal> goals;
};

GridProblem build_grid(const GridSpec &spec);

// Straight corridor c0 - c1 - ... - c{n-1}, init c0.
GridSpec corridor_spec(int cells, std::vector<int> goal_indices = {});

// The smart-home layout: a 2x2 kitchen with two exits, a forked hallway
// meeting at h3, and a bathroom behind ba1. Every path from k2 to ba3 passes
// h3 and ba1; nothing else is an interior cut vertex.
GridSpec fig1_spec();

// 2x2 open room, diagonal goal: two disjoint paths, no interior landmarks.
GridSpec open_room_spec();

// Random connected cell graph with at most max_cells cells, random init and
// one random distinct goal.
GridSpec random_grid_spec(std::mt19937 &rng, int max_cells = 12);

// Random walk of applicable moves starting at the init cell.
std::vector<std::string> random_walk(const GridSpec &spec, std::mt19937 &rng,
                                     int steps);

// Tiny random STRIPS problem over at most max_facts nullary predicates,
// grounded without pruning so unreachable facts stay in the universe.
std::shared_ptr<const PlanningProblem> random_strips_problem(std::mt19937 &rng,
                                                             int max_facts = 8);

// Five goals that differ only in how many of their landmarks sit in the
// initial state; true goals g1..g4 carry no init landmarks while the decoy
// g0 has nine. Used for the init-landmark ablation comparison.
RecognitionDataset ablation_dataset();

// Trunk-and-arms grid with goal-correlated "hint" actions observed first:
// the hint gives a data-driven recognizer early signal (with some noise),
// the arm landmarks discriminate only after the junction.
RecognitionDataset hybrid_dataset(unsigned seed, int sequences_per_goal = 10,
                                  double hint_noise = 0.3);

// From-scratch snapshot over an observation prefix, built from the public
// batch operations only (compute_achieved, the heuristics, featurize and the
// posterior). The step-wise session must reproduce these values exactly.
RecognitionSnapshot batch_snapshot(
    const PlanningProblem &problem, const std::vector<Goal> &goals,
    const std::vector<LandmarkSet> &landmark_sets,
    const std::vector<std::map<FactId, LandmarkSet>> &per_subgoal,
    const NbmModel *model, const HybridConfig &config,
    const ObservationSequence &prefix);

}  // namespace planrec::testing
