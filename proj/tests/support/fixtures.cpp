#include "support/fixtures.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "planrec/errors.hpp"
#include "planrec/ground.hpp"
#include "planrec/landmarks.hpp"
#include "planrec/pddl.hpp"

namespace planrec::testing {

GridProblem build_grid(const GridSpec &spec) {
  GridProblem out;
  out.spec = spec;
  out.fixture = generate_gridworld(spec);
  out.problem = make_problem(out.fixture.domain_pddl, out.fixture.problem_pddl);
  out.goals = goals_of(*out.problem);
  return out;
}

GridSpec corridor_spec(int cells, std::vector<int> goal_indices) {
  GridSpec spec;
  spec.name = "corridor";
  for (int i = 0; i < cells; ++i) spec.cells.push_back("c" + std::to_string(i));
  for (int i = 0; i + 1 < cells; ++i)
    spec.edges.emplace_back(spec.cells[i], spec.cells[i + 1]);
  spec.init_cell = spec.cells.front();
  if (goal_indices.empty()) goal_indices = {cells - 1};
  for (int g : goal_indices) spec.goal_cells.push_back(spec.cells[g]);
  return spec;
}

GridSpec fig1_spec() {
  GridSpec spec;
  spec.name = "smart-home";
  spec.cells = {"k1", "k2", "k3", "k4", "h1", "h2", "h3", "ba1", "ba2", "ba3"};
  spec.edges = {{"k1", "k2"}, {"k2", "k3"}, {"k3", "k4"}, {"k4", "k1"},
                {"k1", "h1"}, {"k4", "h2"}, {"h1", "h3"}, {"h2", "h3"},
                {"h3", "ba1"}, {"ba1", "ba2"}, {"ba1", "ba3"}};
  spec.init_cell = "k2";
  spec.goal_cells = {"ba3"};
  return spec;
}

GridSpec open_room_spec() {
  GridSpec spec;
  spec.name = "open-room";
  spec.cells = {"r00", "r01", "r10", "r11"};
  spec.edges = {{"r00", "r01"}, {"r00", "r10"}, {"r01", "r11"}, {"r10", "r11"}};
  spec.init_cell = "r00";
  spec.goal_cells = {"r11"};
  return spec;
}

GridSpec random_grid_spec(std::mt19937 &rng, int max_cells) {
  int cells = std::uniform_int_distribution<int>(4, max_cells)(rng);
  GridSpec spec;
  spec.name = "rand";
  for (int i = 0; i < cells; ++i) spec.cells.push_back("q" + std::to_string(i));

  // Random spanning tree, then a few extra edges.
  std::vector<int> order(cells);
  for (int i = 0; i < cells; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 1; i < cells; ++i) {
    int parent = order[std::uniform_int_distribution<int>(0, i - 1)(rng)];
    spec.edges.emplace_back(spec.cells[order[i]], spec.cells[parent]);
  }
  int extra = std::uniform_int_distribution<int>(0, cells / 2)(rng);
  for (int e = 0; e < extra; ++e) {
    int a = std::uniform_int_distribution<int>(0, cells - 1)(rng);
    int b = std::uniform_int_distribution<int>(0, cells - 1)(rng);
    if (a == b) continue;
    auto edge = std::minmax(spec.cells[a], spec.cells[b]);
    if (std::find(spec.edges.begin(), spec.edges.end(),
                  std::make_pair(edge.first, edge.second)) == spec.edges.end())
      spec.edges.emplace_back(edge.first, edge.second);
  }

  int init = std::uniform_int_distribution<int>(0, cells - 1)(rng);
  int goal = std::uniform_int_distribution<int>(0, cells - 2)(rng);
  if (goal >= init) ++goal;
  spec.init_cell = spec.cells[init];
  spec.goal_cells = {spec.cells[goal]};
  return spec;
}

std::vector<std::string> random_walk(const GridSpec &spec, std::mt19937 &rng,
                                     int steps) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto &[a, b] : spec.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto &[cell, neighbors] : adj) std::sort(neighbors.begin(), neighbors.end());

  std::vector<std::string> moves;
  std::string position = spec.init_cell;
  for (int i = 0; i < steps; ++i) {
    const auto &neighbors = adj[position];
    if (neighbors.empty()) break;
    const std::string &next =
        neighbors[std::uniform_int_distribution<std::size_t>(
            0, neighbors.size() - 1)(rng)];
    moves.push_back(move_action_name(position, next));
    position = next;
  }
  return moves;
}

std::shared_ptr<const PlanningProblem> random_strips_problem(std::mt19937 &rng,
                                                             int max_facts) {
  int facts = std::uniform_int_distribution<int>(3, max_facts)(rng);
  int actions = std::uniform_int_distribution<int>(2, 10)(rng);
  auto pick_subset = [&](int max_size) {
    int size = std::uniform_int_distribution<int>(0, max_size)(rng);
    std::vector<int> all(facts);
    for (int i = 0; i < facts; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(size);
    std::sort(all.begin(), all.end());
    return all;
  };

  std::ostringstream dom;
  dom << "(define (domain rnd)\n  (:predicates";
  for (int i = 0; i < facts; ++i) dom << " (p" << i << ")";
  dom << ")\n";
  for (int a = 0; a < actions; ++a) {
    dom << "  (:action act" << a << "\n    :parameters ()\n";
    dom << "    :precondition (and";
    for (int f : pick_subset(3)) dom << " (p" << f << ")";
    dom << ")\n    :effect (and";
    auto adds = pick_subset(2);
    while (adds.empty()) adds = pick_subset(2);
    for (int f : adds) dom << " (p" << f << ")";
    for (int f : pick_subset(2)) dom << " (not (p" << f << "))";
    dom << "))\n";
  }
  dom << ")\n";

  std::ostringstream prob;
  prob << "(define (problem rnd-p)\n  (:domain rnd)\n  (:init";
  for (int f : pick_subset(3)) prob << " (p" << f << ")";
  prob << ")\n  (:goal (and";
  auto goal = pick_subset(2);
  while (goal.empty()) goal = pick_subset(2);
  for (int f : goal) prob << " (p" << f << ")";
  prob << "))\n)\n";

  LiftedModel model = parse_domain_and_problem(dom.str(), prob.str());
  GroundOptions options;
  options.prune_statically_inapplicable = false;  // keep unreachable facts
  return std::make_shared<const PlanningProblem>(ground(model, options));
}

namespace {

LoadedProblem entry_for(const std::shared_ptr<const PlanningProblem> &problem,
                        int true_goal, std::vector<std::string> actions,
                        const std::string &label) {
  LoadedProblem entry;
  entry.problem = problem;
  entry.goals = goals_of(*problem);
  entry.true_goal = true_goal;
  entry.observations.actions = std::move(actions);
  entry.label = label;
  return entry;
}

}  // namespace

RecognitionDataset ablation_dataset() {
  constexpr int kTokens = 9;
  std::ostringstream dom;
  dom << "(define (domain abl)\n  (:predicates (ready) (padded)";
  for (int t = 0; t < kTokens; ++t) dom << " (tok" << t << ")";
  for (int g = 0; g < 5; ++g) dom << " (done-g" << g << ") (confirmed-g" << g << ")";
  dom << ")\n";
  dom << "  (:action prep :parameters () :precondition (and) :effect (and (ready)))\n";
  dom << "  (:action pad :parameters () :precondition (and) :effect (and (padded)))\n";
  // Decoy goal g0 is reached straight from the initial tokens.
  dom << "  (:action reach-g0 :parameters () :precondition (and";
  for (int t = 0; t < kTokens; ++t) dom << " (tok" << t << ")";
  dom << ") :effect (and (done-g0)))\n";
  for (int g = 1; g < 5; ++g) {
    dom << "  (:action reach-g" << g
        << " :parameters () :precondition (and (ready)) :effect (and (done-g"
        << g << ")))\n";
    dom << "  (:action confirm-g" << g
        << " :parameters () :precondition (and (done-g" << g
        << ")) :effect (and (confirmed-g" << g << ")))\n";
  }
  dom << ")\n";

  std::ostringstream prob;
  prob << "(define (problem abl-p)\n  (:domain abl)\n  (:init";
  for (int t = 0; t < kTokens; ++t) prob << " (tok" << t << ")";
  prob << ")\n";
  prob << "  (:goal (and (done-g0)))\n";
  for (int g = 1; g < 5; ++g)
    prob << "  (:goal (and (done-g" << g << ") (confirmed-g" << g << ")))\n";
  prob << ")\n";

  auto problem = make_problem(dom.str(), prob.str());
  RecognitionDataset dataset;
  dataset.problems.push_back(entry_for(
      problem, 0,
      {"(reach-g0)", "(pad)", "(pad)", "(pad)", "(pad)", "(pad)", "(pad)",
       "(pad)"},
      "abl-g0"));
  for (int g = 1; g < 5; ++g) {
    std::string reach = "(reach-g" + std::to_string(g) + ")";
    std::string confirm = "(confirm-g" + std::to_string(g) + ")";
    dataset.problems.push_back(entry_for(
        problem, g,
        {"(prep)", reach, "(pad)", "(pad)", "(pad)", "(pad)", "(pad)", confirm},
        "abl-g" + std::to_string(g)));
  }
  return dataset;
}

RecognitionDataset hybrid_dataset(unsigned seed, int sequences_per_goal,
                                  double hint_noise) {
  constexpr int kGoals = 5;
  constexpr int kArm = 8;
  std::ostringstream dom;
  dom << "(define (domain trunkarms)\n  (:requirements :strips :typing)\n";
  dom << "  (:types cell)\n  (:constants s0 r1 r2";
  for (int g = 0; g < kGoals; ++g)
    for (int j = 1; j <= kArm; ++j) dom << " a" << g << "x" << j;
  dom << " - cell)\n";
  dom << "  (:predicates (is-at ?c - cell)";
  for (int g = 0; g < kGoals; ++g) dom << " (hinted-g" << g << ")";
  dom << ")\n";

  std::vector<std::pair<std::string, std::string>> edges = {{"s0", "r1"},
                                                            {"r1", "r2"}};
  for (int g = 0; g < kGoals; ++g) {
    std::string prev = "r2";
    for (int j = 1; j <= kArm; ++j) {
      std::string cell = "a" + std::to_string(g) + "x" + std::to_string(j);
      edges.emplace_back(prev, cell);
      prev = cell;
    }
  }
  for (const auto &[a, b] : edges) {
    dom << "  (:action move-" << a << "-" << b
        << " :parameters () :precondition (and (is-at " << a
        << ")) :effect (and (not (is-at " << a << ")) (is-at " << b << ")))\n";
    dom << "  (:action move-" << b << "-" << a
        << " :parameters () :precondition (and (is-at " << b
        << ")) :effect (and (not (is-at " << b << ")) (is-at " << a << ")))\n";
  }
  for (int g = 0; g < kGoals; ++g)
    dom << "  (:action hint-g" << g
        << " :parameters () :precondition (and) :effect (and (hinted-g" << g
        << ")))\n";
  dom << ")\n";

  std::ostringstream prob;
  prob << "(define (problem trunkarms-p)\n  (:domain trunkarms)\n";
  prob << "  (:init (is-at s0))\n";
  for (int g = 0; g < kGoals; ++g)
    prob << "  (:goal (and (is-at a" << g << "x" << kArm << ")))\n";
  prob << ")\n";

  auto problem = make_problem(dom.str(), prob.str());

  std::mt19937 rng(seed);
  RecognitionDataset dataset;
  for (int g = 0; g < kGoals; ++g) {
    for (int s = 0; s < sequences_per_goal; ++s) {
      int hinted = g;
      if (std::uniform_real_distribution<double>(0, 1)(rng) < hint_noise) {
        hinted = std::uniform_int_distribution<int>(0, kGoals - 2)(rng);
        if (hinted >= g) ++hinted;
      }
      std::vector<std::string> obs;
      obs.push_back("(hint-g" + std::to_string(hinted) + ")");
      std::string prev = "s0";
      for (const std::string &next : {std::string("r1"), std::string("r2")}) {
        obs.push_back(move_action_name(prev, next));
        prev = next;
      }
      for (int j = 1; j <= kArm; ++j) {
        std::string cell = "a" + std::to_string(g) + "x" + std::to_string(j);
        obs.push_back(move_action_name(prev, cell));
        prev = cell;
      }
      dataset.problems.push_back(entry_for(
          problem, g, std::move(obs),
          "hyb-g" + std::to_string(g) + "-" + std::to_string(s)));
    }
  }
  return dataset;
}

RecognitionSnapshot batch_snapshot(
    const PlanningProblem &problem, const std::vector<Goal> &goals,
    const std::vector<LandmarkSet> &landmark_sets,
    const std::vector<std::map<FactId, LandmarkSet>> &per_subgoal,
    const NbmModel *model, const HybridConfig &config,
    const ObservationSequence &prefix) {
  bool init_flag = config.use_init_landmarks;
  AchievedLandmarks achieved =
      compute_achieved(problem, goals, prefix, landmark_sets, init_flag);

  std::vector<FactSet> scoring_sets;
  for (const auto &set : landmark_sets)
    scoring_sets.push_back(set.scoring_set(init_flag));

  RecognitionSnapshot snap;
  snap.t = static_cast<int>(prefix.actions.size());
  snap.plr_scores.resize(goals.size());
  for (std::size_t g = 0; g < goals.size(); ++g) {
    Rational score(0);
    switch (config.heuristic) {
      case Heuristic::kCompletion:
        score = h_completion(achieved.per_goal[g], scoring_sets[g]);
        break;
      case Heuristic::kCompletionSubgoal: {
        std::map<FactId, FactSet> sub_scoring, sub_achieved;
        for (const auto &[sg, sub_set] : per_subgoal[g]) {
          FactSet filtered = sub_set.scoring_set(init_flag);
          Goal pseudo{"sg", FactSet{}};
          AchievedLandmarks sub = compute_achieved(
              problem, {pseudo}, prefix, {sub_set}, init_flag);
          sub_scoring.emplace(sg, std::move(filtered));
          sub_achieved.emplace(sg, sub.per_goal[0]);
        }
        score = h_completion_subgoal(sub_achieved, sub_scoring);
        break;
      }
      case Heuristic::kUniqueness:
        score = h_uniqueness(achieved.per_goal[g], scoring_sets[g], scoring_sets);
        break;
    }
    snap.plr_scores[g] = to_double(score);
  }
  snap.plr_dist = normalize_scores(snap.plr_scores);

  if (model) {
    FactEvidence evidence = featurize(problem, prefix);
    std::vector<char> mask(model->vocabulary.size(), 0);
    for (const auto &fact : evidence.true_facts) {
      int v = model->vocab_index(fact);
      if (v >= 0) mask[v] = 1;
    }
    snap.nbm_posterior = posterior_for_goals(*model, mask, goals);
  } else {
    snap.nbm_posterior.assign(goals.size(), 1.0 / goals.size());
  }

  double w = nbm_weight_of(config);
  snap.hybrid.resize(goals.size());
  for (std::size_t g = 0; g < goals.size(); ++g)
    snap.hybrid[g] = (1.0 - w) * snap.plr_dist[g] + w * snap.nbm_posterior[g];
  snap.most_probable = rank_goals(snap.hybrid).most_probable;
  return snap;
}

}  // namespace planrec::testing
