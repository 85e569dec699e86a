#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "planrec/dataset.hpp"
#include "planrec/errors.hpp"
#include "planrec/evaluate.hpp"
#include "planrec/gridgen.hpp"
#include "planrec/ground.hpp"
#include "planrec/landmarks.hpp"
#include "planrec/pddl.hpp"
#include "planrec/rpg.hpp"

namespace {

using namespace planrec;

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void emit(const std::string &out_path, const std::string &content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot write " + out_path);
  out << content;
}

struct MethodOpts {
  std::string method = "plr";
  std::string heuristic = "completion";
  double n = 0;
  double a = 0.7, b = 0.45, c = 11.5;
  double alpha = 1.0;
  bool use_init_landmarks = false;

  void attach(CLI::App *cmd, bool with_n = true) {
    cmd->add_option("--method", method)
        ->check(CLI::IsMember({"plr", "nbm", "hybrid"}));
    cmd->add_option("--heuristic", heuristic)
        ->check(CLI::IsMember({"completion", "completion-subgoal", "uniqueness"}));
    if (with_n)
      cmd->add_option("--n", n, "NBM training-set size (sets the hybrid weight)");
    cmd->add_option("--a", a);
    cmd->add_option("--b", b);
    cmd->add_option("--c", c);
    cmd->add_option("--alpha", alpha, "NBM smoothing pseudo-count");
    cmd->add_flag("--use-init-landmarks", use_init_landmarks,
                  "count initial-state landmarks (paper ablation)");
  }

  HybridConfig hybrid_config() const {
    HybridConfig config;
    config.a = a;
    config.b = b;
    config.c = c;
    config.n = n;
    config.use_init_landmarks = use_init_landmarks;
    if (heuristic == "completion")
      config.heuristic = Heuristic::kCompletion;
    else if (heuristic == "completion-subgoal")
      config.heuristic = Heuristic::kCompletionSubgoal;
    else
      config.heuristic = Heuristic::kUniqueness;
    if (method == "plr") config.forced_nbm_weight = 0.0;
    if (method == "nbm") config.forced_nbm_weight = 1.0;
    return config;
  }

  Method method_enum() const {
    if (method == "plr") return Method::kPlr;
    if (method == "nbm") return Method::kNbm;
    return Method::kHybrid;
  }
};

std::vector<double> parse_lambda_grid(const std::string &csv) {
  std::vector<double> grid;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    grid.push_back(std::stod(item));
  }
  return grid;
}

int cmd_extract(const std::string &domain, const std::string &problem_path,
                const std::string &out, bool dump_problem, bool dump_rpg) {
  auto problem = make_problem(slurp(domain), slurp(problem_path));
  if (dump_problem) {
    emit(out, canonical_dump(*problem));
    return 0;
  }
  if (dump_rpg) {
    emit(out, rpg_dump(*problem, build_rpg(*problem)));
    return 0;
  }
  std::vector<std::pair<std::string, LandmarkSet>> sets;
  for (const auto &goal : goals_of(*problem))
    sets.emplace_back(goal.id, extract_landmarks(*problem, goal.facts));
  emit(out, landmark_dump(*problem, sets));
  return 0;
}

int cmd_recognize(const std::string &domain, const std::string &problem_path,
                  const std::string &obs_path, const std::string &model_path,
                  const MethodOpts &opts, const std::string &out,
                  const std::string &scores_out) {
  auto problem = make_problem(slurp(domain), slurp(problem_path));
  auto goals = goals_of(*problem);
  ObservationSequence obs = read_observations(obs_path);

  NbmModel model;
  bool with_model = false;
  if (!model_path.empty()) {
    model = load_nbm(slurp(model_path));
    with_model = true;
  } else if (opts.method != "plr") {
    throw Error("--model is required for method " + opts.method);
  }

  RecognitionSession session = start_session(
      *problem, goals, with_model ? &model : nullptr, opts.hybrid_config());
  for (const auto &warning : session.warnings())
    std::cerr << "warning: " << warning << "\n";

  std::vector<RecognitionSnapshot> snaps{session.snapshot()};
  RunResult run = session.run_online(obs);
  for (auto &s : run.snapshots) snaps.push_back(std::move(s));
  emit(out, RecognitionSession::snapshots_csv(session.goals(), snaps));
  if (run.error) {
    std::cerr << "aborted: " << *run.error << "\n";
    return 1;
  }
  if (!scores_out.empty()) {
    std::vector<LandmarkSet> sets = session.landmarks();
    emit(scores_out, scores_csv(*problem, session.goals(), obs, sets,
                                opts.use_init_landmarks));
  }
  return 0;
}

int cmd_train(const std::string &manifest, double alpha, const std::string &out) {
  RecognitionDataset dataset = load_dataset(manifest);
  std::set<std::string> goal_ids;
  std::set<std::string> vocab;
  std::vector<std::pair<FactEvidence, std::string>> data;
  for (const auto &entry : dataset.problems) {
    for (const auto &goal : entry.goals) goal_ids.insert(goal.id);
    for (FactId f = 0; f < entry.problem->facts.size(); ++f)
      vocab.insert(entry.problem->facts.text(f));
    data.emplace_back(featurize(*entry.problem, entry.observations),
                      entry.goals[entry.true_goal].id);
  }
  NbmModel model =
      train_nbm(data, {goal_ids.begin(), goal_ids.end()}, alpha,
                {vocab.begin(), vocab.end()});
  emit(out, save_nbm(model));
  return 0;
}

int cmd_evaluate(const std::string &manifest, const MethodOpts &opts, int n,
                 unsigned seed, const std::string &lambda_csv,
                 const std::string &out) {
  RecognitionDataset dataset = load_dataset(manifest);
  ExperimentConfig config;
  config.method = opts.method_enum();
  config.n = n;
  config.seed = seed;
  config.alpha = opts.alpha;
  config.hybrid = opts.hybrid_config();
  if (!lambda_csv.empty()) config.lambda_grid = parse_lambda_grid(lambda_csv);
  ExperimentResult result = run_experiment(dataset, config);
  for (const auto &line : result.log) std::cerr << "note: " << line << "\n";
  emit(out, accuracy_csv(config.method, n, seed, result));
  return 0;
}

int cmd_gen_grid(const std::string &spec_path, const std::string &out_dir) {
  GridSpec spec = parse_grid_spec(slurp(spec_path));
  GridFixture fixture = generate_gridworld(spec);
  std::filesystem::create_directories(out_dir);
  auto dir = std::filesystem::path(out_dir);
  emit((dir / "domain.pddl").string(), fixture.domain_pddl);
  emit((dir / "problem.pddl").string(), fixture.problem_pddl);

  std::ostringstream oracle;
  for (const auto &[goal, entry] : fixture.oracle) {
    for (const auto &f : entry.trivial_init)
      oracle << goal << " TRIVIAL_INIT " << f << "\n";
    for (const auto &f : entry.trivial_goal)
      oracle << goal << " TRIVIAL_GOAL " << f << "\n";
    for (const auto &f : entry.non_trivial)
      oracle << goal << " NONTRIVIAL " << f << "\n";
  }
  emit((dir / "oracle.txt").string(), oracle.str());
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Planning-landmark goal recognition toolkit"};
  app.require_subcommand(1);

  std::string domain, problem, obs, manifest, model_path, spec_path;
  std::string out, scores_out, out_dir = ".", lambda_csv;
  bool dump_problem = false, dump_rpg = false;
  int n = 1;
  unsigned seed = 0;
  MethodOpts recognize_opts, evaluate_opts;
  double train_alpha = 1.0;

  auto *extract = app.add_subcommand("extract", "dump landmarks per goal");
  extract->add_option("domain", domain)->required();
  extract->add_option("problem", problem)->required();
  extract->add_option("--out", out);
  extract->add_flag("--dump-problem", dump_problem,
                    "dump the canonical grounded problem instead");
  extract->add_flag("--dump-rpg", dump_rpg, "dump the relaxed planning graph");

  auto *recognize =
      app.add_subcommand("recognize", "run one online session, emit snapshots");
  recognize->add_option("domain", domain)->required();
  recognize->add_option("problem", problem)->required();
  recognize->add_option("observations", obs)->required();
  recognize->add_option("--model", model_path, "trained NBM model file");
  recognize->add_option("--out", out);
  recognize->add_option("--scores-out", scores_out,
                        "also dump the per-step heuristic score CSV");
  recognize_opts.attach(recognize);

  auto *train = app.add_subcommand("train-nbm", "train the NBM on a manifest");
  train->add_option("manifest", manifest)->required();
  train->add_option("--alpha", train_alpha);
  train->add_option("--out", out);

  auto *evaluate = app.add_subcommand("evaluate", "cross-validated accuracy sweep");
  evaluate->add_option("manifest", manifest)->required();
  evaluate->add_option("--n", n, "training-set size per fold");
  evaluate->add_option("--seed", seed);
  evaluate->add_option("--lambda-grid", lambda_csv, "comma-separated lambdas");
  evaluate->add_option("--out", out);
  evaluate_opts.attach(evaluate, /*with_n=*/false);

  auto *gen = app.add_subcommand("gen-grid", "generate a grid-world fixture");
  gen->add_option("spec", spec_path)->required();
  gen->add_option("--out-dir", out_dir);

  CLI11_PARSE(app, argc, argv);

  try {
    if (extract->parsed())
      return cmd_extract(domain, problem, out, dump_problem, dump_rpg);
    if (recognize->parsed())
      return cmd_recognize(domain, problem, obs, model_path, recognize_opts,
                           out, scores_out);
    if (train->parsed()) return cmd_train(manifest, train_alpha, out);
    if (evaluate->parsed())
      return cmd_evaluate(manifest, evaluate_opts, n, seed, lambda_csv, out);
    if (gen->parsed()) return cmd_gen_grid(spec_path, out_dir);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
