#include <doctest.h>

#include <random>
#include <sstream>

#include "planrec/errors.hpp"
#include "planrec/ground.hpp"
#include "planrec/pddl.hpp"
#include "planrec/problem.hpp"
#include "support/fixtures.hpp"

using namespace planrec;
using namespace planrec::testing;

namespace {

const char *kCorridorDomain = R"((define (domain corridor)
  (:requirements :strips :typing)
  (:types cell)
  (:predicates (is-at ?c - cell))
  (:action move
    :parameters (?from ?to - cell)
    :precondition (and (is-at ?from) (not (= ?from ?to)))
    :effect (and (not (is-at ?from)) (is-at ?to)))))";

const char *kCorridorProblem = R"((define (problem corridor-p)
  (:domain corridor)
  (:objects c0 c1 c2 c3 - cell)
  (:init (is-at c0))
  (:goal (and (is-at c3)))))";

}  // namespace

TEST_CASE("parse: minimal corridor schema") {
  LiftedModel model = parse_domain_and_problem(kCorridorDomain, kCorridorProblem);
  CHECK(model.objects.size() == 4);
  CHECK(model.predicate_arity.size() == 1);
  CHECK(model.predicate_arity.at("is-at") == 1);
  CHECK(model.schemas.size() == 1);
  CHECK(model.schemas[0].name == "move");
  CHECK(model.goal_hypotheses.size() == 1);
}

TEST_CASE("parse: deterministic on identical bytes") {
  LiftedModel a = parse_domain_and_problem(kCorridorDomain, kCorridorProblem);
  LiftedModel b = parse_domain_and_problem(kCorridorDomain, kCorridorProblem);
  CHECK(canonical_dump(ground(a)) == canonical_dump(ground(b)));
}

TEST_CASE("parse: action without effect block is a syntax error") {
  const char *broken = R"((define (domain broken)
  (:predicates (p))
  (:action act
    :parameters ())))";
  const char *problem = R"((define (problem p) (:domain broken)
  (:init (p)) (:goal (and (p)))))";
  CHECK_THROWS_AS(parse_domain_and_problem(broken, problem), ParseError);
}

TEST_CASE("parse: unbalanced parens carry line info") {
  try {
    parse_domain_and_problem("(define (domain x)\n  (:predicates (p)", "");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
}

TEST_CASE("parse: unsupported constructs are named") {
  const char *when_domain = R"((define (domain w)
  (:predicates (p) (q))
  (:action act
    :parameters ()
    :precondition (and (p))
    :effect (when (p) (q)))))";
  const char *problem = R"((define (problem p) (:domain w)
  (:init (p)) (:goal (and (q)))))";
  try {
    parse_domain_and_problem(when_domain, problem);
    FAIL("expected UnsupportedConstructError");
  } catch (const UnsupportedConstructError &e) {
    CHECK(e.construct == "conditional effect (when)");
  }

  const char *req_domain = R"((define (domain r)
  (:requirements :strips :conditional-effects)
  (:predicates (p))
  (:action act :parameters () :precondition (and (p)) :effect (and (p)))))";
  CHECK_THROWS_AS(parse_domain_and_problem(
                      req_domain,
                      "(define (problem p) (:domain r) (:init (p)) "
                      "(:goal (and (p))))"),
                  UnsupportedConstructError);
}

TEST_CASE("ground: corridor has exactly 2(n-1) move actions") {
  for (int n : {4, 7, 12}) {
    GridProblem grid = build_grid(corridor_spec(n));
    CHECK(static_cast<int>(grid.problem->actions.size()) == 2 * (n - 1));
  }
}

TEST_CASE("ground: static equality filters self moves") {
  LiftedModel model = parse_domain_and_problem(kCorridorDomain, kCorridorProblem);
  GroundOptions options;
  options.prune_statically_inapplicable = false;
  PlanningProblem problem = ground(model, options);
  // 4*4 bindings minus 4 self moves.
  CHECK(problem.actions.size() == 12);
  CHECK(problem.action_id("(move c0 c0)") == -1);
  CHECK(problem.action_id("(move c0 c1)") >= 0);
}

TEST_CASE("ground: empty object set for a typed parameter yields no instances") {
  const char *domain = R"((define (domain ghosts)
  (:requirements :typing)
  (:types cell ghost)
  (:predicates (is-at ?c - cell) (spooked ?g - ghost))
  (:action spook
    :parameters (?g - ghost)
    :precondition (and)
    :effect (and (spooked ?g)))
  (:action stay
    :parameters (?c - cell)
    :precondition (and (is-at ?c))
    :effect (and (is-at ?c)))))";
  const char *problem = R"((define (problem p) (:domain ghosts)
  (:objects c0 - cell)
  (:init (is-at c0))
  (:goal (and (is-at c0)))))";
  PlanningProblem ground_problem = ground(parse_domain_and_problem(domain, problem));
  CHECK(ground_problem.actions.size() == 1);
  CHECK(ground_problem.actions[0].name == "(stay c0)");
}

TEST_CASE("ground: blow-up guard aborts past the cap") {
  GridSpec spec = corridor_spec(100);
  GridFixture fixture = generate_gridworld(spec);
  LiftedModel model =
      parse_domain_and_problem(fixture.domain_pddl, fixture.problem_pddl);
  GroundOptions options;
  options.max_ground_actions = 10;
  CHECK_THROWS_AS(ground(model, options), GroundingError);
}

TEST_CASE("ground: add wins over delete of the same fact") {
  const char *domain = R"((define (domain addwin)
  (:predicates (p) (q))
  (:action act
    :parameters ()
    :precondition (and (q))
    :effect (and (p) (not (p))))))";
  const char *problem = R"((define (problem p) (:domain addwin)
  (:init (q)) (:goal (and (p)))))";
  PlanningProblem ground_problem = ground(parse_domain_and_problem(domain, problem));
  REQUIRE(ground_problem.actions.size() == 1);
  const GroundAction &action = ground_problem.actions[0];
  FactId p = ground_problem.facts.id_of("(p)");
  CHECK(action.add.contains(p));
  CHECK(!action.del.contains(p));
  State next = apply(ground_problem, ground_problem.init, 0);
  CHECK(next.contains(p));
}

TEST_CASE("ground: metric fluents are parsed and ignored, cost captured") {
  const char *domain = R"((define (domain metric)
  (:requirements :strips :fluents)
  (:predicates (p) (q))
  (:functions (fuel) (total-cost))
  (:action act
    :parameters ()
    :precondition (and (p) (>= (fuel) 1))
    :effect (and (q) (increase (total-cost) 2.5) (decrease (fuel) 1)))))";
  const char *problem = R"((define (problem p) (:domain metric)
  (:init (p) (= (fuel) 3)) (:goal (and (q)))))";
  PlanningProblem ground_problem = ground(parse_domain_and_problem(domain, problem));
  REQUIRE(ground_problem.actions.size() == 1);
  CHECK(ground_problem.actions[0].cost == Rational(5, 2));
  CHECK(ground_problem.actions[0].pre.size() == 1);  // only (p)
}

TEST_CASE("ground: disjunctive and existential preconditions flatten") {
  const char *domain = R"((define (domain flat)
  (:requirements :typing)
  (:types cell)
  (:predicates (p) (q) (r) (is-at ?c - cell))
  (:action disj
    :parameters ()
    :precondition (or (p) (q))
    :effect (and (r)))
  (:action somewhere
    :parameters ()
    :precondition (exists (?c - cell) (is-at ?c))
    :effect (and (p)))))";
  const char *problem = R"((define (problem p) (:domain flat)
  (:objects c0 c1 - cell)
  (:init (p) (is-at c0))
  (:goal (and (r)))))";
  GroundOptions options;
  options.prune_statically_inapplicable = false;
  PlanningProblem gp = ground(parse_domain_and_problem(domain, problem), options);
  ActionId disj = gp.action_id("(disj)");
  REQUIRE(disj >= 0);
  CHECK(gp.actions[disj].pre.contains(gp.facts.id_of("(p)")));
  CHECK(gp.actions[disj].pre.contains(gp.facts.id_of("(q)")));
  ActionId somewhere = gp.action_id("(somewhere)");
  REQUIRE(somewhere >= 0);
  CHECK(gp.actions[somewhere].pre.contains(gp.facts.id_of("(is-at c0)")));
  CHECK(gp.actions[somewhere].pre.contains(gp.facts.id_of("(is-at c1)")));
}

TEST_CASE("apply: corridor move and error payloads") {
  GridProblem grid = build_grid(corridor_spec(4));
  const PlanningProblem &problem = *grid.problem;
  ActionId move = problem.action_id("(move-c0-c1)");
  REQUIRE(move >= 0);
  State next = apply(problem, problem.init, move);
  CHECK(next.contains(problem.facts.id_of("(is-at c1)")));
  CHECK(!next.contains(problem.facts.id_of("(is-at c0)")));

  try {
    apply(problem, State{}, move);
    FAIL("expected InapplicableActionError");
  } catch (const InapplicableActionError &e) {
    REQUIRE(e.missing.size() == 1);
    CHECK(e.missing[0] == "(is-at c0)");
  }
}

TEST_CASE("apply: empty add and delete leaves the state unchanged") {
  const char *domain = R"((define (domain noop)
  (:predicates (p))
  (:action nothing
    :parameters ()
    :precondition (and (p))
    :effect (and))))";
  const char *problem = R"((define (problem p) (:domain noop)
  (:init (p)) (:goal (and (p)))))";
  PlanningProblem gp = ground(parse_domain_and_problem(domain, problem));
  REQUIRE(gp.actions.size() == 1);
  CHECK(gp.actions[0].add.empty());
  CHECK(gp.actions[0].del.empty());
  State next = apply(gp, gp.init, 0);
  CHECK(next == gp.init);
}

TEST_CASE("validate_plan: corridor walk, empty plan, failing index") {
  GridProblem grid = build_grid(corridor_spec(4));
  const PlanningProblem &problem = *grid.problem;
  Plan plan = {problem.action_id("(move-c0-c1)"),
               problem.action_id("(move-c1-c2)"),
               problem.action_id("(move-c2-c3)")};
  PlanCheck check = validate_plan(problem, plan);
  CHECK(check.valid);
  CHECK(check.cost == Rational(3));

  // Every prefix of a valid plan is applicable in sequence.
  for (std::size_t len = 0; len <= plan.size(); ++len) {
    Plan prefix(plan.begin(), plan.begin() + len);
    CHECK(!validate_plan(problem, prefix).failing_step.has_value());
  }

  Plan bad = {problem.action_id("(move-c0-c1)"),
              problem.action_id("(move-c0-c1)")};
  PlanCheck bad_check = validate_plan(problem, bad);
  CHECK(!bad_check.valid);
  REQUIRE(bad_check.failing_step.has_value());
  CHECK(*bad_check.failing_step == 1);

  // Goal already satisfied: the empty plan is valid with cost 0.
  GridSpec trivial = corridor_spec(4, {0});
  GridProblem trivial_grid = build_grid(trivial);
  PlanCheck empty_check = validate_plan(*trivial_grid.problem, {});
  CHECK(empty_check.valid);
  CHECK(empty_check.cost == Rational(0));
}

TEST_CASE("apply is monotone when no action deletes") {
  std::mt19937 rng(7);
  for (int round = 0; round < 20; ++round) {
    int facts = std::uniform_int_distribution<int>(3, 6)(rng);
    int actions = std::uniform_int_distribution<int>(2, 6)(rng);
    std::ostringstream dom, prob;
    dom << "(define (domain df)\n  (:predicates";
    for (int i = 0; i < facts; ++i) dom << " (p" << i << ")";
    dom << ")\n";
    for (int a = 0; a < actions; ++a) {
      dom << "  (:action act" << a << " :parameters () :precondition (and (p"
          << std::uniform_int_distribution<int>(0, facts - 1)(rng)
          << ")) :effect (and (p"
          << std::uniform_int_distribution<int>(0, facts - 1)(rng) << ")))\n";
    }
    dom << ")\n";
    prob << "(define (problem dfp) (:domain df) (:init (p0)) (:goal (and (p0))))";
    PlanningProblem gp = ground(parse_domain_and_problem(dom.str(), prob.str()));

    State state = gp.init;
    for (int step = 0; step < 12; ++step) {
      std::vector<ActionId> applicable_ids;
      for (ActionId a = 0; a < static_cast<ActionId>(gp.actions.size()); ++a)
        if (applicable(gp, state, a)) applicable_ids.push_back(a);
      if (applicable_ids.empty()) break;
      ActionId pick = applicable_ids[std::uniform_int_distribution<std::size_t>(
          0, applicable_ids.size() - 1)(rng)];
      State next = apply(gp, state, pick);
      CHECK(state.subset_of(next));
      state = next;
    }
  }
}

TEST_CASE("round-trip: canonical PDDL emission re-grounds to an equal problem") {
  std::mt19937 rng(11);
  std::vector<GridSpec> specs = {fig1_spec(), corridor_spec(6), open_room_spec()};
  for (int i = 0; i < 5; ++i) specs.push_back(random_grid_spec(rng, 9));
  for (const auto &spec : specs) {
    GridProblem grid = build_grid(spec);
    PddlPair emitted = problem_to_pddl(*grid.problem);
    auto reparsed = make_problem(emitted.domain, emitted.problem);
    CHECK(canonical_dump(*grid.problem) == canonical_dump(*reparsed));
  }
}

TEST_CASE("round-trip: non-unit costs survive emission") {
  const char *domain = R"((define (domain costly)
  (:predicates (p) (q))
  (:functions (total-cost))
  (:action act
    :parameters ()
    :precondition (and (p))
    :effect (and (q) (increase (total-cost) 2.5)))))";
  const char *problem = R"((define (problem p) (:domain costly)
  (:init (p)) (:goal (and (q)))))";
  auto gp = make_problem(domain, problem);
  PddlPair emitted = problem_to_pddl(*gp);
  auto reparsed = make_problem(emitted.domain, emitted.problem);
  CHECK(canonical_dump(*gp) == canonical_dump(*reparsed));
  CHECK(reparsed->actions[0].cost == Rational(5, 2));
}
