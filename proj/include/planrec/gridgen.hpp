#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace planrec {

// Cell-graph description of a grid/corridor world. Movement is possible in
// both directions along every edge.
struct GridSpec {
  std::string name = "grid";
  std::vector<std::string> cells;
  std::vector<std::pair<std::string, std::string>> edges;
  std::string init_cell;
  std::vector<std::string> goal_cells;  // one hypothesis per entry
};

// Landmark reference computed directly on the cell graph by brute force:
// a cell is a landmark of a goal iff no init-to-goal path avoids it.
struct GridOracleEntry {
  std::set<std::string> all;  // "(is-at c)" fact texts
  std::set<std::string> trivial_init;
  std::set<std::string> trivial_goal;
  std::set<std::string> non_trivial;
};

struct GridFixture {
  std::string domain_pddl;
  std::string problem_pddl;
  // goal cell -> oracle landmark sets
  std::map<std::string, GridOracleEntry> oracle;
};

// Emits a PDDL pair with an (is-at ?c) predicate and one parameterless move
// action per directed edge, plus the brute-force oracle landmark sets.
// Throws Error when the cell graph is disconnected or malformed.
GridFixture generate_gridworld(const GridSpec &spec);

// Plain-text GridSpec reader: lines "cell <name>", "edge <a> <b>",
// "init <cell>", "goal <cell>"; '#' comments and blank lines ignored.
GridSpec parse_grid_spec(const std::string &text);

// Shortest init-to-goal cell path turned into move action names; useful for
// building observation sequences over generated fixtures.
std::vector<std::string> grid_walk(const GridSpec &spec,
                                   const std::string &from,
                                   const std::string &to);

std::string move_action_name(const std::string &from, const std::string &to);

}  // namespace planrec
