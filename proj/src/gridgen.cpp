#include "planrec/gridgen.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "planrec/errors.hpp"

namespace planrec {

namespace {

using AdjacencyMap = std::map<std::string, std::vector<std::string>>;

AdjacencyMap adjacency(const GridSpec &spec) {
  AdjacencyMap adj;
  for (const auto &c : spec.cells) adj[c];
  for (const auto &[a, b] : spec.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto &[cell, neighbors] : adj) {
    std::sort(neighbors.begin(), neighbors.end());
    neighbors.erase(std::unique(neighbors.begin(), neighbors.end()),
                    neighbors.end());
  }
  return adj;
}

// Cells reachable from start; an optional cell may be removed from the graph.
std::set<std::string> reachable(const AdjacencyMap &adj, const std::string &start,
                                const std::string &removed = "") {
  std::set<std::string> seen;
  if (start == removed) return seen;
  std::deque<std::string> queue{start};
  seen.insert(start);
  while (!queue.empty()) {
    std::string cell = queue.front();
    queue.pop_front();
    for (const auto &next : adj.at(cell)) {
      if (next == removed || seen.count(next)) continue;
      seen.insert(next);
      queue.push_back(next);
    }
  }
  return seen;
}

void validate(const GridSpec &spec, const AdjacencyMap &adj) {
  if (spec.cells.empty()) throw Error("grid spec: no cells");
  std::set<std::string> cells(spec.cells.begin(), spec.cells.end());
  if (cells.size() != spec.cells.size())
    throw Error("grid spec: duplicate cell names");
  for (const auto &[a, b] : spec.edges) {
    if (!cells.count(a) || !cells.count(b))
      throw Error("grid spec: edge references unknown cell " +
                  (cells.count(a) ? b : a));
    if (a == b) throw Error("grid spec: self edge on " + a);
  }
  if (!cells.count(spec.init_cell))
    throw Error("grid spec: unknown init cell " + spec.init_cell);
  if (spec.goal_cells.empty()) throw Error("grid spec: no goal cells");
  for (const auto &g : spec.goal_cells)
    if (!cells.count(g)) throw Error("grid spec: unknown goal cell " + g);
  if (reachable(adj, spec.cells.front()).size() != cells.size())
    throw Error("grid spec: disconnected grid");
}

std::string is_at(const std::string &cell) { return "(is-at " + cell + ")"; }

}  // namespace

std::string move_action_name(const std::string &from, const std::string &to) {
  return "(move-" + from + "-" + to + ")";
}

GridFixture generate_gridworld(const GridSpec &spec) {
  AdjacencyMap adj = adjacency(spec);
  validate(spec, adj);

  GridFixture fixture;
  std::ostringstream dom;
  dom << "(define (domain " << spec.name << ")\n";
  dom << "  (:requirements :strips :typing)\n";
  dom << "  (:types cell)\n";
  dom << "  (:constants";
  for (const auto &c : spec.cells) dom << " " << c;
  dom << " - cell)\n";
  dom << "  (:predicates (is-at ?c - cell))\n";
  for (const auto &[cell, neighbors] : adj) {
    for (const auto &next : neighbors) {
      dom << "  (:action move-" << cell << "-" << next << "\n";
      dom << "    :parameters ()\n";
      dom << "    :precondition (and " << is_at(cell) << ")\n";
      dom << "    :effect (and (not " << is_at(cell) << ") " << is_at(next)
          << "))\n";
    }
  }
  dom << ")\n";
  fixture.domain_pddl = dom.str();

  std::ostringstream prob;
  prob << "(define (problem " << spec.name << "-problem)\n";
  prob << "  (:domain " << spec.name << ")\n";
  prob << "  (:init " << is_at(spec.init_cell) << ")\n";
  for (const auto &g : spec.goal_cells)
    prob << "  (:goal (and " << is_at(g) << "))\n";
  prob << ")\n";
  fixture.problem_pddl = prob.str();

  // Oracle: cell c is a landmark of goal g iff removing c disconnects init
  // from g (plus the trivially-true init and goal cells).
  for (const auto &goal : spec.goal_cells) {
    GridOracleEntry entry;
    entry.trivial_init.insert(is_at(spec.init_cell));
    entry.trivial_goal.insert(is_at(goal));
    entry.all.insert(is_at(spec.init_cell));
    entry.all.insert(is_at(goal));
    for (const auto &cell : spec.cells) {
      if (cell == spec.init_cell || cell == goal) continue;
      if (!reachable(adj, spec.init_cell, cell).count(goal)) {
        entry.all.insert(is_at(cell));
        entry.non_trivial.insert(is_at(cell));
      }
    }
    fixture.oracle[goal] = entry;
  }
  return fixture;
}

GridSpec parse_grid_spec(const std::string &text) {
  GridSpec spec;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "name") {
      ls >> spec.name;
    } else if (kind == "cell") {
      std::string c;
      while (ls >> c) spec.cells.push_back(c);
    } else if (kind == "edge") {
      std::string a, b;
      if (!(ls >> a >> b))
        throw Error("grid spec line " + std::to_string(line_no) +
                    ": edge needs two cells");
      spec.edges.emplace_back(a, b);
    } else if (kind == "init") {
      if (!(ls >> spec.init_cell))
        throw Error("grid spec line " + std::to_string(line_no) +
                    ": init needs a cell");
    } else if (kind == "goal") {
      std::string g;
      if (!(ls >> g))
        throw Error("grid spec line " + std::to_string(line_no) +
                    ": goal needs a cell");
      spec.goal_cells.push_back(g);
    } else {
      throw Error("grid spec line " + std::to_string(line_no) +
                  ": unknown directive " + kind);
    }
  }
  return spec;
}

std::vector<std::string> grid_walk(const GridSpec &spec, const std::string &from,
                                   const std::string &to) {
  AdjacencyMap adj = adjacency(spec);
  std::map<std::string, std::string> parent;
  std::deque<std::string> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    std::string cell = queue.front();
    queue.pop_front();
    if (cell == to) break;
    for (const auto &next : adj.at(cell)) {
      if (parent.count(next)) continue;
      parent[next] = cell;
      queue.push_back(next);
    }
  }
  if (!parent.count(to)) throw Error("grid walk: no path " + from + " -> " + to);
  std::vector<std::string> cells{to};
  while (cells.back() != from) cells.push_back(parent[cells.back()]);
  std::reverse(cells.begin(), cells.end());
  std::vector<std::string> moves;
  for (std::size_t i = 0; i + 1 < cells.size(); ++i)
    moves.push_back(move_action_name(cells[i], cells[i + 1]));
  return moves;
}

}  // namespace planrec
