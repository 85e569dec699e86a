#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "planrec/problem.hpp"
#include "planrec/rational.hpp"

namespace planrec {

// Lifted atom: args are either parameter variables ("?x") or object names.
struct Atom {
  std::string predicate;
  std::vector<std::string> args;
  int line = 0;
  int column = 0;
};

// Condition tree for action preconditions. The supported subset is
// conjunction, disjunction, negated atoms, existential quantification,
// and object (in)equality; numeric comparisons are parsed and dropped.
struct Condition {
  enum class Kind { True, False, And, Or, NotAtom, Exists, Leaf, Equals, NotEquals };

  Kind kind = Kind::True;
  Atom atom;                        // Leaf, NotAtom
  std::string lhs, rhs;             // Equals, NotEquals
  std::string var, var_type;        // Exists (children has exactly one entry)
  std::vector<Condition> children;  // And, Or, Exists
};

struct EffectAtom {
  Atom atom;
  bool negated = false;  // negated effects delete
};

struct ActionSchema {
  std::string name;
  std::vector<TypedName> params;
  Condition precondition;  // Kind::True when omitted
  std::vector<EffectAtom> effects;
  Rational cost{1};  // from (increase (total-cost) <n>), default 1
  int line = 0;
};

struct LiftedModel {
  std::string domain_name;
  std::string problem_name;
  std::vector<std::string> requirements;
  std::unordered_map<std::string, std::string> type_parent;
  std::vector<TypedName> objects;  // domain constants + problem objects
  std::unordered_map<std::string, int> predicate_arity;
  std::vector<ActionSchema> schemas;
  std::vector<Atom> init;
  std::vector<std::vector<Atom>> goal_hypotheses;
};

// Deterministic: identical input bytes produce identical models. Symbols are
// lowercased. A problem file may repeat (:goal ...) to declare several goal
// hypotheses; the first one doubles as the problem's plain goal.
LiftedModel parse_domain_and_problem(const std::string &domain_text,
                                     const std::string &problem_text);

}  // namespace planrec
