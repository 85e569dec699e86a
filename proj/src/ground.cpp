#include "planrec/ground.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "planrec/errors.hpp"

namespace planrec {

namespace {

// Substituted condition tree: atoms are canonical fact texts, equalities are
// resolved, existentials expanded over the object universe.
struct GroundCond {
  enum class Kind { True, False, And, Or, NotFact, Fact };
  Kind kind = Kind::True;
  std::string fact;  // Fact, NotFact
  std::vector<GroundCond> children;
};

using Bindings = std::unordered_map<std::string, std::string>;

std::string substitute_atom(const Atom &atom, const Bindings &bind) {
  GroundFact fact;
  fact.predicate = atom.predicate;
  fact.args.reserve(atom.args.size());
  for (const auto &arg : atom.args) {
    if (!arg.empty() && arg[0] == '?') {
      auto it = bind.find(arg);
      if (it == bind.end())
        throw GroundingError("unbound variable " + arg + " in " +
                             atom.predicate);
      fact.args.push_back(it->second);
    } else {
      fact.args.push_back(arg);
    }
  }
  return canonical_text(fact);
}

struct ObjectUniverse {
  // type -> object names compatible with it, sorted.
  std::map<std::string, std::vector<std::string>> by_type;

  const std::vector<std::string> &of_type(const std::string &type) const {
    static const std::vector<std::string> empty;
    auto it = by_type.find(type);
    return it == by_type.end() ? empty : it->second;
  }
};

ObjectUniverse index_objects(const LiftedModel &model) {
  ObjectUniverse universe;
  for (const auto &obj : model.objects) {
    // An object belongs to its own type and every ancestor up to "object".
    std::string t = obj.type;
    std::set<std::string> seen;
    while (!t.empty() && seen.insert(t).second) {
      universe.by_type[t].push_back(obj.name);
      auto parent = model.type_parent.find(t);
      t = parent == model.type_parent.end() ? "" : parent->second;
    }
  }
  for (auto &[type, names] : universe.by_type) {
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
  }
  return universe;
}

GroundCond substitute(const Condition &cond, Bindings &bind,
                      const ObjectUniverse &universe) {
  GroundCond out;
  switch (cond.kind) {
    case Condition::Kind::True:
      out.kind = GroundCond::Kind::True;
      return out;
    case Condition::Kind::False:
      out.kind = GroundCond::Kind::False;
      return out;
    case Condition::Kind::Leaf:
      out.kind = GroundCond::Kind::Fact;
      out.fact = substitute_atom(cond.atom, bind);
      return out;
    case Condition::Kind::NotAtom:
      out.kind = GroundCond::Kind::NotFact;
      out.fact = substitute_atom(cond.atom, bind);
      return out;
    case Condition::Kind::Equals:
    case Condition::Kind::NotEquals: {
      auto resolve = [&](const std::string &term) {
        if (!term.empty() && term[0] == '?') {
          auto it = bind.find(term);
          if (it == bind.end())
            throw GroundingError("unbound variable " + term + " in equality");
          return it->second;
        }
        return term;
      };
      bool eq = resolve(cond.lhs) == resolve(cond.rhs);
      if (cond.kind == Condition::Kind::NotEquals) eq = !eq;
      out.kind = eq ? GroundCond::Kind::True : GroundCond::Kind::False;
      return out;
    }
    case Condition::Kind::And:
    case Condition::Kind::Or: {
      out.kind = cond.kind == Condition::Kind::And ? GroundCond::Kind::And
                                                   : GroundCond::Kind::Or;
      for (const auto &child : cond.children)
        out.children.push_back(substitute(child, bind, universe));
      return out;
    }
    case Condition::Kind::Exists: {
      // Expanded to a disjunction over the quantified type's objects.
      out.kind = GroundCond::Kind::Or;
      for (const auto &obj : universe.of_type(cond.var_type)) {
        auto saved = bind.find(cond.var);
        std::string prev = saved == bind.end() ? "" : saved->second;
        bind[cond.var] = obj;
        out.children.push_back(substitute(cond.children[0], bind, universe));
        if (prev.empty())
          bind.erase(cond.var);
        else
          bind[cond.var] = prev;
      }
      return out;
    }
  }
  return out;
}

// Three-valued static evaluation: facts are unknown, only True/False
// constants (from equalities and empty expansions) decide.
enum class Tri { False, True, Unknown };

Tri statically(const GroundCond &cond) {
  switch (cond.kind) {
    case GroundCond::Kind::True:
      return Tri::True;
    case GroundCond::Kind::False:
      return Tri::False;
    case GroundCond::Kind::Fact:
    case GroundCond::Kind::NotFact:
      return Tri::Unknown;
    case GroundCond::Kind::And: {
      Tri result = Tri::True;
      for (const auto &c : cond.children) {
        Tri t = statically(c);
        if (t == Tri::False) return Tri::False;
        if (t == Tri::Unknown) result = Tri::Unknown;
      }
      return result;
    }
    case GroundCond::Kind::Or: {
      if (cond.children.empty()) return Tri::False;
      Tri result = Tri::False;
      for (const auto &c : cond.children) {
        Tri t = statically(c);
        if (t == Tri::True) return Tri::True;
        if (t == Tri::Unknown) result = Tri::Unknown;
      }
      return result;
    }
  }
  return Tri::Unknown;
}

void collect_positive(const GroundCond &cond, std::set<std::string> &out) {
  switch (cond.kind) {
    case GroundCond::Kind::Fact:
      out.insert(cond.fact);
      break;
    case GroundCond::Kind::And:
    case GroundCond::Kind::Or:
      for (const auto &c : cond.children) collect_positive(c, out);
      break;
    default:
      break;  // NotFact subtrees and constants contribute nothing
  }
}

struct CandidateAction {
  std::string name;
  std::vector<std::string> pre, add, del;  // sorted canonical texts
  Rational cost{1};
};

std::vector<CandidateAction> instantiate(const LiftedModel &model,
                                         const ObjectUniverse &universe,
                                         const GroundOptions &options) {
  std::vector<CandidateAction> out;
  std::int64_t total = 0;

  std::vector<const ActionSchema *> schemas;
  for (const auto &s : model.schemas) schemas.push_back(&s);
  std::sort(schemas.begin(), schemas.end(),
            [](const auto *a, const auto *b) { return a->name < b->name; });

  for (const ActionSchema *schema : schemas) {
    std::vector<const std::vector<std::string> *> domains;
    std::int64_t combinations = 1;
    bool empty_domain = false;
    for (const auto &param : schema->params) {
      const auto &objs = universe.of_type(param.type);
      if (objs.empty()) empty_domain = true;
      if (combinations > options.max_ground_actions / std::max<std::int64_t>(
                             1, static_cast<std::int64_t>(objs.size())) +
                             1)
        combinations = options.max_ground_actions + 1;  // saturate, no overflow
      else
        combinations *= std::max<std::int64_t>(1, objs.size());
      domains.push_back(&objs);
    }
    if (empty_domain) continue;  // zero instances, not an error
    total += combinations;
    if (total > options.max_ground_actions)
      throw GroundingError("grounded action count exceeds cap (" +
                           std::to_string(options.max_ground_actions) + ")");

    // '|' in a schema name encodes spaces of an already-ground action name
    // (see problem_to_pddl); decode so round-tripping is exact.
    std::string base_name = schema->name;
    for (auto &ch : base_name)
      if (ch == '|') ch = ' ';

    std::vector<std::size_t> cursor(schema->params.size(), 0);
    bool done = false;
    while (!done) {
      Bindings bind;
      std::string name = "(" + base_name;
      for (std::size_t i = 0; i < schema->params.size(); ++i) {
        const std::string &obj = (*domains[i])[cursor[i]];
        bind[schema->params[i].name] = obj;
        name += " " + obj;
      }
      name += ")";

      GroundCond pre_tree = substitute(schema->precondition, bind, universe);
      if (statically(pre_tree) != Tri::False) {
        CandidateAction action;
        action.name = std::move(name);
        action.cost = schema->cost;
        std::set<std::string> pre_set;
        collect_positive(pre_tree, pre_set);
        action.pre.assign(pre_set.begin(), pre_set.end());

        std::set<std::string> add_set, del_set;
        for (const auto &eff : schema->effects) {
          std::string fact = substitute_atom(eff.atom, bind);
          (eff.negated ? del_set : add_set).insert(fact);
        }
        // Add wins: a fact both added and deleted stays in add only.
        for (const auto &f : add_set) del_set.erase(f);
        action.add.assign(add_set.begin(), add_set.end());
        action.del.assign(del_set.begin(), del_set.end());
        out.push_back(std::move(action));
      }

      done = true;
      for (std::size_t level = cursor.size(); level-- > 0;) {
        if (++cursor[level] < domains[level]->size()) {
          done = false;
          break;
        }
        cursor[level] = 0;
      }
    }
  }
  return out;
}

// Delete-relaxed reachability over candidate actions; keeps the actions that
// become applicable in the fixpoint.
std::vector<char> reachable_mask(const std::vector<CandidateAction> &actions,
                                 const std::set<std::string> &init) {
  std::set<std::string> reached = init;
  std::vector<char> applied(actions.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < actions.size(); ++i) {
      if (applied[i]) continue;
      bool ok = true;
      for (const auto &p : actions[i].pre)
        if (!reached.count(p)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      applied[i] = 1;
      changed = true;
      for (const auto &a : actions[i].add) reached.insert(a);
    }
  }
  return applied;
}

}  // namespace

std::vector<std::string> flatten_condition(const Condition &grounded) {
  // Convenience overload for already-ground trees (variables unbound -> error).
  Bindings empty;
  ObjectUniverse none;
  GroundCond tree = substitute(grounded, empty, none);
  std::set<std::string> facts;
  collect_positive(tree, facts);
  return {facts.begin(), facts.end()};
}

PlanningProblem ground(const LiftedModel &model, const GroundOptions &options) {
  ObjectUniverse universe = index_objects(model);
  std::vector<CandidateAction> candidates =
      instantiate(model, universe, options);

  std::set<std::string> init_texts;
  for (const auto &atom : model.init) {
    GroundFact f{atom.predicate, atom.args};
    init_texts.insert(canonical_text(f));
  }

  if (options.prune_statically_inapplicable) {
    std::vector<char> keep = reachable_mask(candidates, init_texts);
    std::vector<CandidateAction> kept;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (keep[i]) kept.push_back(std::move(candidates[i]));
    candidates = std::move(kept);
  }

  // Fact universe: init u goals u pre/add/del of surviving actions.
  std::set<std::string> universe_texts = init_texts;
  std::vector<std::vector<std::string>> goal_texts;
  for (const auto &hyp : model.goal_hypotheses) {
    std::vector<std::string> texts;
    for (const auto &atom : hyp) {
      GroundFact f{atom.predicate, atom.args};
      texts.push_back(canonical_text(f));
    }
    std::sort(texts.begin(), texts.end());
    texts.erase(std::unique(texts.begin(), texts.end()), texts.end());
    for (const auto &t : texts) universe_texts.insert(t);
    goal_texts.push_back(std::move(texts));
  }
  for (const auto &a : candidates) {
    universe_texts.insert(a.pre.begin(), a.pre.end());
    universe_texts.insert(a.add.begin(), a.add.end());
    universe_texts.insert(a.del.begin(), a.del.end());
  }

  PlanningProblem problem;
  problem.domain_name = model.domain_name;
  problem.problem_name = model.problem_name;
  problem.facts = FactTable(
      std::vector<std::string>(universe_texts.begin(), universe_texts.end()));

  auto to_set = [&](const std::vector<std::string> &texts) {
    std::vector<FactId> ids;
    ids.reserve(texts.size());
    for (const auto &t : texts) ids.push_back(problem.facts.id_of(t));
    return FactSet::from_unsorted(std::move(ids));
  };

  problem.init =
      to_set({init_texts.begin(), init_texts.end()});
  for (const auto &g : goal_texts) problem.goal_hypotheses.push_back(to_set(g));

  std::sort(candidates.begin(), candidates.end(),
            [](const CandidateAction &a, const CandidateAction &b) {
              return a.name < b.name;
            });
  for (auto &c : candidates) {
    GroundAction action;
    action.name = std::move(c.name);
    action.pre = to_set(c.pre);
    action.add = to_set(c.add);
    action.del = to_set(c.del);
    action.cost = c.cost;
    if (action.cost < Rational(0))
      throw GroundingError("negative action cost in " + action.name);
    problem.actions.push_back(std::move(action));
  }

  problem.objects = model.objects;
  std::sort(problem.objects.begin(), problem.objects.end(),
            [](const TypedName &a, const TypedName &b) { return a.name < b.name; });
  problem.type_parent = model.type_parent;
  problem.predicate_arity = model.predicate_arity;
  problem.build_indices();
  return problem;
}

}  // namespace planrec
