#include "planrec/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <set>

#include "planrec/errors.hpp"

namespace planrec {

namespace {

struct SExpr {
  bool is_list = false;
  std::string sym;           // when !is_list
  std::vector<SExpr> items;  // when is_list
  int line = 1;
  int column = 1;
};

class Tokenizer {
 public:
  explicit Tokenizer(const std::string &text) : text_(text) {}

  struct Token {
    enum class Kind { LParen, RParen, Symbol, End } kind;
    std::string sym;
    int line;
    int column;
  };

  Token next() {
    skip_ws_and_comments();
    Token tok{Token::Kind::End, "", line_, col_};
    if (pos_ >= text_.size()) return tok;
    char c = text_[pos_];
    if (c == '(') {
      advance();
      tok.kind = Token::Kind::LParen;
      return tok;
    }
    if (c == ')') {
      advance();
      tok.kind = Token::Kind::RParen;
      return tok;
    }
    tok.kind = Token::Kind::Symbol;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(c)) &&
           c != '(' && c != ')' && c != ';') {
      tok.sym += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      advance();
      if (pos_ < text_.size()) c = text_[pos_];
    }
    return tok;
  }

 private:
  void skip_ws_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string &text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

SExpr read_sexpr(Tokenizer &tok, const Tokenizer::Token &first) {
  SExpr node;
  node.line = first.line;
  node.column = first.column;
  if (first.kind == Tokenizer::Token::Kind::Symbol) {
    node.sym = first.sym;
    return node;
  }
  if (first.kind != Tokenizer::Token::Kind::LParen)
    throw ParseError("expected '(' or symbol", first.line, first.column);
  node.is_list = true;
  for (;;) {
    auto t = tok.next();
    if (t.kind == Tokenizer::Token::Kind::End)
      throw ParseError("unexpected end of input, unbalanced '('", node.line,
                       node.column);
    if (t.kind == Tokenizer::Token::Kind::RParen) return node;
    node.items.push_back(read_sexpr(tok, t));
  }
}

SExpr parse_top(const std::string &text, const char *what) {
  Tokenizer tok(text);
  auto first = tok.next();
  if (first.kind == Tokenizer::Token::Kind::End)
    throw ParseError(std::string("empty ") + what + " input", 1, 1);
  SExpr root = read_sexpr(tok, first);
  auto trailing = tok.next();
  if (trailing.kind != Tokenizer::Token::Kind::End)
    throw ParseError(std::string("trailing content after ") + what,
                     trailing.line, trailing.column);
  if (!root.is_list)
    throw ParseError(std::string(what) + " must be a (define ...) form",
                     root.line, root.column);
  return root;
}

bool is_sym(const SExpr &e, const char *s) { return !e.is_list && e.sym == s; }

const std::string &sym_of(const SExpr &e, const char *context) {
  if (e.is_list)
    throw ParseError(std::string("expected symbol in ") + context, e.line,
                     e.column);
  return e.sym;
}

bool is_number(const std::string &s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  bool digit = false, dot = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digit = true;
    } else if (s[i] == '.' && !dot) {
      dot = true;
    } else {
      return false;
    }
  }
  return digit;
}

Rational parse_number(const std::string &s, int line, int col) {
  auto dot = s.find('.');
  try {
    if (dot == std::string::npos) return Rational(std::stoll(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::int64_t den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rational(std::stoll(digits), den);
  } catch (const std::exception &) {
    throw ParseError("bad numeric literal: " + s, line, col);
  }
}

// Typed list "a b - t c - u d" -> [(a,t),(b,t),(c,u),(d,object)].
std::vector<TypedName> parse_typed_list(const std::vector<SExpr> &items,
                                        std::size_t begin, std::size_t end) {
  std::vector<TypedName> out;
  std::vector<std::string> pending;
  for (std::size_t i = begin; i < end; ++i) {
    const auto &it = items[i];
    if (is_sym(it, "-")) {
      if (i + 1 >= end)
        throw ParseError("dangling '-' in typed list", it.line, it.column);
      const auto &ty = items[i + 1];
      if (ty.is_list)
        throw UnsupportedConstructError("(either ...) type", ty.line, ty.column);
      for (auto &name : pending) out.push_back({name, ty.sym});
      pending.clear();
      ++i;
    } else {
      pending.push_back(sym_of(it, "typed list"));
    }
  }
  for (auto &name : pending) out.push_back({name, "object"});
  return out;
}

Atom parse_atom(const SExpr &e) {
  if (!e.is_list || e.items.empty() || e.items[0].is_list)
    throw ParseError("expected atom", e.line, e.column);
  Atom atom;
  atom.predicate = e.items[0].sym;
  atom.line = e.line;
  atom.column = e.column;
  for (std::size_t i = 1; i < e.items.size(); ++i)
    atom.args.push_back(sym_of(e.items[i], "atom argument"));
  return atom;
}

const std::set<std::string> kNumericCompare = {"<", "<=", ">", ">="};
const std::set<std::string> kNumericEffect = {"increase", "decrease", "assign",
                                              "scale-up", "scale-down"};

struct DomainContext {
  LiftedModel *model;
  std::set<std::string> function_names;

  bool is_function(const std::string &name) const {
    return function_names.count(name) > 0;
  }
};

bool is_fluent_expr(const DomainContext &ctx, const SExpr &e) {
  if (!e.is_list) return is_number(e.sym);
  return !e.items.empty() && !e.items[0].is_list &&
         ctx.is_function(e.items[0].sym);
}

Condition parse_condition(const DomainContext &ctx, const SExpr &e) {
  if (!e.is_list || e.items.empty())
    throw ParseError("expected condition", e.line, e.column);
  if (e.items[0].is_list)
    throw ParseError("expected condition head symbol", e.line, e.column);
  const std::string &head = e.items[0].sym;

  Condition cond;
  if (head == "and" || head == "or") {
    cond.kind = head == "and" ? Condition::Kind::And : Condition::Kind::Or;
    for (std::size_t i = 1; i < e.items.size(); ++i)
      cond.children.push_back(parse_condition(ctx, e.items[i]));
    return cond;
  }
  if (head == "not") {
    if (e.items.size() != 2)
      throw ParseError("(not ...) takes one argument", e.line, e.column);
    const auto &inner = e.items[1];
    if (!inner.is_list || inner.items.empty())
      throw ParseError("expected atom under (not ...)", inner.line, inner.column);
    const std::string &inner_head = inner.items[0].sym;
    if (inner_head == "=") {
      Condition eq = parse_condition(ctx, inner);
      if (eq.kind == Condition::Kind::True) return eq;  // numeric, dropped
      eq.kind = Condition::Kind::NotEquals;
      return eq;
    }
    if (inner_head == "and" || inner_head == "or" || inner_head == "not" ||
        inner_head == "exists" || inner_head == "forall")
      throw UnsupportedConstructError("negation of non-atomic formula",
                                      inner.line, inner.column);
    cond.kind = Condition::Kind::NotAtom;
    cond.atom = parse_atom(inner);
    return cond;
  }
  if (head == "exists") {
    if (e.items.size() != 3 || !e.items[1].is_list)
      throw ParseError("(exists (?v - type) cond) expected", e.line, e.column);
    auto vars = parse_typed_list(e.items[1].items, 0, e.items[1].items.size());
    if (vars.empty())
      throw ParseError("empty variable list in exists", e.line, e.column);
    // Nested single-variable quantifiers, innermost around the body.
    Condition body = parse_condition(ctx, e.items[2]);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      Condition q;
      q.kind = Condition::Kind::Exists;
      q.var = it->name;
      q.var_type = it->type;
      q.children.push_back(std::move(body));
      body = std::move(q);
    }
    return body;
  }
  if (head == "forall")
    throw UnsupportedConstructError("universal quantification (forall)", e.line,
                                    e.column);
  if (head == "imply")
    throw UnsupportedConstructError("implication (imply)", e.line, e.column);
  if (kNumericCompare.count(head)) {
    cond.kind = Condition::Kind::True;  // metric condition, ignored
    return cond;
  }
  if (head == "=") {
    if (e.items.size() != 3)
      throw ParseError("(= a b) takes two arguments", e.line, e.column);
    if (is_fluent_expr(ctx, e.items[1]) || is_fluent_expr(ctx, e.items[2])) {
      cond.kind = Condition::Kind::True;  // numeric equality, ignored
      return cond;
    }
    cond.kind = Condition::Kind::Equals;
    cond.lhs = sym_of(e.items[1], "equality");
    cond.rhs = sym_of(e.items[2], "equality");
    return cond;
  }
  cond.kind = Condition::Kind::Leaf;
  cond.atom = parse_atom(e);
  return cond;
}

void parse_effect(const DomainContext &ctx, const SExpr &e, ActionSchema &schema) {
  if (!e.is_list || e.items.empty())
    throw ParseError("expected effect", e.line, e.column);
  if (e.items[0].is_list)
    throw ParseError("expected effect head symbol", e.line, e.column);
  const std::string &head = e.items[0].sym;

  if (head == "and") {
    for (std::size_t i = 1; i < e.items.size(); ++i)
      parse_effect(ctx, e.items[i], schema);
    return;
  }
  if (head == "when")
    throw UnsupportedConstructError("conditional effect (when)", e.line,
                                    e.column);
  if (head == "forall")
    throw UnsupportedConstructError("universal effect (forall)", e.line,
                                    e.column);
  if (kNumericEffect.count(head)) {
    // Metric effect. Only a literal total-cost increase carries meaning
    // (it becomes the action cost); everything else is ignored.
    if (head == "increase" && e.items.size() == 3 && e.items[1].is_list &&
        e.items[1].items.size() == 1 &&
        is_sym(e.items[1].items[0], "total-cost") && !e.items[2].is_list &&
        is_number(e.items[2].sym)) {
      schema.cost = parse_number(e.items[2].sym, e.items[2].line,
                                 e.items[2].column);
    }
    return;
  }
  if (head == "not") {
    if (e.items.size() != 2 || !e.items[1].is_list)
      throw ParseError("expected (not (atom ...)) effect", e.line, e.column);
    schema.effects.push_back({parse_atom(e.items[1]), true});
    return;
  }
  schema.effects.push_back({parse_atom(e), false});
}

void check_requirements(const SExpr &reqs, LiftedModel &model) {
  static const std::set<std::string> rejected = {
      ":conditional-effects", ":durative-actions",      ":derived-predicates",
      ":adl",                 ":universal-preconditions",
      ":quantified-preconditions"};
  for (std::size_t i = 1; i < reqs.items.size(); ++i) {
    const auto &r = reqs.items[i];
    const std::string &name = sym_of(r, ":requirements");
    if (rejected.count(name))
      throw UnsupportedConstructError(name, r.line, r.column);
    model.requirements.push_back(name);
  }
}

void parse_action(DomainContext &ctx, const SExpr &e) {
  if (e.items.size() < 2 || e.items[1].is_list)
    throw ParseError("(:action name ...) expected", e.line, e.column);
  ActionSchema schema;
  schema.name = e.items[1].sym;
  schema.line = e.line;
  for (const auto &existing : ctx.model->schemas)
    if (existing.name == schema.name)
      throw ParseError("duplicate action name: " + schema.name, e.line,
                       e.column);

  bool have_effect = false;
  std::size_t i = 2;
  while (i < e.items.size()) {
    const std::string &key = sym_of(e.items[i], ":action body");
    if (i + 1 >= e.items.size())
      throw ParseError("missing value after " + key + " in action " +
                           schema.name,
                       e.items[i].line, e.items[i].column);
    const SExpr &value = e.items[i + 1];
    if (key == ":parameters") {
      if (!value.is_list)
        throw ParseError(":parameters expects a list", value.line, value.column);
      schema.params = parse_typed_list(value.items, 0, value.items.size());
      for (const auto &p : schema.params)
        if (p.name.empty() || p.name[0] != '?')
          throw ParseError("parameter must start with '?': " + p.name,
                           value.line, value.column);
    } else if (key == ":precondition") {
      if (value.is_list && value.items.empty()) {
        schema.precondition.kind = Condition::Kind::True;  // ()
      } else {
        schema.precondition = parse_condition(ctx, value);
      }
    } else if (key == ":effect") {
      if (value.is_list && value.items.empty())
        throw ParseError("empty effect in action " + schema.name, value.line,
                         value.column);
      parse_effect(ctx, value, schema);
      have_effect = true;
    } else {
      throw ParseError("unexpected key " + key + " in action " + schema.name,
                       e.items[i].line, e.items[i].column);
    }
    i += 2;
  }
  if (!have_effect)
    throw ParseError("action " + schema.name + " is missing an :effect block",
                     e.line, e.column);
  ctx.model->schemas.push_back(std::move(schema));
}

void parse_domain(const std::string &text, DomainContext &ctx) {
  SExpr root = parse_top(text, "domain");
  LiftedModel &model = *ctx.model;
  if (root.items.empty() || !is_sym(root.items[0], "define"))
    throw ParseError("domain must start with (define ...)", root.line,
                     root.column);
  if (root.items.size() < 2 || !root.items[1].is_list ||
      root.items[1].items.size() != 2 || !is_sym(root.items[1].items[0], "domain"))
    throw ParseError("expected (domain <name>)", root.line, root.column);
  model.domain_name = sym_of(root.items[1].items[1], "domain name");
  model.type_parent.emplace("object", "");

  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const SExpr &sec = root.items[i];
    if (!sec.is_list || sec.items.empty() || sec.items[0].is_list)
      throw ParseError("expected domain section", sec.line, sec.column);
    const std::string &head = sec.items[0].sym;
    if (head == ":requirements") {
      check_requirements(sec, model);
    } else if (head == ":types") {
      for (auto &t : parse_typed_list(sec.items, 1, sec.items.size())) {
        model.type_parent[t.name] = t.type;
        if (!model.type_parent.count(t.type)) model.type_parent[t.type] = "object";
      }
    } else if (head == ":constants") {
      for (auto &c : parse_typed_list(sec.items, 1, sec.items.size()))
        model.objects.push_back(c);
    } else if (head == ":predicates") {
      for (std::size_t j = 1; j < sec.items.size(); ++j) {
        Atom decl = parse_atom(sec.items[j]);
        auto params = parse_typed_list(sec.items[j].items, 1,
                                       sec.items[j].items.size());
        if (model.predicate_arity.count(decl.predicate))
          throw ParseError("duplicate predicate: " + decl.predicate,
                           sec.items[j].line, sec.items[j].column);
        model.predicate_arity[decl.predicate] = static_cast<int>(params.size());
      }
    } else if (head == ":functions") {
      for (std::size_t j = 1; j < sec.items.size(); ++j) {
        const auto &f = sec.items[j];
        if (is_sym(f, "-")) {  // "- number" tail
          ++j;
          continue;
        }
        if (f.is_list && !f.items.empty() && !f.items[0].is_list)
          ctx.function_names.insert(f.items[0].sym);
      }
    } else if (head == ":action") {
      parse_action(ctx, sec);
    } else if (head == ":durative-action") {
      throw UnsupportedConstructError(":durative-action", sec.line, sec.column);
    } else if (head == ":derived") {
      throw UnsupportedConstructError(":derived predicates", sec.line,
                                      sec.column);
    } else {
      throw ParseError("unknown domain section " + head, sec.line, sec.column);
    }
  }
}

std::vector<Atom> parse_goal_conjunction(const SExpr &e) {
  // Goals are restricted to conjunctions of positive ground atoms.
  std::vector<Atom> out;
  if (!e.is_list || e.items.empty())
    throw ParseError("expected goal condition", e.line, e.column);
  if (!e.items[0].is_list && e.items[0].sym == "and") {
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const auto &sub = e.items[i];
      if (sub.is_list && !sub.items.empty() && !sub.items[0].is_list &&
          (sub.items[0].sym == "and" || sub.items[0].sym == "or" ||
           sub.items[0].sym == "not" || sub.items[0].sym == "exists" ||
           sub.items[0].sym == "forall"))
        throw UnsupportedConstructError("non-conjunctive goal", sub.line,
                                        sub.column);
      out.push_back(parse_atom(sub));
    }
    return out;
  }
  if (!e.items[0].is_list &&
      (e.items[0].sym == "or" || e.items[0].sym == "not" ||
       e.items[0].sym == "exists" || e.items[0].sym == "forall"))
    throw UnsupportedConstructError("non-conjunctive goal", e.line, e.column);
  out.push_back(parse_atom(e));
  return out;
}

void parse_problem(const std::string &text, DomainContext &ctx) {
  SExpr root = parse_top(text, "problem");
  LiftedModel &model = *ctx.model;
  if (root.items.empty() || !is_sym(root.items[0], "define"))
    throw ParseError("problem must start with (define ...)", root.line,
                     root.column);
  if (root.items.size() < 2 || !root.items[1].is_list ||
      root.items[1].items.size() != 2 ||
      !is_sym(root.items[1].items[0], "problem"))
    throw ParseError("expected (problem <name>)", root.line, root.column);
  model.problem_name = sym_of(root.items[1].items[1], "problem name");

  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const SExpr &sec = root.items[i];
    if (!sec.is_list || sec.items.empty() || sec.items[0].is_list)
      throw ParseError("expected problem section", sec.line, sec.column);
    const std::string &head = sec.items[0].sym;
    if (head == ":domain") {
      if (sec.items.size() != 2)
        throw ParseError("(:domain <name>) expected", sec.line, sec.column);
      const std::string &ref = sym_of(sec.items[1], ":domain");
      if (ref != model.domain_name)
        throw ParseError("problem references domain '" + ref +
                             "' but domain file defines '" + model.domain_name +
                             "'",
                         sec.items[1].line, sec.items[1].column);
    } else if (head == ":objects") {
      for (auto &o : parse_typed_list(sec.items, 1, sec.items.size()))
        model.objects.push_back(o);
    } else if (head == ":init") {
      for (std::size_t j = 1; j < sec.items.size(); ++j) {
        const auto &f = sec.items[j];
        if (!f.is_list || f.items.empty())
          throw ParseError("expected init fact", f.line, f.column);
        if (!f.items[0].is_list && f.items[0].sym == "=") continue;  // fluent
        if (!f.items[0].is_list && f.items[0].sym == "not")
          throw ParseError("negative init facts are not allowed", f.line,
                           f.column);
        model.init.push_back(parse_atom(f));
      }
    } else if (head == ":goal") {
      if (sec.items.size() != 2)
        throw ParseError("(:goal <condition>) expected", sec.line, sec.column);
      model.goal_hypotheses.push_back(parse_goal_conjunction(sec.items[1]));
    } else if (head == ":metric") {
      // Parsed and ignored.
    } else {
      throw ParseError("unknown problem section " + head, sec.line, sec.column);
    }
  }
  if (model.goal_hypotheses.empty())
    throw ParseError("problem declares no (:goal ...)", root.line, root.column);
}

void validate_model(const LiftedModel &model) {
  std::set<std::string> object_names;
  for (const auto &o : model.objects) {
    if (!model.type_parent.count(o.type))
      throw ParseError("object " + o.name + " has undeclared type " + o.type, 1,
                       1);
    if (!object_names.insert(o.name).second)
      throw ParseError("duplicate object: " + o.name, 1, 1);
  }

  auto check_ground_atom = [&](const Atom &a) {
    auto arity = model.predicate_arity.find(a.predicate);
    if (arity == model.predicate_arity.end())
      throw ParseError("undeclared predicate: " + a.predicate, a.line, a.column);
    if (arity->second != static_cast<int>(a.args.size()))
      throw ParseError("predicate " + a.predicate + " expects " +
                           std::to_string(arity->second) + " arguments",
                       a.line, a.column);
    for (const auto &arg : a.args)
      if (!object_names.count(arg))
        throw ParseError("unknown object '" + arg + "' in " + a.predicate,
                         a.line, a.column);
  };
  for (const auto &a : model.init) check_ground_atom(a);
  for (const auto &g : model.goal_hypotheses)
    for (const auto &a : g) check_ground_atom(a);

  // Schema bodies: every atom argument must be a parameter or an object.
  for (const auto &schema : model.schemas) {
    std::set<std::string> scope;
    for (const auto &p : schema.params) {
      scope.insert(p.name);
      if (!model.type_parent.count(p.type))
        throw ParseError("parameter " + p.name + " of " + schema.name +
                             " has undeclared type " + p.type,
                         schema.line, 1);
    }
    auto check_atom = [&](const Atom &a, const std::set<std::string> &vars) {
      auto arity = model.predicate_arity.find(a.predicate);
      if (arity == model.predicate_arity.end())
        throw ParseError("undeclared predicate: " + a.predicate, a.line,
                         a.column);
      if (arity->second != static_cast<int>(a.args.size()))
        throw ParseError("predicate " + a.predicate + " expects " +
                             std::to_string(arity->second) + " arguments",
                         a.line, a.column);
      for (const auto &arg : a.args) {
        if (!arg.empty() && arg[0] == '?') {
          if (!vars.count(arg))
            throw ParseError("unbound variable " + arg + " in " + schema.name,
                             a.line, a.column);
        } else if (!object_names.count(arg)) {
          throw ParseError("unknown object '" + arg + "' in " + schema.name,
                           a.line, a.column);
        }
      }
    };
    std::function<void(const Condition &, std::set<std::string>)> walk =
        [&](const Condition &c, std::set<std::string> vars) {
          switch (c.kind) {
            case Condition::Kind::Leaf:
            case Condition::Kind::NotAtom:
              check_atom(c.atom, vars);
              break;
            case Condition::Kind::Exists: {
              if (!model.type_parent.count(c.var_type))
                throw ParseError("exists variable " + c.var +
                                     " has undeclared type " + c.var_type,
                                 schema.line, 1);
              vars.insert(c.var);
              walk(c.children[0], vars);
              break;
            }
            case Condition::Kind::And:
            case Condition::Kind::Or:
              for (const auto &ch : c.children) walk(ch, vars);
              break;
            default:
              break;
          }
        };
    walk(schema.precondition, scope);
    for (const auto &eff : schema.effects) check_atom(eff.atom, scope);
  }
}

}  // namespace

LiftedModel parse_domain_and_problem(const std::string &domain_text,
                                     const std::string &problem_text) {
  LiftedModel model;
  DomainContext ctx{&model, {}};
  parse_domain(domain_text, ctx);
  parse_problem(problem_text, ctx);
  validate_model(model);
  return model;
}

}  // namespace planrec
