#pragma once

// First-order frame correspondents for simple Sahlqvist implications:
// A -> C where A is a conjunction of boxed atoms (a proposition letter under
// zero or more boxes) and C is positive. The correspondent is computed by the
// standard translation followed by substitution of minimal valuations.
//
// Out-of-fragment axioms used by the presets (distribution, 5) have known
// correspondents looked up by schema shape.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lobsafe/formula.hpp"
#include "lobsafe/kripke.hpp"
#include "lobsafe/parser.hpp"
#include "lobsafe/presets.hpp"
#include "lobsafe/schema.hpp"

namespace lobsafe {

class NotInFragment : public std::invalid_argument {
 public:
  explicit NotInFragment(const std::string& what) : std::invalid_argument(what) {}
};

/// First-order formula over world variables, relation atoms R_l(a,b) and
/// equality. Pred (a unary predicate for a proposition letter) only appears
/// in intermediate standard translations.
class FoFormula {
 public:
  enum class Kind { True, False, Rel, Eq, Pred, Not, And, Or, Implies, Forall, Exists };

  static FoFormula truth() { return FoFormula(make(Kind::True)); }
  static FoFormula falsity() { return FoFormula(make(Kind::False)); }
  static FoFormula rel(ModalLabel l, std::string a, std::string b) {
    auto n = make(Kind::Rel);
    n->label = l;
    n->a = std::move(a);
    n->b = std::move(b);
    return FoFormula(std::move(n));
  }
  static FoFormula eq(std::string a, std::string b) {
    auto n = make(Kind::Eq);
    n->a = std::move(a);
    n->b = std::move(b);
    return FoFormula(std::move(n));
  }
  static FoFormula pred(std::string letter, std::string a) {
    auto n = make(Kind::Pred);
    n->name = std::move(letter);
    n->a = std::move(a);
    return FoFormula(std::move(n));
  }
  static FoFormula negation(FoFormula f) { return unary(Kind::Not, std::move(f)); }
  static FoFormula conj(FoFormula l, FoFormula r) { return binary(Kind::And, std::move(l), std::move(r)); }
  static FoFormula disj(FoFormula l, FoFormula r) { return binary(Kind::Or, std::move(l), std::move(r)); }
  static FoFormula implies(FoFormula l, FoFormula r) { return binary(Kind::Implies, std::move(l), std::move(r)); }
  static FoFormula forall(std::string v, FoFormula body) { return quant(Kind::Forall, std::move(v), std::move(body)); }
  static FoFormula exists(std::string v, FoFormula body) { return quant(Kind::Exists, std::move(v), std::move(body)); }

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  const ModalLabel& label() const { return node_->label; }
  const std::string& a() const { return node_->a; }
  const std::string& b() const { return node_->b; }
  /// Bound variable of a quantifier, letter of a Pred.
  const std::string& name() const { return node_->name; }
  const FoFormula& lhs() const { return *node_->lhs; }
  const FoFormula& rhs() const { return *node_->rhs; }
  const FoFormula& body() const { return *node_->lhs; }

  friend bool operator==(const FoFormula& x, const FoFormula& y) {
    if (x.node_ == y.node_) return true;
    const Node& p = *x.node_;
    const Node& q = *y.node_;
    if (p.kind != q.kind || p.label != q.label || p.a != q.a || p.b != q.b || p.name != q.name) return false;
    if (static_cast<bool>(p.lhs) != static_cast<bool>(q.lhs) || static_cast<bool>(p.rhs) != static_cast<bool>(q.rhs)) {
      return false;
    }
    return (!p.lhs || *p.lhs == *q.lhs) && (!p.rhs || *p.rhs == *q.rhs);
  }

 private:
  struct Node {
    Kind kind;
    ModalLabel label;
    std::string a, b, name;
    std::shared_ptr<const FoFormula> lhs, rhs;
  };
  explicit FoFormula(std::shared_ptr<Node> n) : node_(std::move(n)) {}
  static std::shared_ptr<Node> make(Kind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
  }
  static FoFormula unary(Kind k, FoFormula f) {
    auto n = make(k);
    n->lhs = std::make_shared<const FoFormula>(std::move(f));
    return FoFormula(std::move(n));
  }
  static FoFormula binary(Kind k, FoFormula l, FoFormula r) {
    auto n = make(k);
    n->lhs = std::make_shared<const FoFormula>(std::move(l));
    n->rhs = std::make_shared<const FoFormula>(std::move(r));
    return FoFormula(std::move(n));
  }
  static FoFormula quant(Kind k, std::string v, FoFormula body) {
    auto n = make(k);
    n->name = std::move(v);
    n->lhs = std::make_shared<const FoFormula>(std::move(body));
    return FoFormula(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

/// The designated free variable of every frame condition.
inline constexpr const char* kEvalVar = "x";

inline std::string relation_name(ModalLabel l) {
  std::string out = "R";
  out += l.kind == ModalKind::Knowledge ? 'k' : 'b';
  if (l.agent.value != 1) out += l.agent.is_variable() ? std::string("i") : std::to_string(l.agent.value);
  return out;
}

/// ASCII syntax: forall/exists, ~, &, |, ->, =, Rk(x,y) / Rb2(x,y).
inline std::string render(const FoFormula& f) {
  using K = FoFormula::Kind;
  auto prec = [](const FoFormula& g) {
    switch (g.kind()) {
      case K::Implies: return 1;
      case K::Or: return 2;
      case K::And: return 3;
      case K::Eq: return 4;
      default: return 5;
    }
  };
  std::function<std::string(const FoFormula&)> go = [&](const FoFormula& g) -> std::string {
    auto wrap = [&](const FoFormula& h, bool need) { return need ? "(" + go(h) + ")" : go(h); };
    switch (g.kind()) {
      case K::True: return "true";
      case K::False: return "false";
      case K::Rel: return relation_name(g.label()) + "(" + g.a() + "," + g.b() + ")";
      case K::Eq: return g.a() + " = " + g.b();
      case K::Pred: return "P_" + g.name() + "(" + g.a() + ")";
      case K::Not: return "~" + wrap(g.body(), prec(g.body()) < 5);
      case K::And: return wrap(g.lhs(), prec(g.lhs()) < 3) + " & " + wrap(g.rhs(), prec(g.rhs()) <= 3);
      case K::Or: return wrap(g.lhs(), prec(g.lhs()) < 2) + " | " + wrap(g.rhs(), prec(g.rhs()) <= 2);
      case K::Implies: return wrap(g.lhs(), prec(g.lhs()) <= 1) + " -> " + wrap(g.rhs(), prec(g.rhs()) < 1);
      case K::Forall:
      case K::Exists: {
        const std::string q = g.is(K::Forall) ? "forall " : "exists ";
        return q + g.name() + " " + wrap(g.body(), prec(g.body()) < 5);
      }
    }
    return {};
  };
  return go(f);
}

struct BoxedAtom {
  std::vector<ModalLabel> path;
  std::string atom;
  friend bool operator==(const BoxedAtom&, const BoxedAtom&) = default;
};

struct SahlqvistShape {
  std::vector<BoxedAtom> antecedent;
  Formula consequent;
};

namespace detail {

inline void collect_boxed_atoms(const Formula& f, std::vector<BoxedAtom>& out, bool& ok) {
  if (f.is(Op::And)) {
    collect_boxed_atoms(f.lhs(), out, ok);
    collect_boxed_atoms(f.rhs(), out, ok);
    return;
  }
  BoxedAtom b;
  Formula g = f;
  while (g.is(Op::Box)) {
    b.path.push_back(g.label());
    g = g.operand();
  }
  if (!g.is(Op::Atom) || g.is_metavariable()) {
    ok = false;
    return;
  }
  b.atom = g.name();
  out.push_back(std::move(b));
}

/// True iff no letter occurs under an odd number of negations. Implication
/// antecedents count as negated; both sides of an iff count as both.
inline bool is_positive(const Formula& f, bool negated = false) {
  switch (f.op()) {
    case Op::Atom: return !negated;
    case Op::Bottom:
    case Op::Top: return true;
    case Op::Not: return is_positive(f.operand(), !negated);
    case Op::And:
    case Op::Or: return is_positive(f.lhs(), negated) && is_positive(f.rhs(), negated);
    case Op::Implies: return is_positive(f.lhs(), !negated) && is_positive(f.rhs(), negated);
    case Op::Iff: return atoms_of(f).empty();
    case Op::Box:
    case Op::Diamond: return is_positive(f.operand(), negated);
  }
  return false;
}

/// Fresh bound variable names z, z', z'', ...
class VarSupply {
 public:
  std::string next() { return "z" + std::string(count_++, '\''); }

 private:
  std::size_t count_ = 0;
};

inline FoFormula standard_translation(const Formula& f, const std::string& w, VarSupply& vars) {
  using F = FoFormula;
  switch (f.op()) {
    case Op::Atom:
      if (f.is_metavariable()) throw NotInFragment("schema metavariable " + f.name() + " must be specialized first");
      return F::pred(f.name(), w);
    case Op::Bottom: return F::falsity();
    case Op::Top: return F::truth();
    case Op::Not: return F::negation(standard_translation(f.operand(), w, vars));
    case Op::And: return F::conj(standard_translation(f.lhs(), w, vars), standard_translation(f.rhs(), w, vars));
    case Op::Or: return F::disj(standard_translation(f.lhs(), w, vars), standard_translation(f.rhs(), w, vars));
    case Op::Implies:
      return F::implies(standard_translation(f.lhs(), w, vars), standard_translation(f.rhs(), w, vars));
    case Op::Iff: {
      auto l = standard_translation(f.lhs(), w, vars);
      auto r = standard_translation(f.rhs(), w, vars);
      return F::conj(F::implies(l, r), F::implies(r, l));
    }
    case Op::Box:
    case Op::Diamond: {
      if (f.label().has_agent_variable()) throw NotInFragment("agent variable must be specialized first");
      const std::string y = vars.next();
      auto body = standard_translation(f.operand(), y, vars);
      auto edge = F::rel(f.label(), w, y);
      return f.is(Op::Box) ? F::forall(y, F::implies(edge, body)) : F::exists(y, F::conj(edge, body));
    }
  }
  throw std::logic_error("unreachable");
}

/// R-path along `path` from `from` to `to`; intermediate worlds are
/// existentially bound.
inline FoFormula path_formula(const std::vector<ModalLabel>& path, const std::string& from, const std::string& to,
                              VarSupply& vars) {
  if (path.empty()) return FoFormula::eq(from, to);
  std::vector<std::string> hops{from};
  for (std::size_t k = 1; k < path.size(); ++k) hops.push_back(vars.next());
  hops.push_back(to);
  FoFormula out = FoFormula::rel(path.back(), hops[path.size() - 1], hops[path.size()]);
  for (std::size_t k = path.size() - 1; k-- > 0;) out = FoFormula::conj(FoFormula::rel(path[k], hops[k], hops[k + 1]), out);
  for (std::size_t k = path.size() - 1; k >= 1; --k) out = FoFormula::exists(hops[k], out);
  return out;
}

/// Replaces every P_letter(u) by the letter's minimal valuation at u.
inline FoFormula substitute_minimal(const FoFormula& f, const std::vector<BoxedAtom>& antecedent, VarSupply& vars) {
  using K = FoFormula::Kind;
  switch (f.kind()) {
    case K::Pred: {
      std::optional<FoFormula> out;
      for (const auto& b : antecedent) {
        if (b.atom != f.name()) continue;
        auto disjunct = path_formula(b.path, kEvalVar, f.a(), vars);
        out = out ? FoFormula::disj(*out, disjunct) : disjunct;
      }
      return out ? *out : FoFormula::falsity();
    }
    case K::Not: return FoFormula::negation(substitute_minimal(f.body(), antecedent, vars));
    case K::And:
      return FoFormula::conj(substitute_minimal(f.lhs(), antecedent, vars), substitute_minimal(f.rhs(), antecedent, vars));
    case K::Or:
      return FoFormula::disj(substitute_minimal(f.lhs(), antecedent, vars), substitute_minimal(f.rhs(), antecedent, vars));
    case K::Implies:
      return FoFormula::implies(substitute_minimal(f.lhs(), antecedent, vars),
                                substitute_minimal(f.rhs(), antecedent, vars));
    case K::Forall: return FoFormula::forall(f.name(), substitute_minimal(f.body(), antecedent, vars));
    case K::Exists: return FoFormula::exists(f.name(), substitute_minimal(f.body(), antecedent, vars));
    default: return f;
  }
}

inline bool occurs_free(const FoFormula& f, const std::string& v) {
  using K = FoFormula::Kind;
  switch (f.kind()) {
    case K::True:
    case K::False: return false;
    case K::Rel:
    case K::Eq: return f.a() == v || f.b() == v;
    case K::Pred: return f.a() == v;
    case K::Not: return occurs_free(f.body(), v);
    case K::Forall:
    case K::Exists: return f.name() != v && occurs_free(f.body(), v);
    default: return occurs_free(f.lhs(), v) || occurs_free(f.rhs(), v);
  }
}

/// Truth-constant elimination, t = t, idempotent & and |, vacuous
/// quantifiers. Bottom-up, one pass.
inline FoFormula simplify(const FoFormula& f) {
  using K = FoFormula::Kind;
  using F = FoFormula;
  switch (f.kind()) {
    case K::Eq: return f.a() == f.b() ? F::truth() : f;
    case K::Not: {
      auto g = simplify(f.body());
      if (g.is(K::True)) return F::falsity();
      if (g.is(K::False)) return F::truth();
      if (g.is(K::Not)) return g.body();
      return F::negation(g);
    }
    case K::And: {
      auto l = simplify(f.lhs()), r = simplify(f.rhs());
      if (l.is(K::False) || r.is(K::False)) return F::falsity();
      if (l.is(K::True)) return r;
      if (r.is(K::True) || l == r) return l;
      return F::conj(l, r);
    }
    case K::Or: {
      auto l = simplify(f.lhs()), r = simplify(f.rhs());
      if (l.is(K::True) || r.is(K::True)) return F::truth();
      if (l.is(K::False)) return r;
      if (r.is(K::False) || l == r) return l;
      return F::disj(l, r);
    }
    case K::Implies: {
      auto l = simplify(f.lhs()), r = simplify(f.rhs());
      if (l.is(K::False) || r.is(K::True) || l == r) return F::truth();
      if (l.is(K::True)) return r;
      if (r.is(K::False)) return simplify(F::negation(l));
      return F::implies(l, r);
    }
    case K::Forall:
    case K::Exists: {
      auto body = simplify(f.body());
      if (body.is(K::True) || body.is(K::False) || !occurs_free(body, f.name())) return body;
      return f.is(K::Forall) ? F::forall(f.name(), body) : F::exists(f.name(), body);
    }
    default: return f;
  }
}

inline bool mentions_pred(const FoFormula& f) {
  using K = FoFormula::Kind;
  switch (f.kind()) {
    case K::Pred: return true;
    case K::True:
    case K::False:
    case K::Rel:
    case K::Eq: return false;
    case K::Not:
    case K::Forall:
    case K::Exists: return mentions_pred(f.body());
    default: return mentions_pred(f.lhs()) || mentions_pred(f.rhs());
  }
}

}  // namespace detail

/// Shape of a simple Sahlqvist implication, or nullopt. Nested implications
/// in the consequent are curried into the antecedent first.
inline std::optional<SahlqvistShape> classify(const Formula& f) {
  if (!f.is(Op::Implies)) return std::nullopt;
  std::vector<Formula> parts{f.lhs()};
  Formula consequent = f.rhs();
  while (consequent.is(Op::Implies)) {
    parts.push_back(consequent.lhs());
    consequent = consequent.rhs();
  }
  SahlqvistShape shape{{}, consequent};
  bool ok = true;
  for (const auto& part : parts) detail::collect_boxed_atoms(part, shape.antecedent, ok);
  if (!ok || !detail::is_positive(consequent) || !metavariables_of(consequent).empty()) return std::nullopt;
  for (const auto& l : labels_of(f)) {
    if (l.has_agent_variable()) return std::nullopt;
  }
  return shape;
}

/// Computed correspondent; throws NotInFragment outside the fragment. The
/// result has the single free variable x.
inline FoFormula correspondent(const Formula& f) {
  auto shape = classify(f);
  if (!shape) throw NotInFragment(render(f) + " is not a simple Sahlqvist implication");
  detail::VarSupply vars;
  const FoFormula st = detail::standard_translation(shape->consequent, kEvalVar, vars);
  FoFormula out = detail::simplify(detail::substitute_minimal(st, shape->antecedent, vars));
  if (detail::mentions_pred(out)) throw std::logic_error("second-order variable survived substitution");
  return out;
}

/// Schema with metavariables replaced by p, q, r, ... (in name order) and the
/// agent variable by `agent`.
inline Formula specialize(const Formula& schema, AgentId agent = AgentId{1}) {
  std::map<std::string, Formula> letters;
  const char* names[] = {"p", "q", "r", "s", "t", "u"};
  std::size_t k = 0;
  for (const auto& v : metavariables_of(schema)) {
    letters.emplace(v, k < 6 ? atom(names[k]) : atom("p" + std::to_string(k)));
    ++k;
  }
  return instantiate(schema, letters, agent);
}

namespace fo {

inline FoFormula reflexive(ModalLabel l) { return FoFormula::rel(l, kEvalVar, kEvalVar); }
inline FoFormula serial(ModalLabel l) { return FoFormula::exists("z", FoFormula::rel(l, kEvalVar, "z")); }
inline FoFormula transitive(ModalLabel l) {
  using F = FoFormula;
  return F::forall("z", F::implies(F::rel(l, kEvalVar, "z"),
                                   F::forall("z'", F::implies(F::rel(l, "z", "z'"), F::rel(l, kEvalVar, "z'")))));
}
inline FoFormula euclidean(ModalLabel l) {
  using F = FoFormula;
  return F::forall("z", F::implies(F::rel(l, kEvalVar, "z"),
                                   F::forall("z'", F::implies(F::rel(l, kEvalVar, "z'"), F::rel(l, "z", "z'")))));
}

}  // namespace fo

/// Known correspondents for out-of-fragment schemas the presets use,
/// matched against the formula (schema or instance).
inline std::optional<FoFormula> known_correspondent(const Formula& f) {
  for (ModalKind k : {ModalKind::Knowledge, ModalKind::Belief}) {
    const struct {
      const char* schema;
      std::function<FoFormula(ModalLabel)> condition;
    } table[] = {
        {schemas::dist(k), [](ModalLabel) { return FoFormula::truth(); }},
        {schemas::five(k), fo::euclidean},
    };
    for (const auto& row : table) {
      const Formula schema = parse(row.schema);
      auto sigma = match_schema(schema, f);
      if (!sigma) continue;
      bool letters_only = true;
      for (const auto& [name, value] : sigma->formulas) letters_only = letters_only && value.is(Op::Atom);
      if (!letters_only) continue;
      return row.condition(ModalLabel{k, sigma->agent.value_or(AgentId{1})});
    }
  }
  return std::nullopt;
}

/// Computed correspondent when in the fragment, else the known one.
inline std::optional<FoFormula> frame_correspondent(const Formula& f) {
  const Formula g = is_concrete(f) ? f : specialize(f);
  if (classify(g)) return correspondent(g);
  return known_correspondent(g);
}

/// Universal closure over x of `c`, evaluated on `fr` by enumeration.
/// Throws invalid_argument for labels the frame lacks, unbound variables and
/// leftover predicate symbols.
inline bool fo_eval(const Frame& fr, const FoFormula& c) {
  using K = FoFormula::Kind;
  std::map<std::string, World> env;
  auto lookup = [&](const std::string& v) {
    auto it = env.find(v);
    if (it == env.end()) throw std::invalid_argument("unbound variable '" + v + "'");
    return it->second;
  };
  std::function<bool(const FoFormula&)> go = [&](const FoFormula& f) -> bool {
    switch (f.kind()) {
      case K::True: return true;
      case K::False: return false;
      case K::Rel:
        if (!fr.has_label(f.label())) throw std::invalid_argument("unbound label " + f.label().name());
        return fr.edge(f.label(), lookup(f.a()), lookup(f.b()));
      case K::Eq: return lookup(f.a()) == lookup(f.b());
      case K::Pred: throw std::invalid_argument("predicate P_" + f.name() + " left in a frame condition");
      case K::Not: return !go(f.body());
      case K::And: return go(f.lhs()) && go(f.rhs());
      case K::Or: return go(f.lhs()) || go(f.rhs());
      case K::Implies: return !go(f.lhs()) || go(f.rhs());
      case K::Forall:
      case K::Exists: {
        const bool universal = f.is(K::Forall);
        auto saved = env.find(f.name()) == env.end() ? std::nullopt : std::optional<World>(env[f.name()]);
        bool result = universal;
        for (World w = 0; w < fr.size(); ++w) {
          env[f.name()] = w;
          if (go(f.body()) != universal) {
            result = !universal;
            break;
          }
        }
        if (saved) {
          env[f.name()] = *saved;
        } else {
          env.erase(f.name());
        }
        return result;
      }
    }
    return false;
  };
  return go(FoFormula::forall(kEvalVar, c));
}

}  // namespace lobsafe
