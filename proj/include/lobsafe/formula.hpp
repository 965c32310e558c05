#pragma once

// Modal-propositional formulas over agent-indexed knowledge and belief
// operators. Formulas are immutable trees with shared structure; copying a
// Formula is a reference-count bump.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace lobsafe {

struct AgentId {
  std::uint32_t value = 0;

  /// Reserved id standing for the agent metavariable `i` in schemas.
  static constexpr std::uint32_t kVariable = UINT32_MAX;

  static constexpr AgentId variable() { return AgentId{kVariable}; }
  constexpr bool is_variable() const { return value == kVariable; }

  friend constexpr auto operator<=>(AgentId, AgentId) = default;
};

enum class ModalKind : std::uint8_t { Knowledge, Belief };

inline char kind_letter(ModalKind k) { return k == ModalKind::Knowledge ? 'K' : 'B'; }

struct ModalLabel {
  ModalKind kind = ModalKind::Knowledge;
  AgentId agent;

  static constexpr ModalLabel knowledge(std::uint32_t agent) {
    return {ModalKind::Knowledge, AgentId{agent}};
  }
  static constexpr ModalLabel belief(std::uint32_t agent) {
    return {ModalKind::Belief, AgentId{agent}};
  }

  bool has_agent_variable() const { return agent.is_variable(); }

  /// Compact name used by the file formats: "K1", "B2", "Ki".
  std::string name() const {
    std::string out(1, kind_letter(kind));
    out += agent.is_variable() ? std::string("i") : std::to_string(agent.value);
    return out;
  }

  /// Inverse of name(). Throws std::invalid_argument on malformed input.
  static ModalLabel from_name(const std::string& text) {
    if (text.size() < 2 || (text[0] != 'K' && text[0] != 'B')) {
      throw std::invalid_argument("bad modal label '" + text + "' (expected e.g. K1 or B1)");
    }
    ModalLabel l;
    l.kind = text[0] == 'K' ? ModalKind::Knowledge : ModalKind::Belief;
    const std::string rest = text.substr(1);
    if (rest == "i") {
      l.agent = AgentId::variable();
      return l;
    }
    std::uint64_t v = 0;
    for (char c : rest) {
      if (c < '0' || c > '9') {
        throw std::invalid_argument("bad modal label '" + text + "' (expected e.g. K1 or B1)");
      }
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
      if (v >= AgentId::kVariable) throw std::invalid_argument("agent id out of range in '" + text + "'");
    }
    l.agent = AgentId{static_cast<std::uint32_t>(v)};
    return l;
  }

  friend constexpr auto operator<=>(const ModalLabel&, const ModalLabel&) = default;
};

enum class Op : std::uint8_t { Atom, Bottom, Top, Not, And, Or, Implies, Iff, Box, Diamond };

inline bool is_binary(Op op) {
  return op == Op::And || op == Op::Or || op == Op::Implies || op == Op::Iff;
}
inline bool is_modal(Op op) { return op == Op::Box || op == Op::Diamond; }

class Formula {
 public:
  /// Default-constructed formula is Bottom.
  Formula() : node_(bottom_node()) {}

  static Formula atom(std::string name) {
    if (name.empty()) throw std::invalid_argument("atom name must be nonempty");
    return Formula(std::make_shared<const Node>(Node{Op::Atom, std::move(name), {}, {}, {}}));
  }
  static Formula bottom() { return Formula(bottom_node()); }
  static Formula top() {
    static const auto node = std::make_shared<const Node>(Node{Op::Top, {}, {}, {}, {}});
    return Formula(node);
  }
  static Formula negation(Formula f) { return unary(Op::Not, {}, std::move(f)); }
  static Formula conj(Formula a, Formula b) { return binary(Op::And, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(Op::Or, std::move(a), std::move(b)); }
  static Formula implies(Formula a, Formula b) {
    return binary(Op::Implies, std::move(a), std::move(b));
  }
  static Formula iff(Formula a, Formula b) { return binary(Op::Iff, std::move(a), std::move(b)); }
  static Formula box(ModalLabel l, Formula f) { return unary(Op::Box, l, std::move(f)); }
  static Formula diamond(ModalLabel l, Formula f) { return unary(Op::Diamond, l, std::move(f)); }

  Op op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  const ModalLabel& label() const { return node_->label; }
  /// Operand of Not / Box / Diamond, or left side of a binary connective.
  const Formula& lhs() const { return *node_->lhs; }
  const Formula& rhs() const { return *node_->rhs; }
  const Formula& operand() const { return lhs(); }

  bool is(Op o) const { return op() == o; }

  /// Metavariables are atoms whose name starts with an uppercase letter.
  bool is_metavariable() const {
    return op() == Op::Atom && !name().empty() && name()[0] >= 'A' && name()[0] <= 'Z';
  }

  std::size_t size() const {
    switch (op()) {
      case Op::Atom:
      case Op::Bottom:
      case Op::Top:
        return 1;
      case Op::Not:
      case Op::Box:
      case Op::Diamond:
        return 1 + lhs().size();
      default:
        return 1 + lhs().size() + rhs().size();
    }
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    return compare(a, b) == std::strong_ordering::equal;
  }
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    return compare(a, b);
  }

 private:
  struct Node {
    Op op;
    std::string name;
    ModalLabel label;
    std::shared_ptr<const Formula> lhs;
    std::shared_ptr<const Formula> rhs;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::shared_ptr<const Node> bottom_node() {
    static const auto node = std::make_shared<const Node>(Node{Op::Bottom, {}, {}, {}, {}});
    return node;
  }
  static Formula unary(Op op, ModalLabel l, Formula f) {
    return Formula(std::make_shared<const Node>(
        Node{op, {}, l, std::make_shared<const Formula>(std::move(f)), {}}));
  }
  static Formula binary(Op op, Formula a, Formula b) {
    return Formula(std::make_shared<const Node>(Node{op, {}, {},
                                                     std::make_shared<const Formula>(std::move(a)),
                                                     std::make_shared<const Formula>(std::move(b))}));
  }

  static std::strong_ordering compare(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.op() <=> b.op(); c != 0) return c;
    switch (a.op()) {
      case Op::Atom:
        return a.name() <=> b.name();
      case Op::Bottom:
      case Op::Top:
        return std::strong_ordering::equal;
      case Op::Not:
        return compare(a.lhs(), b.lhs());
      case Op::Box:
      case Op::Diamond:
        if (auto c = a.label() <=> b.label(); c != 0) return c;
        return compare(a.lhs(), b.lhs());
      default:
        if (auto c = compare(a.lhs(), b.lhs()); c != 0) return c;
        return compare(a.rhs(), b.rhs());
    }
  }

  std::shared_ptr<const Node> node_;
};

// Short builders, mostly for tests and the proof library.
inline Formula atom(std::string name) { return Formula::atom(std::move(name)); }
inline Formula neg(Formula f) { return Formula::negation(std::move(f)); }
inline Formula conj(Formula a, Formula b) { return Formula::conj(std::move(a), std::move(b)); }
inline Formula disj(Formula a, Formula b) { return Formula::disj(std::move(a), std::move(b)); }
inline Formula implies(Formula a, Formula b) { return Formula::implies(std::move(a), std::move(b)); }
inline Formula iff(Formula a, Formula b) { return Formula::iff(std::move(a), std::move(b)); }
inline Formula box(ModalLabel l, Formula f) { return Formula::box(l, std::move(f)); }
inline Formula diamond(ModalLabel l, Formula f) { return Formula::diamond(l, std::move(f)); }

/// Calls `fn` on every subformula in pre-order.
inline void for_each_subformula(const Formula& f, const std::function<void(const Formula&)>& fn) {
  fn(f);
  switch (f.op()) {
    case Op::Atom:
    case Op::Bottom:
    case Op::Top:
      return;
    case Op::Not:
    case Op::Box:
    case Op::Diamond:
      for_each_subformula(f.lhs(), fn);
      return;
    default:
      for_each_subformula(f.lhs(), fn);
      for_each_subformula(f.rhs(), fn);
  }
}

/// Names of the proposition letters in f (metavariables excluded).
inline std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  for_each_subformula(f, [&](const Formula& g) {
    if (g.is(Op::Atom) && !g.is_metavariable()) out.insert(g.name());
  });
  return out;
}

inline std::set<std::string> metavariables_of(const Formula& f) {
  std::set<std::string> out;
  for_each_subformula(f, [&](const Formula& g) {
    if (g.is_metavariable()) out.insert(g.name());
  });
  return out;
}

inline std::set<ModalLabel> labels_of(const Formula& f) {
  std::set<ModalLabel> out;
  for_each_subformula(f, [&](const Formula& g) {
    if (is_modal(g.op())) out.insert(g.label());
  });
  return out;
}

/// True when f has no metavariable atoms and no agent-variable labels.
inline bool is_concrete(const Formula& f) {
  bool ok = true;
  for_each_subformula(f, [&](const Formula& g) {
    if (g.is_metavariable() || (is_modal(g.op()) && g.label().has_agent_variable())) ok = false;
  });
  return ok;
}

}  // namespace lobsafe
