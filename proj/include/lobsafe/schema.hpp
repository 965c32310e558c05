#pragma once

// Axiom schemas: formulas whose uppercase atoms (X, Y, ...) are formula
// metavariables and whose modal labels may use the agent metavariable `i`.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "lobsafe/formula.hpp"
#include "lobsafe/parser.hpp"

namespace lobsafe {

struct Substitution {
  std::map<std::string, Formula> formulas;
  std::optional<AgentId> agent;

  friend bool operator==(const Substitution&, const Substitution&) = default;
};

class MissingBinding : public std::invalid_argument {
 public:
  explicit MissingBinding(const std::string& what)
      : std::invalid_argument("missing binding for metavariable " + what) {}
};

namespace detail {

inline Formula rebuild(const Formula& f, const Formula& lhs, const Formula& rhs) {
  switch (f.op()) {
    case Op::Not:
      return Formula::negation(lhs);
    case Op::And:
      return Formula::conj(lhs, rhs);
    case Op::Or:
      return Formula::disj(lhs, rhs);
    case Op::Implies:
      return Formula::implies(lhs, rhs);
    case Op::Iff:
      return Formula::iff(lhs, rhs);
    case Op::Box:
      return Formula::box(f.label(), lhs);
    case Op::Diamond:
      return Formula::diamond(f.label(), lhs);
    default:
      return f;
  }
}

inline bool match_into(const Formula& schema, const Formula& target, Substitution& sigma) {
  if (schema.is_metavariable()) {
    auto [it, inserted] = sigma.formulas.try_emplace(schema.name(), target);
    return inserted || it->second == target;
  }
  if (schema.op() != target.op()) return false;
  switch (schema.op()) {
    case Op::Atom:
      return schema.name() == target.name();
    case Op::Bottom:
    case Op::Top:
      return true;
    case Op::Box:
    case Op::Diamond: {
      const ModalLabel& sl = schema.label();
      const ModalLabel& tl = target.label();
      if (sl.kind != tl.kind) return false;
      if (sl.has_agent_variable()) {
        if (sigma.agent && *sigma.agent != tl.agent) return false;
        sigma.agent = tl.agent;
      } else if (sl.agent != tl.agent) {
        return false;
      }
      return match_into(schema.lhs(), target.lhs(), sigma);
    }
    case Op::Not:
      return match_into(schema.lhs(), target.lhs(), sigma);
    default:
      return match_into(schema.lhs(), target.lhs(), sigma) &&
             match_into(schema.rhs(), target.rhs(), sigma);
  }
}

}  // namespace detail

/// Uniformly replaces metavariables by the bound formulas and the agent
/// metavariable by `agent`. Throws MissingBinding when a metavariable that
/// occurs in the schema has no binding.
inline Formula instantiate(const Formula& schema, const Substitution& sigma) {
  switch (schema.op()) {
    case Op::Atom: {
      if (!schema.is_metavariable()) return schema;
      auto it = sigma.formulas.find(schema.name());
      if (it == sigma.formulas.end()) throw MissingBinding(schema.name());
      return it->second;
    }
    case Op::Bottom:
    case Op::Top:
      return schema;
    case Op::Box:
    case Op::Diamond: {
      ModalLabel l = schema.label();
      if (l.has_agent_variable()) {
        if (!sigma.agent) throw MissingBinding("i (agent)");
        l.agent = *sigma.agent;
      }
      Formula body = instantiate(schema.lhs(), sigma);
      return schema.is(Op::Box) ? Formula::box(l, body) : Formula::diamond(l, body);
    }
    case Op::Not:
      return Formula::negation(instantiate(schema.lhs(), sigma));
    default:
      return detail::rebuild(schema, instantiate(schema.lhs(), sigma),
                             instantiate(schema.rhs(), sigma));
  }
}

inline Formula instantiate(const Formula& schema, const std::map<std::string, Formula>& formulas,
                           std::optional<AgentId> agent = std::nullopt) {
  return instantiate(schema, Substitution{formulas, agent});
}

/// First-order matching of a schema against a formula. Metavariables occurring
/// in `target` are treated as constants. Returns σ with
/// instantiate(schema, σ) == target, or nullopt.
inline std::optional<Substitution> match_schema(const Formula& schema, const Formula& target) {
  Substitution sigma;
  if (!detail::match_into(schema, target, sigma)) return std::nullopt;
  return sigma;
}

/// True when the two schemas differ only by a bijective renaming of their
/// formula metavariables (the agent metavariable must stay a variable).
inline bool is_variant(const Formula& a, const Formula& b) {
  auto one_way = [](const Formula& x, const Formula& y) {
    auto sigma = match_schema(x, y);
    if (!sigma) return false;
    if (sigma->agent && !sigma->agent->is_variable()) return false;
    std::set<std::string> images;
    for (const auto& [name, value] : sigma->formulas) {
      if (!value.is_metavariable() || !images.insert(value.name()).second) return false;
    }
    return true;
  };
  return one_way(a, b) && one_way(b, a);
}

/// Replaces proposition letters (not metavariables) by formulas.
inline Formula substitute_atoms(const Formula& f, const std::map<std::string, Formula>& map) {
  switch (f.op()) {
    case Op::Atom: {
      if (f.is_metavariable()) return f;
      auto it = map.find(f.name());
      return it == map.end() ? f : it->second;
    }
    case Op::Bottom:
    case Op::Top:
      return f;
    case Op::Not:
    case Op::Box:
    case Op::Diamond:
      return detail::rebuild(f, substitute_atoms(f.lhs(), map), f);
    default:
      return detail::rebuild(f, substitute_atoms(f.lhs(), map), substitute_atoms(f.rhs(), map));
  }
}

/// Schema text helper: parse and instantiate in one go.
inline Formula instantiate(std::string_view schema_text, const std::map<std::string, Formula>& formulas,
                           std::optional<AgentId> agent = std::nullopt) {
  return instantiate(parse(schema_text), Substitution{formulas, agent});
}

}  // namespace lobsafe
