#pragma once

// Single-line justification mutations of a proof. Every mutant must be
// rejected by check_proof; a surviving mutant means a line is
// over-justified or the checker is too lenient.

#include <string>
#include <utility>
#include <vector>

#include "lobsafe.hpp"

namespace lobsafe::oracle {

struct Mutant {
  std::size_t line;
  std::string what;
  Proof proof;
};

inline std::vector<Mutant> justification_mutants(const Proof& p, const LogicPreset& logic) {
  std::vector<Mutant> out;
  auto add = [&](std::size_t k, std::string what, Justification j) {
    Proof q = p;
    q.lines[k].justification = std::move(j);
    out.push_back(Mutant{k, std::move(what), std::move(q)});
  };
  auto other_agent = [](ModalLabel l) {
    l.agent = AgentId{l.agent.value + 1};
    return l;
  };
  for (std::size_t k = 0; k < p.lines.size(); ++k) {
    const Justification& j = p.lines[k].justification;
    if (std::holds_alternative<just::Premise>(j)) {
      add(k, "premise -> tautology", just::Tautology{});
      continue;
    }
    add(k, "-> premise", just::Premise{});
    if (!std::holds_alternative<just::Tautology>(j)) add(k, "-> tautology", just::Tautology{});
    if (const auto* ax = std::get_if<just::AxiomInstance>(&j)) {
      for (const auto& s : logic.schemas) {
        if (s.name != ax->schema) add(k, "axiom " + ax->schema + " -> " + s.name, just::AxiomInstance{s.name, ax->subst});
      }
    }
    if (const auto* mp = std::get_if<just::ModusPonens>(&j)) {
      add(k, "mp swapped", just::ModusPonens{mp->implication, mp->antecedent});
    }
    if (const auto* n = std::get_if<just::Necessitation>(&j)) {
      add(k, "nec agent", just::Necessitation{n->line, other_agent(n->label)});
    }
    if (const auto* r = std::get_if<just::RK>(&j)) {
      add(k, "rk agent", just::RK{r->lines, other_agent(r->label)});
      add(k, "rk no refs", just::RK{{}, r->label});
      for (std::size_t d = 0; r->lines.size() > 1 && d < r->lines.size(); ++d) {
        auto refs = r->lines;
        refs.erase(refs.begin() + static_cast<std::ptrdiff_t>(d));
        add(k, "rk drop ref " + std::to_string(d + 1), just::RK{refs, r->label});
      }
    }
    if (const auto* t = std::get_if<just::TautConsequence>(&j)) {
      for (std::size_t d = 0; d < t->lines.size(); ++d) {
        auto refs = t->lines;
        refs.erase(refs.begin() + static_cast<std::ptrdiff_t>(d));
        add(k, "taut drop ref " + std::to_string(d + 1), just::TautConsequence{refs});
      }
    }
  }
  return out;
}

/// Appends necessitation of a premise-dependent line: the last one in the
/// proof, or a fresh premise when the proof has none.
inline Proof necessitate_premise_dependent(const Proof& p) {
  Proof q = p;
  const auto dep = premise_dependency(q);
  std::size_t target = q.lines.size();
  for (std::size_t k = q.lines.size(); k-- > 0;) {
    if (dep[k]) {
      target = k;
      break;
    }
  }
  if (target == q.lines.size()) {
    const Formula fresh = parse("r");
    q.premises.push_back(fresh);
    q.lines.push_back(ProofLine{fresh, just::Premise{}, ""});
    target = q.lines.size() - 1;
  }
  const ModalLabel l = [&] {
    const LogicPreset logic = preset(q.preset);
    return logic.has_rule(Rule::NecB) ? ModalLabel::belief(1) : ModalLabel::knowledge(1);
  }();
  q.lines.push_back(ProofLine{box(l, q.lines[target].formula), just::Necessitation{target, l}, ""});
  q.conclusion = q.lines.back().formula;
  return q;
}

}  // namespace lobsafe::oracle
