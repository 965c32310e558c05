#pragma once

// Hilbert-style derivations and their line-by-line checker.
//
// Line references are zero-based in memory and one-based in the JSON file
// format and in verdicts, matching how derivations are usually numbered.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "lobsafe/formula.hpp"
#include "lobsafe/parser.hpp"
#include "lobsafe/presets.hpp"
#include "lobsafe/propositional.hpp"
#include "lobsafe/schema.hpp"

namespace lobsafe {

namespace just {

struct Premise {
  friend bool operator==(const Premise&, const Premise&) = default;
};
struct Tautology {
  friend bool operator==(const Tautology&, const Tautology&) = default;
};
/// Without a substitution the line must match the schema syntactically; with
/// one, the instance only has to be propositionally equivalent to the line.
struct AxiomInstance {
  std::string schema;
  std::optional<Substitution> subst;
  friend bool operator==(const AxiomInstance&, const AxiomInstance&) = default;
};
/// Line `implication` must read (line `antecedent`) -> (this line).
struct ModusPonens {
  std::size_t antecedent;
  std::size_t implication;
  friend bool operator==(const ModusPonens&, const ModusPonens&) = default;
};
struct Necessitation {
  std::size_t line;
  ModalLabel label;
  friend bool operator==(const Necessitation&, const Necessitation&) = default;
};
/// From l(a1), ..., l(an) and a tautology (a1 & ... & an) -> b, infer l(b).
struct RK {
  std::vector<std::size_t> lines;
  ModalLabel label;
  friend bool operator==(const RK&, const RK&) = default;
};
struct TautConsequence {
  std::vector<std::size_t> lines;
  friend bool operator==(const TautConsequence&, const TautConsequence&) = default;
};

}  // namespace just

using Justification = std::variant<just::Premise, just::Tautology, just::AxiomInstance,
                                   just::ModusPonens, just::Necessitation, just::RK,
                                   just::TautConsequence>;

struct ProofLine {
  Formula formula;
  Justification justification;
  /// Free-form annotation, carried through the file format.
  std::string note;
};

struct Proof {
  std::string preset;
  std::vector<Formula> premises;
  std::vector<ProofLine> lines;
  Formula conclusion;
};

enum class InvalidReason {
  EmptyProof,
  NotConcrete,
  BadReference,
  NotAPremise,
  NotATautology,
  UnknownSchema,
  SchemaMismatch,
  RuleUnavailable,
  ModusPonensMismatch,
  NecessitationMismatch,
  NecessitationOnPremise,
  RKMismatch,
  NotATautologicalConsequence,
  ConclusionMismatch,
};

inline std::string to_string(InvalidReason r) {
  switch (r) {
    case InvalidReason::EmptyProof: return "empty-proof";
    case InvalidReason::NotConcrete: return "not-concrete";
    case InvalidReason::BadReference: return "bad-reference";
    case InvalidReason::NotAPremise: return "not-a-premise";
    case InvalidReason::NotATautology: return "not-a-tautology";
    case InvalidReason::UnknownSchema: return "unknown-schema";
    case InvalidReason::SchemaMismatch: return "schema-mismatch";
    case InvalidReason::RuleUnavailable: return "rule-unavailable";
    case InvalidReason::ModusPonensMismatch: return "mp-mismatch";
    case InvalidReason::NecessitationMismatch: return "nec-mismatch";
    case InvalidReason::NecessitationOnPremise: return "nec-on-premise";
    case InvalidReason::RKMismatch: return "rk-mismatch";
    case InvalidReason::NotATautologicalConsequence: return "not-a-tautological-consequence";
    case InvalidReason::ConclusionMismatch: return "conclusion-mismatch";
  }
  return "unknown";
}

struct ProofVerdict {
  bool valid = true;
  /// One-based number of the first failing line (0 when not line-specific).
  std::size_t line = 0;
  InvalidReason reason = InvalidReason::EmptyProof;
  std::string message;

  static ProofVerdict ok() { return {}; }
  static ProofVerdict invalid(std::size_t line_index, InvalidReason r, std::string msg) {
    return ProofVerdict{false, line_index + 1, r, std::move(msg)};
  }
};

namespace detail {

inline std::vector<std::size_t> refs_of(const Justification& j) {
  return std::visit(
      [](const auto& x) -> std::vector<std::size_t> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, just::ModusPonens>) {
          return {x.antecedent, x.implication};
        } else if constexpr (std::is_same_v<T, just::Necessitation>) {
          return {x.line};
        } else if constexpr (std::is_same_v<T, just::RK> || std::is_same_v<T, just::TautConsequence>) {
          return x.lines;
        } else {
          return {};
        }
      },
      j);
}

inline Formula conjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula out = fs.front();
  for (std::size_t k = 1; k < fs.size(); ++k) out = conj(out, fs[k]);
  return out;
}

}  // namespace detail

/// For every line, whether it depends on the premise `premise` (or on any
/// premise when `premise` is nullopt).
inline std::vector<bool> premise_dependency(const Proof& p, const std::optional<Formula>& premise = std::nullopt) {
  std::vector<bool> dep(p.lines.size(), false);
  for (std::size_t k = 0; k < p.lines.size(); ++k) {
    const auto& line = p.lines[k];
    if (std::holds_alternative<just::Premise>(line.justification)) {
      dep[k] = !premise || line.formula == *premise;
      continue;
    }
    if (std::holds_alternative<just::Necessitation>(line.justification)) continue;
    for (std::size_t r : detail::refs_of(line.justification)) {
      if (r < k && dep[r]) dep[k] = true;
    }
  }
  return dep;
}

/// Checks every line against its justification and the preset; reports the
/// first failing line.
inline ProofVerdict check_proof(const Proof& p, const LogicPreset& logic) {
  using R = InvalidReason;
  if (p.lines.empty()) return ProofVerdict{false, 0, R::EmptyProof, "proof has no lines"};
  for (const auto& prem : p.premises) {
    if (!is_concrete(prem)) return ProofVerdict{false, 0, R::NotConcrete, "premise " + render(prem) + " is a schema"};
  }
  std::vector<bool> depends(p.lines.size(), false);
  auto formula = [&](std::size_t k) -> const Formula& { return p.lines[k].formula; };

  for (std::size_t k = 0; k < p.lines.size(); ++k) {
    const Formula& f = formula(k);
    if (!is_concrete(f)) return ProofVerdict::invalid(k, R::NotConcrete, "line is a schema, not a formula");
    for (std::size_t r : detail::refs_of(p.lines[k].justification)) {
      if (r >= k) {
        return ProofVerdict::invalid(k, R::BadReference,
                                     "reference to line " + std::to_string(r + 1) + " does not precede it");
      }
    }
    std::optional<ProofVerdict> failure = std::visit(
        [&](const auto& j) -> std::optional<ProofVerdict> {
          using T = std::decay_t<decltype(j)>;
          if constexpr (std::is_same_v<T, just::Premise>) {
            if (std::find(p.premises.begin(), p.premises.end(), f) == p.premises.end()) {
              return ProofVerdict::invalid(k, R::NotAPremise, render(f) + " is not a listed premise");
            }
            depends[k] = true;
          } else if constexpr (std::is_same_v<T, just::Tautology>) {
            if (!is_tautology(f)) return ProofVerdict::invalid(k, R::NotATautology, render(f) + " is not a tautology");
          } else if constexpr (std::is_same_v<T, just::AxiomInstance>) {
            const NamedSchema* s = logic.find_schema(j.schema);
            if (!s) {
              return ProofVerdict::invalid(k, R::UnknownSchema,
                                           "preset " + logic.name + " has no schema '" + j.schema + "'");
            }
            if (j.subst) {
              Formula inst;
              try {
                inst = instantiate(s->formula, *j.subst);
              } catch (const MissingBinding& e) {
                return ProofVerdict::invalid(k, R::SchemaMismatch, e.what());
              }
              if (!is_concrete(inst) || !(inst == f || equivalent(inst, f))) {
                return ProofVerdict::invalid(k, R::SchemaMismatch,
                                             render(f) + " is not equivalent to the instance " + render(inst));
              }
            } else if (!match_schema(s->formula, f)) {
              return ProofVerdict::invalid(k, R::SchemaMismatch, render(f) + " is not an instance of " + j.schema);
            }
          } else if constexpr (std::is_same_v<T, just::ModusPonens>) {
            if (!logic.has_rule(Rule::ModusPonens)) {
              return ProofVerdict::invalid(k, R::RuleUnavailable, "modus ponens is not a rule of " + logic.name);
            }
            if (formula(j.implication) != implies(formula(j.antecedent), f)) {
              return ProofVerdict::invalid(k, R::ModusPonensMismatch,
                                           "line " + std::to_string(j.implication + 1) + " is not (line " +
                                               std::to_string(j.antecedent + 1) + ") -> (this line)");
            }
            depends[k] = depends[j.antecedent] || depends[j.implication];
          } else if constexpr (std::is_same_v<T, just::Necessitation>) {
            if (!logic.has_rule(necessitation_rule(j.label.kind))) {
              return ProofVerdict::invalid(k, R::RuleUnavailable,
                                           "necessitation for " + j.label.name() + " is not a rule of " + logic.name);
            }
            if (f != box(j.label, formula(j.line))) {
              return ProofVerdict::invalid(k, R::NecessitationMismatch,
                                           "expected " + render(box(j.label, formula(j.line))));
            }
            if (depends[j.line]) {
              return ProofVerdict::invalid(k, R::NecessitationOnPremise,
                                           "line " + std::to_string(j.line + 1) + " depends on a premise");
            }
          } else if constexpr (std::is_same_v<T, just::RK>) {
            if (!logic.has_rule(Rule::RK) || !logic.has_rule(necessitation_rule(j.label.kind))) {
              return ProofVerdict::invalid(k, R::RuleUnavailable,
                                           "RK for " + j.label.name() + " is not available in " + logic.name);
            }
            if (!f.is(Op::Box) || f.label() != j.label) {
              return ProofVerdict::invalid(k, R::RKMismatch, "RK concludes a " + j.label.name() + "-box");
            }
            std::vector<Formula> bodies;
            for (std::size_t r : j.lines) {
              const Formula& g = formula(r);
              if (!g.is(Op::Box) || g.label() != j.label) {
                return ProofVerdict::invalid(k, R::RKMismatch,
                                             "line " + std::to_string(r + 1) + " is not a " + j.label.name() + "-box");
              }
              bodies.push_back(g.operand());
              depends[k] = depends[k] || depends[r];
            }
            if (!entails(bodies, f.operand())) {
              return ProofVerdict::invalid(k, R::RKMismatch,
                                           "boxed bodies do not tautologically imply " + render(f.operand()));
            }
          } else {
            std::vector<Formula> from;
            for (std::size_t r : j.lines) {
              from.push_back(formula(r));
              depends[k] = depends[k] || depends[r];
            }
            if (!entails(from, f)) {
              return ProofVerdict::invalid(k, R::NotATautologicalConsequence,
                                           render(f) + " does not follow tautologically from the cited lines");
            }
          }
          return std::nullopt;
        },
        p.lines[k].justification);
    if (failure) return *failure;
  }
  if (p.conclusion != p.lines.back().formula) {
    return ProofVerdict::invalid(p.lines.size() - 1, InvalidReason::ConclusionMismatch,
                                 "last line differs from the stated conclusion " + render(p.conclusion));
  }
  return ProofVerdict::ok();
}

/// Checks against the built-in preset named in the proof.
inline ProofVerdict check_proof(const Proof& p) { return check_proof(p, preset(p.preset)); }

// ---------------------------------------------------------------------------
// Proof transformations used to assemble larger derivations from lemmas.

/// Uniform substitution of proposition letters through every line,
/// premise, axiom substitution and the conclusion. Preserves validity.
inline Proof substitute(const Proof& p, const std::map<std::string, Formula>& map) {
  Proof out{p.preset, {}, {}, substitute_atoms(p.conclusion, map)};
  for (const auto& f : p.premises) out.premises.push_back(substitute_atoms(f, map));
  for (const auto& line : p.lines) {
    Justification j = line.justification;
    if (auto* ax = std::get_if<just::AxiomInstance>(&j); ax && ax->subst) {
      for (auto& [name, value] : ax->subst->formulas) value = substitute_atoms(value, map);
    }
    out.lines.push_back(ProofLine{substitute_atoms(line.formula, map), std::move(j), line.note});
  }
  return out;
}

/// Deduction theorem: turns a derivation of C from premises Γ ∪ {A} into a
/// derivation of A -> C from Γ. Requires that necessitation is never
/// applied to a line depending on A (check_proof enforces that anyway).
/// Boxed reasoning over A-dependent lines is re-derived with the preset's
/// distribution schema for the label.
inline Proof discharge(const Proof& p, const Formula& assumption, const LogicPreset& logic) {
  const auto dep = premise_dependency(p, assumption);
  Proof out{p.preset, {}, {}, implies(assumption, p.conclusion)};
  for (const auto& f : p.premises) {
    if (f != assumption) out.premises.push_back(f);
  }
  std::vector<std::size_t> where(p.lines.size());
  auto emit = [&](Formula f, Justification j, std::string note = {}) {
    out.lines.push_back(ProofLine{std::move(f), std::move(j), std::move(note)});
    return out.lines.size() - 1;
  };
  auto remap = [&](const std::vector<std::size_t>& refs) {
    std::vector<std::size_t> out;
    for (std::size_t r : refs) out.push_back(where[r]);
    return out;
  };
  // Like remap, but drops references to the assumption itself: its image
  // A -> A contributes nothing to a tautological step.
  auto remap_support = [&](const std::vector<std::size_t>& refs) {
    std::vector<std::size_t> out;
    for (std::size_t r : refs) {
      const bool is_assumption =
          std::holds_alternative<just::Premise>(p.lines[r].justification) && p.lines[r].formula == assumption;
      if (!is_assumption) out.push_back(where[r]);
    }
    return out;
  };

  for (std::size_t k = 0; k < p.lines.size(); ++k) {
    const auto& line = p.lines[k];
    const Formula& f = line.formula;
    if (const auto* nec = std::get_if<just::Necessitation>(&line.justification); nec && nec->line < k && dep[nec->line]) {
      throw std::invalid_argument("line " + std::to_string(k + 1) + " necessitates a line that uses the assumption");
    }
    if (!dep[k]) {
      Justification j = line.justification;
      std::visit(
          [&](auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, just::ModusPonens>) {
              x.antecedent = where[x.antecedent];
              x.implication = where[x.implication];
            } else if constexpr (std::is_same_v<T, just::Necessitation>) {
              x.line = where[x.line];
            } else if constexpr (std::is_same_v<T, just::RK> || std::is_same_v<T, just::TautConsequence>) {
              x.lines = remap(x.lines);
            }
          },
          j);
      where[k] = emit(f, std::move(j), line.note);
      continue;
    }
    const Formula target = implies(assumption, f);
    if (std::holds_alternative<just::Premise>(line.justification)) {
      where[k] = emit(target, just::Tautology{}, line.note);
    } else if (const auto* rk = std::get_if<just::RK>(&line.justification)) {
      // l(a1 -> ... -> an -> b) by necessitation, then one distribution
      // instance per antecedent, closed off propositionally.
      const ModalLabel l = rk->label;
      const NamedSchema* dist = logic.find_variant(parse(schemas::dist(l.kind)));
      if (!dist) throw std::invalid_argument("discharge needs a distribution schema for " + l.name());
      std::vector<Formula> bodies;
      for (std::size_t r : rk->lines) bodies.push_back(p.lines[r].formula.operand());
      std::vector<Formula> tails(bodies.size() + 1);
      tails[bodies.size()] = f.operand();
      for (std::size_t m = bodies.size(); m-- > 0;) tails[m] = implies(bodies[m], tails[m + 1]);
      std::vector<std::size_t> support = remap_support(rk->lines);
      const std::size_t taut = emit(tails[0], just::Tautology{});
      support.push_back(emit(box(l, tails[0]), just::Necessitation{taut, l}));
      for (std::size_t m = 0; m < bodies.size(); ++m) {
        // Map the canonical X/Y onto whatever metavariable names the preset uses.
        auto sigma = match_schema(dist->formula, instantiate(schemas::dist(l.kind),
                                                             {{"X", bodies[m]}, {"Y", tails[m + 1]}}, l.agent));
        Formula inst = instantiate(dist->formula, *sigma);
        support.push_back(emit(inst, just::AxiomInstance{dist->name, *sigma}));
      }
      where[k] = emit(target, just::TautConsequence{support}, line.note);
    } else if (std::holds_alternative<just::Necessitation>(line.justification)) {
      throw std::invalid_argument("cannot discharge: necessitation applied to an assumption-dependent line");
    } else {
      where[k] = emit(target, just::TautConsequence{remap_support(detail::refs_of(line.justification))}, line.note);
    }
  }
  if (!dep[p.lines.size() - 1]) {
    emit(out.conclusion, just::TautConsequence{{where[p.lines.size() - 1]}});
  }
  return out;
}

/// Appends `lemma`'s lines to `host`. Lemma premises equal to a formula
/// already derived in `host` are replaced by references to that line;
/// the remaining lemma premises must be premises of `host`. Returns the
/// index of the lemma's last line in `host`.
inline std::size_t splice(Proof& host, const Proof& lemma) {
  std::vector<std::size_t> where(lemma.lines.size());
  const std::size_t host_size = host.lines.size();
  auto find_in_host = [&](const Formula& f) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < host_size; ++k) {
      if (host.lines[k].formula == f) return k;
    }
    return std::nullopt;
  };
  for (std::size_t k = 0; k < lemma.lines.size(); ++k) {
    const auto& line = lemma.lines[k];
    if (std::holds_alternative<just::Premise>(line.justification)) {
      if (auto existing = find_in_host(line.formula)) {
        where[k] = *existing;
        continue;
      }
      if (std::find(host.premises.begin(), host.premises.end(), line.formula) == host.premises.end()) {
        throw std::invalid_argument("lemma premise " + render(line.formula) + " is not available");
      }
    }
    Justification j = line.justification;
    std::visit(
        [&](auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, just::ModusPonens>) {
            x.antecedent = where[x.antecedent];
            x.implication = where[x.implication];
          } else if constexpr (std::is_same_v<T, just::Necessitation>) {
            x.line = where[x.line];
          } else if constexpr (std::is_same_v<T, just::RK> || std::is_same_v<T, just::TautConsequence>) {
            for (auto& r : x.lines) r = where[r];
          }
        },
        j);
    host.lines.push_back(ProofLine{line.formula, std::move(j), line.note});
    where[k] = host.lines.size() - 1;
  }
  return where.back();
}

// ---------------------------------------------------------------------------
// Builder used to write derivations by hand. Each step returns the zero-based
// index of the line it appended; formulas that follow from the cited lines
// (MP, Nec) are computed rather than restated.

class ProofBuilder {
 public:
  ProofBuilder(std::string preset_name, std::vector<Formula> premises) {
    proof_.preset = std::move(preset_name);
    proof_.premises = std::move(premises);
  }

  const Proof& proof() const { return proof_; }
  const Formula& formula(std::size_t line) const { return proof_.lines.at(line).formula; }
  std::size_t size() const { return proof_.lines.size(); }

  std::size_t premise(const Formula& f, std::string note = {}) { return add(f, just::Premise{}, std::move(note)); }
  std::size_t tautology(const Formula& f, std::string note = {}) { return add(f, just::Tautology{}, std::move(note)); }
  std::size_t axiom(const std::string& schema, const Formula& f, std::string note = {}) {
    return add(f, just::AxiomInstance{schema, std::nullopt}, std::move(note));
  }
  std::size_t mp(std::size_t antecedent, std::size_t implication, std::string note = {}) {
    const Formula& imp = formula(implication);
    if (!imp.is(Op::Implies)) throw std::invalid_argument("modus ponens needs an implication");
    return add(imp.rhs(), just::ModusPonens{antecedent, implication}, std::move(note));
  }
  std::size_t nec(std::size_t line, ModalLabel l, std::string note = {}) {
    return add(box(l, formula(line)), just::Necessitation{line, l}, std::move(note));
  }
  std::size_t rk(std::vector<std::size_t> lines, ModalLabel l, const Formula& body, std::string note = {}) {
    return add(box(l, body), just::RK{std::move(lines), l}, std::move(note));
  }
  std::size_t taut_consequence(std::vector<std::size_t> lines, const Formula& f, std::string note = {}) {
    return add(f, just::TautConsequence{std::move(lines)}, std::move(note));
  }
  /// Appends a lemma (see splice) and returns the index of its last line.
  std::size_t lemma(const Proof& l) { return splice(proof_, l); }

  /// Conclusion defaults to the last line.
  Proof build() const {
    Proof out = proof_;
    if (!out.lines.empty()) out.conclusion = out.lines.back().formula;
    return out;
  }

 private:
  std::size_t add(Formula f, Justification j, std::string note) {
    proof_.lines.push_back(ProofLine{std::move(f), std::move(j), std::move(note)});
    return proof_.lines.size() - 1;
  }

  Proof proof_;
};

// ---------------------------------------------------------------------------
// JSON file format
//
//   {"preset": "KD45", "premises": ["..."], "conclusion": "...",
//    "lines": [{"formula": "...", "just": {"kind": "MP", "refs": [1, 2]},
//               "note": "..."}]}
//
// A bare list of lines is also accepted; then the premises are the formulas
// of the Premise lines and the conclusion is the last line.
// Justification kinds: Premise, Tautology, Axiom (schema, optional subst
// and agent), MP (refs [antecedent, implication]), Nec (refs [k], label),
// RK (refs, label), TautConsequence (refs).

inline json justification_to_json(const Justification& j) {
  auto one_based = [](const std::vector<std::size_t>& refs) {
    json out = json::array();
    for (std::size_t r : refs) out.push_back(r + 1);
    return out;
  };
  return std::visit(
      [&](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, just::Premise>) {
          return {{"kind", "Premise"}};
        } else if constexpr (std::is_same_v<T, just::Tautology>) {
          return {{"kind", "Tautology"}};
        } else if constexpr (std::is_same_v<T, just::AxiomInstance>) {
          json out{{"kind", "Axiom"}, {"schema", x.schema}};
          if (x.subst) {
            json s = json::object();
            for (const auto& [name, value] : x.subst->formulas) s[name] = render(value);
            out["subst"] = s;
            if (x.subst->agent) out["agent"] = x.subst->agent->value;
          }
          return out;
        } else if constexpr (std::is_same_v<T, just::ModusPonens>) {
          return {{"kind", "MP"}, {"refs", one_based({x.antecedent, x.implication})}};
        } else if constexpr (std::is_same_v<T, just::Necessitation>) {
          return {{"kind", "Nec"}, {"refs", one_based({x.line})}, {"label", x.label.name()}};
        } else if constexpr (std::is_same_v<T, just::RK>) {
          return {{"kind", "RK"}, {"refs", one_based(x.lines)}, {"label", x.label.name()}};
        } else {
          return {{"kind", "TautConsequence"}, {"refs", one_based(x.lines)}};
        }
      },
      j);
}

/// Short human form, one-based: "MP 2,3", "Nec 5 B1", "Axiom 4_B".
inline std::string describe(const Justification& j) {
  auto refs = [](const std::vector<std::size_t>& rs) {
    std::string out;
    for (std::size_t k = 0; k < rs.size(); ++k) out += (k ? "," : "") + std::to_string(rs[k] + 1);
    return out;
  };
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, just::Premise>) {
          return "Premise";
        } else if constexpr (std::is_same_v<T, just::Tautology>) {
          return "Tautology";
        } else if constexpr (std::is_same_v<T, just::AxiomInstance>) {
          return "Axiom " + x.schema;
        } else if constexpr (std::is_same_v<T, just::ModusPonens>) {
          return "MP " + refs({x.antecedent, x.implication});
        } else if constexpr (std::is_same_v<T, just::Necessitation>) {
          return "Nec " + refs({x.line}) + " " + x.label.name();
        } else if constexpr (std::is_same_v<T, just::RK>) {
          return "RK " + refs(x.lines) + " " + x.label.name();
        } else {
          return "Taut " + refs(x.lines);
        }
      },
      j);
}

inline Justification justification_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw std::invalid_argument("justification needs a string \"kind\"");
  }
  const auto kind = j["kind"].get<std::string>();
  auto refs = [&]() {
    std::vector<std::size_t> out;
    for (const auto& r : j.value("refs", json::array())) {
      if (!r.is_number_integer() || r.get<long long>() <= 0) {
        throw std::invalid_argument("line references are positive integers");
      }
      out.push_back(r.get<std::size_t>() - 1);
    }
    return out;
  };
  auto exactly = [&](std::size_t n) {
    auto r = refs();
    if (r.size() != n) throw std::invalid_argument(kind + " takes exactly " + std::to_string(n) + " reference(s)");
    return r;
  };
  auto label = [&]() {
    if (!j.contains("label")) throw std::invalid_argument(kind + " needs a \"label\"");
    return ModalLabel::from_name(j["label"].get<std::string>());
  };
  if (kind == "Premise") return just::Premise{};
  if (kind == "Tautology") return just::Tautology{};
  if (kind == "Axiom") {
    just::AxiomInstance ax{j.value("schema", std::string{}), std::nullopt};
    if (ax.schema.empty()) throw std::invalid_argument("Axiom needs a \"schema\" name");
    if (j.contains("subst") || j.contains("agent")) {
      Substitution s;
      const json subst = j.value("subst", json::object());
      for (const auto& [name, text] : subst.items()) {
        s.formulas.emplace(name, parse(text.get<std::string>()));
      }
      if (j.contains("agent")) s.agent = AgentId{j["agent"].get<std::uint32_t>()};
      ax.subst = std::move(s);
    }
    return ax;
  }
  if (kind == "MP") {
    auto r = exactly(2);
    return just::ModusPonens{r[0], r[1]};
  }
  if (kind == "Nec") return just::Necessitation{exactly(1)[0], label()};
  if (kind == "RK") return just::RK{refs(), label()};
  if (kind == "TautConsequence") return just::TautConsequence{refs()};
  throw std::invalid_argument("unknown justification kind '" + kind + "'");
}

inline json proof_to_json(const Proof& p) {
  json j;
  j["preset"] = p.preset;
  j["premises"] = json::array();
  for (const auto& f : p.premises) j["premises"].push_back(render(f));
  j["conclusion"] = render(p.conclusion);
  j["lines"] = json::array();
  for (const auto& line : p.lines) {
    json l{{"formula", render(line.formula)}, {"just", justification_to_json(line.justification)}};
    if (!line.note.empty()) l["note"] = line.note;
    j["lines"].push_back(l);
  }
  return j;
}

/// `default_preset` is used when the document does not name one.
inline Proof proof_from_json(const json& j, const std::string& default_preset = {}) {
  const json* lines = nullptr;
  Proof p;
  p.preset = default_preset;
  if (j.is_array()) {
    lines = &j;
  } else if (j.is_object() && j.contains("lines") && j["lines"].is_array()) {
    lines = &j["lines"];
    if (j.contains("preset")) p.preset = j["preset"].get<std::string>();
  } else {
    throw std::invalid_argument("proof file must be a list of lines or an object with \"lines\"");
  }
  for (const auto& l : *lines) {
    if (!l.is_object() || !l.contains("formula") || !l.contains("just")) {
      throw std::invalid_argument("each proof line needs \"formula\" and \"just\"");
    }
    p.lines.push_back(ProofLine{parse(l["formula"].get<std::string>()), justification_from_json(l["just"]),
                                l.value("note", std::string{})});
  }
  if (j.is_object() && j.contains("premises")) {
    for (const auto& f : j["premises"]) p.premises.push_back(parse(f.get<std::string>()));
  } else {
    for (const auto& line : p.lines) {
      if (std::holds_alternative<just::Premise>(line.justification)) p.premises.push_back(line.formula);
    }
  }
  if (j.is_object() && j.contains("conclusion")) {
    p.conclusion = parse(j["conclusion"].get<std::string>());
  } else if (!p.lines.empty()) {
    p.conclusion = p.lines.back().formula;
  }
  return p;
}

}  // namespace lobsafe
