#pragma once

// Löb-safety analysis of a logic preset.
//
// For every modal kind the preset uses, the analyzer establishes the three
// Löb conditions (normality, derivability of 4, reflective sentences) and
// whether the kind's relation is serial or reflexive. 4 is settled in order
// by: a catalog of known derivations, a bounded proof search, and a
// countermodel search over frames that validate every schema of the preset.
// Derivations are only reported after check_proof accepts them; countermodels
// only after an independent re-verification.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lobsafe/countermodel.hpp"
#include "lobsafe/kripke_io.hpp"
#include "lobsafe/parser.hpp"
#include "lobsafe/presets.hpp"
#include "lobsafe/proof.hpp"

namespace lobsafe {

enum class Verdict { Crashes, LoebSafe, Unknown };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Crashes: return "Crashes";
    case Verdict::LoebSafe: return "LoebSafe";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

struct Derivation {
  /// "catalog:4", "catalog:T+5", "catalog:CB+KB", "catalog:OB+KB" or "search".
  std::string source;
  Proof proof;
};

struct KindReport {
  ModalKind kind = ModalKind::Knowledge;
  ModalLabel label;
  bool normal = false;
  /// nullopt when neither a derivation nor a countermodel was found.
  std::optional<bool> axiom4_derivable;
  bool reflective_sentences_assumed = true;
  bool serial_or_reflexive = false;
  Verdict verdict = Verdict::Unknown;
  std::optional<Derivation> derivation;
  std::optional<Countermodel> countermodel;
  std::string note;
};

struct SafetyReport {
  std::string preset;
  std::vector<KindReport> kinds;
  Verdict verdict = Verdict::Unknown;

  const KindReport* find(ModalKind k) const {
    for (const auto& r : kinds) {
      if (r.kind == k) return &r;
    }
    return nullptr;
  }
};

struct AnalyzeOptions {
  std::size_t max_proof_depth = 2;
  std::size_t max_worlds = 3;
  /// Agent the schemas are instantiated for; all presets are uniform in i.
  AgentId agent{1};
};

namespace detail {

inline ModalLabel label_for(ModalKind k, AgentId a) { return ModalLabel{k, a}; }

/// Schema from the preset that is a variant of `text`, or nullptr.
inline const NamedSchema* schema_like(const LogicPreset& logic, const char* text) {
  return logic.find_variant(parse(text));
}

/// Box of a theorem on line `line`: direct necessitation, or K-necessitation
/// followed by KB when only K has the rule.
inline std::optional<std::size_t> necessitate(ProofBuilder& pb, const LogicPreset& logic, std::size_t line,
                                              ModalLabel l) {
  if (logic.has_rule(necessitation_rule(l.kind))) return pb.nec(line, l);
  if (l.kind != ModalKind::Belief || !logic.has_rule(Rule::NecK)) return std::nullopt;
  const NamedSchema* kb = schema_like(logic, schemas::kKnowledgeBelief);
  if (!kb) return std::nullopt;
  const ModalLabel k = label_for(ModalKind::Knowledge, l.agent);
  const Formula body = pb.formula(line);
  const auto boxed = pb.nec(line, k);
  const auto transfer = pb.axiom(kb->name, implies(box(k, body), box(l, body)));
  return pb.mp(boxed, transfer);
}

/// From a theorem A -> C on `line`, derive l A -> l C.
inline std::optional<std::size_t> lift(ProofBuilder& pb, const LogicPreset& logic, std::size_t line, ModalLabel l) {
  const NamedSchema* dist = schema_like(logic, schemas::dist(l.kind));
  if (!dist) return std::nullopt;
  const Formula imp = pb.formula(line);
  const auto boxed = necessitate(pb, logic, line, l);
  if (!boxed) return std::nullopt;
  const auto k = pb.axiom(dist->name, implies(box(l, imp), implies(box(l, imp.lhs()), box(l, imp.rhs()))));
  return pb.mp(*boxed, k);
}

inline Formula four_instance(ModalLabel l) {
  const Formula p = atom("p");
  return implies(box(l, p), box(l, box(l, p)));
}

inline bool is_normal(const LogicPreset& logic, ModalKind k) {
  if (!schema_like(logic, schemas::dist(k))) return false;
  if (logic.has_rule(necessitation_rule(k))) return true;
  return k == ModalKind::Belief && logic.has_rule(Rule::NecK) && schema_like(logic, schemas::kKnowledgeBelief);
}

inline bool has_serial_or_reflexive_schema(const LogicPreset& logic, ModalKind k) {
  return schema_like(logic, schemas::consistency(k)) || schema_like(logic, schemas::truth(k));
}

// Catalog entries. Each returns nullopt when the preset lacks an ingredient.

inline std::optional<Proof> catalog_literal(const LogicPreset& logic, ModalLabel l) {
  const NamedSchema* four = schema_like(logic, schemas::four(l.kind));
  if (!four) return std::nullopt;
  ProofBuilder pb(logic.name, {});
  pb.axiom(four->name, four_instance(l), "4 is an axiom");
  return pb.build();
}

/// T and 5 give 4 via the contrapositive of 5.
inline std::optional<Proof> catalog_t5(const LogicPreset& logic, ModalLabel l) {
  const NamedSchema* t = schema_like(logic, schemas::truth(l.kind));
  const NamedSchema* five = schema_like(logic, schemas::five(l.kind));
  const NamedSchema* dist = schema_like(logic, schemas::dist(l.kind));
  if (!t || !five || !dist) return std::nullopt;
  const Formula p = atom("p");
  const Formula lp = box(l, p);
  const Formula nlp = neg(lp);
  ProofBuilder pb(logic.name, {});
  const auto l1 = pb.axiom(five->name, implies(nlp, box(l, nlp)));
  const auto l2 = pb.taut_consequence({l1}, implies(neg(box(l, nlp)), lp), "contrapositive of 5");
  const auto l5 = lift(pb, logic, l2, l);
  if (!l5) return std::nullopt;
  const auto l6 = pb.axiom(t->name, implies(box(l, nlp), nlp));
  const auto l7 = pb.taut_consequence({l6}, implies(lp, neg(box(l, nlp))));
  const auto l8 = pb.axiom(five->name, implies(neg(box(l, nlp)), box(l, neg(box(l, nlp)))));
  const auto l9 = pb.taut_consequence({l7, l8}, implies(lp, box(l, neg(box(l, nlp)))));
  pb.taut_consequence({*l5, l9}, four_instance(l));
  return pb.build();
}

/// Belief only: B p -> K B p -> B B p.
inline std::optional<Proof> catalog_cb_kb(const LogicPreset& logic, ModalLabel l) {
  if (l.kind != ModalKind::Belief) return std::nullopt;
  const NamedSchema* cb = schema_like(logic, schemas::kConsciousBelief);
  const NamedSchema* kb = schema_like(logic, schemas::kKnowledgeBelief);
  if (!cb || !kb) return std::nullopt;
  const ModalLabel k = label_for(ModalKind::Knowledge, l.agent);
  const Formula bp = box(l, atom("p"));
  ProofBuilder pb(logic.name, {});
  const auto l1 = pb.axiom(cb->name, implies(bp, box(k, bp)));
  const auto l2 = pb.axiom(kb->name, implies(box(k, bp), box(l, bp)));
  pb.taut_consequence({l1, l2}, four_instance(l));
  return pb.build();
}

/// Belief only: B p -> B K p, and K p -> B p lifted under B.
inline std::optional<Proof> catalog_ob_kb(const LogicPreset& logic, ModalLabel l) {
  if (l.kind != ModalKind::Belief) return std::nullopt;
  const NamedSchema* ob = schema_like(logic, schemas::kOverconfidentBelief);
  const NamedSchema* kb = schema_like(logic, schemas::kKnowledgeBelief);
  if (!ob || !kb) return std::nullopt;
  const ModalLabel k = label_for(ModalKind::Knowledge, l.agent);
  const Formula p = atom("p");
  ProofBuilder pb(logic.name, {});
  const auto l1 = pb.axiom(ob->name, implies(box(l, p), box(l, box(k, p))));
  const auto l2 = pb.axiom(kb->name, implies(box(k, p), box(l, p)));
  const auto l3 = lift(pb, logic, l2, l);
  if (!l3) return std::nullopt;
  pb.taut_consequence({l1, *l3}, four_instance(l));
  return pb.build();
}

inline std::optional<Derivation> from_catalog(const LogicPreset& logic, ModalLabel l) {
  using Entry = std::optional<Proof> (*)(const LogicPreset&, ModalLabel);
  const std::pair<const char*, Entry> entries[] = {
      {"catalog:4", catalog_literal},
      {"catalog:T+5", catalog_t5},
      {"catalog:CB+KB", catalog_cb_kb},
      {"catalog:OB+KB", catalog_ob_kb},
  };
  for (const auto& [source, make] : entries) {
    auto proof = make(logic, l);
    if (proof && check_proof(*proof, logic).valid) return Derivation{source, std::move(*proof)};
  }
  return std::nullopt;
}

/// A formula the search may use, and how to derive it.
struct Fact {
  Formula formula;
  std::function<std::optional<std::size_t>(ProofBuilder&)> emit;
};

/// Unary-operator terms over p with up to `depth` operators (no double
/// negation), in a fixed order.
inline std::vector<Formula> term_pool(const std::vector<ModalLabel>& labels, std::size_t depth) {
  std::vector<Formula> out{atom("p")};
  std::vector<Formula> frontier = out;
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<Formula> next;
    for (const auto& t : frontier) {
      if (!t.is(Op::Not)) next.push_back(neg(t));
      for (const auto& l : labels) next.push_back(box(l, t));
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

/// Bounded search: single-metavariable schema instances over the term pool,
/// their contrapositives, and one round of lifting both under every box.
/// Succeeds when the target follows tautologically from these facts.
inline std::optional<Derivation> from_search(const LogicPreset& logic, ModalLabel l, std::size_t depth) {
  std::vector<ModalLabel> labels;
  for (ModalKind k : logic.kinds()) labels.push_back(label_for(k, l.agent));
  const auto pool = term_pool(labels, depth);
  std::vector<Fact> base;
  for (const auto& s : logic.schemas) {
    const auto vars = metavariables_of(s.formula);
    if (vars.size() != 1) continue;
    for (const auto& t : pool) {
      const Formula inst = instantiate(s.formula, {{*vars.begin(), t}}, l.agent);
      const std::string name = s.name;
      base.push_back(Fact{inst, [name, inst](ProofBuilder& pb) -> std::optional<std::size_t> {
                            return pb.axiom(name, inst);
                          }});
      if (inst.is(Op::Implies)) {
        const Formula contra = implies(negate(inst.rhs()), negate(inst.lhs()));
        base.push_back(Fact{contra, [name, inst, contra](ProofBuilder& pb) -> std::optional<std::size_t> {
                              return pb.taut_consequence({pb.axiom(name, inst)}, contra);
                            }});
      }
    }
  }
  std::vector<Fact> facts = base;
  for (const auto& fact : base) {
    if (!fact.formula.is(Op::Implies)) continue;
    for (const auto& lab : labels) {
      if (!is_normal(logic, lab.kind)) continue;
      const Formula lifted = implies(box(lab, fact.formula.lhs()), box(lab, fact.formula.rhs()));
      auto emit = fact.emit;
      facts.push_back(Fact{lifted, [emit, lab, &logic](ProofBuilder& pb) -> std::optional<std::size_t> {
                             auto line = emit(pb);
                             if (!line) return std::nullopt;
                             return lift(pb, logic, *line, lab);
                           }});
    }
  }
  const Formula target = four_instance(l);
  auto formulas_of = [&](const std::vector<std::size_t>& keep) {
    std::vector<Formula> out;
    for (std::size_t k : keep) out.push_back(facts[k].formula);
    return out;
  };
  std::vector<std::size_t> keep(facts.size());
  for (std::size_t k = 0; k < facts.size(); ++k) keep[k] = k;
  if (!entails(formulas_of(keep), target)) return std::nullopt;
  // Greedy shrink so the emitted derivation stays readable.
  for (std::size_t k = keep.size(); k-- > 0;) {
    auto trial = keep;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
    if (entails(formulas_of(trial), target)) keep = std::move(trial);
  }
  ProofBuilder pb(logic.name, {});
  std::vector<std::size_t> support;
  for (std::size_t k : keep) {
    auto line = facts[k].emit(pb);
    if (!line) return std::nullopt;
    support.push_back(*line);
  }
  pb.taut_consequence(support, target);
  Proof proof = pb.build();
  if (!check_proof(proof, logic).valid) return std::nullopt;
  return Derivation{"search", std::move(proof)};
}

/// Every schema of the preset, instantiated with fresh letters, is valid on
/// the frame. Uniform substitution makes this equivalent to validity of the
/// schema itself.
inline bool validates_preset(const Frame& fr, const LogicPreset& logic, AgentId agent) {
  for (const auto& s : logic.schemas) {
    std::map<std::string, Formula> letters;
    std::size_t k = 0;
    for (const auto& v : metavariables_of(s.formula)) letters.emplace(v, atom("q" + std::to_string(k++)));
    if (!valid_on_frame(fr, instantiate(s.formula, letters, agent))) return false;
  }
  return true;
}

}  // namespace detail

inline SafetyReport analyze(const LogicPreset& logic, const AnalyzeOptions& opts = {}) {
  SafetyReport report{logic.name, {}, Verdict::Unknown};
  for (ModalKind kind : logic.kinds()) {
    KindReport r;
    r.kind = kind;
    r.label = detail::label_for(kind, opts.agent);
    r.normal = detail::is_normal(logic, kind);
    r.reflective_sentences_assumed = logic.reflective_sentences;
    r.serial_or_reflexive = detail::has_serial_or_reflexive_schema(logic, kind);

    r.derivation = detail::from_catalog(logic, r.label);
    if (!r.derivation && opts.max_proof_depth > 0) r.derivation = detail::from_search(logic, r.label, opts.max_proof_depth);
    if (r.derivation) {
      r.axiom4_derivable = true;
    } else {
      try {
        const SearchSpec spec =
            make_search_spec(detail::four_instance(r.label), logic.frame_conditions_for(opts.agent), opts.max_worlds);
        auto filter = [&](const Frame& fr) { return detail::validates_preset(fr, logic, opts.agent); };
        auto cm = find_countermodel(spec, SearchLimits{}, filter);
        if (cm && verify_countermodel(cm->model, cm->world, spec) && filter(cm->model.frame)) {
          r.axiom4_derivable = false;
          r.countermodel = std::move(cm);
        } else {
          r.note = "no derivation or countermodel for 4 within the search bounds";
        }
      } catch (const ResourceLimitExceeded& e) {
        r.note = e.what();
      }
    }

    if (r.normal && r.axiom4_derivable == true && r.reflective_sentences_assumed && r.serial_or_reflexive) {
      r.verdict = Verdict::Crashes;
    } else if (r.axiom4_derivable == false) {
      r.verdict = Verdict::LoebSafe;
    } else {
      r.verdict = Verdict::Unknown;
    }
    report.kinds.push_back(std::move(r));
  }
  bool all_safe = !report.kinds.empty();
  bool any_crash = false;
  for (const auto& r : report.kinds) {
    any_crash = any_crash || r.verdict == Verdict::Crashes;
    all_safe = all_safe && r.verdict == Verdict::LoebSafe;
  }
  report.verdict = any_crash ? Verdict::Crashes : all_safe ? Verdict::LoebSafe : Verdict::Unknown;
  return report;
}

inline json report_to_json(const SafetyReport& report) {
  json j;
  j["preset"] = report.preset;
  j["verdict"] = to_string(report.verdict);
  j["kinds"] = json::array();
  for (const auto& r : report.kinds) {
    json k;
    k["kind"] = std::string(1, kind_letter(r.kind));
    k["label"] = r.label.name();
    k["normal"] = r.normal;
    k["axiom4_derivable"] = r.axiom4_derivable ? json(*r.axiom4_derivable) : json(nullptr);
    k["reflective_sentences_assumed"] = r.reflective_sentences_assumed;
    k["serial_or_reflexive"] = r.serial_or_reflexive;
    k["verdict"] = to_string(r.verdict);
    if (r.derivation) k["derivation"] = {{"source", r.derivation->source}, {"proof", proof_to_json(r.derivation->proof)}};
    if (r.countermodel) k["countermodel"] = model_to_json(r.countermodel->model, r.countermodel->world);
    if (!r.note.empty()) k["note"] = r.note;
    j["kinds"].push_back(k);
  }
  return j;
}

}  // namespace lobsafe
