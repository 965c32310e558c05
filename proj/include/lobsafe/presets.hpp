#pragma once

// Named axiom systems for knowledge (K_i) and belief (B_i).
//
// Schema names are shared across presets so that proofs and reports can
// refer to them uniformly:
//   K_K, K_B   distribution          T_K    truth
//   4_K, 4_B   positive introspection  5_K, 5_B  negative introspection
//   D_B        belief consistency    KB     knowledge entails belief
//   CB         conscious belief      RB     reasonable belief
//   SB         supported belief      OB     overconfident belief

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "lobsafe/kripke.hpp"
#include "lobsafe/kripke_io.hpp"
#include "lobsafe/parser.hpp"
#include "lobsafe/schema.hpp"

namespace lobsafe {

enum class Rule { ModusPonens, NecK, NecB, RK };

inline Rule necessitation_rule(ModalKind k) { return k == ModalKind::Knowledge ? Rule::NecK : Rule::NecB; }

inline std::string to_string(Rule r) {
  switch (r) {
    case Rule::ModusPonens:
      return "MP";
    case Rule::NecK:
      return "NecK";
    case Rule::NecB:
      return "NecB";
    case Rule::RK:
      return "RK";
  }
  return "?";
}

inline Rule parse_rule(const std::string& s) {
  if (s == "MP") return Rule::ModusPonens;
  if (s == "NecK") return Rule::NecK;
  if (s == "NecB") return Rule::NecB;
  if (s == "RK") return Rule::RK;
  throw std::invalid_argument("unknown rule '" + s + "' (expected MP, NecK, NecB or RK)");
}

struct NamedSchema {
  std::string name;
  Formula formula;
  std::string title;
};

struct LogicPreset {
  std::string name;
  std::vector<NamedSchema> schemas;
  std::set<Rule> rules;
  /// Templates over the agent metavariable (labels Ki / Bi).
  std::vector<FrameProperty> frame_conditions;
  /// Whether Löb sentences are assumed expressible for the modelled agents.
  bool reflective_sentences = true;

  const NamedSchema* find_schema(const std::string& schema_name) const {
    auto it = std::find_if(schemas.begin(), schemas.end(),
                           [&](const NamedSchema& s) { return s.name == schema_name; });
    return it == schemas.end() ? nullptr : &*it;
  }

  /// First schema that is a variant of `shape`, if any.
  const NamedSchema* find_variant(const Formula& shape) const {
    for (const auto& s : schemas) {
      if (is_variant(s.formula, shape)) return &s;
    }
    return nullptr;
  }

  bool has_rule(Rule r) const { return rules.count(r) != 0; }

  std::set<ModalKind> kinds() const {
    std::set<ModalKind> out;
    for (const auto& s : schemas) {
      for (const auto& l : labels_of(s.formula)) out.insert(l.kind);
    }
    return out;
  }

  std::vector<FrameProperty> frame_conditions_for(AgentId agent) const {
    std::vector<FrameProperty> out;
    for (const auto& c : frame_conditions) out.push_back(instantiate(c, agent));
    return out;
  }
};

class UnknownPreset : public std::invalid_argument {
 public:
  explicit UnknownPreset(const std::string& name)
      : std::invalid_argument("unknown preset '" + name +
                              "' (known: S5, S4-Hintikka, KL, KD45, LSED-R, LSED-S)") {}
};

namespace schemas {

// Canonical schema texts.
inline constexpr const char* kDistK = "K(i)(X -> Y) -> (K(i) X -> K(i) Y)";
inline constexpr const char* kDistB = "B(i)(X -> Y) -> (B(i) X -> B(i) Y)";
inline constexpr const char* kTruthK = "K(i) X -> X";
inline constexpr const char* kTruthB = "B(i) X -> X";
inline constexpr const char* kFourK = "K(i) X -> K(i) K(i) X";
inline constexpr const char* kFourB = "B(i) X -> B(i) B(i) X";
inline constexpr const char* kFiveK = "~K(i) X -> K(i) ~K(i) X";
inline constexpr const char* kFiveB = "~B(i) X -> B(i) ~B(i) X";
inline constexpr const char* kConsistencyK = "K(i) X -> <K(i)> X";
inline constexpr const char* kConsistencyB = "B(i) X -> <B(i)> X";
inline constexpr const char* kKnowledgeBelief = "K(i) X -> B(i) X";
inline constexpr const char* kConsciousBelief = "B(i) X -> K(i) B(i) X";
inline constexpr const char* kReasonableBelief = "B(i) X -> <B(i)> K(i) X";
inline constexpr const char* kSupportedBelief = "B(i) X -> <K(i)> K(i) X";
inline constexpr const char* kOverconfidentBelief = "B(i) X -> B(i) K(i) X";

inline const char* dist(ModalKind k) { return k == ModalKind::Knowledge ? kDistK : kDistB; }
inline const char* truth(ModalKind k) { return k == ModalKind::Knowledge ? kTruthK : kTruthB; }
inline const char* four(ModalKind k) { return k == ModalKind::Knowledge ? kFourK : kFourB; }
inline const char* five(ModalKind k) { return k == ModalKind::Knowledge ? kFiveK : kFiveB; }
inline const char* consistency(ModalKind k) {
  return k == ModalKind::Knowledge ? kConsistencyK : kConsistencyB;
}

}  // namespace schemas

namespace detail {

inline NamedSchema schema(std::string name, const char* text, std::string title) {
  return NamedSchema{std::move(name), parse(text), std::move(title)};
}

inline std::vector<FrameProperty> conditions(std::initializer_list<const char*> texts) {
  std::vector<FrameProperty> out;
  for (const char* t : texts) out.push_back(parse_property(t));
  return out;
}

}  // namespace detail

inline LogicPreset preset_s5() {
  using namespace schemas;
  return LogicPreset{"S5",
                     {detail::schema("K_K", kDistK, "Axiom K"),
                      detail::schema("T_K", kTruthK, "Truth Axiom (Axiom T)"),
                      detail::schema("5_K", kFiveK, "Negative Introspection (Axiom 5)")},
                     {Rule::ModusPonens, Rule::NecK, Rule::RK},
                     detail::conditions({"reflexive:Ki", "euclidean:Ki"})};
}

inline LogicPreset preset_s4_hintikka() {
  using namespace schemas;
  return LogicPreset{"S4-Hintikka",
                     {detail::schema("K_K", kDistK, "Axiom K"),
                      detail::schema("T_K", kTruthK, "Truth Axiom (Axiom T)"),
                      detail::schema("4_K", kFourK, "Positive Introspection (Axiom 4)")},
                     {Rule::ModusPonens, Rule::NecK, Rule::RK},
                     detail::conditions({"reflexive:Ki", "transitive:Ki"})};
}

inline LogicPreset preset_kl() {
  using namespace schemas;
  return LogicPreset{"KL",
                     {detail::schema("K_K", kDistK, "Distribution of K_i"),
                      detail::schema("T_K", kTruthK, "Truth"),
                      detail::schema("5_K", kFiveK, "Negative Introspection"),
                      detail::schema("K_B", kDistB, "Distribution of B_i"),
                      detail::schema("D_B", kConsistencyB, "Belief Consistency"),
                      detail::schema("KB", kKnowledgeBelief, "Knowledge Entails Belief"),
                      detail::schema("CB", kConsciousBelief, "Conscious Belief")},
                     {Rule::ModusPonens, Rule::NecK, Rule::RK},
                     detail::conditions({"reflexive:Ki", "euclidean:Ki", "serial:Bi", "subset:Bi,Ki",
                                         "compose:Bi,Ki,Bi"})};
}

inline LogicPreset preset_kd45() {
  using namespace schemas;
  return LogicPreset{"KD45",
                     {detail::schema("K_B", kDistB, "Distribution of B_i"),
                      detail::schema("D_B", kConsistencyB, "Belief Consistency"),
                      detail::schema("4_B", kFourB, "Positive Belief Introspection"),
                      detail::schema("5_B", kFiveB, "Negative Belief Introspection")},
                     {Rule::ModusPonens, Rule::NecB, Rule::RK},
                     detail::conditions({"serial:Bi", "transitive:Bi", "euclidean:Bi"})};
}

inline LogicPreset preset_lsed_r() {
  using namespace schemas;
  return LogicPreset{"LSED-R",
                     {detail::schema("K_K", kDistK, "Distribution of K_i"),
                      detail::schema("T_K", kTruthK, "Truth"),
                      detail::schema("K_B", kDistB, "Distribution of B_i"),
                      detail::schema("D_B", kConsistencyB, "Belief Consistency"),
                      detail::schema("KB", kKnowledgeBelief, "Knowledge entails Belief"),
                      detail::schema("RB", kReasonableBelief, "Reasonable Belief")},
                     {Rule::ModusPonens, Rule::NecK, Rule::RK},
                     detail::conditions({"reflexive:Ki", "serial:Bi", "subset:Bi,Ki", "witness:Bi,Ki,Bi"})};
}

inline LogicPreset preset_lsed_s() {
  using namespace schemas;
  return LogicPreset{"LSED-S",
                     {detail::schema("K_K", kDistK, "Distribution of K_i"),
                      detail::schema("T_K", kTruthK, "Truth"),
                      detail::schema("K_B", kDistB, "Distribution of B_i"),
                      detail::schema("D_B", kConsistencyB, "Belief Consistency"),
                      detail::schema("KB", kKnowledgeBelief, "Knowledge entails Belief"),
                      detail::schema("SB", kSupportedBelief, "Supported Belief")},
                     {Rule::ModusPonens, Rule::NecK, Rule::RK},
                     detail::conditions({"reflexive:Ki", "serial:Bi", "subset:Bi,Ki", "witness:Ki,Ki,Bi"})};
}

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"S5", "S4-Hintikka", "KL", "KD45", "LSED-R", "LSED-S"};
  return names;
}

inline LogicPreset preset(const std::string& name) {
  if (name == "S5") return preset_s5();
  if (name == "S4-Hintikka" || name == "S4") return preset_s4_hintikka();
  if (name == "KL") return preset_kl();
  if (name == "KD45") return preset_kd45();
  if (name == "LSED-R") return preset_lsed_r();
  if (name == "LSED-S") return preset_lsed_s();
  throw UnknownPreset(name);
}

/// Custom logic definition:
///   {"name": "...", "schemas": [{"name": "T", "formula": "K(i) X -> X"}],
///    "rules": ["MP", "NecK"], "frame_conditions": ["reflexive:Ki"],
///    "reflective": true}
/// Throws std::invalid_argument (or ParseError) when malformed.
inline LogicPreset preset_from_json(const json& j) {
  if (!j.is_object() || !j.contains("name") || !j["name"].is_string()) {
    throw std::invalid_argument("logic definition needs a string \"name\"");
  }
  LogicPreset p;
  p.name = j["name"].get<std::string>();
  if (!j.contains("schemas") || !j["schemas"].is_array()) {
    throw std::invalid_argument("logic definition needs a \"schemas\" list");
  }
  for (const auto& s : j["schemas"]) {
    if (!s.is_object() || !s.contains("name") || !s.contains("formula")) {
      throw std::invalid_argument("each schema needs \"name\" and \"formula\"");
    }
    const auto schema_name = s["name"].get<std::string>();
    if (p.find_schema(schema_name)) throw std::invalid_argument("duplicate schema name '" + schema_name + "'");
    p.schemas.push_back(NamedSchema{schema_name, parse(s["formula"].get<std::string>()),
                                    s.value("title", schema_name)});
  }
  for (const auto& r : j.value("rules", json::array())) p.rules.insert(parse_rule(r.get<std::string>()));
  const auto used = p.kinds();
  for (const auto& c : j.value("frame_conditions", json::array())) {
    FrameProperty fp = parse_property(c.get<std::string>());
    for (const auto& l : labels_of(fp)) {
      if (!used.count(l.kind)) {
        throw std::invalid_argument("frame condition " + c.get<std::string>() +
                                    " mentions an operator no schema uses");
      }
    }
    p.frame_conditions.push_back(fp);
  }
  p.reflective_sentences = j.value("reflective", true);
  return p;
}

inline json preset_to_json(const LogicPreset& p) {
  json j;
  j["name"] = p.name;
  j["schemas"] = json::array();
  for (const auto& s : p.schemas) {
    j["schemas"].push_back({{"name", s.name}, {"formula", render(s.formula)}, {"title", s.title}});
  }
  j["rules"] = json::array();
  for (Rule r : p.rules) j["rules"].push_back(to_string(r));
  j["frame_conditions"] = json::array();
  for (const auto& c : p.frame_conditions) j["frame_conditions"].push_back(to_string(c));
  j["reflective"] = p.reflective_sentences;
  return j;
}

/// Built-in preset name, or a path to a JSON logic definition.
inline LogicPreset load_preset(const std::string& name_or_path) {
  const bool looks_like_file = name_or_path.find('/') != std::string::npos ||
                               (name_or_path.size() > 5 &&
                                name_or_path.compare(name_or_path.size() - 5, 5, ".json") == 0);
  if (!looks_like_file) return preset(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw std::invalid_argument("cannot open logic definition " + name_or_path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("malformed logic definition " + name_or_path + ": " + e.what());
  }
  return preset_from_json(j);
}

}  // namespace lobsafe
