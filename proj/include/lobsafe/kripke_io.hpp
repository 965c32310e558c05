#pragma once

// Text and JSON forms for frame properties and models.
//
// Property syntax: "<name>:<label>[,<label>...]", e.g. "serial:B1",
// "compose:K1,B1,B1" (SubsetCompose first,second,container),
// "subset:B1,K1", "witness:B1,K1,B1" (WitnessedCompose via,step,container).
//
// Model file:
//   {"worlds": 3, "relations": {"B1": [[0,1],[1,2],[2,2]]},
//    "valuation": {"p": [0,1]}, "world_names": ["w","v","u"], "world": 0}
// "world_names" and the designated "world" are optional.
//
// Search spec file:
//   {"target": "B(1) p -> B(1) B(1) p", "constraints": ["serial:B1"],
//    "max_worlds": 3}
// "labels" and "atoms" default to those mentioned by target and constraints.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "lobsafe/countermodel.hpp"
#include "lobsafe/kripke.hpp"
#include "lobsafe/parser.hpp"

namespace lobsafe {

using json = nlohmann::json;

inline std::string to_string(const FrameProperty& p) {
  auto join = [](const std::vector<ModalLabel>& ls) {
    std::string out;
    for (std::size_t k = 0; k < ls.size(); ++k) {
      if (k) out += ',';
      out += ls[k].name();
    }
    return out;
  };
  const char* names[] = {"reflexive", "serial", "transitive", "euclidean", "compose", "subset", "witness"};
  return std::string(names[p.index()]) + ":" + join(labels_of(p));
}

inline FrameProperty parse_property(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("bad frame property '" + text + "' (expected name:label[,label...])");
  }
  const std::string name = text.substr(0, colon);
  std::vector<ModalLabel> ls;
  std::stringstream rest(text.substr(colon + 1));
  for (std::string item; std::getline(rest, item, ',');) ls.push_back(ModalLabel::from_name(item));
  auto want = [&](std::size_t n) {
    if (ls.size() != n) {
      throw std::invalid_argument("frame property '" + name + "' takes " + std::to_string(n) + " label(s)");
    }
  };
  if (name == "reflexive") return want(1), Reflexive{ls[0]};
  if (name == "serial") return want(1), Serial{ls[0]};
  if (name == "transitive") return want(1), Transitive{ls[0]};
  if (name == "euclidean") return want(1), Euclidean{ls[0]};
  if (name == "compose") return want(3), SubsetCompose{ls[0], ls[1], ls[2]};
  if (name == "subset") return want(2), Subset{ls[0], ls[1]};
  if (name == "witness") return want(3), WitnessedCompose{ls[0], ls[1], ls[2]};
  throw std::invalid_argument("unknown frame property '" + name + "'");
}

struct ModelFile {
  Model model;
  std::vector<std::string> world_names;
  std::optional<World> world;
};

inline json model_to_json(const Model& m, std::optional<World> world = std::nullopt,
                          const std::vector<std::string>& world_names = {}) {
  json j;
  j["worlds"] = m.frame.size();
  json rels = json::object();
  for (const auto& [label, rows] : m.frame.relations()) {
    json pairs = json::array();
    for (World a = 0; a < rows.size(); ++a) {
      for (World b = 0; b < m.frame.size(); ++b) {
        if (contains(rows[a], b)) pairs.push_back({a, b});
      }
    }
    rels[label.name()] = pairs;
  }
  j["relations"] = rels;
  json val = json::object();
  for (const auto& [atom_name, set] : m.valuation) {
    json ws = json::array();
    for (World w = 0; w < m.frame.size(); ++w) {
      if (contains(set, w)) ws.push_back(w);
    }
    val[atom_name] = ws;
  }
  j["valuation"] = val;
  if (!world_names.empty()) j["world_names"] = world_names;
  if (world) j["world"] = *world;
  return j;
}

/// Throws std::invalid_argument with a description of the first schema violation.
inline ModelFile model_from_json(const json& j) {
  auto natural = [](const json& v) { return v.is_number_integer() && v.get<long long>() >= 0; };
  if (!j.is_object() || !j.contains("worlds") || !natural(j["worlds"])) {
    throw std::invalid_argument("model file needs an unsigned integer \"worlds\" field");
  }
  const auto n = j["worlds"].get<std::size_t>();
  Frame fr(n);
  auto world_of = [&](const json& v) -> World {
    if (!natural(v) || v.get<std::size_t>() >= n) {
      throw std::invalid_argument("world id " + v.dump() + " is outside 0.." + std::to_string(n - 1));
    }
    return v.get<World>();
  };
  if (j.contains("relations")) {
    if (!j["relations"].is_object()) throw std::invalid_argument("\"relations\" must be an object");
    for (const auto& [name, pairs] : j["relations"].items()) {
      const ModalLabel l = ModalLabel::from_name(name);
      if (l.has_agent_variable()) throw std::invalid_argument("model relations need concrete agents");
      fr.add_label(l);
      if (!pairs.is_array()) throw std::invalid_argument("relation " + name + " must be a list of pairs");
      for (const auto& pr : pairs) {
        if (!pr.is_array() || pr.size() != 2) {
          throw std::invalid_argument("relation " + name + " entries must be [from, to] pairs");
        }
        fr.add_edge(l, world_of(pr[0]), world_of(pr[1]));
      }
    }
  }
  Model m(std::move(fr));
  if (j.contains("valuation")) {
    if (!j["valuation"].is_object()) throw std::invalid_argument("\"valuation\" must be an object");
    for (const auto& [name, ws] : j["valuation"].items()) {
      if (!ws.is_array()) throw std::invalid_argument("valuation of " + name + " must be a list");
      WorldSet s = 0;
      for (const auto& w : ws) s |= singleton(world_of(w));
      m.valuation[name] = s;
    }
  }
  ModelFile out{std::move(m), {}, std::nullopt};
  if (j.contains("world_names")) {
    out.world_names = j["world_names"].get<std::vector<std::string>>();
    if (out.world_names.size() != n) throw std::invalid_argument("\"world_names\" must name every world");
  }
  if (j.contains("world")) out.world = world_of(j["world"]);
  return out;
}

inline json spec_to_json(const SearchSpec& spec) {
  json j;
  j["target"] = render(spec.target);
  j["constraints"] = json::array();
  for (const auto& c : spec.constraints) j["constraints"].push_back(to_string(c));
  j["max_worlds"] = spec.max_worlds;
  j["labels"] = json::array();
  for (const auto& l : spec.labels) j["labels"].push_back(l.name());
  j["atoms"] = spec.atoms;
  return j;
}

inline SearchSpec spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("target") || !j["target"].is_string()) {
    throw std::invalid_argument("search spec needs a string \"target\"");
  }
  std::vector<FrameProperty> constraints;
  for (const auto& c : j.value("constraints", json::array())) constraints.push_back(parse_property(c.get<std::string>()));
  SearchSpec spec = make_search_spec(parse(j["target"].get<std::string>()), std::move(constraints),
                                     j.value("max_worlds", std::size_t{3}));
  if (j.contains("labels")) {
    spec.labels.clear();
    for (const auto& l : j["labels"]) spec.labels.push_back(ModalLabel::from_name(l.get<std::string>()));
  }
  if (j.contains("atoms")) spec.atoms = j["atoms"].get<std::vector<std::string>>();
  return spec;
}

}  // namespace lobsafe
