// lobsafe: command-line front end.
//
// Exit codes: 0 success / property holds, 1 property fails, 2 usage or input
// error, 3 resource bound exceeded or analysis inconclusive.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lobsafe.hpp"

namespace {

using namespace lobsafe;

constexpr int kOk = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;
constexpr int kLimit = 3;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_json(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string world_set(WorldSet s, std::size_t n, const std::vector<std::string>& names = {}) {
  std::string out = "{";
  bool first = true;
  for (World w = 0; w < n; ++w) {
    if (!contains(s, w)) continue;
    out += (first ? "" : ", ") + (names.empty() ? std::to_string(w) : names[w]);
    first = false;
  }
  return out + "}";
}

void print_model(const Model& m, std::optional<World> world, const std::vector<std::string>& names = {}) {
  const std::size_t n = m.frame.size();
  auto name = [&](World w) { return names.empty() ? std::to_string(w) : names[w]; };
  std::cout << "worlds: " << n << "\n";
  for (const auto& [label, rows] : m.frame.relations()) {
    std::cout << "  " << label.name() << ":";
    for (World a = 0; a < n; ++a) {
      for (World b = 0; b < n; ++b) {
        if (contains(rows[a], b)) std::cout << " " << name(a) << "->" << name(b);
      }
    }
    std::cout << "\n";
  }
  for (const auto& [atom_name, set] : m.valuation) std::cout << "  " << atom_name << " = " << world_set(set, n, names) << "\n";
  if (world) std::cout << "at world " << name(*world) << "\n";
}

void print_proof(const Proof& p) {
  std::cout << "preset " << p.preset << "\n";
  for (const auto& f : p.premises) std::cout << "premise " << render(f) << "\n";
  for (std::size_t k = 0; k < p.lines.size(); ++k) {
    const auto& line = p.lines[k];
    std::cout << std::setw(4) << k + 1 << ". " << render(line.formula) << "    [" << describe(line.justification) << "]";
    if (!line.note.empty()) std::cout << "  " << line.note;
    std::cout << "\n";
  }
}

json verdict_json(const ProofVerdict& v) {
  json j{{"valid", v.valid}};
  if (!v.valid) {
    j["line"] = v.line;
    j["reason"] = to_string(v.reason);
    j["message"] = v.message;
  }
  return j;
}

std::vector<FrameProperty> parse_constraints(const std::vector<std::string>& texts) {
  std::vector<FrameProperty> out;
  for (const auto& t : texts) out.push_back(parse_property(t));
  return out;
}

struct Options {
  std::string formula;
  std::string model;
  std::string spec;
  std::string proof;
  std::string preset;
  std::string output;
  std::string name;
  std::vector<std::string> constraints;
  std::size_t max_worlds = 3;
  std::size_t max_depth = 2;
  long world = -1;
  bool json = false;
  bool assert_valid = false;
  bool all = false;
  bool show = false;
};

int cmd_parse(const Options& o) {
  const Formula f = parse(o.formula);
  if (o.json) {
    json j{{"formula", render(f)}, {"size", f.size()}, {"concrete", is_concrete(f)}};
    j["atoms"] = atoms_of(f);
    j["metavariables"] = metavariables_of(f);
    j["labels"] = json::array();
    for (const auto& l : labels_of(f)) j["labels"].push_back(l.name());
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << render(f) << "\n";
  }
  return kOk;
}

int cmd_check_model(const Options& o) {
  const ModelFile mf = model_from_json(read_json(o.model));
  const Formula f = parse(o.formula);
  const WorldSet truth = truth_set(mf.model, f);
  const std::size_t n = mf.model.frame.size();
  std::optional<World> world = mf.world;
  if (o.world >= 0) world = static_cast<World>(o.world);
  if (world && *world >= n) throw InputError("world " + std::to_string(*world) + " is outside the model");
  const bool holds = world ? contains(truth, *world) : truth == all_worlds(n);
  if (o.json) {
    json j{{"formula", render(f)}, {"holds", holds}};
    j["true_at"] = json::array();
    for (World w = 0; w < n; ++w) {
      if (contains(truth, w)) j["true_at"].push_back(w);
    }
    if (world) j["world"] = *world;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << render(f) << " is true at " << world_set(truth, n, mf.world_names) << "\n";
    std::cout << (holds ? "holds" : "fails") << (world ? " at the designated world" : " globally") << "\n";
  }
  return holds ? kOk : kFails;
}

int cmd_find_countermodel(const Options& o) {
  SearchSpec spec = o.spec.empty() ? make_search_spec(parse(o.formula), parse_constraints(o.constraints), o.max_worlds)
                                   : spec_from_json(read_json(o.spec));
  const auto cm = find_countermodel(spec);
  if (!cm) {
    if (o.json) {
      std::cout << json{{"found", false}, {"max_worlds", spec.max_worlds}}.dump(2) << "\n";
    } else {
      std::cout << "no countermodel with at most " << spec.max_worlds << " worlds\n";
    }
    return o.assert_valid ? kOk : kFails;
  }
  const json model = model_to_json(cm->model, cm->world);
  if (!o.output.empty()) write_json(model, o.output);
  if (o.json) {
    std::cout << json{{"found", true}, {"model", model}}.dump(2) << "\n";
  } else {
    std::cout << "countermodel to " << render(spec.target) << "\n";
    print_model(cm->model, cm->world);
  }
  return o.assert_valid ? kFails : kOk;
}

int cmd_verify(const Options& o) {
  const ModelFile mf = model_from_json(read_json(o.model));
  SearchSpec spec = o.spec.empty() ? make_search_spec(parse(o.formula), parse_constraints(o.constraints), o.max_worlds)
                                   : spec_from_json(read_json(o.spec));
  const World w = o.world >= 0 ? static_cast<World>(o.world) : mf.world.value_or(0);
  const bool ok = verify_countermodel(mf.model, w, spec);
  if (o.json) {
    std::cout << json{{"verified", ok}, {"world", w}, {"spec", spec_to_json(spec)}}.dump(2) << "\n";
  } else {
    std::cout << (ok ? "verified" : "not a countermodel") << ": " << render(spec.target) << " at world "
              << (mf.world_names.empty() ? std::to_string(w) : mf.world_names.at(w)) << "\n";
  }
  return ok ? kOk : kFails;
}

int cmd_check_proof(const Options& o) {
  Proof p = proof_from_json(read_json(o.proof), o.preset);
  if (!o.preset.empty()) p.preset = o.preset;
  if (p.preset.empty()) throw InputError("proof names no preset; pass --preset");
  const LogicPreset logic = load_preset(p.preset);
  const ProofVerdict v = check_proof(p, logic);
  if (o.json) {
    std::cout << verdict_json(v).dump(2) << "\n";
  } else if (v.valid) {
    std::cout << "Valid: " << p.lines.size() << " lines, concludes " << render(p.conclusion) << "\n";
  } else {
    std::cout << "Invalid at line " << v.line << " (" << to_string(v.reason) << "): " << v.message << "\n";
  }
  return v.valid ? kOk : kFails;
}

int cmd_replay_library(const Options& o) {
  std::vector<std::string> names;
  if (o.all || o.name.empty()) {
    names = library_names();
  } else {
    names.push_back(o.name);
  }
  bool all_valid = true;
  json results = json::array();
  for (const auto& n : names) {
    const Proof p = library_proof(n);
    const ProofVerdict v = check_proof(p);
    all_valid = all_valid && v.valid;
    if (o.json) {
      json r{{"name", n}, {"lines", p.lines.size()}, {"conclusion", render(p.conclusion)}, {"verdict", verdict_json(v)}};
      if (o.show) r["proof"] = proof_to_json(p);
      results.push_back(r);
    } else {
      std::cout << (v.valid ? "Valid   " : "Invalid ") << n << " (" << p.lines.size() << " lines): " << render(p.conclusion)
                << "\n";
      if (!v.valid) std::cout << "  line " << v.line << ": " << v.message << "\n";
      if (o.show) print_proof(p);
    }
  }
  if (o.json) std::cout << results.dump(2) << "\n";
  return all_valid ? kOk : kFails;
}

int cmd_analyze(const Options& o) {
  const LogicPreset logic = load_preset(o.preset);
  const SafetyReport r = analyze(logic, AnalyzeOptions{o.max_depth, o.max_worlds, AgentId{1}});
  if (o.json) {
    std::cout << report_to_json(r).dump(2) << "\n";
  } else {
    std::cout << r.preset << ": " << to_string(r.verdict) << "\n";
    for (const auto& k : r.kinds) {
      auto yes = [](bool b) { return b ? "yes" : "no"; };
      std::cout << "\n" << k.label.name() << ": " << to_string(k.verdict) << "\n";
      std::cout << "  normal (K + Nec):        " << yes(k.normal) << "\n";
      std::cout << "  axiom 4 derivable:       "
                << (k.axiom4_derivable ? yes(*k.axiom4_derivable) : "unknown") << "\n";
      std::cout << "  reflective sentences:    " << yes(k.reflective_sentences_assumed) << " (assumed)\n";
      std::cout << "  serial or reflexive:     " << yes(k.serial_or_reflexive) << "\n";
      if (k.derivation) {
        std::cout << "  derivation of 4 (" << k.derivation->source << "):\n";
        print_proof(k.derivation->proof);
      }
      if (k.countermodel) {
        std::cout << "  countermodel to 4:\n";
        print_model(k.countermodel->model, k.countermodel->world);
      }
      if (!k.note.empty()) std::cout << "  note: " << k.note << "\n";
    }
  }
  return r.verdict == Verdict::Unknown ? kLimit : kOk;
}

int cmd_correspond(const Options& o) {
  const Formula f = parse(o.formula);
  const Formula g = is_concrete(f) ? f : specialize(f);
  const bool in_fragment = classify(g).has_value();
  const auto c = frame_correspondent(g);
  if (o.json) {
    json j{{"formula", render(g)}, {"fragment", in_fragment}};
    j["condition"] = c ? json(render(*c)) : json(nullptr);
    j["source"] = in_fragment ? "computed" : c ? "catalog" : "none";
    std::cout << j.dump(2) << "\n";
  } else if (c) {
    std::cout << render(*c) << "\n";
  } else {
    std::cout << render(g) << " is not a simple Sahlqvist implication and has no catalogued correspondent\n";
  }
  return c ? kOk : kFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for multimodal epistemic-doxastic logic and Loeb safety"};
  app.require_subcommand(1);
  Options o;

  auto* parse_cmd = app.add_subcommand("parse", "Parse and pretty-print a formula");
  parse_cmd->add_option("formula", o.formula, "Formula text")->required();
  parse_cmd->add_flag("--json", o.json);

  auto* check_model = app.add_subcommand("check-model", "Evaluate a formula on a model file");
  check_model->add_option("--model", o.model, "Model JSON file")->required();
  check_model->add_option("--formula", o.formula)->required();
  check_model->add_option("--world", o.world, "World to check (default: model's designated world, else all)");
  check_model->add_flag("--json", o.json);

  auto* find = app.add_subcommand("find-countermodel", "Search for a finite countermodel");
  auto* target = find->add_option("--target,--formula", o.formula, "Formula to falsify");
  find->add_option("--spec", o.spec, "Search spec JSON file")->excludes(target);
  find->add_option("--constraint", o.constraints, "Frame property, e.g. serial:B1 (repeatable)");
  find->add_option("--max-worlds", o.max_worlds)->check(CLI::Range(1, 4));
  find->add_option("--output", o.output, "Write the model file here");
  find->add_flag("--assert-valid", o.assert_valid, "Fail (exit 1) if a countermodel exists");
  find->add_flag("--json", o.json);

  auto* verify = app.add_subcommand("verify", "Re-check a model file against a search spec");
  verify->add_option("--model", o.model)->required();
  auto* vtarget = verify->add_option("--target,--formula", o.formula);
  verify->add_option("--spec", o.spec)->excludes(vtarget);
  verify->add_option("--constraint", o.constraints);
  verify->add_option("--world", o.world);
  verify->add_flag("--json", o.json);

  auto* check_proof_cmd = app.add_subcommand("check-proof", "Check a proof file");
  check_proof_cmd->add_option("--proof", o.proof)->required();
  check_proof_cmd->add_option("--preset,--logic", o.preset, "Preset name or logic JSON (overrides the file)");
  check_proof_cmd->add_flag("--json", o.json);

  auto* replay = app.add_subcommand("replay-library", "Check the built-in proof library");
  replay->add_flag("--all", o.all);
  replay->add_option("--name", o.name)->check(CLI::IsMember(library_names()));
  replay->add_flag("--show", o.show, "Print the proofs");
  replay->add_flag("--json", o.json);

  auto* analyze_cmd = app.add_subcommand("analyze-logic", "Decide whether a logic crashes or is Loeb safe");
  analyze_cmd->add_option("--preset,--logic", o.preset, "Preset name or logic JSON file")->required();
  analyze_cmd->add_option("--max-depth", o.max_depth);
  analyze_cmd->add_option("--max-worlds", o.max_worlds)->check(CLI::Range(1, 4));
  analyze_cmd->add_flag("--json", o.json);

  auto* correspond = app.add_subcommand("correspond", "First-order frame correspondent of a formula");
  correspond->add_option("--formula", o.formula)->required();
  correspond->add_flag("--json", o.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  for (auto* cmd : {find, verify}) {
    if (cmd->parsed() && o.formula.empty() && o.spec.empty()) {
      std::cerr << cmd->get_name() << ": one of --target or --spec is required\n";
      return kUsage;
    }
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(o);
    if (check_model->parsed()) return cmd_check_model(o);
    if (find->parsed()) return cmd_find_countermodel(o);
    if (verify->parsed()) return cmd_verify(o);
    if (check_proof_cmd->parsed()) return cmd_check_proof(o);
    if (replay->parsed()) return cmd_replay_library(o);
    if (analyze_cmd->parsed()) return cmd_analyze(o);
    if (correspond->parsed()) return cmd_correspond(o);
  } catch (const ResourceLimitExceeded& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kLimit;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
