#include "cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "ictl/checker.hpp"
#include "ictl/model_io.hpp"
#include "ictl/oracle.hpp"
#include "ictl/parser.hpp"
#include "ictl/sweep.hpp"

namespace ictl::cli {

namespace {

using json = nlohmann::ordered_json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string format = "human";

  std::string model_path;
  std::string world;
  std::string formula;
  bool c3 = false;
  std::string engine = "fixpoint";

  std::size_t max_worlds = 0;  // per-command default is set on the option
  std::size_t exhaustive_worlds = 3;
  std::size_t atoms = 2;
  std::size_t budget = 10000;
  std::size_t depth = 3;
  std::size_t samples = 200;
  std::size_t sample_max_worlds = 6;
  std::uint64_t seed = 0;
  std::string output;
  std::string mutate = "none";
};

// What a command produced, before it is rendered in the chosen format.
struct Result {
  int code = kOk;
  std::string verdict;
  json witness;  // null when absent
  json report = json::array();
  std::string human;
};

json names_of(const BirelationalModel& m, const std::vector<WorldIndex>& ws) {
  json out = json::array();
  for (WorldIndex w : ws) out.push_back(m.name(w));
  return out;
}

std::string set_text(const BirelationalModel& m, const WorldSet& s) {
  std::string out = "{";
  bool first = true;
  for (WorldIndex w : s.members()) {
    if (!first) out += ", ";
    out += m.name(w);
    first = false;
  }
  return out + "}";
}

BirelationalModel load(const std::string& path) {
  return BirelationalModel::from_raw(load_model(path));
}

WorldIndex world_of(const BirelationalModel& m, const std::string& name) {
  auto w = m.find(name);
  if (!w) throw InputError("unknown world '" + name + "'");
  return *w;
}

json witness_json(const BirelationalModel& m, const Witness& w) {
  json out;
  out["upper_world"] = w.upper_world ? json(m.name(*w.upper_world)) : json();
  if (w.path)
    out["path"] = {{"prefix", names_of(m, w.path->prefix)},
                   {"cycle", names_of(m, w.path->cycle)}};
  else
    out["path"] = nullptr;
  return out;
}

std::string witness_text(const BirelationalModel& m, const Witness& w) {
  std::string out;
  if (w.upper_world) out += "  upper world: " + m.name(*w.upper_world) + "\n";
  if (w.path) out += "  path: " + lasso_text(m, *w.path) + "\n";
  return out;
}

Result cmd_validate(const Config& cfg) {
  auto m = load(cfg.model_path);
  auto report = validate_frame(m, {.check_c3 = cfg.c3, .max_per_rule = 10});
  Result r;
  r.code = report.ok() ? kOk : kInvalidFrame;
  r.verdict = report.ok() ? "valid" : "invalid";
  r.human = report.ok() ? "frame valid\n" : "frame invalid\n";
  for (const auto& v : report.violations) {
    r.report.push_back({{"rule", rule_name(v.rule)},
                        {"worlds", names_of(m, v.witness)},
                        {"message", v.message}});
    r.human += "  " + rule_name(v.rule) + ": " + v.message + "\n";
  }
  return r;
}

const char* verdict_word(bool satisfied) {
  return satisfied ? "satisfied" : "not satisfied";
}

Result cmd_check(const Config& cfg) {
  Formula f = parse_formula(cfg.formula);
  auto m = load(cfg.model_path);
  WorldIndex w = world_of(m, cfg.world);
  m.require_valid();

  Result r;
  std::optional<bool> fixpoint, oracle;
  if (cfg.engine != "oracle") {
    CheckOutcome out = check(m, w, f);
    fixpoint = out.satisfied;
    r.report.push_back({{"engine", "fixpoint"}, {"satisfied", out.satisfied}});
    r.human += std::string("fixpoint: ") + verdict_word(out.satisfied) + "\n";
    if (out.witness) {
      r.witness = witness_json(m, *out.witness);
      r.human += witness_text(m, *out.witness);
    }
  }
  if (cfg.engine != "fixpoint") {
    oracle = oracle_check(m, w, f);
    r.report.push_back({{"engine", "oracle"}, {"satisfied", *oracle}});
    r.human += std::string("oracle: ") + verdict_word(*oracle) + "\n";
  }
  if (fixpoint && oracle && *fixpoint != *oracle) {
    r.code = kDisagreement;
    r.verdict = "disagreement";
    r.human += "engines disagree\n";
    return r;
  }
  bool sat = fixpoint ? *fixpoint : *oracle;
  r.code = sat ? kOk : kNegative;
  r.verdict = sat ? "satisfied" : "not_satisfied";
  return r;
}

Result cmd_denote(const Config& cfg) {
  Formula f = parse_formula(cfg.formula);
  auto m = load(cfg.model_path);
  Denotation d = denote(m, f);
  Result r;
  r.verdict = "ok";
  for (const auto& [g, worlds] : d.entries()) {
    r.report.push_back(
        {{"formula", print_formula(g)}, {"worlds", names_of(m, worlds.members())}});
    r.human += print_formula(g) + ": " + set_text(m, worlds) + "\n";
  }
  return r;
}

Result cmd_countermodel(const Config& cfg) {
  Formula f = parse_formula(cfg.formula);
  if (f.atoms().size() > cfg.atoms)
    throw InputError("formula has " + std::to_string(f.atoms().size()) +
                     " atoms; --atoms allows " + std::to_string(cfg.atoms));
  if (cfg.max_worlds == 0) throw InputError("--max-worlds must be positive");
  SearchBounds b;
  b.max_worlds = cfg.max_worlds;
  b.exhaustive_worlds = cfg.exhaustive_worlds;
  b.max_atoms = cfg.atoms;
  b.budget = cfg.budget;
  b.seed = cfg.seed;
  SearchResult s = find_countermodel(f, b);

  Result r;
  r.verdict = outcome_name(s.outcome);
  r.report.push_back({{"exhaustive_examined", s.exhaustive_examined},
                      {"random_examined", s.random_examined}});
  std::string counts = std::to_string(s.exhaustive_examined) +
                       " enumerated, " + std::to_string(s.random_examined) +
                       " sampled";
  switch (s.outcome) {
    case SearchOutcome::Countermodel: {
      const auto& m = *s.model;
      r.code = kOk;
      r.witness = {{"world", m.name(s.world)},
                   {"model", json::parse(model_to_json(m))}};
      r.human = "countermodel: fails at " + m.name(s.world) + " (" + counts +
                ")\n" + model_to_json(m, 2) + "\n";
      if (!cfg.output.empty()) {
        std::ofstream file(cfg.output);
        file << model_to_json(m, 2) << "\n";
        if (!file) throw InputError("cannot write '" + cfg.output + "'");
      }
      break;
    }
    case SearchOutcome::Exhausted:
      r.code = kNegative;
      r.human = "exhausted: no countermodel with at most " +
                std::to_string(cfg.max_worlds) + " worlds (" + counts + ")\n";
      break;
    case SearchOutcome::BudgetExceeded:
      r.code = kBudgetExceeded;
      r.human = "budget exceeded: no countermodel found (" + counts + ")\n";
      break;
  }
  return r;
}

Result cmd_compare(const Config& cfg) {
  CompareParams p;
  p.max_worlds = cfg.max_worlds;
  p.atoms = cfg.atoms;
  p.depth = cfg.depth;
  p.samples = cfg.samples;
  p.sample_max_worlds = cfg.sample_max_worlds;
  p.seed = cfg.seed;
  if (cfg.mutate == "ax-no-up-interior")
    p.checker.mutation = Mutation::AxWithoutUpInterior;
  CompareStats s = compare_engines(p);

  Result r;
  r.code = s.disagreement_count == 0 ? kOk : kDisagreement;
  r.verdict = s.disagreement_count == 0 ? "agree" : "disagree";
  r.report.push_back({{"models", s.models},
                      {"formulas", s.formulas},
                      {"checks", s.checks},
                      {"disagreements", s.disagreement_count}});
  r.human = "models: " + std::to_string(s.models) +
            "\nformulas: " + std::to_string(s.formulas) +
            "\nchecks: " + std::to_string(s.checks) +
            "\ndisagreements: " + std::to_string(s.disagreement_count) + "\n";
  for (const auto& d : s.disagreements) {
    json entry = {{"model", json::parse(d.model_json)},
                  {"world", d.world},
                  {"formula", d.formula},
                  {"fixpoint", d.engine},
                  {"oracle", d.oracle}};
    if (r.witness.is_null()) r.witness = entry;
    r.report.push_back(entry);
    r.human += "disagreement at " + d.world + " on " + d.formula +
               ": fixpoint " + (d.engine ? "true" : "false") + ", oracle " +
               (d.oracle ? "true" : "false") + "\n  model: " + d.model_json +
               "\n";
  }
  return r;
}

void emit(const std::string& command, const Config& cfg, const Result& r,
          std::ostream& out) {
  if (cfg.format == "json") {
    json doc = {{"command", command},
                {"verdict", r.verdict},
                {"witness", r.witness},
                {"report", r.report}};
    out << doc.dump(2) << "\n";
  } else {
    out << r.human;
  }
}

int fail(const std::string& command, const Config& cfg, int code,
         const std::string& message, std::ostream& out, std::ostream& err) {
  if (cfg.format == "json") {
    Result r;
    r.verdict = "error";
    r.report.push_back({{"error", message}, {"exit_code", code}});
    emit(command, cfg, r, out);
  } else {
    err << "error: " << message << "\n";
  }
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Config cfg;
  CLI::App app{"Model checker and countermodel search for intuitionistic CTL",
               "ictl"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"human", "json"}));

  auto* validate = app.add_subcommand("validate", "Check frame conditions");
  validate->add_option("model", cfg.model_path, "Model JSON file")->required();
  validate->add_flag("--c3", cfg.c3, "Also require the C3 condition");

  auto* check_cmd = app.add_subcommand("check", "Decide a formula at a world");
  check_cmd->add_option("model", cfg.model_path, "Model JSON file")->required();
  check_cmd->add_option("world", cfg.world, "World name")->required();
  check_cmd->add_option("formula", cfg.formula, "Formula")->required();
  check_cmd->add_option("--engine", cfg.engine, "Which semantics to run")
      ->check(CLI::IsMember({"fixpoint", "oracle", "both"}));

  auto* denote_cmd =
      app.add_subcommand("denote", "Print the worlds of every subformula");
  denote_cmd->add_option("model", cfg.model_path, "Model JSON file")->required();
  denote_cmd->add_option("formula", cfg.formula, "Formula")->required();

  auto* search = app.add_subcommand("countermodel",
                                    "Search small models for a refutation");
  search->add_option("formula", cfg.formula, "Formula")->required();
  search->add_option("--max-worlds", cfg.max_worlds, "Largest model size")
      ->default_val(3);
  search
      ->add_option("--exhaustive-worlds", cfg.exhaustive_worlds,
                   "Sizes enumerated exhaustively; larger sizes are sampled")
      ->capture_default_str();
  search->add_option("--atoms", cfg.atoms, "Most atoms the formula may use")
      ->capture_default_str();
  search->add_option("--budget", cfg.budget, "Random models to sample")
      ->capture_default_str();
  search->add_option("--seed", cfg.seed, "Sampling seed")->capture_default_str();
  search->add_option("--output", cfg.output, "Also write the model here");

  auto* compare = app.add_subcommand(
      "compare", "Differential test of the fixpoint engine against the oracle");
  compare->add_option("--max-worlds", cfg.max_worlds, "Enumerate models up to")
      ->default_val(3);
  compare->add_option("--atoms", cfg.atoms, "Atoms")->capture_default_str();
  compare->add_option("--depth", cfg.depth, "Formula depth")
      ->capture_default_str();
  compare->add_option("--samples", cfg.samples, "Extra random models")
      ->capture_default_str();
  compare
      ->add_option("--sample-max-worlds", cfg.sample_max_worlds,
                   "Largest random model")
      ->capture_default_str();
  compare->add_option("--seed", cfg.seed, "Sampling seed")
      ->capture_default_str();
  compare->add_option("--mutate", cfg.mutate)
      ->check(CLI::IsMember({"none", "ax-no-up-interior"}))
      ->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    Result r;
    if (command == "validate") r = cmd_validate(cfg);
    else if (command == "check") r = cmd_check(cfg);
    else if (command == "denote") r = cmd_denote(cfg);
    else if (command == "countermodel") r = cmd_countermodel(cfg);
    else r = cmd_compare(cfg);
    emit(command, cfg, r, out);
    return r.code;
  } catch (const ParseError& e) {
    return fail(command, cfg, kInputError, e.what(), out, err);
  } catch (const ModelFormatError& e) {
    return fail(command, cfg, kInputError, e.what(), out, err);
  } catch (const InputError& e) {
    return fail(command, cfg, kInputError, e.what(), out, err);
  } catch (const InvalidFrame& e) {
    return fail(command, cfg, kInvalidFrame, e.what(), out, err);
  } catch (const EngineDisagreement& e) {
    return fail(command, cfg, kDisagreement, e.what(), out, err);
  }
}

}  // namespace ictl::cli
