#include "pdl/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <optional>

#include "pdl/decision.hpp"
#include "pdl/errors.hpp"
#include "pdl/extraction.hpp"
#include "pdl/graph.hpp"
#include "pdl/kripke.hpp"
#include "pdl/normal_form.hpp"
#include "pdl/oracle.hpp"
#include "pdl/parser.hpp"
#include "pdl/problem.hpp"

namespace pdl {

namespace {

struct Flags {
  std::string input;
  std::string tbox;
  std::string algorithm = "backtrack";
  std::string encoding = "direct";
  std::string dot;
  std::string model;
  std::string var;
  std::string formula;
  std::size_t max_nodes = 1'000'000;
  std::size_t max_states = 3;
  bool json = false;
  bool quiet = false;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

void report(std::ostream& out, const std::string& word, const SolveStats& stats, const Flags& flags) {
  if (flags.json) {
    nlohmann::json j{{"verdict", word},
                     {"algorithm", stats.algorithm},
                     {"nodes", stats.nodes},
                     {"iterations", stats.iterations},
                     {"millis", stats.millis}};
    out << j.dump() << '\n';
    return;
  }
  out << word << '\n';
  if (flags.quiet) return;
  out << "algorithm: " << stats.algorithm << '\n'
      << "nodes: " << stats.nodes << '\n'
      << "iterations: " << stats.iterations << '\n'
      << "millis: " << stats.millis << '\n';
}

SolveOptions solve_options(const Flags& flags) {
  SolveOptions options;
  options.graph.max_nodes = flags.max_nodes;
  return options;
}

// The ABox file plus the assumptions of an optional separate TBox file.
ProblemFile load_abox_problem(const Flags& flags) {
  ProblemFile problem = load_problem(flags.input);
  if (!problem.formulas.empty()) throw std::runtime_error("'" + flags.input + "' is a formula problem; use 'sat'");
  if (!flags.tbox.empty()) {
    const ProblemFile tbox = load_problem(flags.tbox);
    if (!tbox.formulas.empty() || !tbox.assertions.empty())
      throw std::runtime_error("'" + flags.tbox + "' must contain only an 'assume:' section");
    problem.assumptions.insert(problem.assumptions.end(), tbox.assumptions.begin(), tbox.assumptions.end());
  }
  return problem;
}

Verdict solve_abox(const std::vector<Assertion>& abox, const std::vector<Formula>& tbox, const Flags& flags) {
  if (flags.algorithm == "cached") return check_abox_sat(abox, tbox, solve_options(flags));
  return check_abox_sat_backtracking(abox, tbox, solve_options(flags));
}

void export_artifacts(const Verdict& verdict, const std::optional<Extraction>& extraction, const Flags& flags) {
  if (!flags.dot.empty() && verdict.graph) write_file(flags.dot, to_dot(*verdict.graph));
  if (!flags.model.empty() && extraction) write_file(flags.model, serialize(extraction->model));
}

int cmd_sat(const Flags& flags, std::ostream& out) {
  const ProblemFile problem = load_problem(flags.input);
  if (problem.is_abox()) throw std::runtime_error("'" + flags.input + "' is an ABox problem; use 'absat'");
  const Verdict verdict = check_sat(problem.formulas, problem.assumptions, solve_options(flags));
  std::optional<Extraction> extraction;
  if (verdict.satisfiable) {
    extraction = extract_model(verdict);
    if (!validate(extraction->model, problem.assumptions) ||
        !satisfies_at(extraction->model, extraction->root_state, problem.formulas))
      throw InternalError("extracted model does not satisfy the problem");
  }
  export_artifacts(verdict, extraction, flags);
  report(out, verdict.satisfiable ? "SAT" : "UNSAT", verdict.stats, flags);
  return verdict.satisfiable ? kExitSat : kExitUnsat;
}

int cmd_absat(const Flags& flags, std::ostream& out) {
  const ProblemFile problem = load_abox_problem(flags);
  const Verdict verdict = solve_abox(problem.assertions, problem.assumptions, flags);
  std::optional<Extraction> extraction;
  if (verdict.satisfiable) {
    extraction = extract_model(verdict);
    if (!validate(extraction->model, problem.assumptions) || !satisfies_abox(extraction->model, problem.assertions))
      throw InternalError("extracted model does not satisfy the ABox");
  }
  export_artifacts(verdict, extraction, flags);
  report(out, verdict.satisfiable ? "SAT" : "UNSAT", verdict.stats, flags);
  return verdict.satisfiable ? kExitSat : kExitUnsat;
}

int cmd_instance(const Flags& flags, std::ostream& out) {
  const ProblemFile problem = load_abox_problem(flags);
  const Formula phi = parse_formula(flags.formula);
  const auto encoding = flags.encoding == "fresh-prop" ? InstanceEncoding::FreshProp : InstanceEncoding::Direct;
  const AboxProblem reduced = instance_problem(problem.assertions, problem.assumptions, phi, flags.var, encoding);
  const Verdict verdict = solve_abox(reduced.abox, reduced.tbox, flags);
  export_artifacts(verdict, std::nullopt, flags);
  report(out, verdict.satisfiable ? "NOT ENTAILED" : "ENTAILED", verdict.stats, flags);
  return verdict.satisfiable ? kExitUnsat : kExitSat;
}

int cmd_oracle(const Flags& flags, std::ostream& out) {
  ProblemFile problem = flags.tbox.empty() ? load_problem(flags.input) : load_abox_problem(flags);
  const OracleProblem oracle{problem.formulas, problem.assertions, problem.assumptions};
  const auto model = find_small_model(oracle, OracleOptions{flags.max_states});
  const std::string bound = "(≤" + std::to_string(flags.max_states) + ")";
  if (model && !flags.model.empty()) write_file(flags.model, serialize(*model));
  // The oracle has no tableau statistics; only the verdict line is printed.
  Flags terse = flags;
  terse.quiet = true;
  SolveStats stats;
  stats.algorithm = "oracle";
  report(out, (model ? "SAT" : "NO-MODEL") + bound, stats, terse);
  return model ? kExitSat : kExitNoModel;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision procedure for propositional dynamic logic with global caching"};
  app.require_subcommand(1);
  Flags flags;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--dot", flags.dot, "Write the and-or graph in Graphviz format");
    cmd->add_option("--max-nodes", flags.max_nodes, "Node cap (resource limit)")->check(CLI::PositiveNumber);
    cmd->add_flag("--json", flags.json, "Print a JSON result record");
    cmd->add_flag("--quiet,-q", flags.quiet, "Print only the verdict line");
  };
  auto abox_inputs = [&](CLI::App* cmd) {
    cmd->add_option("abox", flags.input, "ABox problem file")->required()->check(CLI::ExistingFile);
    cmd->add_option("tbox", flags.tbox, "TBox file (an 'assume:' section)")->check(CLI::ExistingFile);
    cmd->add_option("--algorithm", flags.algorithm, "cached | backtrack")
        ->check(CLI::IsMember({"cached", "backtrack"}));
  };

  CLI::App* sat = app.add_subcommand("sat", "Satisfiability of a formula set w.r.t. global assumptions");
  sat->add_option("input", flags.input, "Problem file")->required()->check(CLI::ExistingFile);
  sat->add_option("--extract-model", flags.model, "Write the extracted Kripke model");
  common(sat);

  CLI::App* absat = app.add_subcommand("absat", "Consistency of an ABox w.r.t. a TBox");
  abox_inputs(absat);
  absat->add_option("--extract-model", flags.model, "Write the extracted Kripke model");
  common(absat);

  CLI::App* instance = app.add_subcommand("instance", "Instance checking (A, T) |= F(a)");
  abox_inputs(instance);
  instance->add_option("--var", flags.var, "State variable a")->required();
  instance->add_option("--formula", flags.formula, "Query formula F")->required();
  instance->add_option("--encoding", flags.encoding, "direct | fresh-prop")
      ->check(CLI::IsMember({"direct", "fresh-prop"}));
  common(instance);

  CLI::App* oracle = app.add_subcommand("oracle", "Search all Kripke models up to a state bound");
  oracle->add_option("input", flags.input, "Problem file")->required()->check(CLI::ExistingFile);
  oracle->add_option("tbox", flags.tbox, "TBox file for an ABox problem")->check(CLI::ExistingFile);
  oracle->add_option("--max-states", flags.max_states, "State bound k (at most 4)")->check(CLI::Range(1, 4));
  oracle->add_option("--extract-model", flags.model, "Write the model found");
  oracle->add_flag("--json", flags.json, "Print a JSON result record");
  oracle->add_flag("--quiet,-q", flags.quiet, "Print only the verdict line");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (sat->parsed()) return cmd_sat(flags, out);
    if (absat->parsed()) return cmd_absat(flags, out);
    if (instance->parsed()) return cmd_instance(flags, out);
    return cmd_oracle(flags, out);
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace pdl
