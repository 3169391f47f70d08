#include "causaldt/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "causaldt/causes.hpp"
#include "causaldt/diagram.hpp"
#include "causaldt/document.hpp"
#include "causaldt/dot.hpp"
#include "causaldt/error.hpp"
#include "causaldt/mapping.hpp"
#include "causaldt/responsiveness.hpp"
#include "causaldt/selftest.hpp"

namespace causaldt {

namespace {

using json = nlohmann::json;
using Names = std::vector<std::string>;

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string format = "text";

  bool as_json() const { return format == "json"; }
  void emit(const json& j) const { out << j.dump(2) << "\n"; }
};

DecisionProblem load_table(const std::string& path) {
  const Document doc = read_document(path);
  if (doc.is_table()) return doc.problem;
  if (!validate_structural(doc.model).ok) throw InputError(path + " has chance nodes downstream of decisions and no table form");
  return flatten(doc.model);
}

StructuralModel load_model(const std::string& path) {
  const Document doc = read_document(path);
  if (doc.is_table()) throw InputError(path + " is a table, not a diagram");
  return doc.model;
}

void write_or_print(const Context& ctx, const std::optional<std::string>& target, const std::string& text) {
  if (!target) {
    ctx.out << text;
    return;
  }
  std::ofstream file(*target, std::ios::binary);
  if (!file) throw InputError("cannot write " + *target);
  file << text;
}

Names split_list(const std::string& text) {
  Names out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Lists accept "a,b", repeated flags, or a bare flag for the empty list.
CLI::Option* list_option(CLI::App* app, const std::string& flag, Names& into, const std::string& help) {
  return app->add_option_function<std::vector<std::string>>(
                flag,
                [&into](const std::vector<std::string>& values) {
                  for (const auto& v : values) {
                    for (const auto& item : split_list(v)) into.push_back(item);
                  }
                },
                help)
      ->expected(0, 1);
}

json assignment_json(const Assignment& a) {
  json j = json::object();
  for (const auto& [k, v] : a) j[k] = v;
  return j;
}

int report_verdict(const Context& ctx, const Verdict& v) {
  if (ctx.as_json()) {
    json j = {{"holds", v.holds}};
    if (v.witness) {
      const Witness& w = *v.witness;
      j["witness"] = {{"state", w.state},
                      {"first", assignment_json(w.first)},
                      {"second", assignment_json(w.second)},
                      {"variable", w.variable},
                      {"first_instance", w.first_instance},
                      {"second_instance", w.second_instance}};
    }
    ctx.emit(j);
  } else {
    ctx.out << (v.holds ? "holds" : "fails: " + v.detail) << "\n";
  }
  return v.holds ? kExitOk : kExitFails;
}

int cmd_validate(const Context& ctx, const std::string& file) {
  Document doc;
  try {
    doc = read_document(file);
  } catch (const ValidationError& e) {
    if (ctx.as_json()) {
      ctx.emit({{"valid", false}, {"path", e.path()}, {"message", e.what()}});
    } else {
      ctx.out << "invalid: " << e.what() << "\n";
    }
    return kExitFails;
  }
  json j = {{"valid", true}, {"kind", to_string(doc.kind)}};
  std::string text = "valid " + to_string(doc.kind) + ": ";
  if (doc.is_table()) {
    j["decisions"] = doc.problem.decisions.size();
    j["chances"] = doc.problem.chances.size();
    j["states"] = doc.problem.states.size();
    text += "decisions=" + std::to_string(doc.problem.decisions.size()) + " chances=" + std::to_string(doc.problem.chances.size()) +
            " states=" + std::to_string(doc.problem.states.size());
  } else {
    j["nodes"] = doc.model.nodes.size();
    text += "nodes=" + std::to_string(doc.model.nodes.size());
  }
  if (ctx.as_json()) {
    ctx.emit(j);
  } else {
    ctx.out << text << "\n";
  }
  return kExitOk;
}

Assignment parse_bindings(const std::string& text) {
  Assignment out;
  for (const auto& item : split_list(text)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("binding \"" + item + "\" is not of the form var=instance");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

int cmd_causes(const Context& ctx, const std::string& file, const std::string& x, std::optional<std::size_t> max_size) {
  const DecisionProblem p = load_table(file);
  CauseSearchOptions options;
  options.max_size = max_size;
  const auto report = find_causes(p, x, options);
  if (ctx.as_json()) {
    ctx.emit({{"target", report.target},
              {"minimal_sets", report.minimal_sets},
              {"search_bound", report.search_bound},
              {"exhaustive", report.exhaustive},
              {"subsets_examined", report.subsets_examined}});
  } else {
    for (const auto& s : report.minimal_sets) ctx.out << format_set(s) << "\n";
    if (!report.exhaustive) ctx.out << "partial search: sets up to size " << report.search_bound << "\n";
  }
  return kExitOk;
}

int cmd_mapvar(const Context& ctx, const std::string& file, const Names& x, const Names& y, bool structural) {
  MappingVariable mv;
  try {
    mv = structural ? mapping_variable_structural(load_model(file), x, y) : extract_mapping_variable(load_table(file), x, y);
  } catch (const ConsistencyError& e) {
    return report_verdict(ctx, e.verdict());
  }
  if (ctx.as_json()) {
    json instances = json::array();
    for (std::size_t i = 0; i < mv.maps.size(); ++i) {
      instances.push_back({{"map", mv.instance_names[i]}, {"total", mv.is_total(i)}, {"probability", mv.distribution[i].str()}});
    }
    ctx.emit({{"name", mv.name}, {"domain", mv.domain_vars}, {"range", mv.range_vars}, {"instances", instances}});
  } else {
    ctx.out << mv.name << ": " << mv.maps.size() << " instances\n";
    for (std::size_t i = 0; i < mv.maps.size(); ++i) {
      ctx.out << "  " << mv.distribution[i].str() << "\t" << mv.instance_names[i] << "\n";
    }
  }
  return kExitOk;
}

int cmd_check_canonical(const Context& ctx, const std::string& diagram, const std::string& problem) {
  const auto verdict = check_canonical_form(load_model(diagram), load_table(problem));
  if (ctx.as_json()) {
    json violations = json::array();
    for (const auto& v : verdict.violations) {
      violations.push_back({{"node", v.node}, {"clause", v.clause}, {"explanation", v.explanation}});
    }
    ctx.emit({{"canonical", verdict.is_canonical}, {"violations", violations}});
  } else if (verdict.is_canonical) {
    ctx.out << "canonical\n";
  } else {
    for (const auto& v : verdict.violations) ctx.out << v.node << ": clause " << v.clause << ": " << v.explanation << "\n";
  }
  return verdict.is_canonical ? kExitOk : kExitFails;
}

int cmd_export_pearl(const Context& ctx, const std::string& file, const std::optional<std::string>& target) {
  const auto result = export_pearl(load_model(file));
  const auto& r = result.report;
  const std::string document = serialize_model(result.diagram, DocumentKind::diagram);
  if (target) write_or_print(ctx, target, document);
  if (ctx.as_json()) {
    json pairs = json::array();
    for (const auto& [a, b] : r.dependent_pairs) pairs.push_back({a, b});
    json j = {{"disturbances", r.disturbances},
              {"independent", r.independent},
              {"dependent_pairs", pairs},
              {"parameters_before", r.parameters_before},
              {"parameters_after", r.parameters_after}};
    if (!r.suggestion.empty()) j["suggestion"] = r.suggestion;
    if (!target) j["diagram"] = json::parse(document);
    ctx.emit(j);
  } else {
    std::string names;
    for (const auto& d : r.disturbances) names += (names.empty() ? "" : ", ") + d;
    ctx.out << "disturbances: " << names << "\n";
    ctx.out << "independent: " << (r.independent ? "yes" : "no") << "\n";
    for (const auto& [a, b] : r.dependent_pairs) ctx.out << "dependent: " << a << " and " << b << "\n";
    if (!r.suggestion.empty()) ctx.out << "suggestion: " << r.suggestion << "\n";
    ctx.out << "parameters: " << r.parameters_before << " -> " << r.parameters_after << "\n";
  }
  return r.independent ? kExitOk : kExitFails;
}

int cmd_selftest(const Context& ctx, std::uint64_t seed, std::size_t budget, const std::optional<std::string>& corpus) {
  SelftestOptions options;
  options.seed = seed;
  options.budget = budget;
  if (corpus) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(*corpus)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const Document doc = read_document(f.string());
      if (doc.is_table()) {
        options.tables.push_back(doc.problem);
      } else if (validate_structural(doc.model).ok) {
        options.models.push_back(doc.model);
        options.tables.push_back(flatten(doc.model));
      }
    }
  }
  const auto report = run_selftest(options);
  if (ctx.as_json()) {
    json props = json::array();
    for (const auto& o : report.properties) {
      json j = {{"name", o.name}, {"passed", o.passed}, {"checked", o.checked}, {"exercised", o.exercised}};
      if (!o.passed) j["witness"] = o.witness;
      props.push_back(j);
    }
    ctx.emit({{"seed", seed}, {"budget", budget}, {"passed", report.passed()}, {"properties", props}});
  } else {
    for (const auto& o : report.properties) {
      ctx.out << (o.passed ? "PASS " : "FAIL ") << o.name << " checked=" << o.checked << " exercised=" << o.exercised << "\n";
      if (!o.passed) {
        std::istringstream lines(o.witness);
        std::string line;
        while (std::getline(lines, line)) ctx.out << "    " << line << "\n";
      }
    }
  }
  return report.passed() ? kExitOk : kExitFails;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};
  CLI::App app{"Decision-theoretic causality toolkit"};
  app.name("causaldt");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", ctx.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string file, second;
  Names x, y, z, limit, dsub;
  std::string instance, target;
  std::optional<std::size_t> max_size;
  std::optional<std::string> output, corpus;
  std::optional<Names> ordering;
  bool structural = false;
  std::uint64_t seed = kDefaultSeed;
  std::size_t budget = 10000;

  auto file_arg = [&](CLI::App* sub, std::string& into, const std::string& name) {
    sub->add_option(name, into, "Input document")->required();
  };

  auto* validate = app.add_subcommand("validate", "Parse and validate a document");
  file_arg(validate, file, "FILE");

  auto* unresponsive = app.add_subcommand("unresponsive", "Check that X is unresponsive to D limited by a set");
  file_arg(unresponsive, file, "FILE");
  list_option(unresponsive, "--x", x, "Chance variables X")->required();
  list_option(unresponsive, "--limit", limit, "Limiting variables");
  unresponsive->add_option("--instance", instance, "Bindings var=instance,... for the limiting variables");
  list_option(unresponsive, "--dsub", dsub, "Decisions X must be unresponsive to");

  auto* independent = app.add_subcommand("independent", "Check that X is probabilistically independent of D");
  file_arg(independent, file, "FILE");
  list_option(independent, "--x", x, "Chance variables X")->required();

  auto* causes = app.add_subcommand("causes", "List the minimal cause sets of a variable");
  file_arg(causes, file, "FILE");
  causes->add_option("--x", target, "Target chance variable")->required();
  causes->add_option("--max-size", max_size, "Largest subset size examined");

  auto* mapvar = app.add_subcommand("mapvar", "Build the mapping variable X(Y)");
  file_arg(mapvar, file, "FILE");
  list_option(mapvar, "--x", x, "Range variables X")->required();
  list_option(mapvar, "--y", y, "Domain variables Y");
  mapvar->add_flag("--structural", structural, "Force Y on the structural model instead of reading the table");

  auto* canonicalize_cmd = app.add_subcommand("canonicalize", "Build a canonical-form influence diagram");
  file_arg(canonicalize_cmd, file, "FILE");
  canonicalize_cmd->add_option_function<std::vector<std::string>>(
      "--ordering",
      [&](const std::vector<std::string>& values) {
        ordering.emplace();
        for (const auto& v : values) {
          for (const auto& item : split_list(v)) ordering->push_back(item);
        }
      },
      "Order of the chance variables");
  canonicalize_cmd->add_option("-o,--output", output, "Output file");

  auto* flatten_cmd = app.add_subcommand("flatten", "Expand a structural model into its table");
  file_arg(flatten_cmd, file, "FILE");
  flatten_cmd->add_option("-o,--output", output, "Output file");

  auto* check = app.add_subcommand("check-canonical", "Check a diagram against canonical form for a problem");
  file_arg(check, file, "DIAGRAM");
  file_arg(check, second, "PROBLEM");

  auto* dsep = app.add_subcommand("dsep", "Test d-separation of X and Y given Z");
  file_arg(dsep, file, "DIAGRAM");
  list_option(dsep, "--x", x, "Nodes X")->required();
  list_option(dsep, "--y", y, "Nodes Y")->required();
  list_option(dsep, "--z", z, "Nodes Z");

  auto* params = app.add_subcommand("params", "Count the probabilities a diagram needs");
  file_arg(params, file, "DIAGRAM");

  auto* pearl = app.add_subcommand("export-pearl", "Rewrite a canonical diagram as a causal theory");
  file_arg(pearl, file, "DIAGRAM");
  pearl->add_option("-o,--output", output, "Output file for the rewritten diagram");

  auto* dot = app.add_subcommand("export-dot", "Render a diagram as Graphviz text");
  file_arg(dot, file, "DIAGRAM");

  auto* selftest = app.add_subcommand("selftest", "Run the property suite on seeded random instances");
  selftest->add_option("--seed", seed, "Random seed");
  selftest->add_option("--budget", budget, "Random queries per property family");
  selftest->add_option("--corpus", corpus, "Also check every document in this directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(ctx, file);
    if (unresponsive->parsed()) {
      const DecisionProblem p = load_table(file);
      if (!instance.empty() && !dsub.empty()) throw InputError("--instance and --dsub cannot be combined");
      if (!instance.empty()) return report_verdict(ctx, unresponsive_at_instance(p, x, limit, parse_bindings(instance)));
      if (!dsub.empty()) return report_verdict(ctx, unresponsive_to_subset(p, x, dsub, limit));
      return report_verdict(ctx, unresponsive_limited(p, x, limit));
    }
    if (independent->parsed()) {
      const bool holds = independent_of_decisions(load_table(file), x);
      if (ctx.as_json()) {
        ctx.emit({{"independent", holds}});
      } else {
        out << (holds ? "independent" : "dependent") << "\n";
      }
      return holds ? kExitOk : kExitFails;
    }
    if (causes->parsed()) return cmd_causes(ctx, file, target, max_size);
    if (mapvar->parsed()) return cmd_mapvar(ctx, file, x, y, structural);
    if (canonicalize_cmd->parsed()) {
      CanonicalizeOptions options;
      options.ordering = ordering;
      write_or_print(ctx, output, serialize_model(canonicalize(load_table(file), options), DocumentKind::diagram));
      return kExitOk;
    }
    if (flatten_cmd->parsed()) {
      write_or_print(ctx, output, serialize_problem(load_table(file)));
      return kExitOk;
    }
    if (check->parsed()) return cmd_check_canonical(ctx, file, second);
    if (dsep->parsed()) {
      const bool holds = d_separated(load_model(file), x, y, z);
      if (ctx.as_json()) {
        ctx.emit({{"d_separated", holds}});
      } else {
        out << (holds ? "d-separated" : "not d-separated") << "\n";
      }
      return holds ? kExitOk : kExitFails;
    }
    if (params->parsed()) {
      const auto n = count_parameters(load_model(file));
      if (ctx.as_json()) {
        ctx.emit({{"parameters", n}});
      } else {
        out << n << "\n";
      }
      return kExitOk;
    }
    if (pearl->parsed()) return cmd_export_pearl(ctx, file, output);
    if (dot->parsed()) {
      out << export_dot(load_model(file));
      return kExitOk;
    }
    if (selftest->parsed()) return cmd_selftest(ctx, seed, budget, corpus);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace causaldt
