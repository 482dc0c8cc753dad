#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "gqms/dataset.hpp"
#include "gqms/evaluation.hpp"
#include "gqms/parser.hpp"
#include "gqms/patterns.hpp"
#include "gqms/render.hpp"
#include "gqms/validate.hpp"

namespace gqms {
namespace {

/// Failure with an exit code; the message is already printed.
struct Exit {
  int code;
};

std::string read_file(const std::string& path, std::ostream& err)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << fmt::format("error: cannot read '{}'\n", path);
    throw Exit{k_exit_input};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view text, std::ostream& err)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) {
    err << fmt::format("error: cannot write '{}'\n", path);
    throw Exit{k_exit_input};
  }
}

Model load_model(const std::string& path, std::ostream& err)
{
  const std::string text = read_file(path, err);
  auto parsed = parse_model(text, path);
  if (!parsed) {
    for (const auto& e : parsed.error()) err << "error: " << e.message() << '\n';
    throw Exit{k_exit_input};
  }
  return std::move(parsed).value();
}

void require_valid(const Model& model, std::ostream& err)
{
  const auto diags = validate(model);
  if (!has_errors(diags)) return;
  for (const auto& d : diags) err << d.to_string() << '\n';
  throw Exit{k_exit_failed};
}

bool is_jsonl(const std::string& path)
{
  const auto ext = std::filesystem::path(path).extension().string();
  return ext == ".jsonl" || ext == ".ndjson";
}

Dataset load_data(const Model& model, const std::vector<std::string>& paths, std::ostream& err)
{
  Dataset all;
  for (const auto& path : paths) {
    const std::string text = read_file(path, err);
    auto ingested = is_jsonl(path) ? ingest_jsonl(text, model) : ingest_csv(text, model);
    if (!ingested) {
      for (const auto& e : ingested.error()) err << fmt::format("error: {}: {}\n", path, e.to_string());
      throw Exit{k_exit_input};
    }
    auto merged = merge(all, *ingested);
    if (!merged) {
      for (const auto& c : merged.error()) err << fmt::format("error: {}: {}\n", path, c.to_string());
      throw Exit{k_exit_input};
    }
    all = std::move(merged).value();
  }
  return all;
}

std::vector<EvaluationReport> run_evaluation(const Model& model, const Dataset& data, std::int64_t from,
                                             std::int64_t to, std::ostream& err)
{
  auto reports = evaluate_series(model, data, from, to);
  if (!reports) {
    err << "error: " << reports.error().message << '\n';
    for (const auto& d : reports.error().diagnostics) err << d.to_string() << '\n';
    throw Exit{k_exit_failed};
  }
  return std::move(reports).value();
}

void usage_error(std::ostream& err, std::string_view message)
{
  err << "usage error: " << message << '\n';
  throw Exit{k_exit_usage};
}

Catalog resolve_catalog(const std::string& flag, const std::optional<std::filesystem::path>& env, std::ostream& err)
{
  std::optional<std::filesystem::path> dir;
  if (!flag.empty()) {
    dir = flag;
  } else if (env) {
    dir = *env;
  }
  if (!dir) return builtin_catalog();
  auto catalog = list_patterns(*dir);
  if (!catalog) {
    err << "error: " << catalog.error() << '\n';
    throw Exit{k_exit_input};
  }
  return std::move(catalog).value();
}

std::string tree_with_findings(const Model& model, const EvaluationReport& report)
{
  std::string out = render_tree(model, &report);
  for (const auto& f : report.findings) out += fmt::format("finding {}: {}\n", f.goal, f.message);
  for (const auto& c : report.conflicts) out += fmt::format("conflict: {}\n", c.message);
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::optional<std::filesystem::path>& patterns_env)
{
  CLI::App app{"GQM+Strategies model toolchain", "gqms"};
  app.require_subcommand(1);

  std::string model_path;
  bool strict = false;
  auto* validate_cmd = app.add_subcommand("validate", "Check a model and print diagnostics");
  validate_cmd->add_option("model", model_path, "Model file")->required();
  validate_cmd->add_flag("--strict", strict, "Fail on warnings and on empty models");

  std::vector<std::string> data_paths;
  std::int64_t period = -1;
  std::int64_t from = -1;
  std::int64_t to = -1;
  std::string eval_format = "md";
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate goal statuses against measurement data");
  eval_cmd->add_option("model", model_path, "Model file")->required();
  eval_cmd->add_option("--data", data_paths, "CSV or JSONL data file (repeatable)")->required();
  auto* period_opt = eval_cmd->add_option("--period", period, "Evaluation period")->check(CLI::NonNegativeNumber);
  auto* from_opt = eval_cmd->add_option("--from", from, "First period of a series")->check(CLI::NonNegativeNumber);
  auto* to_opt = eval_cmd->add_option("--to", to, "Last period of a series")->check(CLI::NonNegativeNumber);
  period_opt->excludes(from_opt)->excludes(to_opt);
  eval_cmd->add_option("--format", eval_format, "Output format")->check(CLI::IsMember({"md", "tree"}));

  std::string render_format;
  std::vector<std::string> render_data;
  std::int64_t render_period = -1;
  auto* render_cmd = app.add_subcommand("render", "Render a model as a tree, DOT graph or markdown report");
  render_cmd->add_option("model", model_path, "Model file")->required();
  render_cmd->add_option("--format", render_format, "Output format")
    ->required()
    ->check(CLI::IsMember({"tree", "dot", "md"}));
  render_cmd->add_option("--data", render_data, "CSV or JSONL data file (repeatable)");
  render_cmd->add_option("--period", render_period, "Evaluation period")->check(CLI::NonNegativeNumber);

  std::string patterns_dir;
  auto* patterns_cmd = app.add_subcommand("patterns", "Browse and instantiate reusable model fragments");
  patterns_cmd->add_option("--patterns", patterns_dir, "Pattern directory (overrides GQMS_PATTERNS)");
  patterns_cmd->require_subcommand(1);
  auto* list_cmd = patterns_cmd->add_subcommand("list", "List the catalog");
  list_cmd->fallthrough();
  std::string pattern_id;
  std::vector<std::string> settings;
  std::string output_path;
  auto* instantiate_cmd = patterns_cmd->add_subcommand("instantiate", "Fill a pattern's parameters");
  instantiate_cmd->fallthrough();
  instantiate_cmd->add_option("id", pattern_id, "Pattern id")->required();
  instantiate_cmd->add_option("--set", settings, "Parameter binding name=value (repeatable)");
  instantiate_cmd->add_option("-o,--output", output_path, "Write the fragment to this file");

  bool check = false;
  auto* fmt_cmd = app.add_subcommand("fmt", "Rewrite a model in canonical form");
  fmt_cmd->add_option("model", model_path, "Model file")->required();
  fmt_cmd->add_flag("--check", check, "Only report whether the file is canonical");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "usage error: " << e.what() << '\n';
    return k_exit_usage;
  }

  try {
    if (*validate_cmd) {
      const Model model = load_model(model_path, err);
      const auto diags = validate(model, ValidateOptions{strict});
      for (const auto& d : diags) err << d.to_string() << '\n';
      if (has_errors(diags) || (strict && !diags.empty())) return k_exit_failed;
      return k_exit_ok;
    }

    if (*eval_cmd) {
      const bool series = from_opt->count() > 0 || to_opt->count() > 0;
      if (series && (from_opt->count() == 0 || to_opt->count() == 0)) usage_error(err, "--from and --to go together");
      if (!series && period_opt->count() == 0) usage_error(err, "give --period N or --from A --to B");
      if (series && from > to) usage_error(err, "--from must not exceed --to");
      const Model model = load_model(model_path, err);
      require_valid(model, err);
      const Dataset data = load_data(model, data_paths, err);
      const auto reports = series ? run_evaluation(model, data, from, to, err)
                                  : run_evaluation(model, data, period, period, err);
      for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i > 0) out << '\n';
        if (eval_format == "md") {
          out << render_report_md(model, reports[i]);
        } else {
          if (series) out << fmt::format("period {}\n", reports[i].period);
          out << tree_with_findings(model, reports[i]);
        }
      }
      return k_exit_ok;
    }

    if (*render_cmd) {
      const bool has_data = !render_data.empty();
      const bool has_period = render_period >= 0;
      if (has_data != has_period) usage_error(err, "--data and --period go together");
      if (render_format == "md" && !has_data) usage_error(err, "--format md needs --data and --period");
      const Model model = load_model(model_path, err);
      require_valid(model, err);
      std::optional<EvaluationReport> report;
      if (has_data) {
        const Dataset data = load_data(model, render_data, err);
        report = run_evaluation(model, data, render_period, render_period, err).front();
      }
      const EvaluationReport* rp = report ? &*report : nullptr;
      if (render_format == "tree") {
        out << render_tree(model, rp);
      } else if (render_format == "dot") {
        out << render_dot(model, rp);
      } else {
        out << render_report_md(model, *report);
      }
      return k_exit_ok;
    }

    if (*patterns_cmd) {
      const Catalog catalog = resolve_catalog(patterns_dir, patterns_env, err);
      for (const auto& w : catalog.warnings) err << "warning: " << w << '\n';
      if (*list_cmd) {
        for (const auto& p : catalog.patterns) {
          out << fmt::format("{}  {}  [{}]\n", p.id, p.title, goal_type_keyword(p.goal_type));
          std::vector<std::string> params;
          for (const auto& param : p.params) {
            params.push_back(param.default_value ? fmt::format("{}={}", param.name, *param.default_value)
                                                 : param.name);
          }
          out << fmt::format("  params: {}\n", fmt::join(params, ", "));
        }
        return k_exit_ok;
      }
      Binding binding;
      for (const auto& s : settings) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) usage_error(err, fmt::format("--set expects name=value, got '{}'", s));
        if (!binding.emplace(s.substr(0, eq), s.substr(eq + 1)).second) {
          usage_error(err, fmt::format("parameter '{}' set twice", s.substr(0, eq)));
        }
      }
      const Pattern* pattern = catalog.find(pattern_id);
      if (pattern == nullptr) {
        err << fmt::format("error: unknown pattern '{}'\n", pattern_id);
        return k_exit_failed;
      }
      auto text = instantiate(*pattern, binding);
      if (!text) {
        err << "error: " << text.error() << '\n';
        return k_exit_failed;
      }
      if (output_path.empty()) {
        out << *text;
      } else {
        write_file(output_path, *text, err);
      }
      return k_exit_ok;
    }

    if (*fmt_cmd) {
      const std::string original = read_file(model_path, err);
      auto parsed = parse_model(original, model_path);
      if (!parsed) {
        for (const auto& e : parsed.error()) err << "error: " << e.message() << '\n';
        return k_exit_input;
      }
      const std::string canonical = format_model(*parsed);
      if (canonical == original) return k_exit_ok;
      if (check) {
        err << fmt::format("{} is not in canonical form\n", model_path);
        return k_exit_failed;
      }
      write_file(model_path, canonical, err);
      return k_exit_ok;
    }
  } catch (const Exit& e) {
    return e.code;
  }
  return k_exit_usage;
}

}  // namespace gqms
