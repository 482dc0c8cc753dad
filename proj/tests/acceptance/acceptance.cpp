// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "../support/dot_scanner.hpp"
#include "../support/fixtures.hpp"
#include "../support/model_gen.hpp"
#include "../support/mutations.hpp"
#include "../support/reference_eval.hpp"
#include "../support/scenarios.hpp"
#include "cli.hpp"
#include "gqms/render.hpp"
#include "gqms/validate.hpp"

using namespace gqms;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double k_validate_budget_ms = 1000.0;
constexpr double k_oracle_budget_ms = 10000.0;
constexpr double k_roundtrip_budget_ms = 10000.0;
constexpr int k_oracle_cases = 10000;
constexpr int k_oracle_max_depth = 4;
constexpr double k_missing_rate = 0.2;
constexpr double k_missing_band = 0.05;  // observed missing-leaf share must stay within 20% +/- 5%
constexpr int k_roundtrip_models = 1000;
constexpr int k_dataset_cases = 500;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double elapsed_ms(Clock::time_point start)
{
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Outcome fail(std::string why) { return {false, std::move(why)}; }

Outcome golden_model_validates()
{
  const std::string path = fixtures::source_path("models/abc.gqms");
  const auto start = Clock::now();
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli({"validate", path}, out, err);
  const double ms = elapsed_ms(start);
  const Model m = fixtures::abc_model();
  if (code != 0) return fail("exit " + std::to_string(code) + ": " + err.str());
  if (!err.str().empty()) return fail("unexpected diagnostics: " + err.str());
  if (m.goals.size() != 3 || m.strategies.size() != 3 || m.plans.size() != 3) return fail("model is not 3 levels");
  for (int level = 1; level <= 3; ++level) {
    if (m.goals[static_cast<std::size_t>(level - 1)].level != level) return fail("goal levels are not 1, 2, 3");
  }
  if (ms >= k_validate_budget_ms) return fail("took " + std::to_string(ms) + " ms");
  return {true, "exit 0, 0 diagnostics, " + std::to_string(ms) + " ms"};
}

Outcome profit_threshold()
{
  const std::pair<const char*, GoalStatus> sweep[] = {
    {"114", GoalStatus::NotSatisfied}, {"115", GoalStatus::NotSatisfied}, {"116", GoalStatus::Satisfied}};
  for (const auto& [value, expected] : sweep) {
    const auto got = fixtures::evaluate_golden({{{"P", 1}, "100"}, {{"P", 2}, value}}).status("G1");
    if (got != expected) return fail(std::string("P[2]=") + value + " gave " + std::string(status_name(*got)));
  }
  if (fixtures::evaluate_golden({{{"P", 2}, ""}}).status("G1") != GoalStatus::Undetermined) {
    return fail("absent P[2] not Undetermined");
  }
  return {true, "114/115/116 -> NotSatisfied/NotSatisfied/Satisfied; absent -> Undetermined"};
}

Outcome profit_diagnostic()
{
  const auto fired = fixtures::evaluate_golden({{{"P", 2}, "110"}});
  if (fired.status("G2") != GoalStatus::Satisfied || fired.status("G1") != GoalStatus::NotSatisfied) {
    return fail("scenario did not produce G2 Satisfied, G1 NotSatisfied");
  }
  if (!fixtures::has_finding(fired, "G1", "assumption or strategy")) return fail("finding missing");
  const auto silent = fixtures::evaluate_golden({{{"P", 2}, ""}});
  if (silent.status("G1") != GoalStatus::Undetermined) return fail("G1 not Undetermined");
  if (fixtures::has_finding(silent, "G1", "assumption or strategy")) return fail("finding fired on Undetermined G1");
  return {true, "fires on (G1 NotSatisfied, G2 Satisfied); silent on G1 Undetermined"};
}

Outcome functionality_growth()
{
  const auto at_five = fixtures::evaluate_golden({{{"new_M_reqs", 1}, "100"}, {{"new_M_reqs", 2}, "105"}});
  const auto above = fixtures::evaluate_golden({{{"new_M_reqs", 1}, "100"}, {{"new_M_reqs", 2}, "105.1"}});
  if (at_five.status("G2") != GoalStatus::NotSatisfied) return fail("5.0% not NotSatisfied");
  if (above.status("G2") != GoalStatus::Satisfied) return fail("5.1% not Satisfied");
  if (at_five.status("G1") != GoalStatus::Satisfied) return fail("G1 not Satisfied in the 5.0% scenario");
  if (!fixtures::has_finding(at_five, "G2", "investigate why")) return fail("investigate-why finding missing on G2");
  return {true, "5.0% -> NotSatisfied, 5.1% -> Satisfied, investigate-why fires on G2"};
}

Outcome moscow_conditions()
{
  if (fixtures::evaluate_golden({}).status("G3") != GoalStatus::Satisfied) return fail("all-true not Satisfied");
  const std::pair<const char*, fixtures::Overrides> flips[] = {
    {"process not followed", {{{"moscow_followed", 2}, "false"}}},
    {"changed-function usage not up", {{{"changed_fn_usage", 2}, "1000"}}},
    {"MUST removal at threshold", {{{"must_removed_pct", 2}, "0.25"}}},
    {"training cost at threshold", {{{"training_cost", 2}, "20000"}}},
  };
  for (const auto& [label, flip] : flips) {
    if (fixtures::evaluate_golden(flip).status("G3") != GoalStatus::NotSatisfied) {
      return fail(std::string(label) + " did not give NotSatisfied");
    }
  }
  return {true, "all four -> Satisfied; each single flip -> NotSatisfied"};
}

Outcome evaluator_oracle()
{
  oracle::Generator gen(20240601);
  int leaves = 0;
  int missing = 0;
  const auto start = Clock::now();
  for (int i = 0; i < k_oracle_cases; ++i) {
    const oracle::Node n = gen.expr(gen.chance(0.5) ? oracle::Ty::Bool : oracle::Ty::Num, k_oracle_max_depth);
    if (oracle::depth(n) > k_oracle_max_depth) return fail("generator exceeded depth");
    const oracle::World w = gen.world(k_missing_rate);
    std::function<void(const oracle::Node&)> count = [&](const oracle::Node& x) {
      if (x.op == oracle::Op::Metric) {
        ++leaves;
        if (w.t - x.lag < 0 || !w.data.count({x.name, w.t - x.lag})) ++missing;
      } else if (x.op == oracle::Op::Status) {
        ++leaves;
        if (!w.statuses.count(x.name)) ++missing;
      }
      if (x.op != oracle::Op::Pct) {
        for (const auto& k : x.kids) count(k);
      }
    };
    count(n);
    const std::string text = oracle::render(n);
    auto parsed = parse_expr(text);
    if (!parsed) return fail("did not parse: " + text);
    const Value got = eval_expr(*parsed, oracle::env_for(w));
    if (!oracle::agrees(got, oracle::reference_eval(n, w))) {
      return fail("disagreement on " + text + " -> " + value_to_string(got));
    }
  }
  const double ms = elapsed_ms(start);
  const double share = leaves == 0 ? 0.0 : static_cast<double>(missing) / leaves;
  if (std::abs(share - k_missing_rate) > k_missing_band) {
    return fail("missing-leaf share " + std::to_string(share) + " outside band");
  }
  if (ms >= k_oracle_budget_ms) return fail("took " + std::to_string(ms) + " ms");
  return {true, std::to_string(k_oracle_cases) + " cases agree, missing-leaf share " + std::to_string(share) + ", " +
                  std::to_string(ms) + " ms"};
}

Outcome kleene_laws()
{
  // `u` is a metric with no data, so it evaluates to Unknown.
  const char* operands[] = {"true", "false", "u > 0"};
  const EvalEnv env;
  auto eval = [&](const std::string& text) { return eval_expr(*parse_expr(text), env); };
  int combos = 0;
  for (const char* a : operands) {
    for (const char* b : operands) {
      const std::string A = std::string("(") + a + ")";
      const std::string B = std::string("(") + b + ")";
      if (eval("not (" + A + " and " + B + ")") != eval("not " + A + " or not " + B)) return fail("De Morgan (and)");
      if (eval("not (" + A + " or " + B + ")") != eval("not " + A + " and not " + B)) return fail("De Morgan (or)");
      if (eval(A + " and " + B) != eval(B + " and " + A)) return fail("and commutativity");
      if (eval(A + " or " + B) != eval(B + " or " + A)) return fail("or commutativity");
      ++combos;
    }
  }
  return {true, std::to_string(combos) + " operand pairs, 4 laws each"};
}

Outcome parser_roundtrip()
{
  oracle::ModelGenerator gen(777);
  const auto start = Clock::now();
  for (int i = 0; i < k_roundtrip_models; ++i) {
    const Model m = gen.model();
    const std::string text = format_model(m);
    auto back = parse_model(text, "generated.gqms");
    if (!back) return fail("model " + std::to_string(i) + " did not parse: " + back.error().front().message());
    if (!structurally_equal(m, *back)) return fail("model " + std::to_string(i) + " changed in round trip");
  }
  const double ms = elapsed_ms(start);
  if (ms >= k_roundtrip_budget_ms) return fail("took " + std::to_string(ms) + " ms");
  return {true, std::to_string(k_roundtrip_models) + " models, " + std::to_string(ms) + " ms"};
}

Outcome mutation_suite()
{
  const auto mutations = fixtures::mutations();
  for (const auto& mutation : mutations) {
    const Model m = fixtures::parse_or_throw(mutation.text);
    const auto diags = validate(m, ValidateOptions{mutation.strict});
    if (diags.size() != 1 || code_name(diags[0].code) != mutation.code) {
      std::string got;
      for (const auto& d : diags) got += std::string(code_name(d.code)) + " ";
      return fail(mutation.code + " corruption gave: " + got);
    }
  }
  return {true, std::to_string(mutations.size()) + " rules, one code each"};
}

Outcome dataset_algebra()
{
  std::mt19937_64 rng(4242);
  const Model model = fixtures::data_model();
  for (int i = 0; i < k_dataset_cases; ++i) {
    auto rows = fixtures::random_rows(rng, 8, 0.6);
    auto csv = ingest_csv(fixtures::to_csv(rows), model);
    auto jsonl = ingest_jsonl(fixtures::to_jsonl(rows), model);
    if (!csv || !jsonl) return fail("generated data rejected");
    if (!(*csv == *jsonl)) return fail("CSV and JSONL differ");
    const std::size_t cut = rows.size() / 3;
    const std::vector<fixtures::Row> left(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(cut));
    const std::vector<fixtures::Row> right(rows.begin() + static_cast<std::ptrdiff_t>(cut), rows.end());
    const Dataset a = *ingest_csv(fixtures::to_csv(left), model);
    const Dataset b = *ingest_csv(fixtures::to_csv(right), model);
    if (!(*merge(a, Dataset{}) == a) || !(*merge(Dataset{}, a) == a)) return fail("merge identity");
    auto ab = merge(a, b);
    auto ba = merge(b, a);
    if (!ab || !ba || !(*ab == *ba)) return fail("merge commutativity");
    if (!(*ab == *csv)) return fail("merge of parts differs from whole");
  }
  return {true, std::to_string(k_dataset_cases) + " generated datasets"};
}

Outcome rendering_golden()
{
  const Model m = fixtures::abc_model();
  const auto report = fixtures::evaluate_golden({});
  const std::pair<const char*, std::string> files[] = {
    {"abc.tree.txt", render_tree(m, &report)},
    {"abc.dot", render_dot(m, &report)},
    {"abc.md", render_report_md(m, report)},
  };
  for (const auto& [name, actual] : files) {
    if (fixtures::read_text(fixtures::source_path(std::string("tests/golden/") + name)) != actual) {
      return fail(std::string(name) + " differs from fixture");
    }
  }
  const auto dot = oracle::check_dot(files[1].second);
  if (!dot.ok) return fail("DOT scanner: " + dot.error);
  return {true, "tree/dot/md byte-identical; DOT well-formed (" + std::to_string(dot.nodes) + " nodes, " +
                  std::to_string(dot.edges) + " edges)"};
}

}  // namespace

int main()
{
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
    {"golden model validates", golden_model_validates},
    {"profit threshold semantics", profit_threshold},
    {"profit diagnostic", profit_diagnostic},
    {"functionality growth semantics and diagnostic", functionality_growth},
    {"MoSCoW goal conditions", moscow_conditions},
    {"evaluator oracle agreement", evaluator_oracle},
    {"Kleene laws", kleene_laws},
    {"parser round-trip", parser_roundtrip},
    {"validation mutation suite", mutation_suite},
    {"CSV/JSONL equivalence and merge algebra", dataset_algebra},
    {"rendering golden files", rendering_golden},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
