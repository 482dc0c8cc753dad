#pragma once

// One seeded corruption of the golden model per validation rule.

#include <string>
#include <vector>

#include "fixtures.hpp"

namespace fixtures {

struct Mutation {
  std::string code;
  std::string text;
  bool strict = false;
};

inline std::vector<Mutation> mutations()
{
  const std::string abc = abc_text();
  const std::string g3_plan_head = "gqm for G3 via S3 {";
  const auto g3_plan = abc.substr(abc.find(g3_plan_head));
  std::vector<Mutation> out;
  out.push_back({"E_MISSING_FIELD", replace_once(abc, "  magnitude \"5 % more than the prior release\"\n", "")});
  out.push_back({"E_DUPLICATE_ID", abc + "\ncontext G1 \"clashes with a goal id\"\n"});
  out.push_back({"E_DANGLING_REF", replace_once(abc, "  context [C1, C2]\n", "  context [C1, C9]\n")});
  out.push_back({"E_CYCLE", replace_once(abc, "  relations [complementary \"Maintain product quality\"]\n",
                                         "  relations [complementary \"Maintain product quality\"]\n  derived_from S3\n")});
  out.push_back({"E_LEVEL", replace_once(abc, "  level 3\n", "  level 4\n")});
  out.push_back({"E_GOAL_TYPE", replace_once(abc, "  type success\n", "")});
  out.push_back({"E_METRIC_REDECL", abc + "\nmetric P : boolean\n"});
  out.push_back({"W_METRIC_REDUNDANT", abc + "\nmetric P : number unit \"USD\" period \"year\"\n"});
  out.push_back({"E_DUPLICATE_PLAN", abc + "\n" + abc.substr(abc.find("gqm for G1 via S1 {"),
                                                            abc.find("gqm for G2") - abc.find("gqm for G1 via S1 {"))});
  out.push_back({"E_PLAN_STRATEGY", abc + "\n" + replace_once(g3_plan, g3_plan_head, "gqm for G3 via S1 {")});
  out.push_back({"E_RELATION_ENDPOINT", abc + "\nrelation competing G1 G9\n"});
  out.push_back({"E_STATUS_SCOPE", replace_once(abc, "satisfied when pct_change(new_M_reqs) > 0.05",
                                                "satisfied when pct_change(new_M_reqs) > 0.05 and status(G1) = satisfied")});
  out.push_back({"E_TYPE", replace_once(abc, "satisfied when pct_change(new_M_reqs) > 0.05",
                                        "satisfied when new_M_reqs and true")});
  out.push_back({"W_NO_PLAN", abc.substr(0, abc.find(g3_plan_head))});
  out.push_back({"W_UNLISTED_METRIC", replace_once(abc, "  metric P\n", "")});
  out.push_back({"W_EMPTY", "# nothing declared yet\n", true});
  return out;
}

}  // namespace fixtures
