#pragma once

#include <string>

#include "gqms/evaluation.hpp"
#include "gqms/model.hpp"

namespace gqms {

enum class RenderFormat { Tree, Dot, Markdown };

struct RenderOptions {
  RenderFormat format = RenderFormat::Tree;
  bool show_statuses = true;
  bool color = false;
};

/// Indented goal/strategy forest; status glyphs (✓ ✗ ?) when a report is given.
std::string render_tree(const Model& model, const EvaluationReport* report = nullptr, RenderOptions options = {});

/// Graphviz digraph using only shape, label, style and fillcolor attributes.
std::string render_dot(const Model& model, const EvaluationReport* report = nullptr, RenderOptions options = {});

/// Markdown status table, findings, conflicts and per-goal explanations.
std::string render_report_md(const Model& model, const EvaluationReport& report);

}  // namespace gqms
