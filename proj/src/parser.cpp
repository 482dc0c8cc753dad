#include "gqms/parser.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <set>

#include <fmt/format.h>

#include "token_cursor.hpp"

namespace gqms {
namespace {

using detail::ParseFailure;
using detail::TokenCursor;

constexpr std::string_view k_goal_fields =
  "goal field (level, type, activity, focus, object, magnitude, timeframe, scope, constraints, relations, "
  "derived_from, context, assumptions) or '}'";
constexpr std::string_view k_strategy_fields = "strategy field (decision, activities, context, assumptions) or '}'";
constexpr std::string_view k_mgoal_fields = "mgoal field (object, purpose, focus, viewpoint, context) or '}'";
constexpr std::string_view k_declaration =
  "declaration (goal, strategy, context, assumption, gqm, metric, relation)";

class ModelParser {
 public:
  ModelParser(const std::vector<Token>& tokens, std::vector<ParseError>& errors)
      : tokens_(tokens), c_(tokens), errors_(errors)
  {
  }

  void parse(Model& model)
  {
    while (!c_.at_end()) {
      const std::size_t start = c_.position();
      try {
        parse_declaration(model);
      } catch (const ParseFailure& f) {
        errors_.push_back(f.error);
        synchronize(start);
      }
    }
  }

 private:
  // Skips the remainder of a broken declaration: up to the brace that
  // closes it, or up to the next token sequence that starts a declaration.
  void synchronize(std::size_t start)
  {
    int depth = 0;
    for (std::size_t i = start; i < c_.position(); ++i) {
      if (tokens_[i].is(TokenKind::LBrace)) ++depth;
      if (tokens_[i].is(TokenKind::RBrace)) --depth;
    }
    if (c_.position() == start) c_.next();
    while (!c_.at_end()) {
      if (declaration_starts_here()) return;
      const Token& t = c_.next();
      if (t.is(TokenKind::LBrace)) ++depth;
      if (t.is(TokenKind::RBrace) && --depth <= 0) return;
    }
  }

  [[nodiscard]] bool declaration_starts_here() const
  {
    const Token& t0 = c_.peek();
    const Token& t1 = c_.peek(1);
    const Token& t2 = c_.peek(2);
    if (t0.is_word("goal")) return t1.is(TokenKind::Identifier) && t2.is(TokenKind::LBrace);
    if (t0.is_word("strategy")) return t1.is(TokenKind::Identifier) && t2.is_word("for");
    if (t0.is_word("gqm")) return t1.is_word("for");
    if (t0.is_word("relation")) return t1.is(TokenKind::Identifier);
    if (t0.is_word("context") || t0.is_word("assumption")) {
      return t1.is(TokenKind::Identifier) && t2.is(TokenKind::String);
    }
    if (t0.is_word("metric")) return t1.is(TokenKind::Identifier) && t2.is(TokenKind::Colon);
    return false;
  }

  void parse_declaration(Model& model)
  {
    const Token& t = c_.peek();
    if (t.is_word("goal")) {
      model.goals.push_back(parse_goal());
    } else if (t.is_word("strategy")) {
      model.strategies.push_back(parse_strategy());
    } else if (t.is_word("context")) {
      auto [id, statement, span] = parse_statement_decl("context");
      model.contexts.push_back(ContextFactor{std::move(id), std::move(statement), std::move(span)});
    } else if (t.is_word("assumption")) {
      auto [id, statement, span] = parse_statement_decl("assumption");
      model.assumptions.push_back(Assumption{std::move(id), std::move(statement), std::move(span)});
    } else if (t.is_word("gqm")) {
      model.plans.push_back(parse_plan());
    } else if (t.is_word("metric")) {
      model.metrics.push_back(parse_metric());
    } else if (t.is_word("relation")) {
      model.relations.push_back(parse_relation());
    } else {
      c_.fail(std::string(k_declaration));
    }
  }

  // Records a duplicated field and keeps going; the later value wins.
  void note_field(std::set<std::string>& seen, const Token& field)
  {
    if (!seen.insert(field.text).second) {
      errors_.push_back(ParseError{field.span, fmt::format("at most one '{}' field", field.text),
                                   fmt::format("duplicate '{}'", field.text)});
    }
  }

  const Token& field_name(std::string_view expected)
  {
    if (!c_.at(TokenKind::Identifier)) c_.fail(std::string(expected));
    return c_.next();
  }

  [[noreturn]] static void fail_at(const Token& tok, std::string_view expected)
  {
    throw ParseFailure{ParseError{tok.span, std::string(expected), describe(tok)}};
  }

  std::string string_value() { return c_.expect(TokenKind::String).text; }

  std::vector<std::string> string_list()
  {
    std::vector<std::string> out;
    c_.expect(TokenKind::LBracket);
    if (c_.accept(TokenKind::RBracket)) return out;
    do {
      out.push_back(string_value());
    } while (c_.accept(TokenKind::Comma));
    c_.expect(TokenKind::RBracket);
    return out;
  }

  std::vector<std::string> identifier_list(std::string_view what)
  {
    std::vector<std::string> out;
    c_.expect(TokenKind::LBracket);
    if (c_.accept(TokenKind::RBracket)) return out;
    do {
      out.push_back(c_.expect_identifier(what).text);
    } while (c_.accept(TokenKind::Comma));
    c_.expect(TokenKind::RBracket);
    return out;
  }

  RelationTarget relation_target()
  {
    if (c_.at(TokenKind::String)) return RelationTarget{c_.next().text, false};
    return RelationTarget{c_.expect_identifier("goal identifier or string label").text, true};
  }

  std::vector<RelationRef> relation_list()
  {
    std::vector<RelationRef> out;
    c_.expect(TokenKind::LBracket);
    if (c_.accept(TokenKind::RBracket)) return out;
    do {
      const Token& first = c_.peek();
      RelationRef ref;
      if (first.is(TokenKind::Identifier)) {
        const auto kind = relation_kind_from_keyword(first.text);
        if (!kind) c_.fail("relation kind (complementary, competing) or string label");
        c_.next();
        ref.kind = kind;
        ref.target = relation_target();
      } else if (first.is(TokenKind::String)) {
        ref.target = RelationTarget{c_.next().text, false};
      } else {
        c_.fail("relation entry");
      }
      ref.span = c_.span_since(first);
      out.push_back(std::move(ref));
    } while (c_.accept(TokenKind::Comma));
    c_.expect(TokenKind::RBracket);
    return out;
  }

  int level_value()
  {
    const Token& n = c_.peek();
    int level = 0;
    if (n.is(TokenKind::Number) && n.integral) {
      const auto [ptr, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), level);
      if (ec != std::errc() || ptr != n.text.data() + n.text.size()) level = 0;
    }
    if (level <= 0) c_.fail("positive integer level");
    c_.next();
    return level;
  }

  Goal parse_goal()
  {
    const Token& first = c_.expect_word("goal");
    Goal g;
    g.id = c_.expect_identifier("goal identifier").text;
    c_.expect(TokenKind::LBrace);
    std::set<std::string> seen;
    while (!c_.accept(TokenKind::RBrace)) {
      const Token& field = field_name(k_goal_fields);
      const std::string& name = field.text;
      note_field(seen, field);
      if (name == "level") {
        g.level = level_value();
      } else if (name == "type") {
        const Token& t = c_.peek();
        const auto type = t.is(TokenKind::Identifier) ? goal_type_from_keyword(t.text) : std::nullopt;
        if (!type) c_.fail("goal type (growth, success, maintenance, specific_focus)");
        c_.next();
        g.goal_type = type;
      } else if (name == "activity") {
        g.activity = string_value();
      } else if (name == "focus") {
        g.focus = string_value();
      } else if (name == "object") {
        g.object = string_value();
      } else if (name == "magnitude") {
        g.magnitude = string_value();
      } else if (name == "timeframe") {
        g.timeframe = string_value();
      } else if (name == "scope") {
        g.scope = string_value();
      } else if (name == "constraints") {
        g.constraints = string_list();
      } else if (name == "relations") {
        g.relations = relation_list();
      } else if (name == "derived_from") {
        g.derived_from = c_.expect_identifier("strategy identifier").text;
      } else if (name == "context") {
        g.context_refs = identifier_list("context identifier");
      } else if (name == "assumptions") {
        g.assumption_refs = identifier_list("assumption identifier");
      } else {
        fail_at(field, k_goal_fields);
      }
    }
    g.span = c_.span_since(first);
    return g;
  }

  Strategy parse_strategy()
  {
    const Token& first = c_.expect_word("strategy");
    Strategy s;
    s.id = c_.expect_identifier("strategy identifier").text;
    c_.expect_word("for");
    s.parent_goal = c_.expect_identifier("goal identifier").text;
    c_.expect(TokenKind::LBrace);
    std::set<std::string> seen;
    while (!c_.accept(TokenKind::RBrace)) {
      const Token& field = field_name(k_strategy_fields);
      note_field(seen, field);
      if (field.text == "decision") {
        s.decision = string_value();
      } else if (field.text == "activities") {
        s.activities = string_list();
      } else if (field.text == "context") {
        s.context_refs = identifier_list("context identifier");
      } else if (field.text == "assumptions") {
        s.assumption_refs = identifier_list("assumption identifier");
      } else {
        fail_at(field, k_strategy_fields);
      }
    }
    s.span = c_.span_since(first);
    return s;
  }

  struct StatementDecl {
    std::string id;
    std::string statement;
    SourceSpan span;
  };

  StatementDecl parse_statement_decl(std::string_view keyword)
  {
    const Token& first = c_.expect_word(keyword);
    StatementDecl d;
    d.id = c_.expect_identifier(fmt::format("{} identifier", keyword)).text;
    d.statement = string_value();
    d.span = c_.span_since(first);
    return d;
  }

  MetricDecl parse_metric()
  {
    const Token& first = c_.expect_word("metric");
    MetricDecl m;
    m.id = c_.expect_identifier("metric identifier").text;
    c_.expect(TokenKind::Colon);
    if (c_.accept_word("number")) {
      m.value_kind = ValueKind::Number;
    } else if (c_.accept_word("boolean")) {
      m.value_kind = ValueKind::Boolean;
    } else {
      c_.fail("metric kind (number, boolean)");
    }
    std::set<std::string> seen;
    while (c_.at_word("unit") || c_.at_word("period")) {
      const Token& opt = c_.next();
      note_field(seen, opt);
      (opt.text == "unit" ? m.unit : m.period_label) = string_value();
    }
    m.span = c_.span_since(first);
    return m;
  }

  Relation parse_relation()
  {
    const Token& first = c_.expect_word("relation");
    Relation r;
    const Token& kind_tok = c_.peek();
    const auto kind = kind_tok.is(TokenKind::Identifier) ? relation_kind_from_keyword(kind_tok.text) : std::nullopt;
    if (!kind) c_.fail("relation kind (complementary, competing)");
    c_.next();
    r.kind = *kind;
    r.from = c_.expect_identifier("goal identifier").text;
    r.to = relation_target();
    r.span = c_.span_since(first);
    return r;
  }

  MGoal parse_mgoal()
  {
    const Token& first = c_.expect_word("mgoal");
    MGoal mg;
    c_.expect(TokenKind::LBrace);
    std::set<std::string> seen;
    while (!c_.accept(TokenKind::RBrace)) {
      const Token& field = field_name(k_mgoal_fields);
      note_field(seen, field);
      if (field.text == "object") {
        mg.object = string_value();
      } else if (field.text == "purpose") {
        mg.purpose = string_value();
      } else if (field.text == "focus") {
        mg.focus = string_value();
      } else if (field.text == "viewpoint") {
        mg.viewpoint = string_value();
      } else if (field.text == "context") {
        mg.context = string_value();
      } else {
        fail_at(field, k_mgoal_fields);
      }
    }
    mg.span = c_.span_since(first);
    return mg;
  }

  InterpretationModel parse_interpretation()
  {
    const Token& first = c_.expect_word("interpretation");
    InterpretationModel im;
    c_.expect(TokenKind::LBrace);
    bool have_satisfied = false;
    while (!c_.at(TokenKind::RBrace)) {
      const Token& head = c_.peek();
      if (head.is_word("satisfied")) {
        c_.next();
        c_.expect_word("when");
        if (have_satisfied) {
          errors_.push_back(ParseError{head.span, "at most one 'satisfied when' clause", "duplicate clause"});
        }
        im.satisfied_when = detail::parse_expression(c_);
        have_satisfied = true;
      } else if (head.is_word("diagnostic")) {
        c_.next();
        DiagnosticRule rule;
        rule.message = string_value();
        c_.expect_word("when");
        rule.condition = detail::parse_expression(c_);
        rule.span = c_.span_since(head);
        im.diagnostics.push_back(std::move(rule));
      } else {
        c_.fail(have_satisfied ? "'diagnostic' or '}'" : "'satisfied when'");
      }
    }
    if (!have_satisfied) c_.fail("'satisfied when'");
    c_.next();
    im.span = c_.span_since(first);
    return im;
  }

  GQMPlan parse_plan()
  {
    const Token& first = c_.expect_word("gqm");
    GQMPlan p;
    c_.expect_word("for");
    p.goal_ref = c_.expect_identifier("goal identifier").text;
    if (c_.accept_word("via")) p.strategy_ref = c_.expect_identifier("strategy identifier").text;
    c_.expect(TokenKind::LBrace);
    bool have_mgoal = false;
    bool have_interpretation = false;
    while (!c_.at(TokenKind::RBrace)) {
      const Token& head = c_.peek();
      if (head.is_word("mgoal")) {
        if (have_mgoal) errors_.push_back(ParseError{head.span, "at most one 'mgoal' block", "duplicate 'mgoal'"});
        p.mgoal = parse_mgoal();
        have_mgoal = true;
      } else if (head.is_word("question")) {
        const Token& q0 = c_.next();
        Question q;
        q.id = c_.expect_identifier("question identifier").text;
        q.text = string_value();
        q.span = c_.span_since(q0);
        p.questions.push_back(std::move(q));
      } else if (head.is_word("metric")) {
        c_.next();
        p.metric_refs.push_back(c_.expect_identifier("metric identifier").text);
      } else if (head.is_word("interpretation")) {
        if (have_interpretation) {
          errors_.push_back(ParseError{head.span, "at most one 'interpretation' block", "duplicate 'interpretation'"});
        }
        p.interpretation = parse_interpretation();
        have_interpretation = true;
      } else {
        c_.fail(have_interpretation ? "'question', 'metric' or '}'" : "'mgoal', 'question', 'metric' or 'interpretation'");
      }
    }
    if (!have_interpretation) c_.fail("'interpretation'");
    c_.next();
    p.span = c_.span_since(first);
    return p;
  }

  const std::vector<Token>& tokens_;
  TokenCursor c_;
  std::vector<ParseError>& errors_;
};

}  // namespace

Result<Model, std::vector<ParseError>> parse_model(std::string_view text, std::string_view file_name)
{
  const LexOutput lexed = tokenize(text, file_name);
  std::vector<ParseError> errors;
  for (const auto& e : lexed.errors) errors.push_back(ParseError{e.span, "valid token", e.message});

  Model model;
  model.name = std::filesystem::path(std::string(file_name)).stem().string();
  ModelParser(lexed.tokens, errors).parse(model);

  if (!errors.empty()) {
    std::stable_sort(errors.begin(), errors.end(), [](const ParseError& a, const ParseError& b) {
      return std::pair(a.span.start_line, a.span.start_col) < std::pair(b.span.start_line, b.span.start_col);
    });
    return errors;
  }
  return model;
}

}  // namespace gqms
