// Copyright 2026 The abtedit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

// Editor expressions and their labelled small-step semantics.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abtedit/abt.hpp"
#include "abtedit/error.hpp"
#include "abtedit/logic.hpp"
#include "abtedit/scanner.hpp"
#include "abtedit/zipper.hpp"

namespace abtedit {

class EditorExpr {
 public:
  enum class Kind { kPrefix, kCond, kSeq, kRec, kRecVar, kNil };

  static EditorExpr nil() { return EditorExpr(Node{Kind::kNil}); }
  static EditorExpr prefix(Apc cmd, EditorExpr next) {
    Node n{Kind::kPrefix};
    n.cmd = std::move(cmd);
    n.lhs = share(std::move(next));
    return EditorExpr(std::move(n));
  }
  static EditorExpr cond(Condition phi, EditorExpr then, EditorExpr otherwise) {
    Node n{Kind::kCond};
    n.phi = std::move(phi);
    n.lhs = share(std::move(then));
    n.rhs = share(std::move(otherwise));
    return EditorExpr(std::move(n));
  }
  static EditorExpr seq(EditorExpr first, EditorExpr second) {
    Node n{Kind::kSeq};
    n.lhs = share(std::move(first));
    n.rhs = share(std::move(second));
    return EditorExpr(std::move(n));
  }
  static EditorExpr rec(std::string var, EditorExpr body) {
    Node n{Kind::kRec};
    n.var = std::move(var);
    n.lhs = share(std::move(body));
    return EditorExpr(std::move(n));
  }
  static EditorExpr rec_var(std::string var) {
    Node n{Kind::kRecVar};
    n.var = std::move(var);
    return EditorExpr(std::move(n));
  }

  Kind kind() const { return node_->kind; }
  bool is_nil() const { return kind() == Kind::kNil; }
  const Apc& command() const { return node_->cmd; }
  const Condition& condition() const { return *node_->phi; }
  const std::string& var() const { return node_->var; }
  // Continuation of a prefix, then-branch, first of a sequence, rec body.
  const EditorExpr& first() const { return *node_->lhs; }
  // Else-branch, second of a sequence.
  const EditorExpr& second() const { return *node_->rhs; }

  std::size_t size() const {
    switch (kind()) {
      case Kind::kPrefix:
      case Kind::kRec:
        return 1 + first().size();
      case Kind::kCond:
      case Kind::kSeq:
        return 1 + first().size() + second().size();
      default:
        return 1;
    }
  }

  bool operator==(const EditorExpr& other) const {
    if (node_ == other.node_) return true;
    if (kind() != other.kind()) return false;
    switch (kind()) {
      case Kind::kNil:
        return true;
      case Kind::kPrefix:
        return command() == other.command() && first() == other.first();
      case Kind::kCond:
        return condition() == other.condition() && first() == other.first() &&
               second() == other.second();
      case Kind::kSeq:
        return first() == other.first() && second() == other.second();
      case Kind::kRec:
        return var() == other.var() && first() == other.first();
      case Kind::kRecVar:
        return var() == other.var();
    }
    return false;
  }

 private:
  struct Node {
    Kind kind;
    Apc cmd{};
    std::optional<Condition> phi{};
    std::string var{};
    std::shared_ptr<const EditorExpr> lhs{}, rhs{};
  };

  static std::shared_ptr<const EditorExpr> share(EditorExpr e) {
    return std::make_shared<const EditorExpr>(std::move(e));
  }

  explicit EditorExpr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  std::shared_ptr<const Node> node_;
};

// Prints in the script grammar; parse_editor_expr(to_string(e)) == e.
inline std::string to_string(const EditorExpr& e) {
  switch (e.kind()) {
    case EditorExpr::Kind::kNil:
      return "nil";
    case EditorExpr::Kind::kPrefix:
      return to_string(e.command()) + ". " + to_string(e.first());
    case EditorExpr::Kind::kCond:
      return "(" + to_string(e.condition()) + " => " + to_string(e.first()) + " | " +
             to_string(e.second()) + ")";
    case EditorExpr::Kind::kSeq:
      return "(" + to_string(e.first()) + " >> " + to_string(e.second()) + ")";
    case EditorExpr::Kind::kRec:
      return "(rec " + e.var() + ". " + to_string(e.first()) + ")";
    case EditorExpr::Kind::kRecVar:
      return e.var();
  }
  return {};
}

namespace detail {

inline void collect_free_recvars(const EditorExpr& e, std::vector<std::string>& bound,
                                 std::set<std::string>& out) {
  switch (e.kind()) {
    case EditorExpr::Kind::kRecVar:
      if (std::find(bound.begin(), bound.end(), e.var()) == bound.end()) {
        out.insert(e.var());
      }
      return;
    case EditorExpr::Kind::kRec:
      bound.push_back(e.var());
      collect_free_recvars(e.first(), bound, out);
      bound.pop_back();
      return;
    case EditorExpr::Kind::kPrefix:
      collect_free_recvars(e.first(), bound, out);
      return;
    case EditorExpr::Kind::kCond:
    case EditorExpr::Kind::kSeq:
      collect_free_recvars(e.first(), bound, out);
      collect_free_recvars(e.second(), bound, out);
      return;
    case EditorExpr::Kind::kNil:
      return;
  }
}

}  // namespace detail

inline bool is_closed(const EditorExpr& e) {
  std::vector<std::string> bound;
  std::set<std::string> free;
  detail::collect_free_recvars(e, bound, free);
  return free.empty();
}

// e[x := r]. Recursion variables live in their own namespace and r is closed,
// so no capture can occur.
inline EditorExpr substitute(const EditorExpr& e, const std::string& x,
                             const EditorExpr& r) {
  switch (e.kind()) {
    case EditorExpr::Kind::kRecVar:
      return e.var() == x ? r : e;
    case EditorExpr::Kind::kRec:
      if (e.var() == x) return e;
      return EditorExpr::rec(e.var(), substitute(e.first(), x, r));
    case EditorExpr::Kind::kPrefix:
      return EditorExpr::prefix(e.command(), substitute(e.first(), x, r));
    case EditorExpr::Kind::kCond:
      return EditorExpr::cond(e.condition(), substitute(e.first(), x, r),
                              substitute(e.second(), x, r));
    case EditorExpr::Kind::kSeq:
      return EditorExpr::seq(substitute(e.first(), x, r), substitute(e.second(), x, r));
    case EditorExpr::Kind::kNil:
      return e;
  }
  return e;
}

// ---------------------------------------------------------------------------
// Script grammar, loosest to tightest:
//
//   expr  ::= cond [ '>>' expr ]                      (right-associative)
//   cond  ::= phi '=>' unary '|' unary | unary
//   unary ::= 'nil' | 'child' n '.' unary | 'parent' '.' unary
//           | '{' op [':' literal] '}' '.' unary
//           | 'rec' X '.' expr | X | '(' expr ')'
//
// '#' starts a comment running to the end of the line.
// ---------------------------------------------------------------------------

namespace detail {

class ScriptParser {
 public:
  explicit ScriptParser(std::string_view text) : in_(text) {}

  EditorExpr parse() {
    EditorExpr e = expr();
    if (!in_.at_end()) in_.fail("trailing input after editor expression");
    return e;
  }

 private:
  EditorExpr expr() {
    EditorExpr first = cond();
    if (in_.consume(">>")) return EditorExpr::seq(std::move(first), expr());
    return first;
  }

  EditorExpr cond() {
    char c = in_.peek();
    if (c == '!' || c == '@' || c == '(' || in_.lookahead("<>") || in_.lookahead("[]")) {
      auto mark = in_.mark();
      std::optional<Condition> phi;
      try {
        phi = parse_condition_or(in_);
        if (!in_.consume("=>")) phi.reset();
      } catch (const ParseError&) {
        phi.reset();
      }
      if (phi) {
        EditorExpr then = unary();
        in_.expect("|");
        EditorExpr otherwise = unary();
        return EditorExpr::cond(std::move(*phi), std::move(then), std::move(otherwise));
      }
      in_.reset(mark);
    }
    return unary();
  }

  EditorExpr unary() {
    if (in_.consume("(")) {
      EditorExpr e = expr();
      in_.expect(")");
      return e;
    }
    if (in_.consume("{")) {
      auto [op, lit] = parse_opref(in_);
      in_.expect("}");
      in_.expect(".");
      return EditorExpr::prefix(Apc::insert(std::move(op), std::move(lit)), unary());
    }
    if (in_.consume_keyword("nil")) return EditorExpr::nil();
    if (in_.consume_keyword("parent")) {
      in_.expect(".");
      return EditorExpr::prefix(Apc::parent(), unary());
    }
    if (in_.consume_keyword("child")) {
      std::int64_t n = in_.integer();
      if (n < 1) in_.fail("child index must be at least 1");
      in_.expect(".");
      return EditorExpr::prefix(Apc::child_n(static_cast<std::size_t>(n)), unary());
    }
    if (in_.consume_keyword("rec")) {
      std::string x = in_.identifier();
      in_.expect(".");
      return EditorExpr::rec(std::move(x), expr());
    }
    if (auto x = in_.try_identifier()) return EditorExpr::rec_var(*x);
    in_.fail("expected editor expression");
  }

  Scanner in_;
};

}  // namespace detail

// Parses a script and rejects unbound recursion variables.
inline EditorExpr parse_editor_expr(std::string_view text) {
  EditorExpr e = detail::ScriptParser(text).parse();
  std::vector<std::string> bound;
  std::set<std::string> free;
  detail::collect_free_recvars(e, bound, free);
  if (!free.empty()) {
    throw ParseError("unbound recursion variable '" + *free.begin() + "'", 1, 1);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Semantics
// ---------------------------------------------------------------------------

struct Config {
  EditorExpr expr;
  WellFormedTree tree;
};

// nullopt is the silent label.
using StepLabel = std::optional<Apc>;

inline std::string to_string(const StepLabel& label) {
  return label ? to_string(*label) : "eps";
}

struct StepResult {
  enum class Kind { kStep, kTerminal, kStuck };

  Kind kind;
  StepLabel label;
  std::optional<Config> next;
  StuckReason reason = StuckReason::kUnknownOperator;

  static StepResult terminal() { return StepResult{Kind::kTerminal, {}, {}, {}}; }
  static StepResult stuck(StuckReason r) { return StepResult{Kind::kStuck, {}, {}, r}; }
  static StepResult silent(Config c) {
    return StepResult{Kind::kStep, std::nullopt, std::move(c), {}};
  }
  static StepResult labelled(Apc cmd, Config c) {
    return StepResult{Kind::kStep, std::move(cmd), std::move(c), {}};
  }
};

// One transition <E, a> --label--> <E', a'>.
inline StepResult step(const Config& c, const LanguageSpec& spec) {
  const EditorExpr& e = c.expr;
  switch (e.kind()) {
    case EditorExpr::Kind::kNil:
      return StepResult::terminal();
    case EditorExpr::Kind::kCond: {
      auto [ctx, focus] = decompose(c.tree);
      bool holds;
      try {
        holds = satisfies(focus.args().front().body, e.condition(), spec,
                          context_env(ctx, spec));
      } catch (const UnknownOperatorError&) {
        return StepResult::stuck(StuckReason::kUnknownOperator);
      }
      return StepResult::silent(Config{holds ? e.first() : e.second(), c.tree});
    }
    case EditorExpr::Kind::kSeq: {
      if (e.first().is_nil()) return StepResult::silent(Config{e.second(), c.tree});
      StepResult inner = step(Config{e.first(), c.tree}, spec);
      if (inner.kind != StepResult::Kind::kStep) return inner;
      inner.next->expr = EditorExpr::seq(std::move(inner.next->expr), e.second());
      return inner;
    }
    case EditorExpr::Kind::kRec:
      return StepResult::silent(Config{substitute(e.first(), e.var(), e), c.tree});
    case EditorExpr::Kind::kPrefix: {
      Transition t = apply_command(c.tree, e.command(), spec);
      if (!t.ok()) return StepResult::stuck(t.reason());
      return StepResult::labelled(e.command(), Config{e.first(), t.tree()});
    }
    case EditorExpr::Kind::kRecVar:
      throw Error("free recursion variable '" + e.var() + "' reached at run time");
  }
  return StepResult::terminal();
}

inline constexpr std::size_t kDefaultFuel = 10000;

struct TraceEntry {
  StepLabel label;
  WellFormedTree tree;  // tree after the step
};

struct RunResult {
  enum class Outcome { kTerminal, kStuck, kFuelExhausted };

  Outcome outcome;
  Config final;
  std::optional<StuckReason> reason;
  std::vector<TraceEntry> trace;

  // Labelled transitions taken.
  std::size_t steps() const { return trace.size(); }
  // Applications of step, counting the final one that reported Terminal or
  // Stuck.
  std::size_t step_calls() const {
    return trace.size() + (outcome == Outcome::kFuelExhausted ? 0 : 1);
  }
};

inline const char* to_string(RunResult::Outcome o) {
  switch (o) {
    case RunResult::Outcome::kTerminal:
      return "terminal";
    case RunResult::Outcome::kStuck:
      return "stuck";
    case RunResult::Outcome::kFuelExhausted:
      return "fuel-exhausted";
  }
  return "?";
}

// Iterates step until Terminal or Stuck, or until `fuel` transitions have
// been taken.
inline RunResult run(Config c, const LanguageSpec& spec, std::size_t fuel = kDefaultFuel) {
  std::vector<TraceEntry> trace;
  while (true) {
    StepResult r = step(c, spec);
    if (r.kind == StepResult::Kind::kTerminal) {
      return RunResult{RunResult::Outcome::kTerminal, std::move(c), std::nullopt,
                       std::move(trace)};
    }
    if (r.kind == StepResult::Kind::kStuck) {
      return RunResult{RunResult::Outcome::kStuck, std::move(c), r.reason,
                       std::move(trace)};
    }
    if (trace.size() == fuel) {
      return RunResult{RunResult::Outcome::kFuelExhausted, std::move(c), std::nullopt,
                       std::move(trace)};
    }
    trace.push_back(TraceEntry{r.label, r.next->tree});
    c = std::move(*r.next);
  }
}

}  // namespace abtedit
