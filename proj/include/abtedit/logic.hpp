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

// Conditions over the subtree enclosed by the cursor, with the rule-derived
// satisfaction relation and an independent enumeration oracle.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abtedit/abt.hpp"
#include "abtedit/error.hpp"
#include "abtedit/language_spec.hpp"
#include "abtedit/scanner.hpp"

namespace abtedit {

class Condition {
 public:
  enum class Kind { kNeg, kAnd, kOr, kAt, kPossibly, kNecessity };

  static Condition neg(Condition p) { return Condition(Kind::kNeg, {}, {}, std::move(p)); }
  static Condition conj(Condition p, Condition q) {
    return Condition(Kind::kAnd, {}, {}, std::move(p), std::move(q));
  }
  static Condition disj(Condition p, Condition q) {
    return Condition(Kind::kOr, {}, {}, std::move(p), std::move(q));
  }
  static Condition at(std::string op, std::optional<Literal> lit = std::nullopt) {
    return Condition(Kind::kAt, std::move(op), std::move(lit));
  }
  static Condition possibly(std::string op, std::optional<Literal> lit = std::nullopt) {
    return Condition(Kind::kPossibly, std::move(op), std::move(lit));
  }
  static Condition necessity(std::string op, std::optional<Literal> lit = std::nullopt) {
    return Condition(Kind::kNecessity, std::move(op), std::move(lit));
  }

  Kind kind() const { return node_->kind; }
  bool is_modal() const { return kind() >= Kind::kAt; }
  const std::string& op() const { return node_->op; }
  const std::optional<Literal>& literal() const { return node_->literal; }
  const Condition& lhs() const { return *node_->lhs; }
  const Condition& rhs() const { return *node_->rhs; }

  std::size_t size() const {
    switch (kind()) {
      case Kind::kNeg:
        return 1 + lhs().size();
      case Kind::kAnd:
      case Kind::kOr:
        return 1 + lhs().size() + rhs().size();
      default:
        return 1;
    }
  }

  bool operator==(const Condition& other) const {
    if (kind() != other.kind()) return false;
    switch (kind()) {
      case Kind::kNeg:
        return lhs() == other.lhs();
      case Kind::kAnd:
      case Kind::kOr:
        return lhs() == other.lhs() && rhs() == other.rhs();
      default:
        return op() == other.op() && literal() == other.literal();
    }
  }

 private:
  struct Node {
    Kind kind;
    std::string op;
    std::optional<Literal> literal;
    std::shared_ptr<const Condition> lhs, rhs;
  };

  Condition(Kind kind, std::string op, std::optional<Literal> lit,
            std::optional<Condition> lhs = std::nullopt,
            std::optional<Condition> rhs = std::nullopt)
      : node_(std::make_shared<const Node>(
            Node{kind, std::move(op), std::move(lit),
                 lhs ? std::make_shared<const Condition>(std::move(*lhs)) : nullptr,
                 rhs ? std::make_shared<const Condition>(std::move(*rhs)) : nullptr})) {}

  std::shared_ptr<const Node> node_;
};

inline std::string to_string(const Condition& c) {
  auto opref = [&] {
    return c.op() + (c.literal() ? ":" + literal_to_string(*c.literal()) : "");
  };
  switch (c.kind()) {
    case Condition::Kind::kNeg:
      return "!" + to_string(c.lhs());
    case Condition::Kind::kAnd:
      return "(" + to_string(c.lhs()) + " & " + to_string(c.rhs()) + ")";
    case Condition::Kind::kOr:
      return "(" + to_string(c.lhs()) + " | " + to_string(c.rhs()) + ")";
    case Condition::Kind::kAt:
      return "@" + opref();
    case Condition::Kind::kPossibly:
      return "<>" + opref();
    case Condition::Kind::kNecessity:
      return "[]" + opref();
  }
  return {};
}

// Every operator named in `c` must exist in `spec` and agree with the
// operator's literal kind.
inline void validate_condition(const Condition& c, const LanguageSpec& spec) {
  if (!c.is_modal()) {
    validate_condition(c.lhs(), spec);
    if (c.kind() != Condition::Kind::kNeg) validate_condition(c.rhs(), spec);
    return;
  }
  const OperatorDecl* decl = spec.find(c.op());
  if (!decl) throw UnknownOperatorError("unknown operator '" + c.op() + "' in condition");
  if (c.literal()) {
    bool is_int = std::holds_alternative<std::int64_t>(*c.literal());
    if (!decl->is_literal() || is_int != (decl->param == ParamKind::kInteger)) {
      throw UnknownOperatorError("literal does not fit operator '" + c.op() + "'");
    }
  }
}

namespace detail {

// Whether the root of `a` is an instance of operator `op` (and `literal`, when
// given). Variables are instances of their sort's name-literal family.
inline bool root_is(const Abt& a, const std::string& op,
                    const std::optional<Literal>& literal, const LanguageSpec& spec,
                    const SortEnv& env) {
  if (a.is_var()) {
    const OperatorDecl* decl = spec.find(op);
    if (!decl || decl->param != ParamKind::kName) return false;
    auto it = env.find(a.name());
    if (it != env.end() && it->second != decl->result) return false;
    return !literal || std::get<std::string>(*literal) == a.name();
  }
  return a.name() == op && (!literal || a.literal() == literal);
}

inline SortEnv extend_env(const SortEnv& env, const Abt& parent, std::size_t i,
                          const LanguageSpec& spec) {
  const Abstraction& arg = parent.args()[i];
  if (arg.binders.empty()) return env;
  SortEnv inner = env;
  const OperatorDecl* decl = spec.find(parent.name());
  for (std::size_t j = 0; j < arg.binders.size(); ++j) {
    inner[arg.binders[j]] = decl ? decl->args.at(i).binds.at(j) : Sort{};
  }
  return inner;
}

// Possibly-trivial and Possibly-i.
inline bool possibly_rule(const Abt& a, const std::string& op,
                          const std::optional<Literal>& literal, const LanguageSpec& spec,
                          const SortEnv& env) {
  if (root_is(a, op, literal, spec, env)) return true;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (possibly_rule(a.args()[i].body, op, literal, spec, extend_env(env, a, i, spec))) {
      return true;
    }
  }
  return false;
}

inline bool satisfies_rules(const Abt& a, const Condition& c, const LanguageSpec& spec,
                            const SortEnv& env) {
  switch (c.kind()) {
    case Condition::Kind::kNeg:
      return !satisfies_rules(a, c.lhs(), spec, env);
    case Condition::Kind::kAnd:
      return satisfies_rules(a, c.lhs(), spec, env) &&
             satisfies_rules(a, c.rhs(), spec, env);
    case Condition::Kind::kOr:
      return satisfies_rules(a, c.lhs(), spec, env) ||
             satisfies_rules(a, c.rhs(), spec, env);
    case Condition::Kind::kAt:
      return root_is(a, c.op(), c.literal(), spec, env);
    case Condition::Kind::kPossibly:
      return possibly_rule(a, c.op(), c.literal(), spec, env);
    case Condition::Kind::kNecessity:
      // Premises are the children's <>o; no children means no premises.
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        if (!possibly_rule(a.args()[i].body, c.op(), c.literal(), spec,
                           extend_env(env, a, i, spec))) {
          return false;
        }
      }
      return true;
  }
  return false;
}

struct Located {
  const Abt* node;
  SortEnv env;
};

inline void enumerate(const Abt& a, const SortEnv& env, const LanguageSpec& spec,
                      std::vector<Located>& out) {
  out.push_back(Located{&a, env});
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    enumerate(a.args()[i].body, extend_env(env, a, i, spec), spec, out);
  }
}

inline bool exists_node(const Abt& a, const SortEnv& env, const Condition& c,
                        const LanguageSpec& spec) {
  std::vector<Located> nodes;
  enumerate(a, env, spec, nodes);
  for (const auto& n : nodes) {
    if (root_is(*n.node, c.op(), c.literal(), spec, n.env)) return true;
  }
  return false;
}

inline bool satisfies_enumerated(const Abt& a, const Condition& c,
                                 const LanguageSpec& spec, const SortEnv& env) {
  switch (c.kind()) {
    case Condition::Kind::kNeg:
      return !satisfies_enumerated(a, c.lhs(), spec, env);
    case Condition::Kind::kAnd: {
      bool l = satisfies_enumerated(a, c.lhs(), spec, env);
      bool r = satisfies_enumerated(a, c.rhs(), spec, env);
      return l && r;
    }
    case Condition::Kind::kOr: {
      bool l = satisfies_enumerated(a, c.lhs(), spec, env);
      bool r = satisfies_enumerated(a, c.rhs(), spec, env);
      return l || r;
    }
    case Condition::Kind::kAt:
      return root_is(a, c.op(), c.literal(), spec, env);
    case Condition::Kind::kPossibly:
      return exists_node(a, env, c, spec);
    case Condition::Kind::kNecessity: {
      std::size_t hits = 0;
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        if (exists_node(a.args()[i].body, extend_env(env, a, i, spec), c, spec)) ++hits;
      }
      return hits == a.args().size();
    }
  }
  return false;
}

}  // namespace detail

// a |= c, derived rule by rule. `a` is the cursorless subtree enclosed by the
// cursor; `env` gives the sorts of variables bound above it.
inline bool satisfies(const Abt& a, const Condition& c, const LanguageSpec& spec,
                      const SortEnv& env = {}) {
  validate_condition(c, spec);
  return detail::satisfies_rules(a, c, spec, env);
}

// Same contract as satisfies, computed by listing every node of the subtree.
inline bool brute_force_satisfies(const Abt& a, const Condition& c,
                                  const LanguageSpec& spec, const SortEnv& env = {}) {
  validate_condition(c, spec);
  return detail::satisfies_enumerated(a, c, spec, env);
}

// ---------------------------------------------------------------------------
// Concrete syntax: !p, p & q, p | q, @o, <>o, []o, (p); literals as @num:5.
// Precedence ! > & > |, both binary operators left-associative.
// ---------------------------------------------------------------------------

namespace detail {

inline Condition parse_condition_or(Scanner& in);

inline std::pair<std::string, std::optional<Literal>> parse_opref(Scanner& in) {
  std::string op = in.identifier();
  std::optional<Literal> lit;
  if (in.consume(":")) {
    if (in.at_integer()) {
      lit = in.integer();
    } else {
      lit = in.identifier();
    }
  }
  return {std::move(op), std::move(lit)};
}

inline Condition parse_condition_unary(Scanner& in) {
  if (in.consume("!")) return Condition::neg(parse_condition_unary(in));
  if (in.consume("(")) {
    Condition c = parse_condition_or(in);
    in.expect(")");
    return c;
  }
  if (in.consume("@")) {
    auto [op, lit] = parse_opref(in);
    return Condition::at(std::move(op), std::move(lit));
  }
  if (in.consume("<>")) {
    auto [op, lit] = parse_opref(in);
    return Condition::possibly(std::move(op), std::move(lit));
  }
  if (in.consume("[]")) {
    auto [op, lit] = parse_opref(in);
    return Condition::necessity(std::move(op), std::move(lit));
  }
  in.fail("expected condition");
}

inline Condition parse_condition_and(Scanner& in) {
  Condition c = parse_condition_unary(in);
  while (in.consume("&")) c = Condition::conj(std::move(c), parse_condition_unary(in));
  return c;
}

inline Condition parse_condition_or(Scanner& in) {
  Condition c = parse_condition_and(in);
  while (in.consume("|")) {
    c = Condition::disj(std::move(c), parse_condition_and(in));
  }
  return c;
}

}  // namespace detail

inline Condition parse_condition(std::string_view text) {
  detail::Scanner in(text);
  Condition c = detail::parse_condition_or(in);
  if (!in.at_end()) in.fail("trailing input after condition");
  return c;
}

}  // namespace abtedit
