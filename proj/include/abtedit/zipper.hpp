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

// Cursor contexts and the labelled transition system for cursor movement
// and substitution.

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "abtedit/abt.hpp"
#include "abtedit/language_spec.hpp"

namespace abtedit {

// One step of a cursor context: the operator node we descended through,
// its other arguments, and the binders of the argument we are inside.
struct Frame {
  std::string op;
  std::optional<Literal> literal;
  std::vector<Abstraction> left;
  std::vector<std::string> binders;
  std::vector<Abstraction> right;

  bool operator==(const Frame&) const = default;
};

// A one-hole context, outermost frame first. Empty means the hole is the
// root.
struct CursorCtx {
  std::vector<Frame> frames;

  bool empty() const { return frames.empty(); }
  bool operator==(const CursorCtx&) const = default;
};

inline Abt recompose(const CursorCtx& ctx, Abt focus) {
  for (auto it = ctx.frames.rbegin(); it != ctx.frames.rend(); ++it) {
    std::vector<Abstraction> args = it->left;
    args.push_back(Abstraction{it->binders, std::move(focus)});
    args.insert(args.end(), it->right.begin(), it->right.end());
    focus = Abt::op(it->op, std::move(args), it->literal);
  }
  return focus;
}

// Binders introduced by the context, with their sorts.
inline SortEnv context_env(const CursorCtx& ctx, const LanguageSpec& spec) {
  SortEnv env;
  for (const auto& f : ctx.frames) {
    const OperatorDecl* decl = spec.find(f.op);
    const Valence& val = decl->args.at(f.left.size());
    for (std::size_t j = 0; j < f.binders.size(); ++j) env[f.binders[j]] = val.binds[j];
  }
  return env;
}

struct Decomposition {
  CursorCtx context;
  Abt focus;  // always the cursor node itself
};

// The canonical C[a] reading: the context reaches down to the cursor
// operator, which sits at the root of `focus`.
inline Decomposition decompose(const WellFormedTree& t) {
  CursorCtx ctx;
  const Abt* cur = &t.tree;
  for (std::size_t i : t.cursor_path) {
    Frame f;
    f.op = cur->name();
    f.literal = cur->literal();
    f.left.assign(cur->args().begin(), cur->args().begin() + i);
    f.binders = cur->args()[i].binders;
    f.right.assign(cur->args().begin() + i + 1, cur->args().end());
    ctx.frames.push_back(std::move(f));
    cur = &cur->args()[i].body;
  }
  return Decomposition{std::move(ctx), *cur};
}

// The cursorless subtree enclosed by the cursor.
inline const Abt& enclosed(const WellFormedTree& t) {
  return subtree_at(t.tree, t.cursor_path).args().front().body;
}

// Atomic prefix commands: child n (1-based), parent, {o} / {o:literal}.
struct Apc {
  enum class Kind { kChild, kParent, kInsert };

  Kind kind = Kind::kParent;
  std::size_t child = 0;
  std::string op;
  std::optional<Literal> literal;

  static Apc child_n(std::size_t n) { return Apc{Kind::kChild, n, {}, {}}; }
  static Apc parent() { return Apc{Kind::kParent, 0, {}, {}}; }
  static Apc insert(std::string op, std::optional<Literal> literal = std::nullopt) {
    return Apc{Kind::kInsert, 0, std::move(op), std::move(literal)};
  }

  bool operator==(const Apc&) const = default;
};

inline std::string to_string(const Apc& cmd) {
  switch (cmd.kind) {
    case Apc::Kind::kChild:
      return "child " + std::to_string(cmd.child);
    case Apc::Kind::kParent:
      return "parent";
    case Apc::Kind::kInsert:
      return "{" + cmd.op + (cmd.literal ? ":" + literal_to_string(*cmd.literal) : "") +
             "}";
  }
  return {};
}

enum class StuckReason { kSortMismatch, kNoSuchChild, kAtRoot, kUnknownOperator };

inline const char* to_string(StuckReason r) {
  switch (r) {
    case StuckReason::kSortMismatch:
      return "sort-mismatch";
    case StuckReason::kNoSuchChild:
      return "no-such-child";
    case StuckReason::kAtRoot:
      return "at-root";
    case StuckReason::kUnknownOperator:
      return "unknown-operator";
  }
  return "?";
}

// Outcome of one labelled transition: a successor tree, or the reason no
// rule applies.
class Transition {
 public:
  static Transition to(WellFormedTree t) { return Transition(std::move(t)); }
  static Transition stuck(StuckReason r) { return Transition(r); }

  bool ok() const { return std::holds_alternative<WellFormedTree>(state_); }
  const WellFormedTree& tree() const { return std::get<WellFormedTree>(state_); }
  StuckReason reason() const { return std::get<StuckReason>(state_); }

 private:
  explicit Transition(WellFormedTree t) : state_(std::move(t)) {}
  explicit Transition(StuckReason r) : state_(r) {}

  std::variant<WellFormedTree, StuckReason> state_;
};

// o(x1.hole_s1; ...; xn.hole_sn) with fresh binder names. Literal families
// give the leaf itself; name literals are variable references.
inline Abt fresh_template(const OperatorDecl& op, const std::optional<Literal>& literal,
                          const std::set<std::string>& avoid) {
  if (op.param == ParamKind::kName) return Abt::var(std::get<std::string>(*literal));
  if (op.param == ParamKind::kInteger) return Abt::op(op.name, {}, literal);
  std::size_t counter = 1;
  std::vector<Abstraction> args;
  std::set<std::string> taken = avoid;
  for (const auto& val : op.args) {
    std::vector<std::string> binders;
    for (std::size_t j = 0; j < val.binds.size(); ++j) {
      binders.push_back(fresh_name(taken, counter));
      taken.insert(binders.back());
    }
    args.push_back(Abstraction{std::move(binders), Abt::hole(val.body)});
  }
  return Abt::op(op.name, std::move(args));
}

namespace detail {

inline WellFormedTree rebuild(const CursorCtx& ctx, Abt focus, Sort root_sort) {
  Path path;
  for (const auto& f : ctx.frames) path.push_back(f.left.size());
  return WellFormedTree{recompose(ctx, std::move(focus)), std::move(path),
                        std::move(root_sort)};
}

}  // namespace detail

// One transition a --cmd--> a'. `spec` must be editor-extended.
inline Transition apply_command(const WellFormedTree& t, const Apc& cmd,
                                const LanguageSpec& spec) {
  auto [ctx, focus] = decompose(t);
  const Sort focus_sort = operator_sort_suffix(focus.name());
  const Abt& inner = focus.args().front().body;

  switch (cmd.kind) {
    case Apc::Kind::kInsert: {
      OperatorRef ref;
      try {
        ref = lookup_operator(spec, cmd.op, cmd.literal);
      } catch (const UnknownOperatorError&) {
        return Transition::stuck(StuckReason::kUnknownOperator);
      }
      if (ref.decl->is_cursor()) return Transition::stuck(StuckReason::kUnknownOperator);
      if (ref.decl->result != focus_sort) {
        return Transition::stuck(StuckReason::kSortMismatch);
      }
      if (ref.decl->param == ParamKind::kName) {
        SortEnv env = context_env(ctx, spec);
        auto it = env.find(std::get<std::string>(*ref.literal));
        if (it == env.end() || it->second != focus_sort) {
          return Transition::stuck(StuckReason::kSortMismatch);
        }
      }
      Abt replacement = fresh_template(*ref.decl, ref.literal, all_names(t.tree));
      return Transition::to(
          detail::rebuild(ctx, Abt::cursor(focus_sort, std::move(replacement)), t.sort));
    }
    case Apc::Kind::kChild: {
      if (inner.is_var() || cmd.child == 0 || cmd.child > inner.args().size()) {
        return Transition::stuck(StuckReason::kNoSuchChild);
      }
      const OperatorDecl* decl = spec.find(inner.name());
      std::size_t i = cmd.child - 1;
      Frame f;
      f.op = inner.name();
      f.literal = inner.literal();
      f.left.assign(inner.args().begin(), inner.args().begin() + i);
      f.binders = inner.args()[i].binders;
      f.right.assign(inner.args().begin() + i + 1, inner.args().end());
      ctx.frames.push_back(std::move(f));
      Abt moved = Abt::cursor(decl->args[i].body, inner.args()[i].body);
      return Transition::to(detail::rebuild(ctx, std::move(moved), t.sort));
    }
    case Apc::Kind::kParent: {
      if (ctx.empty()) return Transition::stuck(StuckReason::kAtRoot);
      Frame f = std::move(ctx.frames.back());
      ctx.frames.pop_back();
      std::vector<Abstraction> args = std::move(f.left);
      args.push_back(Abstraction{std::move(f.binders), inner});
      args.insert(args.end(), f.right.begin(), f.right.end());
      const OperatorDecl* decl = spec.find(f.op);
      Abt parent = Abt::cursor(decl->result, Abt::op(f.op, std::move(args), f.literal));
      return Transition::to(detail::rebuild(ctx, std::move(parent), t.sort));
    }
  }
  return Transition::stuck(StuckReason::kUnknownOperator);
}

}  // namespace abtedit
