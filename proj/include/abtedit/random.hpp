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

// Seeded generators for trees, conditions, commands, scripts and target
// terms. Same seed, same output: the generators only use the engine's raw
// 64-bit stream and reduce it by modulo.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "abtedit/abt.hpp"
#include "abtedit/engine.hpp"
#include "abtedit/lambda.hpp"
#include "abtedit/language_spec.hpp"
#include "abtedit/logic.hpp"
#include "abtedit/zipper.hpp"
#include "abtedit/zipper_library.hpp"

namespace abtedit {

class Generator {
 public:
  Generator(const LanguageSpec& spec, std::uint64_t seed)
      : spec_(spec.editor_extended() ? spec : editor_extend(spec)), rng_(seed) {}

  const LanguageSpec& spec() const { return spec_; }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : rng_() % n; }
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

  // A cursor-free tree of sort `s`, well-sorted under `env`, at most `depth`
  // operators deep.
  Abt tree(const Sort& s, int depth, const SortEnv& env = {}) {
    std::vector<const OperatorDecl*> inner, leaves;
    for (const OperatorDecl& d : spec_.operators()) {
      if (d.result != s || d.is_cursor()) continue;
      if (d.param == ParamKind::kName) continue;
      (d.args.empty() ? leaves : inner).push_back(&d);
    }
    std::vector<std::string> vars;
    for (const auto& [x, xs] : env) {
      if (xs == s) vars.push_back(x);
    }
    if (!vars.empty() && chance(1, depth > 0 ? 5 : 2)) return Abt::var(pick(vars));
    if (depth <= 0 || inner.empty() || chance(1, 4)) return leaf(*pick(leaves));
    const OperatorDecl& d = *pick(inner);
    std::vector<Abstraction> args;
    for (const Valence& v : d.args) {
      std::vector<std::string> binders = fresh_binders(v.binds.size());
      SortEnv inner_env = env;
      for (std::size_t j = 0; j < binders.size(); ++j) inner_env[binders[j]] = v.binds[j];
      args.push_back(Abstraction{binders, tree(v.body, depth - 1, inner_env)});
    }
    return Abt::op(d.name, std::move(args));
  }

  // A random tree of sort `root` with the cursor on a uniformly chosen node.
  WellFormedTree well_formed(const Sort& root, int depth) {
    Abt t = tree(root, depth);
    std::vector<Path> paths;
    collect_paths(t, {}, paths);
    Path at = pick(paths);
    Sort s = sort_of(subtree_at(t, at), spec_, env_at(t, at, spec_));
    return check_well_formed(wrap_at(t, at, 0, s), spec_);
  }

  // A condition with at most `size` connectives and modalities.
  Condition condition(int size, bool name_literals = true) {
    if (size <= 1 || chance(1, 3)) return modal(name_literals);
    switch (below(3)) {
      case 0:
        return Condition::neg(condition(size - 1, name_literals));
      case 1: {
        int l = 1 + static_cast<int>(below(static_cast<std::uint64_t>(size - 1)));
        return Condition::conj(condition(l, name_literals),
                               condition(size - 1 - l > 0 ? size - 1 - l : 1, name_literals));
      }
      default: {
        int l = 1 + static_cast<int>(below(static_cast<std::uint64_t>(size - 1)));
        return Condition::disj(condition(l, name_literals),
                               condition(size - 1 - l > 0 ? size - 1 - l : 1, name_literals));
      }
    }
  }

  // Any command, including ones that will be stuck or name no operator.
  Apc command() {
    switch (below(10)) {
      case 0:
      case 1:
      case 2:
        return Apc::child_n(1 + below(3));
      case 3:
      case 4:
        return Apc::parent();
      case 5:
        if (chance(1, 4)) return Apc::insert("nosuchop");
        return Apc::insert(cursor_operator(pick(spec_.sorts())));
      default: {
        const OperatorDecl& d = spec_.operators()[below(spec_.operators().size())];
        if (d.is_cursor()) return Apc::insert(d.name);
        return Apc::insert(d.name, literal_for(d));
      }
    }
  }

  // A closed script. Commands are mostly chosen among those that succeed on
  // the tree the script will actually reach, so runs tend to terminate.
  EditorExpr script(const WellFormedTree& t, int size) {
    std::vector<std::string> recvars;
    return script_at(t, size, recvars).first;
  }

 private:
  using Scripted = std::pair<EditorExpr, std::optional<WellFormedTree>>;

  std::vector<std::string> fresh_binders(std::size_t n) {
    static const std::vector<std::string> pool = {"x", "y", "z", "w"};
    std::vector<std::string> out;
    while (out.size() < n) {
      std::string c = pick(pool);
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
    return out;
  }

  std::optional<Literal> literal_for(const OperatorDecl& d) {
    if (d.param == ParamKind::kInteger) return Literal{static_cast<std::int64_t>(below(10))};
    if (d.param == ParamKind::kName) return Literal{fresh_binders(1).front()};
    return std::nullopt;
  }

  Abt leaf(const OperatorDecl& d) {
    if (d.param == ParamKind::kInteger) return Abt::op(d.name, {}, literal_for(d));
    return Abt::op(d.name);
  }

  static void collect_paths(const Abt& a, Path here, std::vector<Path>& out) {
    out.push_back(here);
    for (std::size_t i = 0; i < a.args().size(); ++i) {
      here.push_back(i);
      collect_paths(a.args()[i].body, here, out);
      here.pop_back();
    }
  }

  static Abt wrap_at(const Abt& a, const Path& p, std::size_t k, const Sort& s) {
    if (k == p.size()) return Abt::cursor(s, a);
    std::vector<Abstraction> args = a.args();
    args[p[k]].body = wrap_at(args[p[k]].body, p, k + 1, s);
    return Abt::op(a.name(), std::move(args), a.literal());
  }

  Condition modal(bool name_literals) {
    const OperatorDecl& d = spec_.operators()[below(spec_.operators().size())];
    std::optional<Literal> lit;
    if (d.param == ParamKind::kInteger && chance(1, 2)) lit = literal_for(d);
    if (d.param == ParamKind::kName && name_literals && chance(1, 2)) lit = literal_for(d);
    switch (below(3)) {
      case 0:
        return Condition::at(d.name, lit);
      case 1:
        return Condition::possibly(d.name, lit);
      default:
        return Condition::necessity(d.name, lit);
    }
  }

  std::vector<Apc> successful_commands(const WellFormedTree& t) {
    std::vector<Apc> out;
    const Abt& focus = enclosed(t);
    for (std::size_t i = 1; i <= focus.args().size(); ++i) out.push_back(Apc::child_n(i));
    if (!t.cursor_path.empty()) out.push_back(Apc::parent());
    Sort s = operator_sort_suffix(subtree_at(t.tree, t.cursor_path).name());
    for (const OperatorDecl* d : spec_.insertable(s)) {
      if (d->param == ParamKind::kName) {
        SortEnv env = env_at(t.tree, t.cursor_path, spec_);
        for (const auto& [x, xs] : env) {
          if (xs == s) out.push_back(Apc::insert(d->name, Literal{x}));
        }
      } else {
        out.push_back(Apc::insert(d->name, literal_for(*d)));
      }
    }
    return out;
  }

  std::optional<WellFormedTree> after(const std::optional<WellFormedTree>& t, const Apc& c) {
    if (!t) return std::nullopt;
    Transition r = apply_command(*t, c, spec_);
    if (!r.ok()) return std::nullopt;
    return r.tree();
  }

  Scripted script_at(const std::optional<WellFormedTree>& t, int size,
                     std::vector<std::string>& recvars) {
    if (size <= 1) {
      if (!recvars.empty() && chance(1, 3)) {
        return {EditorExpr::rec_var(pick(recvars)), std::nullopt};
      }
      return {EditorExpr::nil(), t};
    }
    std::uint64_t roll = below(20);
    if (roll < 10) {
      Apc c = command();
      if (t && chance(4, 5)) {
        std::vector<Apc> ok = successful_commands(*t);
        if (!ok.empty()) c = pick(ok);
      }
      auto [rest, final] = script_at(after(t, c), size - 1, recvars);
      return {EditorExpr::prefix(c, std::move(rest)), final};
    }
    if (roll < 14) {
      Condition phi = condition(1 + static_cast<int>(below(3)), false);
      int l = std::max(1, (size - 1) / 2);
      auto [a, fa] = script_at(t, l, recvars);
      auto [b, fb] = script_at(t, std::max(1, size - 1 - l), recvars);
      std::optional<WellFormedTree> final;
      if (t) {
        bool holds = satisfies(enclosed(*t), phi, spec_, env_at(t->tree, t->cursor_path, spec_));
        final = holds ? fa : fb;
      }
      return {EditorExpr::cond(std::move(phi), std::move(a), std::move(b)), final};
    }
    if (roll < 17) {
      int l = std::max(1, (size - 1) / 2);
      auto [a, fa] = script_at(t, l, recvars);
      auto [b, fb] = script_at(fa, std::max(1, size - 1 - l), recvars);
      return {EditorExpr::seq(std::move(a), std::move(b)), fb};
    }
    // A loop guarded by a condition that moves the cursor, the usual shape
    // of a terminating rec.
    std::string x = "X" + std::to_string(recvars.size());
    Condition phi = condition(1 + static_cast<int>(below(2)), false);
    Apc c = below(3) == 0 ? Apc::parent() : Apc::child_n(1 + below(2));
    // Occasionally the exit may loop too, which exercises fuel exhaustion.
    bool open_exit = chance(1, 4);
    if (open_exit) recvars.push_back(x);
    auto [exit, fe] = script_at(std::nullopt, std::max(1, size - 3), recvars);
    if (open_exit) recvars.pop_back();
    EditorExpr body = EditorExpr::cond(
        std::move(phi), EditorExpr::prefix(c, EditorExpr::rec_var(x)), std::move(exit));
    return {EditorExpr::rec(x, std::move(body)), std::nullopt};
  }

  LanguageSpec spec_;
  std::mt19937_64 rng_;
};

namespace lambda {

// Type-directed generator of closed, well-typed target terms.
class TermGenerator {
 public:
  TermGenerator(const LanguageSpec& spec, std::uint64_t seed) : spec_(spec), rng_(seed) {}

  Type type(int depth) {
    std::uint64_t r = below(depth <= 0 ? 2 : 5);
    if (r == 0) return Type::boolean();
    if (r == 1 || r == 4) return Type::base(spec_.sorts()[below(spec_.sorts().size())]);
    if (r == 2) return Type::arrow(type(depth - 1), type(depth - 1));
    return Type::product(type(depth - 1), type(depth - 1));
  }

  Term term(const Type& t, int depth) {
    TypingContext ctx;
    return gen(t, depth, ctx);
  }

 private:
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : rng_() % n; }

  std::string fresh() { return "v" + std::to_string(++counter_); }

  // Any operator whose curried type ends in `t` after its arguments.
  std::optional<Term> constant_of(const Type& t, int depth, TypingContext& ctx) {
    if (!t.is_base()) return std::nullopt;
    std::vector<const OperatorDecl*> ops;
    for (const OperatorDecl& d : spec_.operators()) {
      if (d.result == t.sort() && d.param != ParamKind::kName) ops.push_back(&d);
    }
    if (ops.empty()) return std::nullopt;
    const OperatorDecl& d = *ops[below(ops.size())];
    if (d.param == ParamKind::kInteger) {
      return Term::constant(d.name, Literal{static_cast<std::int64_t>(below(10))});
    }
    if (depth <= 0 && !d.args.empty()) return Term::constant(hole_operator(t.sort()));
    Term out = Term::constant(d.name);
    Type ty = operator_type(d, false);
    while (ty.is_arrow()) {
      out = Term::app(std::move(out), gen(ty.first(), depth - 1, ctx));
      ty = ty.second();
    }
    return out;
  }

  Term gen(const Type& t, int depth, TypingContext& ctx) {
    std::vector<std::string> vars;
    for (const auto& [x, xt] : ctx) {
      if (xt == t) vars.push_back(x);
    }
    if (!vars.empty() && below(3) == 0) return Term::var(vars[below(vars.size())]);
    if (depth > 0) {
      switch (below(8)) {
        case 0: {
          Type a = type(1);
          Term f = gen(Type::arrow(a, t), depth - 1, ctx);
          return Term::app(std::move(f), gen(a, depth - 1, ctx));
        }
        case 1: {
          Type other = type(1);
          return Term::proj1(gen(Type::product(t, other), depth - 1, ctx));
        }
        case 2: {
          Term c = gen(Type::boolean(), depth - 1, ctx);
          Term a = gen(t, depth - 1, ctx);
          Term b = gen(t, depth - 1, ctx);
          return Term::match(std::move(c), {{Pattern::truth(), std::move(a)},
                                            {Pattern::falsity(), std::move(b)}});
        }
        case 3:
          if (t.is_base()) return spine_match(t, depth, ctx);
          break;
        case 4:
          if (t.is_arrow()) {
            std::string f = fresh();
            ctx.emplace_back(f, t);
            Term body = gen(t, depth - 1, ctx);
            ctx.pop_back();
            return Term::fix(Term::lam(f, t, std::move(body)));
          }
          break;
        default:
          break;
      }
    }
    switch (t.kind()) {
      case Type::Kind::kBool:
        return below(2) ? Term::truth() : Term::falsity();
      case Type::Kind::kArrow: {
        std::string x = fresh();
        ctx.emplace_back(x, t.first());
        Term body = gen(t.second(), depth - 1, ctx);
        ctx.pop_back();
        return Term::lam(x, t.first(), std::move(body));
      }
      case Type::Kind::kProduct:
        return Term::pair(gen(t.first(), depth - 1, ctx), gen(t.second(), depth - 1, ctx));
      case Type::Kind::kBase:
        return *constant_of(t, depth, ctx);
    }
    return Term::truth();
  }

  // match (a tree of some sort) with | o x1..xn -> ... | _ -> ..., with
  // binding patterns for abstraction arguments.
  Term spine_match(const Type& t, int depth, TypingContext& ctx) {
    const Sort& s = spec_.sorts()[below(spec_.sorts().size())];
    std::vector<const OperatorDecl*> ops;
    for (const OperatorDecl& d : spec_.operators()) {
      if (d.result == s && d.param == ParamKind::kNone && !d.args.empty()) ops.push_back(&d);
    }
    Term scrutinee = gen(Type::base(s), depth - 1, ctx);
    std::vector<std::pair<Pattern, Term>> branches;
    if (!ops.empty()) {
      const OperatorDecl& d = *ops[below(ops.size())];
      std::vector<Pattern> subs;
      TypingContext binds;
      for (const Valence& v : d.args) {
        std::string x = fresh();
        Pattern p = Pattern::var(x);
        // Either way x ends up at the argument's full type; through binding
        // patterns it is re-abstracted over the binders.
        if (!v.binds.empty() && below(2) == 0) {
          for (std::size_t k = 0; k < v.binds.size(); ++k) p = Pattern::bind(std::move(p));
        }
        binds.emplace_back(x, detail::valence_type(v));
        subs.push_back(std::move(p));
      }
      std::size_t before = ctx.size();
      ctx.insert(ctx.end(), binds.begin(), binds.end());
      Term body = gen(t, depth - 1, ctx);
      ctx.resize(before);
      branches.emplace_back(Pattern::op(d.name, std::move(subs)), std::move(body));
    }
    branches.emplace_back(Pattern::wild(), gen(t, depth - 1, ctx));
    return Term::match(std::move(scrutinee), std::move(branches));
  }

  const LanguageSpec& spec_;
  std::mt19937_64 rng_;
  std::size_t counter_ = 0;
};

}  // namespace lambda

}  // namespace abtedit
