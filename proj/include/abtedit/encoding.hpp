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

// Encodings of trees, cursor contexts, commands, conditions and editor
// expressions into the target calculus, their decoding, and the harness that
// compares direct and encoded executions.
//
// Executable configurations are pairs (tree, <ctx:R>) where the first
// component is the whole tree of root sort R with the cursor inside it and
// the second is the empty context. The zipper functions locate the cursor by
// themselves, so every command stays at type R -> R and the configuration at
// R * R. encode_context gives the canonical (focus, context) split instead,
// which decodes to the same tree.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "abtedit/abt.hpp"
#include "abtedit/engine.hpp"
#include "abtedit/error.hpp"
#include "abtedit/lambda.hpp"
#include "abtedit/language_spec.hpp"
#include "abtedit/logic.hpp"
#include "abtedit/zipper.hpp"
#include "abtedit/zipper_library.hpp"

namespace abtedit {

using lambda::Pattern;
using lambda::Term;
using lambda::Type;

// Operator name of the context-hole leaf in decoded contexts; its literal is
// the sort. Not a legal identifier, so it never clashes with a language.
inline constexpr const char* kContextHoleLeaf = "<ctx>";

inline Abt context_hole_leaf(const Sort& s) {
  return Abt::op(kContextHoleLeaf, {}, Literal{s});
}

inline bool is_context_hole_leaf(const Abt& a) {
  return a.is_op() && a.name() == kContextHoleLeaf;
}

struct EncodingOptions {
  // Deliberately wrong insertion (always a hole) to show the harness can fail.
  bool mutate_insert = false;
};

class EncodingEnv {
 public:
  EncodingEnv(const LanguageSpec& spec, Sort root_sort, EncodingOptions options = {})
      : spec_(spec.editor_extended() ? spec : editor_extend(spec)),
        root_(std::move(root_sort)),
        options_(options),
        zipper_(std::make_shared<const lambda::ZipperLibrary>(spec_)) {
    if (!spec_.has_sort(root_)) throw SpecError("unknown root sort " + root_);
  }

  const LanguageSpec& spec() const { return spec_; }
  const Sort& root_sort() const { return root_; }
  const EncodingOptions& options() const { return options_; }
  const lambda::ZipperLibrary& zipper() const { return *zipper_; }

  // R * R
  Type ctx_type() const { return Type::product(Type::base(root_), Type::base(root_)); }

 private:
  LanguageSpec spec_;
  Sort root_;
  EncodingOptions options_;
  std::shared_ptr<const lambda::ZipperLibrary> zipper_;
};

// ---------------------------------------------------------------------------
// Trees
// ---------------------------------------------------------------------------

namespace detail {

inline Term encode_abt_at(const Abt& a, const LanguageSpec& spec, const SortEnv& free_env,
                          std::vector<std::string>& bound) {
  if (a.is_var()) {
    for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
      if (*it == a.name()) return Term::var(a.name());
    }
    auto it = free_env.find(a.name());
    if (it == free_env.end()) throw SortError("free variable " + a.name() + " has no sort");
    const OperatorDecl* fam = spec.variable_operator(it->second);
    if (!fam) throw SortError("sort " + it->second + " has no variable operator");
    return Term::constant(fam->name, Literal{a.name()});
  }
  if (is_context_hole_leaf(a)) return Term::context_hole(std::get<std::string>(*a.literal()));
  const OperatorDecl* d = spec.find(a.name());
  if (!d) throw UnknownOperatorError("unknown operator " + a.name());
  if (d->param != ParamKind::kNone) return Term::constant(d->name, a.literal());
  if (a.args().size() != d->args.size()) throw SortError("arity mismatch at " + a.name());
  std::vector<Term> args;
  for (std::size_t i = 0; i < d->args.size(); ++i) {
    const Abstraction& arg = a.args()[i];
    const Valence& v = d->args[i];
    if (arg.binders.size() != v.binds.size()) throw SortError("binder count at " + a.name());
    bound.insert(bound.end(), arg.binders.begin(), arg.binders.end());
    Term body = encode_abt_at(arg.body, spec, free_env, bound);
    bound.resize(bound.size() - arg.binders.size());
    for (std::size_t k = arg.binders.size(); k-- > 0;) {
      body = Term::lam(arg.binders[k], Type::base(v.binds[k]), std::move(body));
    }
    args.push_back(std::move(body));
  }
  return Term::app(Term::constant(d->name), std::move(args));
}

}  // namespace detail

// Bound variables become lambda variables; variables free in `a` become
// literal instances of their sort's variable family, sorted by `free_env`.
inline Term encode_abt(const Abt& a, const EncodingEnv& env, const SortEnv& free_env = {}) {
  std::vector<std::string> bound;
  return detail::encode_abt_at(a, env.spec(), free_env, bound);
}

namespace detail {

class Decoder {
 public:
  Decoder(const LanguageSpec& spec, lambda::Evaluator& ev) : spec_(spec), ev_(ev) {}

  Abt decode(const lambda::ValuePtr& v0) {
    lambda::ValuePtr v = ev_.force(v0);
    if (v->kind != lambda::Value::Kind::kSpine) {
      throw Error("value is not a tree: " + lambda::to_string(*v));
    }
    const lambda::Head& h = v->head;
    switch (h.kind) {
      case lambda::Head::Kind::kContextHole:
        if (!v->args.empty()) throw Error("applied context hole");
        return context_hole_leaf(h.name);
      case lambda::Head::Kind::kAtom: {
        if (!v->args.empty()) throw Error("applied bound variable");
        auto it = names_.find(h.atom);
        if (it == names_.end()) throw Error("escaped bound variable");
        return Abt::var(it->second);
      }
      case lambda::Head::Kind::kOperator:
        break;
    }
    const OperatorDecl* d = spec_.find(h.name);
    if (!d) throw Error("unknown operator " + h.name + " in value");
    if (d->param == ParamKind::kName) {
      if (!v->args.empty() || !h.literal) throw Error("malformed variable constant");
      return Abt::var(std::get<std::string>(*h.literal));
    }
    if (d->param == ParamKind::kInteger) {
      if (!v->args.empty() || !h.literal) throw Error("malformed literal constant");
      return Abt::op(d->name, {}, h.literal);
    }
    if (v->args.size() != d->args.size()) {
      throw Error("partially applied " + d->name + " is not a tree");
    }
    std::vector<Abstraction> args;
    for (std::size_t i = 0; i < d->args.size(); ++i) {
      const Valence& val = d->args[i];
      lambda::ValuePtr body = v->args[i];
      std::vector<std::string> binders;
      std::vector<std::uint64_t> atoms;
      for (const Sort& s : val.binds) {
        body = ev_.force(body);
        std::string name = ev_.binder_name(body, 0).value_or("x");
        lambda::ValuePtr atom = ev_.fresh_atom(name, Type::base(s));
        names_[atom->head.atom] = name;
        atoms.push_back(atom->head.atom);
        binders.push_back(name);
        body = ev_.apply(body, atom);
      }
      Abt b = decode(body);
      for (std::uint64_t a : atoms) names_.erase(a);
      args.push_back(Abstraction{std::move(binders), std::move(b)});
    }
    return Abt::op(d->name, std::move(args));
  }

 private:
  const LanguageSpec& spec_;
  lambda::Evaluator& ev_;
  std::map<std::uint64_t, std::string> names_;
};

inline Abt splice_context(const Abt& context, const Abt& focus) {
  if (is_context_hole_leaf(context)) return focus;
  if (context.is_var()) return context;
  std::vector<Abstraction> args;
  for (const Abstraction& a : context.args()) {
    args.push_back(Abstraction{a.binders, splice_context(a.body, focus)});
  }
  return Abt::op(context.name(), std::move(args), context.literal());
}

}  // namespace detail

// Inverse of encode_abt on tree-shaped values. May evaluate (opening
// abstractions); non-value outcomes propagate as lambda::EvalAbort.
inline Abt decode_abt(const lambda::ValuePtr& v, const EncodingEnv& env,
                      lambda::Evaluator& ev) {
  detail::Decoder d(env.spec(), ev);
  return d.decode(v);
}

// Standalone decode with its own evaluator. Throws Error when the value is
// not a tree or decoding does not finish.
inline Abt decode_abt(const lambda::ValuePtr& v, const EncodingEnv& env) {
  lambda::Evaluator ev(env.spec());
  try {
    return decode_abt(v, env, ev);
  } catch (const lambda::EvalAbort& a) {
    throw Error(std::string("decoding failed: ") + lambda::to_string(a.status) + " " + a.detail);
  }
}

// ---------------------------------------------------------------------------
// Contexts and configurations
// ---------------------------------------------------------------------------

// The canonical split (focus, context): the cursor-rooted subtree and the
// surrounding tree with the context hole in its place. Variables of the
// focus bound in the context become variable-family literals.
inline Term encode_context(const WellFormedTree& t, const EncodingEnv& env) {
  Decomposition dec = decompose(t);
  SortEnv scope = context_env(dec.context, env.spec());
  Sort focus_sort = operator_sort_suffix(dec.focus.name());
  Term focus = encode_abt(dec.focus, env, scope);
  Term context = encode_abt(recompose(dec.context, context_hole_leaf(focus_sort)), env);
  return Term::pair(std::move(focus), std::move(context));
}

// The executable configuration (tree, <ctx:R>).
inline Term encode_configuration(const WellFormedTree& t, const EncodingEnv& env) {
  return Term::pair(encode_abt(t.tree, env), Term::context_hole(env.root_sort()));
}

// Decodes a (focus, context) pair and splices the focus into the context.
inline Abt decode_configuration(const lambda::ValuePtr& v, const EncodingEnv& env,
                                lambda::Evaluator& ev) {
  lambda::ValuePtr p = ev.force(v);
  if (p->kind != lambda::Value::Kind::kPair) throw Error("configuration is not a pair");
  Abt focus = decode_abt(p->first, env, ev);
  Abt context = decode_abt(p->second, env, ev);
  return detail::splice_context(context, focus);
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

namespace detail {

// \t:S. (match false with | true -> t): a function that fails on every input.
inline Term failing(const Sort& s) {
  return Term::lam("t", Type::base(s),
                   Term::match(Term::falsity(), {{Pattern::truth(), Term::var("t")}}));
}

}  // namespace detail

// An R -> R function. Throws UnknownOperatorError for operators the direct
// semantics rejects as unknown.
inline Term encode_command(const Apc& cmd, const EncodingEnv& env) {
  const Sort& r = env.root_sort();
  const lambda::ZipperLibrary& z = env.zipper();
  switch (cmd.kind) {
    case Apc::Kind::kChild: {
      if (cmd.child == 0) return detail::failing(r);
      Term f = z.down(r);
      for (std::size_t n = 2; n <= cmd.child; ++n) {
        f = Term::lam("t", Type::base(r), Term::app(z.right(r), Term::app(f, Term::var("t"))));
      }
      return f;
    }
    case Apc::Kind::kParent:
      return z.up(r);
    case Apc::Kind::kInsert: {
      OperatorRef ref = lookup_operator(env.spec(), cmd.op, cmd.literal);
      if (ref.decl->is_cursor()) throw UnknownOperatorError("cannot insert " + cmd.op);
      const Sort& t = ref.decl->result;
      Abt tmpl = env.options().mutate_insert ? Abt::hole(t)
                                             : fresh_template(*ref.decl, ref.literal, {});
      SortEnv free_env;
      if (tmpl.is_var()) free_env[tmpl.name()] = t;
      return Term::app(z.set(t, r), encode_abt(tmpl, env, free_env));
    }
  }
  return detail::failing(r);
}

// ---------------------------------------------------------------------------
// Conditions
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<const OperatorDecl*> operators_with_children(const LanguageSpec& spec,
                                                                const Sort& s) {
  std::vector<const OperatorDecl*> out;
  for (const OperatorDecl& d : spec.operators()) {
    if (d.result == s && d.param == ParamKind::kNone && !d.args.empty()) out.push_back(&d);
  }
  return out;
}

inline Pattern instance_pattern(const OperatorDecl& d, const std::optional<Literal>& literal) {
  std::vector<Pattern> subs(d.param == ParamKind::kNone ? d.args.size() : 0, Pattern::wild());
  return Pattern::op(d.name, std::move(subs), literal);
}

class ConditionEncoder {
 public:
  explicit ConditionEncoder(const EncodingEnv& env) : env_(env), spec_(env.spec()) {}

  // S -> bool on cursor-free trees.
  Term encode(const Condition& c, const Sort& s) {
    Type st = Type::base(s);
    auto app = [&](const Condition& sub) { return Term::app(encode(sub, s), Term::var("t")); };
    switch (c.kind()) {
      case Condition::Kind::kNeg:
        return Term::lam("t", st,
                         lambda::detail::if_then_else(app(c.lhs()), Term::falsity(),
                                                      Term::truth()));
      case Condition::Kind::kAnd:
        return Term::lam("t", st,
                         lambda::detail::if_then_else(app(c.lhs()), app(c.rhs()),
                                                      Term::falsity()));
      case Condition::Kind::kOr:
        return Term::lam("t", st,
                         lambda::detail::if_then_else(app(c.lhs()), Term::truth(),
                                                      app(c.rhs())));
      case Condition::Kind::kAt: {
        const OperatorDecl& d = checked(c);
        if (d.result != s) return Term::lam("t", st, Term::falsity());
        return Term::lam("t", st,
                         Term::match(Term::var("t"), {{instance_pattern(d, c.literal()),
                                                       Term::truth()},
                                                      {Pattern::wild(), Term::falsity()}}));
      }
      case Condition::Kind::kPossibly:
        return lambda::detail::family_member(spec_, possibly(checked(c), c.literal()), s);
      case Condition::Kind::kNecessity: {
        const OperatorDecl& d = checked(c);
        Term poss = possibly(d, c.literal());
        std::vector<std::pair<Pattern, Term>> branches;
        for (const OperatorDecl* p : operators_with_children(spec_, s)) {
          Term body = Term::truth();
          for (std::size_t i = p->args.size(); i-- > 0;) {
            const Valence& v = p->args[i];
            Term test = Term::app(lambda::detail::family_member(spec_, poss, v.body),
                                  lambda::detail::probe(spec_, v,
                                                        Term::var(lambda::detail::child_var(i))));
            body = lambda::detail::if_then_else(std::move(test), std::move(body),
                                                Term::falsity());
          }
          branches.emplace_back(Pattern::op(p->name, lambda::detail::child_patterns(*p)),
                                std::move(body));
        }
        branches.emplace_back(Pattern::wild(), Term::truth());
        return Term::lam("t", st, Term::match(Term::var("t"), std::move(branches)));
      }
    }
    throw Error("malformed condition");
  }

 private:
  const OperatorDecl& checked(const Condition& c) {
    validate_condition(c, spec_);
    const OperatorDecl* d = spec_.find(c.op());
    if (d->param == ParamKind::kName && c.literal()) {
      throw Error("conditions on a particular variable name are not encodable: " +
                  to_string(c));
    }
    return *d;
  }

  // The per-sort family deciding "an instance of d occurs somewhere".
  Term possibly(const OperatorDecl& d, const std::optional<Literal>& literal) {
    std::string key = d.name + (literal ? ":" + literal_to_string(*literal) : "");
    auto it = possibly_.find(key);
    if (it != possibly_.end()) return it->second;
    Term family = lambda::detail::sort_family(
        spec_, [](const Sort& s) { return Type::arrow(Type::base(s), Type::boolean()); },
        [&](const Sort& s) {
          std::vector<std::pair<Pattern, Term>> branches;
          if (d.result == s) branches.emplace_back(instance_pattern(d, literal), Term::truth());
          for (const OperatorDecl* p : operators_with_children(spec_, s)) {
            Term body = Term::falsity();
            for (std::size_t i = p->args.size(); i-- > 0;) {
              const Valence& v = p->args[i];
              Term test = Term::app(lambda::detail::recurse(spec_, v.body),
                                    lambda::detail::probe(
                                        spec_, v, Term::var(lambda::detail::child_var(i))));
              body = lambda::detail::if_then_else(std::move(test), Term::truth(),
                                                  std::move(body));
            }
            branches.emplace_back(Pattern::op(p->name, lambda::detail::child_patterns(*p)),
                                  std::move(body));
          }
          branches.emplace_back(Pattern::wild(), Term::falsity());
          return Term::lam("t", Type::base(s), Term::match(Term::var("t"), std::move(branches)));
        });
    possibly_.emplace(key, family);
    return family;
  }

  const EncodingEnv& env_;
  const LanguageSpec& spec_;
  std::map<std::string, Term> possibly_;
};

}  // namespace detail

// S -> bool deciding phi on cursor-free trees of sort `sort` (the root sort by
// default). Throws UnknownOperatorError for unknown operators.
inline Term encode_condition(const Condition& c, const EncodingEnv& env,
                             std::optional<Sort> sort = std::nullopt) {
  detail::ConditionEncoder enc(env);
  return enc.encode(c, sort.value_or(env.root_sort()));
}

// R -> bool deciding phi on the subtree enclosed by the cursor.
inline Term encode_condition_at_cursor(const Condition& c, const EncodingEnv& env) {
  const LanguageSpec& spec = env.spec();
  detail::ConditionEncoder enc(env);
  std::map<Sort, Term> local;
  for (const Sort& s : spec.sorts()) local[s] = enc.encode(c, s);
  Term family = lambda::detail::sort_family(
      spec, [](const Sort& s) { return Type::arrow(Type::base(s), Type::boolean()); },
      [&](const Sort& s) {
        std::vector<std::pair<Pattern, Term>> branches;
        branches.emplace_back(Pattern::op(cursor_operator(s), {Pattern::var("c")}),
                              Term::app(local.at(s), Term::var("c")));
        for (const OperatorDecl* d : lambda::detail::user_operators_of(spec, s)) {
          const std::size_t n = d->args.size();
          auto descend = [&](std::size_t i) {
            const Valence& v = d->args[i];
            return Term::app(lambda::detail::recurse(spec, v.body),
                             lambda::detail::probe(spec, v,
                                                   Term::var(lambda::detail::child_var(i))));
          };
          Term body = descend(n - 1);
          for (std::size_t i = n - 1; i-- > 0;) {
            const Valence& v = d->args[i];
            Term test = Term::app(env.zipper().has_cursor(v.body),
                                  lambda::detail::probe(spec, v,
                                                        Term::var(lambda::detail::child_var(i))));
            body = lambda::detail::if_then_else(std::move(test), descend(i), std::move(body));
          }
          branches.emplace_back(Pattern::op(d->name, lambda::detail::child_patterns(*d)),
                                std::move(body));
        }
        branches.emplace_back(Pattern::wild(), Term::falsity());
        return Term::lam("t", Type::base(s), Term::match(Term::var("t"), std::move(branches)));
      });
  return lambda::detail::family_member(spec, family, env.root_sort());
}

// ---------------------------------------------------------------------------
// Editor expressions
// ---------------------------------------------------------------------------

namespace detail {

inline Term failing_ctx(const EncodingEnv& env) {
  return Term::lam("C", env.ctx_type(),
                   Term::match(Term::falsity(), {{Pattern::truth(), Term::var("C")}}));
}

inline std::string rec_name(const std::string& x) { return "rec_" + x; }

inline Term encode_expr(const EditorExpr& e, const EncodingEnv& env) {
  const Type ctx = env.ctx_type();
  const Term c = Term::var("C");
  switch (e.kind()) {
    case EditorExpr::Kind::kNil:
      return Term::lam("C", ctx, c);
    case EditorExpr::Kind::kPrefix: {
      Term cmd;
      try {
        cmd = encode_command(e.command(), env);
      } catch (const UnknownOperatorError&) {
        return failing_ctx(env);
      }
      Term moved = Term::pair(Term::app(std::move(cmd), Term::proj1(c)), Term::proj2(c));
      return Term::lam("C", ctx, Term::app(encode_expr(e.first(), env), std::move(moved)));
    }
    case EditorExpr::Kind::kCond: {
      Term test;
      try {
        test = encode_condition_at_cursor(e.condition(), env);
      } catch (const UnknownOperatorError&) {
        return failing_ctx(env);
      }
      return Term::lam(
          "C", ctx,
          lambda::detail::if_then_else(Term::app(std::move(test), Term::proj1(c)),
                                       Term::app(encode_expr(e.first(), env), c),
                                       Term::app(encode_expr(e.second(), env), c)));
    }
    case EditorExpr::Kind::kSeq:
      return Term::lam("C", ctx,
                       Term::app(encode_expr(e.second(), env),
                                 Term::app(encode_expr(e.first(), env), c)));
    case EditorExpr::Kind::kRec:
      return Term::fix(Term::lam(rec_name(e.var()), Type::arrow(ctx, ctx),
                                 encode_expr(e.first(), env)));
    case EditorExpr::Kind::kRecVar:
      return Term::var(rec_name(e.var()));
  }
  throw Error("malformed editor expression");
}

}  // namespace detail

// A closed Ctx -> Ctx term. Commands and conditions the direct semantics
// gets stuck on for unknown operators become functions that always fail.
inline Term encode_editor_expr(const EditorExpr& e, const EncodingEnv& env) {
  if (!is_closed(e)) throw Error("editor expression has free recursion variables");
  return detail::encode_expr(e, env);
}

// ---------------------------------------------------------------------------
// Soundness harness
// ---------------------------------------------------------------------------

enum class SoundnessStatus { kMatch, kMismatch, kStuckAgree, kStuckDiverge, kFuel };

inline const char* to_string(SoundnessStatus s) {
  switch (s) {
    case SoundnessStatus::kMatch:
      return "MATCH";
    case SoundnessStatus::kMismatch:
      return "MISMATCH";
    case SoundnessStatus::kStuckAgree:
      return "STUCK-AGREE";
    case SoundnessStatus::kStuckDiverge:
      return "STUCK-DIVERGE";
    case SoundnessStatus::kFuel:
      return "FUEL";
  }
  return "?";
}

struct SoundnessOptions {
  std::size_t fuel = 1000;
  lambda::Limits lambda_limits{2'000'000, 40'000};
};

struct SoundnessReport {
  SoundnessStatus status = SoundnessStatus::kMismatch;
  RunResult direct;
  lambda::EvalStatus encoded_status = lambda::EvalStatus::kStuck;
  std::optional<Abt> encoded_tree;
  std::size_t encoded_steps = 0;
  std::string detail;
};

inline SoundnessReport check_soundness(const EditorExpr& e, const WellFormedTree& t,
                                       const EncodingEnv& env, SoundnessOptions opts = {}) {
  SoundnessReport rep{SoundnessStatus::kMismatch,
                      run(Config{e, t}, env.spec(), opts.fuel),
                      lambda::EvalStatus::kStuck,
                      std::nullopt,
                      0,
                      {}};

  Term program = Term::app(encode_editor_expr(e, env), encode_configuration(t, env));
  Type ty = lambda::typecheck(program, env.spec());
  if (!(ty == env.ctx_type())) {
    rep.detail = "encoded program has type " + lambda::to_string(ty);
    return rep;
  }
  // Evaluation and decoding recurse deeply on long runs; give them room.
  struct Encoded {
    lambda::EvalStatus status;
    std::optional<Abt> tree;
    std::size_t steps;
    std::string detail;
  };
  Encoded enc = lambda::with_large_stack([&] {
    lambda::Evaluator ev(env.spec(), opts.lambda_limits);
    lambda::EvalResult r = ev.evaluate(program);
    Encoded out{r.status, std::nullopt, r.steps, r.detail};
    if (!r.ok()) return out;
    try {
      out.tree = decode_configuration(r.value, env, ev);
    } catch (const lambda::EvalAbort& a) {
      out.status = a.status;
      out.detail = a.detail;
    } catch (const Error& err) {
      out.status = lambda::EvalStatus::kStuck;
      out.detail = err.what();
    }
    out.steps = ev.steps();
    return out;
  });
  rep.encoded_status = enc.status;
  rep.encoded_tree = std::move(enc.tree);
  rep.encoded_steps = enc.steps;
  rep.detail = std::move(enc.detail);

  switch (rep.direct.outcome) {
    case RunResult::Outcome::kFuelExhausted:
      rep.status = SoundnessStatus::kFuel;
      break;
    case RunResult::Outcome::kStuck:
      rep.status = rep.encoded_status == lambda::EvalStatus::kMatchFailure
                       ? SoundnessStatus::kStuckAgree
                       : SoundnessStatus::kStuckDiverge;
      break;
    case RunResult::Outcome::kTerminal:
      if (rep.encoded_tree && alpha_eq(*rep.encoded_tree, rep.direct.final.tree.tree)) {
        rep.status = SoundnessStatus::kMatch;
      } else {
        rep.status = SoundnessStatus::kMismatch;
        if (rep.encoded_tree) {
          rep.detail = "direct " + print_tree(rep.direct.final.tree.tree) + " encoded " +
                       print_tree(*rep.encoded_tree);
        }
      }
      break;
  }
  return rep;
}

// One report line: "<STATUS> direct=<outcome> encoded=<status>".
inline std::string format_report(const SoundnessReport& r) {
  std::string s = std::string(to_string(r.status)) + " direct=" + to_string(r.direct.outcome) +
                  " encoded=" + lambda::to_string(r.encoded_status);
  if (!r.detail.empty() && r.status != SoundnessStatus::kMatch) s += " (" + r.detail + ")";
  return s;
}

}  // namespace abtedit
