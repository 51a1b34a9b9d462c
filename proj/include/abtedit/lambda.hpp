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

// The target calculus: simply typed lambda terms with pairs, booleans,
// general recursion through fix, and pattern matching over operator spines,
// pairs, booleans and abstractions.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <pthread.h>

#include "abtedit/abt.hpp"
#include "abtedit/error.hpp"
#include "abtedit/language_spec.hpp"

namespace abtedit::lambda {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

class Type {
 public:
  enum class Kind { kBase, kBool, kArrow, kProduct };

  Type() = default;

  static Type base(Sort s) { return Type(Node{Kind::kBase, std::move(s), {}, {}}); }
  static Type boolean() { return Type(Node{Kind::kBool, {}, {}, {}}); }
  static Type arrow(Type from, Type to) {
    return Type(Node{Kind::kArrow, {}, std::move(from), std::move(to)});
  }
  static Type product(Type l, Type r) {
    return Type(Node{Kind::kProduct, {}, std::move(l), std::move(r)});
  }
  // from_1 -> ... -> from_n -> to
  static Type arrows(const std::vector<Type>& from, Type to) {
    for (auto it = from.rbegin(); it != from.rend(); ++it) to = arrow(*it, std::move(to));
    return to;
  }

  bool valid() const { return node_ != nullptr; }
  Kind kind() const { return node_->kind; }
  bool is_base() const { return kind() == Kind::kBase; }
  bool is_bool() const { return kind() == Kind::kBool; }
  bool is_arrow() const { return kind() == Kind::kArrow; }
  bool is_product() const { return kind() == Kind::kProduct; }
  const Sort& sort() const { return node_->sort; }
  // Domain / left component.
  const Type& first() const { return *node_->first; }
  // Codomain / right component.
  const Type& second() const { return *node_->second; }

  bool operator==(const Type& other) const {
    if (node_ == other.node_) return true;
    if (!node_ || !other.node_) return false;
    if (kind() != other.kind()) return false;
    switch (kind()) {
      case Kind::kBase:
        return sort() == other.sort();
      case Kind::kBool:
        return true;
      default:
        return first() == other.first() && second() == other.second();
    }
  }

 private:
  struct Node {
    Kind kind;
    Sort sort;
    std::shared_ptr<const Type> first, second;
    Node(Kind k, Sort s, std::optional<Type> a, std::optional<Type> b)
        : kind(k), sort(std::move(s)) {
      if (a) first = std::make_shared<const Type>(std::move(*a));
      if (b) second = std::make_shared<const Type>(std::move(*b));
    }
  };
  explicit Type(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  std::shared_ptr<const Node> node_;
};

namespace detail {
inline std::string type_string(const Type& t, int prec) {
  switch (t.kind()) {
    case Type::Kind::kBase:
      return t.sort();
    case Type::Kind::kBool:
      return "bool";
    case Type::Kind::kArrow: {
      std::string s = type_string(t.first(), 1) + " -> " + type_string(t.second(), 0);
      return prec > 0 ? "(" + s + ")" : s;
    }
    case Type::Kind::kProduct: {
      std::string s = type_string(t.first(), 2) + " * " + type_string(t.second(), 2);
      return prec > 1 ? "(" + s + ")" : s;
    }
  }
  return "?";
}
}  // namespace detail

inline std::string to_string(const Type& t) {
  return t.valid() ? detail::type_string(t, 0) : "<none>";
}

// ---------------------------------------------------------------------------
// Patterns
// ---------------------------------------------------------------------------

class Pattern {
 public:
  enum class Kind { kVar, kWild, kOp, kPair, kBind, kTrue, kFalse };

  static Pattern var(std::string x) {
    Pattern p(Kind::kVar);
    p.name_ = std::move(x);
    return p;
  }
  static Pattern wild() { return Pattern(Kind::kWild); }
  static Pattern truth() { return Pattern(Kind::kTrue); }
  static Pattern falsity() { return Pattern(Kind::kFalse); }
  // Matches a spine headed by `op` (or an atom of the `op` family) with
  // exactly subs.size() arguments. A literal restricts the instance.
  static Pattern op(std::string op, std::vector<Pattern> subs = {},
                    std::optional<Literal> literal = std::nullopt) {
    Pattern p(Kind::kOp);
    p.name_ = std::move(op);
    p.subs_ = std::move(subs);
    p.literal_ = std::move(literal);
    return p;
  }
  static Pattern pair(Pattern l, Pattern r) {
    Pattern p(Kind::kPair);
    p.subs_ = {std::move(l), std::move(r)};
    return p;
  }
  static Pattern bind(Pattern body) {
    Pattern p(Kind::kBind);
    p.subs_ = {std::move(body)};
    return p;
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::optional<Literal>& literal() const { return literal_; }
  const std::vector<Pattern>& subs() const { return subs_; }

  bool operator==(const Pattern&) const = default;

 private:
  explicit Pattern(Kind k) : kind_(k) {}

  Kind kind_;
  std::string name_;
  std::optional<Literal> literal_;
  std::vector<Pattern> subs_;
};

inline void pattern_vars(const Pattern& p, std::vector<std::string>& out) {
  if (p.kind() == Pattern::Kind::kVar) out.push_back(p.name());
  for (const Pattern& s : p.subs()) pattern_vars(s, out);
}

inline std::string to_string(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::kVar:
      return p.name();
    case Pattern::Kind::kWild:
      return "_";
    case Pattern::Kind::kTrue:
      return "true";
    case Pattern::Kind::kFalse:
      return "false";
    case Pattern::Kind::kOp: {
      std::string head = p.name();
      if (p.literal()) head += "[" + literal_to_string(*p.literal()) + "]";
      if (p.subs().empty()) return head;
      std::string s = "(" + head;
      for (const Pattern& q : p.subs()) s += " " + to_string(q);
      return s + ")";
    }
    case Pattern::Kind::kPair:
      return "(" + to_string(p.subs()[0]) + ", " + to_string(p.subs()[1]) + ")";
    case Pattern::Kind::kBind:
      return "bind(" + to_string(p.subs()[0]) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

struct TermNode;

class Term {
 public:
  enum class Kind {
    kVar, kLam, kApp, kConst, kContextHole, kPair, kProj1, kProj2, kTrue, kFalse,
    kFix, kMatch
  };

  // A binder name inherited at closure creation from the function value
  // bound to `var`, peeling `depth` abstractions. Names carry no meaning in
  // the calculus; they only keep decoded trees readable and keep textual
  // variable references attached to the binder they were written under.
  struct NameHint {
    std::string var;
    std::size_t depth = 0;
    bool operator==(const NameHint&) const = default;
  };

  Term() = default;

  static Term var(std::string x);
  static Term lam(std::string x, Type t, Term body,
                  std::optional<NameHint> hint = std::nullopt);
  static Term app(Term f, Term a);
  static Term app(Term f, std::vector<Term> args) {
    for (Term& a : args) f = app(std::move(f), std::move(a));
    return f;
  }
  static Term constant(std::string op, std::optional<Literal> literal = std::nullopt);
  // The context-hole constant of sort s.
  static Term context_hole(Sort s);
  static Term pair(Term l, Term r);
  static Term proj1(Term t);
  static Term proj2(Term t);
  static Term truth();
  static Term falsity();
  static Term fix(Term t);
  static Term match(Term scrutinee, std::vector<std::pair<Pattern, Term>> branches);

  bool valid() const { return node_ != nullptr; }
  Kind kind() const;
  // Variable, lambda binder, constant or context-hole sort.
  const std::string& name() const;
  const Type& type() const;
  const std::optional<Literal>& literal() const;
  const std::optional<NameHint>& hint() const;
  // Function / lambda body / pair left / projection and fix operand / scrutinee.
  const Term& first() const;
  // Argument / pair right.
  const Term& second() const;
  const std::vector<std::pair<Pattern, Term>>& branches() const;

  bool operator==(const Term& other) const;
  const TermNode* identity() const { return node_.get(); }

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  Term::Kind kind;
  std::string name;
  Type type;
  std::optional<Literal> literal;
  std::optional<Term::NameHint> hint;
  Term first, second;
  std::vector<std::pair<Pattern, Term>> branches;
};

namespace detail {
inline std::shared_ptr<const TermNode> make_term(TermNode n) {
  return std::make_shared<const TermNode>(std::move(n));
}
}  // namespace detail

inline Term Term::var(std::string x) {
  return Term(detail::make_term(TermNode{Kind::kVar, std::move(x), {}, {}, {}, {}, {}, {}}));
}
inline Term Term::lam(std::string x, Type t, Term body, std::optional<NameHint> hint) {
  return Term(detail::make_term(TermNode{Kind::kLam, std::move(x), std::move(t), {},
                                         std::move(hint), std::move(body), {}, {}}));
}
inline Term Term::app(Term f, Term a) {
  return Term(detail::make_term(
      TermNode{Kind::kApp, {}, {}, {}, {}, std::move(f), std::move(a), {}}));
}
inline Term Term::constant(std::string op, std::optional<Literal> literal) {
  return Term(detail::make_term(
      TermNode{Kind::kConst, std::move(op), {}, std::move(literal), {}, {}, {}, {}}));
}
inline Term Term::context_hole(Sort s) {
  return Term(
      detail::make_term(TermNode{Kind::kContextHole, std::move(s), {}, {}, {}, {}, {}, {}}));
}
inline Term Term::pair(Term l, Term r) {
  return Term(detail::make_term(
      TermNode{Kind::kPair, {}, {}, {}, {}, std::move(l), std::move(r), {}}));
}
inline Term Term::proj1(Term t) {
  return Term(detail::make_term(TermNode{Kind::kProj1, {}, {}, {}, {}, std::move(t), {}, {}}));
}
inline Term Term::proj2(Term t) {
  return Term(detail::make_term(TermNode{Kind::kProj2, {}, {}, {}, {}, std::move(t), {}, {}}));
}
inline Term Term::truth() {
  static const Term t(detail::make_term(TermNode{Kind::kTrue, {}, {}, {}, {}, {}, {}, {}}));
  return t;
}
inline Term Term::falsity() {
  static const Term t(detail::make_term(TermNode{Kind::kFalse, {}, {}, {}, {}, {}, {}, {}}));
  return t;
}
inline Term Term::fix(Term t) {
  return Term(detail::make_term(TermNode{Kind::kFix, {}, {}, {}, {}, std::move(t), {}, {}}));
}
inline Term Term::match(Term scrutinee, std::vector<std::pair<Pattern, Term>> branches) {
  if (branches.empty()) throw Error("match needs at least one branch");
  return Term(detail::make_term(TermNode{Kind::kMatch, {}, {}, {}, {}, std::move(scrutinee), {},
                                         std::move(branches)}));
}

inline Term::Kind Term::kind() const { return node_->kind; }
inline const std::string& Term::name() const { return node_->name; }
inline const Type& Term::type() const { return node_->type; }
inline const std::optional<Literal>& Term::literal() const { return node_->literal; }
inline const std::optional<Term::NameHint>& Term::hint() const { return node_->hint; }
inline const Term& Term::first() const { return node_->first; }
inline const Term& Term::second() const { return node_->second; }
inline const std::vector<std::pair<Pattern, Term>>& Term::branches() const {
  return node_->branches;
}

// Structural equality; binder names count, hints do not.
inline bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::kVar:
    case Kind::kContextHole:
      return name() == other.name();
    case Kind::kConst:
      return name() == other.name() && literal() == other.literal();
    case Kind::kLam:
      return name() == other.name() && type() == other.type() && first() == other.first();
    case Kind::kApp:
    case Kind::kPair:
      return first() == other.first() && second() == other.second();
    case Kind::kProj1:
    case Kind::kProj2:
    case Kind::kFix:
      return first() == other.first();
    case Kind::kTrue:
    case Kind::kFalse:
      return true;
    case Kind::kMatch:
      return first() == other.first() && branches() == other.branches();
  }
  return false;
}

namespace detail {

// prec: 0 = anything, 1 = application operand position on the left,
// 2 = atomic.
inline std::string term_string(const Term& t, int prec) {
  auto wrap = [&](std::string s, int needed) { return prec > needed ? "(" + s + ")" : s; };
  switch (t.kind()) {
    case Term::Kind::kVar:
      return t.name();
    case Term::Kind::kConst:
      if (t.literal()) return wrap(t.name() + " " + literal_to_string(*t.literal()), 1);
      return t.name();
    case Term::Kind::kContextHole:
      return "<ctx:" + t.name() + ">";
    case Term::Kind::kLam:
      return wrap("\\" + t.name() + ":" + type_string(t.type(), 1) + ". " +
                      term_string(t.first(), 0),
                  0);
    case Term::Kind::kApp:
      return wrap(term_string(t.first(), 1) + " " + term_string(t.second(), 2), 1);
    case Term::Kind::kPair:
      return "(" + term_string(t.first(), 0) + ", " + term_string(t.second(), 0) + ")";
    case Term::Kind::kProj1:
      return term_string(t.first(), 2) + ".1";
    case Term::Kind::kProj2:
      return term_string(t.first(), 2) + ".2";
    case Term::Kind::kTrue:
      return "true";
    case Term::Kind::kFalse:
      return "false";
    case Term::Kind::kFix:
      return wrap("fix " + term_string(t.first(), 2), 1);
    case Term::Kind::kMatch: {
      std::string s = "match " + term_string(t.first(), 0) + " with";
      for (const auto& [p, b] : t.branches()) {
        s += " | " + to_string(p) + " -> " + term_string(b, 1);
      }
      return wrap(s, 0);
    }
  }
  return "?";
}

}  // namespace detail

inline std::string to_string(const Term& t) { return detail::term_string(t, 0); }

inline void free_vars(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      if (!bound.count(t.name())) out.insert(t.name());
      return;
    case Term::Kind::kLam: {
      bool fresh = bound.insert(t.name()).second;
      free_vars(t.first(), bound, out);
      if (fresh) bound.erase(t.name());
      return;
    }
    case Term::Kind::kApp:
    case Term::Kind::kPair:
      free_vars(t.first(), bound, out);
      free_vars(t.second(), bound, out);
      return;
    case Term::Kind::kProj1:
    case Term::Kind::kProj2:
    case Term::Kind::kFix:
      free_vars(t.first(), bound, out);
      return;
    case Term::Kind::kMatch:
      free_vars(t.first(), bound, out);
      for (const auto& [p, b] : t.branches()) {
        std::vector<std::string> vs;
        pattern_vars(p, vs);
        std::vector<std::string> added;
        for (const std::string& v : vs) {
          if (bound.insert(v).second) added.push_back(v);
        }
        free_vars(b, bound, out);
        for (const std::string& v : added) bound.erase(v);
      }
      return;
    default:
      return;
  }
}

inline std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> bound, out;
  free_vars(t, bound, out);
  return out;
}

inline std::size_t term_size(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kLam:
    case Term::Kind::kProj1:
    case Term::Kind::kProj2:
    case Term::Kind::kFix:
      return 1 + term_size(t.first());
    case Term::Kind::kApp:
    case Term::Kind::kPair:
      return 1 + term_size(t.first()) + term_size(t.second());
    case Term::Kind::kMatch: {
      std::size_t n = 1 + term_size(t.first());
      for (const auto& [p, b] : t.branches()) n += term_size(b);
      return n;
    }
    default:
      return 1;
  }
}

// ---------------------------------------------------------------------------
// Typing
// ---------------------------------------------------------------------------

// Innermost binding last.
using TypingContext = std::vector<std::pair<std::string, Type>>;

// The curried type of an operator constant: each valence x1:s1..xk:sk.b
// becomes s1 -> ... -> sk -> b, and the arguments are curried in order.
// Literal-family instances are nullary.
inline Type operator_type(const OperatorDecl& d, bool with_literal) {
  if (d.param != ParamKind::kNone) {
    if (!with_literal) throw TypeError("literal operator " + d.name + " used without a literal");
    return Type::base(d.result);
  }
  if (with_literal) throw TypeError("operator " + d.name + " takes no literal");
  std::vector<Type> args;
  for (const Valence& v : d.args) {
    std::vector<Type> binds;
    for (const Sort& s : v.binds) binds.push_back(Type::base(s));
    args.push_back(Type::arrows(binds, Type::base(v.body)));
  }
  return Type::arrows(args, Type::base(d.result));
}

namespace detail {

inline const OperatorDecl& constant_decl(const LanguageSpec& spec, const std::string& name) {
  const OperatorDecl* d = spec.find(name);
  if (!d) throw TypeError("unknown constant " + name);
  return *d;
}

inline std::string abbreviate(const Term& t) {
  std::string s = to_string(t);
  if (s.size() > 120) s = s.substr(0, 117) + "...";
  return s;
}

inline void check_pattern(const Pattern& p, const Type& t, const LanguageSpec& spec,
                          TypingContext& out) {
  auto fail = [&](const std::string& why) {
    throw TypeError("pattern " + to_string(p) + " against " + to_string(t) + ": " + why);
  };
  switch (p.kind()) {
    case Pattern::Kind::kVar:
      for (const auto& [x, _] : out) {
        if (x == p.name()) fail("variable " + x + " bound twice");
      }
      out.emplace_back(p.name(), t);
      return;
    case Pattern::Kind::kWild:
      return;
    case Pattern::Kind::kTrue:
    case Pattern::Kind::kFalse:
      if (!t.is_bool()) fail("boolean pattern");
      return;
    case Pattern::Kind::kOp: {
      const OperatorDecl& d = constant_decl(spec, p.name());
      Type ty = d.param != ParamKind::kNone ? Type::base(d.result) : operator_type(d, false);
      for (const Pattern& sub : p.subs()) {
        if (!ty.is_arrow()) fail("too many sub-patterns");
        check_pattern(sub, ty.first(), spec, out);
        ty = ty.second();
      }
      if (!(ty == t)) fail("operator pattern has type " + to_string(ty));
      return;
    }
    case Pattern::Kind::kPair:
      if (!t.is_product()) fail("pair pattern");
      check_pattern(p.subs()[0], t.first(), spec, out);
      check_pattern(p.subs()[1], t.second(), spec, out);
      return;
    case Pattern::Kind::kBind: {
      if (!t.is_arrow()) fail("binding pattern needs a function type");
      std::size_t before = out.size();
      check_pattern(p.subs()[0], t.second(), spec, out);
      for (std::size_t i = before; i < out.size(); ++i) {
        out[i].second = Type::arrow(t.first(), out[i].second);
      }
      return;
    }
  }
}

inline Type typecheck(const Term& t, TypingContext& ctx, const LanguageSpec& spec) {
  auto fail = [&](const std::string& why) -> Type {
    throw TypeError(why + " in " + abbreviate(t));
  };
  switch (t.kind()) {
    case Term::Kind::kVar:
      for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
        if (it->first == t.name()) return it->second;
      }
      return fail("unbound variable " + t.name());
    case Term::Kind::kLam: {
      if (!t.type().valid()) return fail("missing binder type");
      ctx.emplace_back(t.name(), t.type());
      Type body = typecheck(t.first(), ctx, spec);
      ctx.pop_back();
      return Type::arrow(t.type(), body);
    }
    case Term::Kind::kApp: {
      Type f = typecheck(t.first(), ctx, spec);
      Type a = typecheck(t.second(), ctx, spec);
      if (!f.is_arrow()) return fail("applying a non-function of type " + to_string(f));
      if (!(f.first() == a)) {
        return fail("argument of type " + to_string(a) + " where " + to_string(f.first()) +
                    " is expected");
      }
      return f.second();
    }
    case Term::Kind::kConst: {
      const OperatorDecl& d = constant_decl(spec, t.name());
      return operator_type(d, t.literal().has_value());
    }
    case Term::Kind::kContextHole:
      if (!spec.has_sort(t.name())) return fail("unknown sort " + t.name());
      return Type::base(t.name());
    case Term::Kind::kPair:
      return Type::product(typecheck(t.first(), ctx, spec), typecheck(t.second(), ctx, spec));
    case Term::Kind::kProj1:
    case Term::Kind::kProj2: {
      Type p = typecheck(t.first(), ctx, spec);
      if (!p.is_product()) return fail("projection from " + to_string(p));
      return t.kind() == Term::Kind::kProj1 ? p.first() : p.second();
    }
    case Term::Kind::kTrue:
    case Term::Kind::kFalse:
      return Type::boolean();
    case Term::Kind::kFix: {
      Type f = typecheck(t.first(), ctx, spec);
      if (!f.is_arrow() || !(f.first() == f.second())) {
        return fail("fix of " + to_string(f) + ", expected T -> T");
      }
      return f.first();
    }
    case Term::Kind::kMatch: {
      Type s = typecheck(t.first(), ctx, spec);
      std::optional<Type> result;
      for (const auto& [p, b] : t.branches()) {
        TypingContext binds;
        check_pattern(p, s, spec, binds);
        std::size_t before = ctx.size();
        ctx.insert(ctx.end(), binds.begin(), binds.end());
        Type bt = typecheck(b, ctx, spec);
        ctx.resize(before);
        if (result && !(*result == bt)) {
          return fail("match branches disagree: " + to_string(*result) + " vs " +
                      to_string(bt));
        }
        result = bt;
      }
      return *result;
    }
  }
  return fail("malformed term");
}

}  // namespace detail

// Throws TypeError naming the offending subterm.
inline Type typecheck(const Term& t, const LanguageSpec& spec, TypingContext ctx = {}) {
  return detail::typecheck(t, ctx, spec);
}

// ---------------------------------------------------------------------------
// Values
// ---------------------------------------------------------------------------

struct Value;
using ValuePtr = std::shared_ptr<const Value>;
struct Env;
using EnvPtr = std::shared_ptr<const Env>;

struct Env {
  std::string name;
  ValuePtr value;
  EnvPtr next;
  bool has_atoms = false;
};

// Head of a constructor spine. Atoms are the inert constants that stand in
// for the binder while a binding pattern inspects an abstraction body; they
// belong to the variable family of the binder's sort, so operator patterns on
// that family see them.
struct Head {
  enum class Kind { kOperator, kContextHole, kAtom };
  Kind kind = Kind::kOperator;
  // Operator name; sort for context holes; family (possibly empty) for atoms.
  std::string name;
  std::optional<Literal> literal;
  std::uint64_t atom = 0;
  Type type;  // atoms only
};

struct Value {
  enum class Kind { kSpine, kClosure, kReAbs, kPair, kBool, kFix };

  Kind kind = Kind::kBool;
  Head head;
  std::vector<ValuePtr> args;
  // Closures.
  Term lam;
  EnvPtr env;
  std::string display;
  // Re-abstractions: \binder. body with the binder held as atom `atom`.
  std::string binder;
  Type binder_type;
  std::uint64_t atom = 0;
  // Re-abstraction body, pair left, fix functional.
  ValuePtr first;
  ValuePtr second;
  bool boolean = false;
  bool has_atoms = false;
};

namespace detail {

inline ValuePtr make_value(Value v) { return std::make_shared<const Value>(std::move(v)); }

inline ValuePtr bool_value(bool b) {
  static const ValuePtr t = [] {
    Value v;
    v.kind = Value::Kind::kBool;
    v.boolean = true;
    return make_value(std::move(v));
  }();
  static const ValuePtr f = [] {
    Value v;
    v.kind = Value::Kind::kBool;
    v.boolean = false;
    return make_value(std::move(v));
  }();
  return b ? t : f;
}

inline std::string value_string(const Value& v, int prec) {
  auto wrap = [&](std::string s) { return prec > 0 ? "(" + s + ")" : s; };
  switch (v.kind) {
    case Value::Kind::kSpine: {
      std::string h;
      switch (v.head.kind) {
        case Head::Kind::kOperator:
          h = v.head.name;
          if (v.head.literal) h += " " + literal_to_string(*v.head.literal);
          break;
        case Head::Kind::kContextHole:
          h = "<ctx:" + v.head.name + ">";
          break;
        case Head::Kind::kAtom:
          h = "<atom " + std::to_string(v.head.atom) +
              (v.head.literal ? ":" + literal_to_string(*v.head.literal) : "") + ">";
          break;
      }
      if (v.args.empty()) {
        return v.head.kind == Head::Kind::kOperator && v.head.literal ? wrap(h) : h;
      }
      for (const ValuePtr& a : v.args) h += " " + value_string(*a, 1);
      return wrap(h);
    }
    case Value::Kind::kClosure:
      return "<fun " + v.display + ">";
    case Value::Kind::kReAbs:
      return "<fun " + v.binder + ". " + value_string(*v.first, 0) + ">";
    case Value::Kind::kPair:
      return "(" + value_string(*v.first, 0) + ", " + value_string(*v.second, 0) + ")";
    case Value::Kind::kBool:
      return v.boolean ? "true" : "false";
    case Value::Kind::kFix:
      return "<fix>";
  }
  return "?";
}

}  // namespace detail

inline std::string to_string(const Value& v) { return detail::value_string(v, 0); }

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

enum class EvalStatus { kValue, kMatchFailure, kFuelExhausted, kStuck };

inline const char* to_string(EvalStatus s) {
  switch (s) {
    case EvalStatus::kValue:
      return "value";
    case EvalStatus::kMatchFailure:
      return "match-failure";
    case EvalStatus::kFuelExhausted:
      return "fuel-exhausted";
    case EvalStatus::kStuck:
      return "stuck";
  }
  return "?";
}

struct EvalResult {
  EvalStatus status = EvalStatus::kStuck;
  ValuePtr value;
  std::string detail;
  std::size_t steps = 0;

  bool ok() const { return status == EvalStatus::kValue; }
};

// Non-value outcomes travel as this exception inside the evaluator.
struct EvalAbort {
  EvalStatus status;
  std::string detail;
};

struct Limits {
  // Evaluation steps (one per term visited).
  std::size_t fuel = 20'000'000;
  // Nested non-tail evaluations; exceeding it reports FuelExhausted.
  std::size_t max_depth = 40'000;
};

// Runs fn on a thread with a large stack; deep but legitimate evaluations
// would otherwise overflow the default one.
template <typename F>
auto with_large_stack(F&& fn, std::size_t bytes = std::size_t{512} << 20) -> decltype(fn()) {
  using R = decltype(fn());
  struct Job {
    F* fn;
    std::optional<R> result;
    std::exception_ptr error;
  } job{&fn, std::nullopt, nullptr};
  auto trampoline = [](void* p) -> void* {
    auto* j = static_cast<Job*>(p);
    try {
      j->result.emplace((*j->fn)());
    } catch (...) {
      j->error = std::current_exception();
    }
    return nullptr;
  };
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, bytes);
  pthread_t thread;
  int rc = pthread_create(&thread, &attr, trampoline, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    job.result.emplace(fn());
  } else {
    pthread_join(thread, nullptr);
  }
  if (job.error) std::rethrow_exception(job.error);
  return std::move(*job.result);
}

class Evaluator {
 public:
  explicit Evaluator(const LanguageSpec& spec, Limits limits = {})
      : spec_(&spec), limits_(limits) {}

  // Evaluates a closed term.
  EvalResult evaluate(const Term& t) {
    return guard([&] { return eval(t, nullptr); });
  }
  EvalResult evaluate_apply(const ValuePtr& f, const ValuePtr& x) {
    return guard([&] { return apply(f, x); });
  }

  std::size_t steps() const { return steps_; }

  ValuePtr apply(const ValuePtr& f0, const ValuePtr& x) {
    DepthGuard g(*this);
    ValuePtr f = force(f0);
    switch (f->kind) {
      case Value::Kind::kClosure:
        return eval(f->lam.first(), bind(f->env, f->lam.name(), x));
      case Value::Kind::kReAbs:
        return substitute(f->first, f->atom, x);
      case Value::Kind::kSpine:
        return extend_spine(*f, x);
      default:
        throw EvalAbort{EvalStatus::kStuck, "applying " + to_string(*f)};
    }
  }

  // Unfolds fixed points until the value is not one.
  ValuePtr force(ValuePtr v) {
    while (v->kind == Value::Kind::kFix) v = apply(v->first, v);
    return v;
  }

  // A fresh atom standing for a binder of type `type` named `name`.
  ValuePtr fresh_atom(const std::string& name, const Type& type) {
    Value v;
    v.kind = Value::Kind::kSpine;
    v.head.kind = Head::Kind::kAtom;
    v.head.atom = ++next_atom_;
    v.head.type = type;
    v.head.literal = Literal{name};
    if (type.is_base()) {
      if (const OperatorDecl* fam = spec_->variable_operator(type.sort())) v.head.name = fam->name;
    }
    v.has_atoms = true;
    return detail::make_value(std::move(v));
  }

  // Binder display name of the depth-th abstraction of a function value.
  std::optional<std::string> binder_name(const ValuePtr& v, std::size_t depth) const {
    switch (v->kind) {
      case Value::Kind::kClosure: {
        if (depth == 0) return v->display;
        const Term* lam = &v->lam;
        for (std::size_t i = 0; i < depth; ++i) {
          lam = &lam->first();
          if (lam->kind() != Term::Kind::kLam) return std::nullopt;
        }
        if (lam->hint()) {
          if (ValuePtr src = lookup(v->env, lam->hint()->var)) {
            return binder_name(src, lam->hint()->depth);
          }
        }
        return lam->name();
      }
      case Value::Kind::kReAbs:
        return depth == 0 ? std::optional<std::string>(v->binder)
                          : binder_name(v->first, depth - 1);
      default:
        return std::nullopt;
    }
  }

  // Matches p against v, appending bindings. Returns false on no match.
  bool match(const Pattern& p, const ValuePtr& v0, std::vector<std::pair<std::string, ValuePtr>>& out) {
    switch (p.kind()) {
      case Pattern::Kind::kVar:
        out.emplace_back(p.name(), v0);
        return true;
      case Pattern::Kind::kWild:
        return true;
      default:
        break;
    }
    ValuePtr v = force(v0);
    switch (p.kind()) {
      case Pattern::Kind::kTrue:
        return v->kind == Value::Kind::kBool && v->boolean;
      case Pattern::Kind::kFalse:
        return v->kind == Value::Kind::kBool && !v->boolean;
      case Pattern::Kind::kOp: {
        if (v->kind != Value::Kind::kSpine) return false;
        const Head& h = v->head;
        if (h.kind == Head::Kind::kContextHole) return false;
        if (h.name != p.name()) return false;
        if (p.literal() && h.literal != p.literal()) return false;
        if (v->args.size() != p.subs().size()) return false;
        for (std::size_t i = 0; i < p.subs().size(); ++i) {
          if (!match(p.subs()[i], v->args[i], out)) return false;
        }
        return true;
      }
      case Pattern::Kind::kPair:
        return v->kind == Value::Kind::kPair && match(p.subs()[0], v->first, out) &&
               match(p.subs()[1], v->second, out);
      case Pattern::Kind::kBind: {
        std::string name;
        Type type;
        if (v->kind == Value::Kind::kClosure) {
          name = v->display;
          type = v->lam.type();
        } else if (v->kind == Value::Kind::kReAbs) {
          name = v->binder;
          type = v->binder_type;
        } else {
          return false;
        }
        ValuePtr atom = fresh_atom(name, type);
        ValuePtr body = apply(v, atom);
        std::size_t before = out.size();
        if (!match(p.subs()[0], body, out)) return false;
        for (std::size_t i = before; i < out.size(); ++i) {
          out[i].second = reabstract(name, type, atom->head.atom, out[i].second);
        }
        return true;
      }
      default:
        return false;
    }
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(Evaluator& e) : ev(e) {
      if (++ev.depth_ > ev.limits_.max_depth) {
        --ev.depth_;
        throw EvalAbort{EvalStatus::kFuelExhausted, "recursion depth limit reached"};
      }
    }
    ~DepthGuard() { --ev.depth_; }
    Evaluator& ev;
  };

  template <typename F>
  EvalResult guard(F&& f) {
    std::size_t start = steps_;
    try {
      ValuePtr v = f();
      return EvalResult{EvalStatus::kValue, std::move(v), {}, steps_ - start};
    } catch (const EvalAbort& a) {
      depth_ = 0;
      return EvalResult{a.status, nullptr, a.detail, steps_ - start};
    }
  }

  void tick() {
    if (++steps_ > limits_.fuel) {
      throw EvalAbort{EvalStatus::kFuelExhausted, "evaluation fuel exhausted"};
    }
  }

  static EnvPtr bind(EnvPtr env, const std::string& name, ValuePtr v) {
    bool atoms = v->has_atoms || (env && env->has_atoms);
    return std::make_shared<const Env>(Env{name, std::move(v), std::move(env), atoms});
  }

  static ValuePtr lookup(const EnvPtr& env, const std::string& name) {
    for (const Env* e = env.get(); e; e = e->next.get()) {
      if (e->name == name) return e->value;
    }
    return nullptr;
  }

  static ValuePtr extend_spine(const Value& f, ValuePtr x) {
    Value v;
    v.kind = Value::Kind::kSpine;
    v.head = f.head;
    v.args = f.args;
    v.has_atoms = f.has_atoms || x->has_atoms;
    v.args.push_back(std::move(x));
    return detail::make_value(std::move(v));
  }

  ValuePtr closure(const Term& lam, const EnvPtr& env) {
    Value v;
    v.kind = Value::Kind::kClosure;
    v.lam = lam;
    v.env = env;
    v.display = lam.name();
    if (lam.hint()) {
      if (ValuePtr src = lookup(env, lam.hint()->var)) {
        if (auto n = binder_name(src, lam.hint()->depth)) v.display = *n;
      }
    }
    v.has_atoms = env && env->has_atoms;
    return detail::make_value(std::move(v));
  }

  ValuePtr reabstract(const std::string& name, const Type& type, std::uint64_t atom,
                      ValuePtr body) {
    Value v;
    v.kind = Value::Kind::kReAbs;
    v.binder = name;
    v.binder_type = type;
    v.atom = atom;
    v.has_atoms = true;
    v.first = std::move(body);
    return detail::make_value(std::move(v));
  }

  EnvPtr substitute_env(const EnvPtr& env, std::uint64_t atom, const ValuePtr& r) {
    if (!env || !env->has_atoms) return env;
    EnvPtr next = substitute_env(env->next, atom, r);
    ValuePtr value = substitute(env->value, atom, r);
    if (next == env->next && value == env->value) return env;
    return bind(std::move(next), env->name, std::move(value));
  }

  // v[atom := r].
  ValuePtr substitute(const ValuePtr& v, std::uint64_t atom, const ValuePtr& r) {
    if (!v->has_atoms) return v;
    tick();
    DepthGuard g(*this);
    switch (v->kind) {
      case Value::Kind::kSpine: {
        bool replace_head = v->head.kind == Head::Kind::kAtom && v->head.atom == atom;
        std::vector<ValuePtr> args;
        bool changed = replace_head;
        for (const ValuePtr& a : v->args) {
          args.push_back(substitute(a, atom, r));
          changed = changed || args.back() != a;
        }
        if (!changed) return v;
        if (replace_head) {
          ValuePtr result = r;
          for (const ValuePtr& a : args) result = apply(result, a);
          return result;
        }
        Value out;
        out.kind = Value::Kind::kSpine;
        out.head = v->head;
        out.has_atoms = v->head.kind == Head::Kind::kAtom;
        for (const ValuePtr& a : args) out.has_atoms = out.has_atoms || a->has_atoms;
        out.args = std::move(args);
        return detail::make_value(std::move(out));
      }
      case Value::Kind::kClosure: {
        EnvPtr env = substitute_env(v->env, atom, r);
        if (env == v->env) return v;
        Value out = *v;
        out.env = env;
        out.has_atoms = env && env->has_atoms;
        return detail::make_value(std::move(out));
      }
      case Value::Kind::kReAbs: {
        ValuePtr body = substitute(v->first, atom, r);
        if (body == v->first) return v;
        Value out = *v;
        out.first = std::move(body);
        return detail::make_value(std::move(out));
      }
      case Value::Kind::kPair: {
        ValuePtr l = substitute(v->first, atom, r);
        ValuePtr rr = substitute(v->second, atom, r);
        if (l == v->first && rr == v->second) return v;
        Value out = *v;
        out.has_atoms = l->has_atoms || rr->has_atoms;
        out.first = std::move(l);
        out.second = std::move(rr);
        return detail::make_value(std::move(out));
      }
      case Value::Kind::kFix: {
        ValuePtr f = substitute(v->first, atom, r);
        if (f == v->first) return v;
        Value out = *v;
        out.has_atoms = f->has_atoms;
        out.first = std::move(f);
        return detail::make_value(std::move(out));
      }
      case Value::Kind::kBool:
        return v;
    }
    return v;
  }

  ValuePtr eval(Term t, EnvPtr env) {
    DepthGuard g(*this);
    while (true) {
      tick();
      switch (t.kind()) {
        case Term::Kind::kVar: {
          ValuePtr v = lookup(env, t.name());
          if (!v) throw EvalAbort{EvalStatus::kStuck, "unbound variable " + t.name()};
          return v;
        }
        case Term::Kind::kLam:
          return closure(t, env);
        case Term::Kind::kConst: {
          Value v;
          v.kind = Value::Kind::kSpine;
          v.head.kind = Head::Kind::kOperator;
          v.head.name = t.name();
          v.head.literal = t.literal();
          return detail::make_value(std::move(v));
        }
        case Term::Kind::kContextHole: {
          Value v;
          v.kind = Value::Kind::kSpine;
          v.head.kind = Head::Kind::kContextHole;
          v.head.name = t.name();
          return detail::make_value(std::move(v));
        }
        case Term::Kind::kTrue:
          return detail::bool_value(true);
        case Term::Kind::kFalse:
          return detail::bool_value(false);
        case Term::Kind::kPair: {
          ValuePtr l = eval(t.first(), env);
          ValuePtr r = eval(t.second(), env);
          Value v;
          v.kind = Value::Kind::kPair;
          v.has_atoms = l->has_atoms || r->has_atoms;
          v.first = std::move(l);
          v.second = std::move(r);
          return detail::make_value(std::move(v));
        }
        case Term::Kind::kProj1:
        case Term::Kind::kProj2: {
          ValuePtr p = force(eval(t.first(), env));
          if (p->kind != Value::Kind::kPair) {
            throw EvalAbort{EvalStatus::kStuck, "projection from " + to_string(*p)};
          }
          return t.kind() == Term::Kind::kProj1 ? p->first : p->second;
        }
        case Term::Kind::kFix: {
          ValuePtr f = eval(t.first(), env);
          Value v;
          v.kind = Value::Kind::kFix;
          v.has_atoms = f->has_atoms;
          v.first = std::move(f);
          return detail::make_value(std::move(v));
        }
        case Term::Kind::kApp: {
          ValuePtr f = force(eval(t.first(), env));
          ValuePtr x = eval(t.second(), env);
          if (f->kind == Value::Kind::kClosure) {
            env = bind(f->env, f->lam.name(), std::move(x));
            t = f->lam.first();
            continue;
          }
          return apply(f, x);
        }
        case Term::Kind::kMatch: {
          ValuePtr s = eval(t.first(), env);
          bool matched = false;
          for (const auto& [p, body] : t.branches()) {
            std::vector<std::pair<std::string, ValuePtr>> binds;
            if (!match(p, s, binds)) continue;
            for (auto& [x, v] : binds) env = bind(std::move(env), x, std::move(v));
            t = body;
            matched = true;
            break;
          }
          if (!matched) {
            throw EvalAbort{EvalStatus::kMatchFailure, "no branch matches " + to_string(*s)};
          }
          continue;
        }
      }
      throw EvalAbort{EvalStatus::kStuck, "malformed term"};
    }
  }

  const LanguageSpec* spec_;
  Limits limits_;
  std::size_t steps_ = 0;
  std::size_t depth_ = 0;
  std::uint64_t next_atom_ = 0;
};

// One-shot evaluation of a closed term.
inline EvalResult eval(const Term& t, const LanguageSpec& spec, Limits limits = {}) {
  Evaluator ev(spec, limits);
  return ev.evaluate(t);
}

// Bindings produced by matching p against v, or nullopt.
inline std::optional<std::vector<std::pair<std::string, ValuePtr>>> match_pattern(
    const Pattern& p, const ValuePtr& v, Evaluator& ev) {
  std::vector<std::pair<std::string, ValuePtr>> out;
  if (!ev.match(p, v, out)) return std::nullopt;
  return out;
}

// The type of a value, or TypeError when it has none.
inline Type value_type(const ValuePtr& v, const LanguageSpec& spec);

namespace detail {

inline Type spine_type(const Value& v, const LanguageSpec& spec) {
  Type t;
  switch (v.head.kind) {
    case Head::Kind::kOperator: {
      const OperatorDecl& d = constant_decl(spec, v.head.name);
      t = operator_type(d, v.head.literal.has_value());
      break;
    }
    case Head::Kind::kContextHole:
      t = Type::base(v.head.name);
      break;
    case Head::Kind::kAtom:
      t = v.head.type;
      break;
  }
  for (const ValuePtr& a : v.args) {
    if (!t.is_arrow()) throw TypeError("over-applied constant " + to_string(v));
    Type at = value_type(a, spec);
    if (!(at == t.first())) throw TypeError("ill-typed spine argument in " + to_string(v));
    t = t.second();
  }
  return t;
}

}  // namespace detail

inline Type value_type(const ValuePtr& v, const LanguageSpec& spec) {
  switch (v->kind) {
    case Value::Kind::kBool:
      return Type::boolean();
    case Value::Kind::kPair:
      return Type::product(value_type(v->first, spec), value_type(v->second, spec));
    case Value::Kind::kSpine:
      return detail::spine_type(*v, spec);
    case Value::Kind::kReAbs:
      return Type::arrow(v->binder_type, value_type(v->first, spec));
    case Value::Kind::kFix: {
      Type f = value_type(v->first, spec);
      if (!f.is_arrow() || !(f.first() == f.second())) throw TypeError("ill-typed fix value");
      return f.first();
    }
    case Value::Kind::kClosure: {
      TypingContext ctx;
      std::set<std::string> fv = free_vars(v->lam);
      for (const std::string& x : fv) {
        const Env* e = v->env.get();
        while (e && e->name != x) e = e->next.get();
        if (!e) throw TypeError("closure with unbound variable " + x);
        ctx.emplace_back(x, value_type(e->value, spec));
      }
      return typecheck(v->lam, spec, std::move(ctx));
    }
  }
  throw TypeError("malformed value");
}

}  // namespace abtedit::lambda
