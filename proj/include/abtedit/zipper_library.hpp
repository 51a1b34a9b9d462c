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

// Cursor movement and substitution written as target-calculus terms, one
// function per sort. The functions of a family call each other across sorts,
// so each family is a single fix over a right-nested tuple indexed by sort.

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "abtedit/lambda.hpp"
#include "abtedit/language_spec.hpp"

namespace abtedit::lambda {

namespace detail {

inline std::size_t sort_index(const LanguageSpec& spec, const Sort& s) {
  const auto& sorts = spec.sorts();
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    if (sorts[i] == s) return i;
  }
  throw SpecError("unknown sort " + s);
}

// Component i of an n-tuple nested to the right.
inline Term tuple_get(Term tuple, std::size_t i, std::size_t n) {
  for (std::size_t k = 0; k < i; ++k) tuple = Term::proj2(std::move(tuple));
  return i + 1 < n ? Term::proj1(std::move(tuple)) : tuple;
}

inline Term tuple_of(std::vector<Term> items) {
  Term t = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) t = Term::pair(items[i], std::move(t));
  return t;
}

inline Type tuple_type(const std::vector<Type>& items) {
  Type t = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) t = Type::product(items[i], std::move(t));
  return t;
}

// fix (\self:Tuple. (body(s_0), ..., body(s_n-1))), where body may refer to
// the member for sort s through recurse(s).
inline Term sort_family(const LanguageSpec& spec, const std::function<Type(const Sort&)>& type,
                        const std::function<Term(const Sort&)>& body) {
  std::vector<Type> types;
  std::vector<Term> items;
  for (const Sort& s : spec.sorts()) {
    types.push_back(type(s));
    items.push_back(body(s));
  }
  Type tt = tuple_type(types);
  return Term::fix(Term::lam("self", tt, tuple_of(std::move(items))));
}

inline Term family_member(const LanguageSpec& spec, const Term& family, const Sort& s) {
  return tuple_get(family, sort_index(spec, s), spec.sorts().size());
}

inline Term recurse(const LanguageSpec& spec, const Sort& s) {
  return family_member(spec, Term::var("self"), s);
}

inline std::string child_var(std::size_t i) { return "c" + std::to_string(i + 1); }

inline std::vector<Pattern> child_patterns(const OperatorDecl& d) {
  std::vector<Pattern> ps;
  for (std::size_t i = 0; i < d.args.size(); ++i) ps.push_back(Pattern::var(child_var(i)));
  return ps;
}

// A cursor-free stand-in for a bound variable of sort s: the unnamed
// instance of s's variable family, or the context hole when s has none.
// Neither is an occurrence of any operator a condition can name except the
// variable family itself, which a bound variable also belongs to.
inline Term placeholder(const LanguageSpec& spec, const Sort& s) {
  if (const OperatorDecl* v = spec.variable_operator(s)) {
    return Term::constant(v->name, Literal{std::string("_")});
  }
  return Term::context_hole(s);
}

// child applied to placeholders for each of its binders.
inline Term probe(const LanguageSpec& spec, const Valence& v, Term child) {
  for (const Sort& b : v.binds) child = Term::app(std::move(child), placeholder(spec, b));
  return child;
}

// \y1..yk. f (child y1..yk) for a child under k binders, else f child. The
// rebuilt abstraction keeps the binder names of `child_name`'s value.
inline Term under_binders(const Valence& v, const std::string& child_name,
                          const std::function<Term(Term)>& f) {
  if (v.binds.empty()) return f(Term::var(child_name));
  Term inner = Term::var(child_name);
  for (std::size_t k = 0; k < v.binds.size(); ++k) {
    inner = Term::app(std::move(inner), Term::var("y" + std::to_string(k + 1)));
  }
  Term t = f(std::move(inner));
  for (std::size_t k = v.binds.size(); k-- > 0;) {
    t = Term::lam("y" + std::to_string(k + 1), Type::base(v.binds[k]), std::move(t),
                  Term::NameHint{child_name, k});
  }
  return t;
}

inline Type valence_type(const Valence& v) {
  std::vector<Type> binds;
  for (const Sort& s : v.binds) binds.push_back(Type::base(s));
  return Type::arrows(binds, Type::base(v.body));
}

// Pattern for a child whose body is rooted at the cursor: the cursor's child
// is bound to `var`, re-abstracted over the child's binders.
inline Pattern cursor_child_pattern(const Valence& v, const std::string& var) {
  Pattern p = Pattern::op(cursor_operator(v.body), {Pattern::var(var)});
  for (std::size_t k = 0; k < v.binds.size(); ++k) p = Pattern::bind(std::move(p));
  return p;
}

inline std::vector<const OperatorDecl*> user_operators_of(const LanguageSpec& spec,
                                                           const Sort& s) {
  std::vector<const OperatorDecl*> out;
  for (const OperatorDecl& d : spec.operators()) {
    if (d.result == s && d.role != OperatorRole::kCursor && d.param == ParamKind::kNone &&
        !d.args.empty()) {
      out.push_back(&d);
    }
  }
  return out;
}

inline Term if_then_else(Term cond, Term then, Term otherwise) {
  return Term::match(std::move(cond), {{Pattern::truth(), std::move(then)},
                                       {Pattern::falsity(), std::move(otherwise)}});
}

}  // namespace detail

// The generated definitions. Every member is a closed term.
class ZipperLibrary {
 public:
  explicit ZipperLibrary(const LanguageSpec& spec) : spec_(spec) {
    if (!spec.editor_extended()) throw SpecError("zipper library needs an editor-extended spec");
    build();
  }

  const LanguageSpec& spec() const { return spec_; }

  // S -> bool: does the tree contain the cursor.
  Term has_cursor(const Sort& s) const { return member(has_cursor_, s); }
  Term down(const Sort& s) const { return member(down_, s); }
  Term right(const Sort& s) const { return member(right_, s); }
  Term up(const Sort& s) const { return member(up_, s); }
  // T -> S -> S: replace the enclosed subtree of a T-sorted cursor.
  Term set(const Sort& t, const Sort& s) const {
    return Term::lam("repl", Type::base(t),
                     detail::family_member(spec_, Term::app(set_.at(t), Term::var("repl")), s));
  }

  // Name -> definition, for printing and typing checks.
  std::map<std::string, Term> definitions() const {
    std::map<std::string, Term> out;
    for (const Sort& s : spec_.sorts()) {
      out["hasCursor_" + s] = has_cursor(s);
      out["down_" + s] = down(s);
      out["right_" + s] = right(s);
      out["up_" + s] = up(s);
      for (const Sort& t : spec_.sorts()) out["set_" + t + "_" + s] = set(t, s);
    }
    return out;
  }

  // Expected type of each definition in definitions().
  Type definition_type(const std::string& name) const {
    for (const Sort& s : spec_.sorts()) {
      Type ss = Type::arrow(Type::base(s), Type::base(s));
      if (name == "hasCursor_" + s) return Type::arrow(Type::base(s), Type::boolean());
      if (name == "down_" + s || name == "right_" + s || name == "up_" + s) return ss;
      for (const Sort& t : spec_.sorts()) {
        if (name == "set_" + t + "_" + s) return Type::arrow(Type::base(t), ss);
      }
    }
    throw Error("no definition named " + name);
  }

 private:
  Term member(const Term& family, const Sort& s) const {
    return detail::family_member(spec_, family, s);
  }

  Type endo(const Sort& s) const { return Type::arrow(Type::base(s), Type::base(s)); }

  // Branches that find the child holding the cursor and apply `rec` to it,
  // leaving the other children untouched.
  void navigation_branches(const Sort& s, const std::function<Term(const Sort&)>& rec,
                           std::vector<std::pair<Pattern, Term>>& branches) const {
    for (const OperatorDecl* d : detail::user_operators_of(spec_, s)) {
      const std::size_t n = d->args.size();
      auto rebuild = [&](std::size_t i) {
        std::vector<Term> args;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) {
            args.push_back(Term::var(detail::child_var(j)));
          } else {
            const Valence& v = d->args[j];
            args.push_back(detail::under_binders(v, detail::child_var(j), [&](Term c) {
              return Term::app(rec(v.body), std::move(c));
            }));
          }
        }
        return Term::app(Term::constant(d->name), std::move(args));
      };
      Term body = rebuild(n - 1);
      for (std::size_t i = n - 1; i-- > 0;) {
        const Valence& v = d->args[i];
        Term test = Term::app(has_cursor(v.body),
                              detail::probe(spec_, v, Term::var(detail::child_var(i))));
        body = detail::if_then_else(std::move(test), rebuild(i), std::move(body));
      }
      branches.emplace_back(Pattern::op(d->name, detail::child_patterns(*d)), std::move(body));
    }
  }

  Term cursor_wrap(const Valence& v, const std::string& child) const {
    return detail::under_binders(v, child, [&](Term c) {
      return Term::app(Term::constant(cursor_operator(v.body)), std::move(c));
    });
  }

  void build() {
    const LanguageSpec& spec = spec_;

    has_cursor_ = detail::sort_family(
        spec, [](const Sort& s) { return Type::arrow(Type::base(s), Type::boolean()); },
        [&](const Sort& s) {
          std::vector<std::pair<Pattern, Term>> branches;
          branches.emplace_back(Pattern::op(cursor_operator(s), {Pattern::wild()}),
                                Term::truth());
          for (const OperatorDecl* d : detail::user_operators_of(spec, s)) {
            Term body = Term::falsity();
            for (std::size_t i = d->args.size(); i-- > 0;) {
              const Valence& v = d->args[i];
              Term test = Term::app(detail::recurse(spec, v.body),
                                    detail::probe(spec, v, Term::var(detail::child_var(i))));
              body = detail::if_then_else(std::move(test), Term::truth(), std::move(body));
            }
            branches.emplace_back(Pattern::op(d->name, detail::child_patterns(*d)),
                                  std::move(body));
          }
          branches.emplace_back(Pattern::wild(), Term::falsity());
          return Term::lam("t", Type::base(s), Term::match(Term::var("t"), std::move(branches)));
        });

    auto rec = [&](const Sort& s) { return detail::recurse(spec, s); };

    down_ = detail::sort_family(
        spec, [&](const Sort& s) { return endo(s); },
        [&](const Sort& s) {
          std::vector<std::pair<Pattern, Term>> branches;
          for (const OperatorDecl* d : detail::user_operators_of(spec, s)) {
            std::vector<Term> args;
            for (std::size_t j = 0; j < d->args.size(); ++j) {
              args.push_back(j == 0 ? cursor_wrap(d->args[0], detail::child_var(0))
                                    : Term::var(detail::child_var(j)));
            }
            branches.emplace_back(
                Pattern::op(cursor_operator(s),
                            {Pattern::op(d->name, detail::child_patterns(*d))}),
                Term::app(Term::constant(d->name), std::move(args)));
          }
          navigation_branches(s, rec, branches);
          return finish(s, std::move(branches));
        });

    right_ = detail::sort_family(
        spec, [&](const Sort& s) { return endo(s); },
        [&](const Sort& s) {
          std::vector<std::pair<Pattern, Term>> branches;
          for (const OperatorDecl* d : detail::user_operators_of(spec, s)) {
            for (std::size_t i = 0; i + 1 < d->args.size(); ++i) {
              std::vector<Pattern> ps = detail::child_patterns(*d);
              ps[i] = detail::cursor_child_pattern(d->args[i], "d");
              std::vector<Term> args;
              for (std::size_t j = 0; j < d->args.size(); ++j) {
                if (j == i) {
                  args.push_back(Term::var("d"));
                } else if (j == i + 1) {
                  args.push_back(cursor_wrap(d->args[j], detail::child_var(j)));
                } else {
                  args.push_back(Term::var(detail::child_var(j)));
                }
              }
              branches.emplace_back(Pattern::op(d->name, std::move(ps)),
                                    Term::app(Term::constant(d->name), std::move(args)));
            }
          }
          navigation_branches(s, rec, branches);
          return finish(s, std::move(branches));
        });

    up_ = detail::sort_family(
        spec, [&](const Sort& s) { return endo(s); },
        [&](const Sort& s) {
          std::vector<std::pair<Pattern, Term>> branches;
          for (const OperatorDecl* d : detail::user_operators_of(spec, s)) {
            for (std::size_t i = 0; i < d->args.size(); ++i) {
              std::vector<Pattern> ps = detail::child_patterns(*d);
              ps[i] = detail::cursor_child_pattern(d->args[i], "d");
              std::vector<Term> args;
              for (std::size_t j = 0; j < d->args.size(); ++j) {
                args.push_back(j == i ? Term::var("d") : Term::var(detail::child_var(j)));
              }
              branches.emplace_back(
                  Pattern::op(d->name, std::move(ps)),
                  Term::app(Term::constant(cursor_operator(s)),
                            Term::app(Term::constant(d->name), std::move(args))));
            }
          }
          navigation_branches(s, rec, branches);
          return finish(s, std::move(branches));
        });

    for (const Sort& t : spec.sorts()) {
      Term family = detail::sort_family(
          spec, [&](const Sort& s) { return endo(s); },
          [&](const Sort& s) {
            std::vector<std::pair<Pattern, Term>> branches;
            if (s == t) {
              branches.emplace_back(Pattern::op(cursor_operator(s), {Pattern::wild()}),
                                    Term::app(Term::constant(cursor_operator(s)),
                                              Term::var("repl")));
            }
            navigation_branches(s, rec, branches);
            return finish(s, std::move(branches));
          });
      set_[t] = Term::lam("repl", Type::base(t), family);
    }
  }

  // A family member with no applicable branch fails on every input.
  Term finish(const Sort& s, std::vector<std::pair<Pattern, Term>> branches) const {
    if (branches.empty()) {
      branches.emplace_back(Pattern::op(cursor_operator(s), {Pattern::wild()}),
                            Term::match(Term::falsity(), {{Pattern::truth(), Term::var("t")}}));
    }
    return Term::lam("t", Type::base(s), Term::match(Term::var("t"), std::move(branches)));
  }

  LanguageSpec spec_;
  Term has_cursor_, down_, right_, up_;
  std::map<Sort, Term> set_;
};

inline ZipperLibrary zipper_library(const LanguageSpec& spec) { return ZipperLibrary(spec); }

}  // namespace abtedit::lambda
