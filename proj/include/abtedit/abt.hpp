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

// Abstract binding trees over a LanguageSpec.
//
// Trees are immutable and share structure. Bound variables keep their names;
// alpha_eq compares trees modulo consistent renaming of binders.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abtedit/error.hpp"
#include "abtedit/language_spec.hpp"
#include "abtedit/scanner.hpp"

namespace abtedit {

using Path = std::vector<std::size_t>;
using SortEnv = std::map<std::string, Sort, std::less<>>;

class Abt;

struct Abstraction;

class Abt {
 public:
  enum class Kind { kVar, kOp };

  static Abt var(std::string name);

  static Abt op(std::string name, std::vector<Abstraction> args = {},
                std::optional<Literal> literal = std::nullopt);

  static Abt hole(std::string_view sort) { return op(hole_operator(sort)); }
  static Abt cursor(std::string_view sort, Abt child);

  Kind kind() const { return node_->kind; }
  bool is_var() const { return node_->kind == Kind::kVar; }
  bool is_op() const { return node_->kind == Kind::kOp; }
  bool is_cursor() const { return is_op() && is_cursor_name(node_->name); }
  bool is_hole() const { return is_op() && is_hole_name(node_->name); }

  // Variable name for kVar, operator name for kOp.
  const std::string& name() const { return node_->name; }
  const std::optional<Literal>& literal() const { return node_->literal; }
  const std::vector<Abstraction>& args() const { return node_->args; }

  // Exact structural equality (binder names included).
  bool operator==(const Abt& other) const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::optional<Literal> literal;
    std::vector<Abstraction> args;
  };

  explicit Abt(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Abstraction {
  std::vector<std::string> binders;
  Abt body;

  bool operator==(const Abstraction&) const = default;
};

inline Abt Abt::var(std::string name) {
  return Abt(std::make_shared<const Node>(Node{Kind::kVar, std::move(name), {}, {}}));
}

inline Abt Abt::op(std::string name, std::vector<Abstraction> args,
                   std::optional<Literal> literal) {
  return Abt(std::make_shared<const Node>(
      Node{Kind::kOp, std::move(name), std::move(literal), std::move(args)}));
}

inline Abt Abt::cursor(std::string_view sort, Abt child) {
  return op(cursor_operator(sort), {Abstraction{{}, std::move(child)}});
}

inline bool Abt::operator==(const Abt& other) const {
  if (node_ == other.node_) return true;
  return node_->kind == other.node_->kind && node_->name == other.node_->name &&
         node_->literal == other.node_->literal && node_->args == other.node_->args;
}

// Sort carried by a cursor or hole operator name.
inline Sort operator_sort_suffix(std::string_view name) {
  return Sort(name.substr(name.find('_') + 1));
}

namespace detail {

inline std::string render_path(const Path& path) {
  std::string out = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(path[i]);
  }
  return out + "]";
}

inline Sort sort_of_at(const Abt& a, const LanguageSpec& spec, const SortEnv& env,
                       Path& path) {
  auto fail = [&](const std::string& what) -> Sort {
    throw SortError(what + " at " + render_path(path));
  };
  if (a.is_var()) {
    auto it = env.find(a.name());
    if (it == env.end()) return fail("unbound variable '" + a.name() + "'");
    return it->second;
  }
  const OperatorDecl* decl = spec.find(a.name());
  if (!decl) return fail("unknown operator '" + a.name() + "'");
  if (decl->param == ParamKind::kName) {
    return fail("name-literal operator '" + a.name() + "' must appear as a variable");
  }
  if (decl->is_literal() != a.literal().has_value()) {
    return fail("literal mismatch on operator '" + a.name() + "'");
  }
  if (a.literal() && !std::holds_alternative<std::int64_t>(*a.literal())) {
    return fail("operator '" + a.name() + "' expects an integer literal");
  }
  if (a.args().size() != decl->args.size()) {
    return fail("operator '" + a.name() + "' expects " +
                std::to_string(decl->args.size()) + " arguments, got " +
                std::to_string(a.args().size()));
  }
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    const Abstraction& arg = a.args()[i];
    const Valence& val = decl->args[i];
    path.push_back(i);
    if (arg.binders.size() != val.binds.size()) {
      return fail("argument binds " + std::to_string(arg.binders.size()) +
                  " variables, valence expects " + std::to_string(val.binds.size()));
    }
    SortEnv inner = env;
    for (std::size_t j = 0; j < arg.binders.size(); ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        if (arg.binders[k] == arg.binders[j]) {
          return fail("binder '" + arg.binders[j] + "' repeated in one abstraction");
        }
      }
      inner[arg.binders[j]] = val.binds[j];
    }
    Sort got = sort_of_at(arg.body, spec, inner, path);
    if (got != val.body) {
      return fail("argument of '" + a.name() + "' has sort " + got + ", expected " +
                  val.body);
    }
    path.pop_back();
  }
  return decl->result;
}

}  // namespace detail

// The unique sort of `a` under `env`; throws SortError naming the offending
// path otherwise.
inline Sort sort_of(const Abt& a, const LanguageSpec& spec, const SortEnv& env = {}) {
  Path path;
  return detail::sort_of_at(a, spec, env, path);
}

inline std::size_t count_cursors(const Abt& a) {
  std::size_t n = a.is_cursor() ? 1 : 0;
  for (const auto& arg : a.args()) n += count_cursors(arg.body);
  return n;
}

// A tree with exactly one cursor that sort-checks in the empty environment.
struct WellFormedTree {
  Abt tree;
  Path cursor_path;
  Sort sort;

  bool operator==(const WellFormedTree&) const = default;
};

namespace detail {

inline bool find_cursor(const Abt& a, Path& path) {
  if (a.is_cursor()) return true;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    path.push_back(i);
    if (find_cursor(a.args()[i].body, path)) return true;
    path.pop_back();
  }
  return false;
}

}  // namespace detail

inline WellFormedTree check_well_formed(const Abt& a, const LanguageSpec& spec) {
  std::size_t cursors = count_cursors(a);
  if (cursors == 0) throw SortError("tree has no cursor");
  if (cursors > 1) throw SortError("tree has " + std::to_string(cursors) + " cursors");
  Sort s = sort_of(a, spec);
  Path path;
  detail::find_cursor(a, path);
  return WellFormedTree{a, std::move(path), std::move(s)};
}

inline const Abt& subtree_at(const Abt& a, const Path& path) {
  const Abt* cur = &a;
  for (std::size_t i : path) cur = &cur->args().at(i).body;
  return *cur;
}

// Binders in scope at `path`, with their sorts.
inline SortEnv env_at(const Abt& a, const Path& path, const LanguageSpec& spec,
                      SortEnv env = {}) {
  const Abt* cur = &a;
  for (std::size_t i : path) {
    const OperatorDecl* decl = spec.find(cur->name());
    const Abstraction& arg = cur->args().at(i);
    for (std::size_t j = 0; j < arg.binders.size(); ++j) {
      env[arg.binders[j]] = decl ? decl->args.at(i).binds.at(j) : Sort{};
    }
    cur = &arg.body;
  }
  return env;
}

namespace detail {

inline bool alpha_eq_at(const Abt& a, const Abt& b, std::vector<std::string>& la,
                        std::vector<std::string>& lb) {
  if (a.kind() != b.kind()) return false;
  if (a.is_var()) {
    auto ia = std::find(la.rbegin(), la.rend(), a.name());
    auto ib = std::find(lb.rbegin(), lb.rend(), b.name());
    bool bound_a = ia != la.rend();
    bool bound_b = ib != lb.rend();
    if (bound_a != bound_b) return false;
    if (!bound_a) return a.name() == b.name();
    return std::distance(la.rbegin(), ia) == std::distance(lb.rbegin(), ib);
  }
  if (a.name() != b.name() || a.literal() != b.literal() ||
      a.args().size() != b.args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    const auto& x = a.args()[i];
    const auto& y = b.args()[i];
    if (x.binders.size() != y.binders.size()) return false;
    la.insert(la.end(), x.binders.begin(), x.binders.end());
    lb.insert(lb.end(), y.binders.begin(), y.binders.end());
    bool same = alpha_eq_at(x.body, y.body, la, lb);
    la.resize(la.size() - x.binders.size());
    lb.resize(lb.size() - y.binders.size());
    if (!same) return false;
  }
  return true;
}

inline void collect_names(const Abt& a, std::set<std::string>& out) {
  if (a.is_var()) out.insert(a.name());
  for (const auto& arg : a.args()) {
    out.insert(arg.binders.begin(), arg.binders.end());
    collect_names(arg.body, out);
  }
}

inline void collect_free(const Abt& a, std::vector<std::string>& bound,
                         std::set<std::string>& out) {
  if (a.is_var()) {
    if (std::find(bound.begin(), bound.end(), a.name()) == bound.end()) {
      out.insert(a.name());
    }
    return;
  }
  for (const auto& arg : a.args()) {
    bound.insert(bound.end(), arg.binders.begin(), arg.binders.end());
    collect_free(arg.body, bound, out);
    bound.resize(bound.size() - arg.binders.size());
  }
}

}  // namespace detail

// Equality up to consistent renaming of bound variables; free variables are
// compared by name.
inline bool alpha_eq(const Abt& a, const Abt& b) {
  std::vector<std::string> la, lb;
  return detail::alpha_eq_at(a, b, la, lb);
}

inline std::set<std::string> free_vars(const Abt& a) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  detail::collect_free(a, bound, out);
  return out;
}

// Every variable name occurring in `a`, bound or free.
inline std::set<std::string> all_names(const Abt& a) {
  std::set<std::string> out;
  detail::collect_names(a, out);
  return out;
}

// Fresh binder names x1, x2, ... skipping `avoid`. `next` carries the counter
// so consecutive calls never repeat a name.
inline std::string fresh_name(const std::set<std::string>& avoid, std::size_t& next) {
  while (true) {
    std::string candidate = "x" + std::to_string(next++);
    if (!avoid.contains(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Text format
//
//   (op <name> [<literal>] <arg>*)   arg ::= (bind (<ident>*) <tree>) | <tree>
//   (hole <sort>)  (cursor <tree>)  (var <ident>)
// ---------------------------------------------------------------------------

namespace detail {

inline void print_tree_to(const Abt& a, std::ostream& out) {
  if (a.is_var()) {
    out << "(var " << a.name() << ")";
    return;
  }
  if (a.is_hole()) {
    out << "(hole " << operator_sort_suffix(a.name()) << ")";
    return;
  }
  if (a.is_cursor()) {
    out << "(cursor ";
    print_tree_to(a.args().front().body, out);
    out << ")";
    return;
  }
  out << "(op " << a.name();
  if (a.literal()) out << " " << literal_to_string(*a.literal());
  for (const auto& arg : a.args()) {
    out << " ";
    if (arg.binders.empty()) {
      print_tree_to(arg.body, out);
      continue;
    }
    out << "(bind (";
    for (std::size_t i = 0; i < arg.binders.size(); ++i) {
      out << (i ? " " : "") << arg.binders[i];
    }
    out << ") ";
    print_tree_to(arg.body, out);
    out << ")";
  }
  out << ")";
}

class TreeParser {
 public:
  TreeParser(std::string_view text, const LanguageSpec& spec)
      : in_(text), spec_(spec) {}

  Abt parse(const SortEnv& env) {
    auto [tree, sort] = tree_(env);
    if (!in_.at_end()) in_.fail("trailing input after tree");
    return tree;
  }

 private:
  std::pair<Abt, std::optional<Sort>> tree_(const SortEnv& env) {
    in_.expect("(");
    std::string head = in_.identifier();
    if (head == "var") {
      std::string name = in_.identifier();
      in_.expect(")");
      auto it = env.find(name);
      return {Abt::var(name), it == env.end() ? std::nullopt
                                              : std::optional<Sort>(it->second)};
    }
    if (head == "hole") {
      std::string sort = in_.identifier();
      if (!spec_.has_sort(sort)) in_.fail("unknown sort '" + sort + "'");
      in_.expect(")");
      return {Abt::hole(sort), sort};
    }
    if (head == "cursor") {
      auto [child, sort] = tree_(env);
      in_.expect(")");
      if (!sort) in_.fail("cannot infer the sort under a cursor");
      return {Abt::cursor(*sort, child), sort};
    }
    // (plus a b) abbreviates (op plus a b).
    std::string name = head;
    if (head == "op") {
      name = in_.identifier();
    } else if (!spec_.find(head)) {
      in_.fail("expected op, var, hole, cursor or an operator name");
    }
    const OperatorDecl* decl = spec_.find(name);
    if (!decl) in_.fail("unknown operator '" + name + "'");
    if (decl->param == ParamKind::kName) {
      std::string var = in_.identifier();
      in_.expect(")");
      return {Abt::var(var), decl->result};
    }
    std::optional<Literal> literal;
    if (decl->param == ParamKind::kInteger) literal = in_.integer();
    std::vector<Abstraction> args;
    for (const auto& val : decl->args) {
      std::vector<std::string> binders;
      SortEnv inner = env;
      if (!val.binds.empty()) {
        in_.expect("(");
        if (!in_.consume_keyword("bind")) in_.fail("expected (bind ...)");
        in_.expect("(");
        while (!in_.consume(")")) binders.push_back(in_.identifier());
        if (binders.size() != val.binds.size()) {
          in_.fail("operator '" + name + "' binds " + std::to_string(val.binds.size()) +
                   " variables here");
        }
        for (std::size_t j = 0; j < binders.size(); ++j) {
          inner[binders[j]] = val.binds[j];
        }
      }
      Abt body = tree_(inner).first;
      if (!val.binds.empty()) in_.expect(")");
      args.push_back(Abstraction{std::move(binders), std::move(body)});
    }
    in_.expect(")");
    return {Abt::op(name, std::move(args), std::move(literal)), decl->result};
  }

  Scanner in_;
  const LanguageSpec& spec_;
};

}  // namespace detail

inline std::string print_tree(const Abt& a) {
  std::ostringstream out;
  detail::print_tree_to(a, out);
  return out.str();
}

// Parses the s-expression format. Arity, binder counts and literals are
// checked here; sorting is left to sort_of.
inline Abt parse_tree(std::string_view text, const LanguageSpec& spec,
                      const SortEnv& env = {}) {
  return detail::TreeParser(text, spec).parse(env);
}

// The minimal editable state for `sort`: cursor_s(hole_s).
inline WellFormedTree initial_tree(const LanguageSpec& spec, std::string_view sort) {
  if (!spec.has_sort(sort)) throw SortError("unknown sort '" + std::string(sort) + "'");
  return check_well_formed(Abt::cursor(sort, Abt::hole(sort)), spec);
}

}  // namespace abtedit
