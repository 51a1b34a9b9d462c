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

// Language definitions: sorts, operators with binder arities, literal
// operator families, and the cursor/hole extension that turns a language
// into an editable one.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "abtedit/error.hpp"
#include "abtedit/scanner.hpp"

namespace abtedit {

using Sort = std::string;

// A literal attached to an instance of a literal operator family: an integer
// for `int` families (num 5) or an identifier for `name` families (var x).
using Literal = std::variant<std::int64_t, std::string>;

inline std::string literal_to_string(const Literal& lit) {
  if (const auto* i = std::get_if<std::int64_t>(&lit)) return std::to_string(*i);
  return std::get<std::string>(lit);
}

// One argument position: the sorts of the variables it binds and the sort
// of its body. `e.s` binds one e-variable over an s-body.
struct Valence {
  std::vector<Sort> binds;
  Sort body;

  bool operator==(const Valence&) const = default;
};

enum class ParamKind { kNone, kInteger, kName };

enum class OperatorRole { kUser, kCursor, kHole };

struct OperatorDecl {
  std::string name;
  Sort result;
  std::vector<Valence> args;
  ParamKind param = ParamKind::kNone;
  OperatorRole role = OperatorRole::kUser;

  bool is_literal() const { return param != ParamKind::kNone; }
  bool is_cursor() const { return role == OperatorRole::kCursor; }
  bool is_hole() const { return role == OperatorRole::kHole; }

  bool operator==(const OperatorDecl&) const = default;
};

inline std::string cursor_operator(std::string_view sort) {
  return "cursor_" + std::string(sort);
}

inline std::string hole_operator(std::string_view sort) {
  return "hole_" + std::string(sort);
}

// cursor_* and hole_* are owned by the editor extension.
inline bool is_cursor_name(std::string_view name) { return name.starts_with("cursor_"); }
inline bool is_hole_name(std::string_view name) { return name.starts_with("hole_"); }
inline bool is_reserved_operator_name(std::string_view name) {
  return is_cursor_name(name) || is_hole_name(name);
}

// An immutable language definition. Instances only come out of
// LanguageSpec::create, load_spec and editor_extend, all of which validate.
class LanguageSpec {
 public:
  static LanguageSpec create(std::vector<Sort> sorts,
                             std::vector<OperatorDecl> operators) {
    LanguageSpec spec;
    spec.sorts_ = std::move(sorts);
    spec.operators_ = std::move(operators);
    spec.validate();
    spec.reindex();
    return spec;
  }

  const std::vector<Sort>& sorts() const { return sorts_; }
  const std::vector<OperatorDecl>& operators() const { return operators_; }
  bool editor_extended() const { return editor_extended_; }

  bool has_sort(std::string_view sort) const {
    return std::find(sorts_.begin(), sorts_.end(), sort) != sorts_.end();
  }

  const OperatorDecl* find(std::string_view name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &operators_[it->second];
  }

  // The name-literal family whose instances are variable references of
  // `sort`, if the language declares one.
  const OperatorDecl* variable_operator(std::string_view sort) const {
    for (const auto& op : operators_) {
      if (op.param == ParamKind::kName && op.result == sort) return &op;
    }
    return nullptr;
  }

  // Operators a hole of `sort` may be replaced by: everything of that result
  // sort except the cursor.
  std::vector<const OperatorDecl*> insertable(std::string_view sort) const {
    std::vector<const OperatorDecl*> out;
    for (const auto& op : operators_) {
      if (op.result == sort && !op.is_cursor()) out.push_back(&op);
    }
    return out;
  }

  bool operator==(const LanguageSpec& other) const {
    return sorts_ == other.sorts_ && operators_ == other.operators_ &&
           editor_extended_ == other.editor_extended_;
  }

 private:
  friend LanguageSpec editor_extend(const LanguageSpec& spec);

  void validate() const {
    std::vector<Sort> seen;
    for (const auto& s : sorts_) {
      if (!detail::is_identifier(s)) throw SpecError("invalid sort name '" + s + "'");
      if (std::find(seen.begin(), seen.end(), s) != seen.end()) {
        throw SpecError("duplicate sort '" + s + "'");
      }
      seen.push_back(s);
    }
    std::vector<std::string> names;
    std::vector<Sort> name_literal_sorts;
    for (const auto& op : operators_) {
      if (!detail::is_identifier(op.name)) {
        throw SpecError("invalid operator name '" + op.name + "'");
      }
      if (std::find(names.begin(), names.end(), op.name) != names.end()) {
        throw SpecError("duplicate operator '" + op.name + "'");
      }
      names.push_back(op.name);
      if (op.role == OperatorRole::kUser && is_reserved_operator_name(op.name)) {
        throw SpecError("operator name '" + op.name + "' is reserved");
      }
      check_sort(op.result, op.name);
      for (const auto& v : op.args) {
        check_sort(v.body, op.name);
        for (const auto& b : v.binds) check_sort(b, op.name);
      }
      if (op.is_literal() && !op.args.empty()) {
        throw SpecError("literal operator '" + op.name + "' cannot take arguments");
      }
      if (op.param == ParamKind::kName) {
        if (std::find(name_literal_sorts.begin(), name_literal_sorts.end(),
                      op.result) != name_literal_sorts.end()) {
          throw SpecError("second name-literal operator for sort '" + op.result + "'");
        }
        name_literal_sorts.push_back(op.result);
      }
    }
  }

  void check_sort(const Sort& s, const std::string& where) const {
    if (!has_sort(s)) {
      throw SpecError("undeclared sort '" + s + "' in operator '" + where + "'");
    }
  }

  void reindex() {
    index_.clear();
    for (std::size_t i = 0; i < operators_.size(); ++i) {
      index_.emplace(operators_[i].name, i);
    }
  }

  std::vector<Sort> sorts_;
  std::vector<OperatorDecl> operators_;
  bool editor_extended_ = false;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Adds cursor_s : (s)s and hole_s : ()s for every sort s.
inline LanguageSpec editor_extend(const LanguageSpec& spec) {
  if (spec.editor_extended()) throw SpecError("language is already editor-extended");
  LanguageSpec out = spec;
  for (const auto& s : spec.sorts()) {
    out.operators_.push_back(OperatorDecl{cursor_operator(s), s, {Valence{{}, s}},
                                          ParamKind::kNone, OperatorRole::kCursor});
    out.operators_.push_back(
        OperatorDecl{hole_operator(s), s, {}, ParamKind::kNone, OperatorRole::kHole});
  }
  out.editor_extended_ = true;
  out.validate();
  out.reindex();
  return out;
}

// Parses the line-oriented definition format:
//
//   sort <name>
//   op <name> : (<valence>, ...) <result>      valence ::= [<sort> ... .]<sort>
//   litop <name> : int|name <result>
inline LanguageSpec load_spec(std::string_view document) {
  detail::Scanner in(document);
  std::vector<Sort> sorts;
  std::vector<OperatorDecl> ops;
  while (!in.at_end()) {
    auto line = in.line();
    std::string keyword = in.identifier();
    if (keyword == "sort") {
      sorts.push_back(in.identifier());
    } else if (keyword == "op") {
      OperatorDecl op;
      op.name = in.identifier();
      in.expect(":");
      in.expect("(");
      if (!in.consume(")")) {
        do {
          std::vector<Sort> words;
          words.push_back(in.identifier());
          Valence v;
          while (true) {
            if (in.consume(".")) {
              v.binds = std::move(words);
              v.body = in.identifier();
              break;
            }
            if (in.peek() == ',' || in.peek() == ')') {
              if (words.size() != 1) in.fail("binder sorts must be followed by '.'");
              v.body = words.front();
              break;
            }
            words.push_back(in.identifier());
          }
          op.args.push_back(std::move(v));
        } while (in.consume(","));
        in.expect(")");
      }
      op.result = in.identifier();
      ops.push_back(std::move(op));
    } else if (keyword == "litop") {
      OperatorDecl op;
      op.name = in.identifier();
      in.expect(":");
      std::string kind = in.identifier();
      if (kind == "int") {
        op.param = ParamKind::kInteger;
      } else if (kind == "name") {
        op.param = ParamKind::kName;
      } else {
        in.fail("literal kind must be 'int' or 'name'");
      }
      op.result = in.identifier();
      ops.push_back(std::move(op));
    } else {
      throw ParseError("unknown declaration '" + keyword + "'", line, 1);
    }
  }
  return LanguageSpec::create(std::move(sorts), std::move(ops));
}

// Emits the user-declared part of a language in load_spec's format.
inline std::string serialize_spec(const LanguageSpec& spec) {
  std::ostringstream out;
  for (const auto& s : spec.sorts()) out << "sort " << s << "\n";
  for (const auto& op : spec.operators()) {
    if (op.role != OperatorRole::kUser) continue;
    if (op.is_literal()) {
      out << "litop " << op.name << " : "
          << (op.param == ParamKind::kInteger ? "int" : "name") << " " << op.result
          << "\n";
      continue;
    }
    out << "op " << op.name << " : (";
    for (std::size_t i = 0; i < op.args.size(); ++i) {
      if (i) out << ", ";
      const auto& v = op.args[i];
      for (std::size_t j = 0; j < v.binds.size(); ++j) {
        out << (j ? " " : "") << v.binds[j];
      }
      if (!v.binds.empty()) out << ".";
      out << v.body;
    }
    out << ") " << op.result << "\n";
  }
  return out.str();
}

// An operator together with the literal of this particular instance.
struct OperatorRef {
  const OperatorDecl* decl = nullptr;
  std::optional<Literal> literal;
};

inline OperatorRef lookup_operator(const LanguageSpec& spec, std::string_view name,
                                   std::optional<Literal> literal = std::nullopt) {
  const OperatorDecl* decl = spec.find(name);
  if (!decl) throw UnknownOperatorError("unknown operator '" + std::string(name) + "'");
  if (decl->is_literal() && !literal) {
    throw UnknownOperatorError("operator '" + decl->name + "' requires a literal");
  }
  if (!decl->is_literal() && literal) {
    throw UnknownOperatorError("operator '" + decl->name + "' takes no literal");
  }
  if (literal) {
    bool is_int = std::holds_alternative<std::int64_t>(*literal);
    if (is_int != (decl->param == ParamKind::kInteger)) {
      throw UnknownOperatorError("literal kind does not match operator '" +
                                 decl->name + "'");
    }
    if (!is_int && !detail::is_identifier(std::get<std::string>(*literal))) {
      throw UnknownOperatorError("name literal must be an identifier");
    }
  }
  return OperatorRef{decl, std::move(literal)};
}

}  // namespace abtedit
