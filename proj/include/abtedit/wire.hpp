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

// JSON forms of trees, run results and traces, shared by the service and the
// command-line tool.
//
// A tree node is {"kind", "node", "sort", "cursor", "path", "children"} plus
// "literal" for literal leaves and "binders" for bodies of binding
// arguments. The cursor operator is not a node of its own: the node it
// encloses carries "cursor": true.

#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abtedit/abt.hpp"
#include "abtedit/engine.hpp"
#include "abtedit/error.hpp"
#include "abtedit/language_spec.hpp"
#include "abtedit/zipper.hpp"

namespace abtedit::wire {

using Json = nlohmann::json;

inline Json literal_json(const Literal& lit) {
  if (const auto* i = std::get_if<std::int64_t>(&lit)) return *i;
  return std::get<std::string>(lit);
}

namespace detail {

inline Json node_json(const Abt& a, const LanguageSpec& spec, const SortEnv& env, Path& path,
                      bool cursor, const std::vector<std::string>* binders) {
  if (a.is_cursor()) {
    return node_json(a.args().front().body, spec, env, path, true, binders);
  }
  Json j;
  j["sort"] = sort_of(a, spec, env);
  j["cursor"] = cursor;
  j["path"] = path;
  if (binders) j["binders"] = *binders;
  j["children"] = Json::array();
  if (a.is_var()) {
    j["kind"] = "var";
    j["node"] = a.name();
    return j;
  }
  j["kind"] = a.is_hole() ? "hole" : "op";
  j["node"] = a.name();
  if (a.literal()) j["literal"] = literal_json(*a.literal());
  const OperatorDecl* d = spec.find(a.name());
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    const Abstraction& arg = a.args()[i];
    SortEnv inner = env;
    for (std::size_t k = 0; k < arg.binders.size(); ++k) {
      inner[arg.binders[k]] = d->args[i].binds[k];
    }
    path.push_back(i);
    j["children"].push_back(node_json(arg.body, spec, inner, path, false,
                                      arg.binders.empty() ? nullptr : &arg.binders));
    path.pop_back();
  }
  return j;
}

}  // namespace detail

// The wire form of a sorted tree (cursor optional).
inline Json tree_json(const Abt& a, const LanguageSpec& spec) {
  Path path;
  return detail::node_json(a, spec, {}, path, false, nullptr);
}

// Inverse of tree_json.
inline Abt tree_from_json(const Json& j) {
  Abt node = Abt::var("");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "var") {
    node = Abt::var(j.at("node").get<std::string>());
  } else {
    std::vector<Abstraction> args;
    for (const Json& c : j.at("children")) {
      std::vector<std::string> binders;
      if (c.contains("binders")) binders = c.at("binders").get<std::vector<std::string>>();
      args.push_back(Abstraction{std::move(binders), tree_from_json(c)});
    }
    std::optional<Literal> lit;
    if (j.contains("literal")) {
      const Json& l = j.at("literal");
      if (l.is_number_integer()) {
        lit = Literal{l.get<std::int64_t>()};
      } else {
        lit = Literal{l.get<std::string>()};
      }
    }
    node = Abt::op(j.at("node").get<std::string>(), std::move(args), std::move(lit));
  }
  if (j.value("cursor", false)) node = Abt::cursor(j.at("sort").get<std::string>(), node);
  return node;
}

// For each hole: where it is, its sort, and the operators it accepts.
// Paths skip the cursor node, matching tree_json.
inline Json palette_json(const Abt& a, const LanguageSpec& spec) {
  Json out = Json::array();
  std::vector<std::pair<Path, Sort>> holes;
  auto walk = [&](auto&& self, const Abt& t, Path& path) -> void {
    if (t.is_cursor()) {
      self(self, t.args().front().body, path);
      return;
    }
    if (t.is_hole()) holes.emplace_back(path, operator_sort_suffix(t.name()));
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      path.push_back(i);
      self(self, t.args()[i].body, path);
      path.pop_back();
    }
  };
  Path path;
  walk(walk, a, path);
  for (const auto& [p, s] : holes) {
    Json ops = Json::array();
    for (const OperatorDecl* d : spec.insertable(s)) ops.push_back(d->name);
    out.push_back(Json{{"path", p}, {"sort", s}, {"insertable", ops}});
  }
  return out;
}

inline std::string label_string(const StepLabel& l) { return l ? to_string(*l) : "eps"; }

inline Json trace_json(const std::vector<TraceEntry>& trace) {
  Json out = Json::array();
  for (const TraceEntry& e : trace) {
    out.push_back(Json{{"label", label_string(e.label)}, {"tree", print_tree(e.tree.tree)}});
  }
  return out;
}

inline Json run_json(const RunResult& r, const LanguageSpec& spec) {
  Json j;
  j["outcome"] = to_string(r.outcome);
  if (r.reason) j["reason"] = to_string(*r.reason);
  j["steps"] = r.steps();
  j["tree"] = tree_json(r.final.tree.tree, spec);
  j["sexpr"] = print_tree(r.final.tree.tree);
  j["trace"] = trace_json(r.trace);
  return j;
}

// {kind: "child", arg: 2} | {kind: "parent"} | {kind: "insert", arg: "num:5"}.
inline Apc command_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "parent") return Apc::parent();
  if (kind == "child") {
    const Json& a = j.at("arg");
    std::int64_t n = 0;
    if (a.is_string()) {
      const std::string text = a.get<std::string>();
      auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
      if (ec != std::errc() || end != text.data() + text.size()) {
        throw ParseError("child index must be an integer", 1, 1);
      }
    } else {
      n = a.get<std::int64_t>();
    }
    if (n < 1) throw ParseError("child index must be at least 1", 1, 1);
    return Apc::child_n(static_cast<std::size_t>(n));
  }
  if (kind == "insert") {
    std::string arg = j.at("arg").get<std::string>();
    abtedit::detail::Scanner in(arg);
    std::string op = in.identifier();
    std::optional<Literal> lit;
    if (in.consume(":")) {
      if (in.at_integer()) {
        lit = Literal{in.integer()};
      } else {
        lit = Literal{in.identifier()};
      }
    }
    if (!in.at_end()) in.fail("trailing input in operator reference");
    return Apc::insert(std::move(op), std::move(lit));
  }
  throw ParseError("unknown command kind '" + kind + "'", 1, 1);
}

}  // namespace abtedit::wire
