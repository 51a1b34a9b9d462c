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

// Editing sessions behind a small JSON request interface. Transport-free:
// handle() takes a method, a path and a body, so the HTTP binding in the
// command-line tool and the tests drive the same code.
//
//   POST /sessions                {spec, rootSort}
//   GET  /sessions/{id}
//   POST /sessions/{id}/command   {kind, arg}
//   POST /sessions/{id}/script    {text, fuel}
//   POST /sessions/{id}/query     {phi}
//   GET  /sessions/{id}/trace

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "abtedit/abt.hpp"
#include "abtedit/engine.hpp"
#include "abtedit/error.hpp"
#include "abtedit/language_spec.hpp"
#include "abtedit/logic.hpp"
#include "abtedit/wire.hpp"
#include "abtedit/zipper.hpp"

namespace abtedit::service {

using Json = nlohmann::json;

struct HistoryEntry {
  StepLabel label;
  WellFormedTree tree;
};

struct Session {
  std::string id;
  LanguageSpec spec;
  Sort root_sort;
  WellFormedTree initial;
  WellFormedTree tree;
  std::vector<HistoryEntry> history;
  std::mutex mutex;

  Session(std::string id_, LanguageSpec spec_, Sort root)
      : id(std::move(id_)),
        spec(std::move(spec_)),
        root_sort(std::move(root)),
        initial(initial_tree(spec, root_sort)),
        tree(initial) {}
};

// Replays the labelled history entries from the initial tree. Equal to the
// session's current tree whenever the history invariant holds.
inline WellFormedTree replay(const Session& s) {
  WellFormedTree t = s.initial;
  for (const HistoryEntry& e : s.history) {
    if (!e.label) continue;
    Transition r = apply_command(t, *e.label, s.spec);
    if (!r.ok()) throw Error("history does not replay at " + to_string(*e.label));
    t = r.tree();
  }
  return t;
}

struct Response {
  int status = 200;
  Json body;
};

class Service {
 public:
  static constexpr std::size_t kMaxFuel = 1'000'000;

  Response handle(std::string_view method, std::string_view path, std::string_view body) {
    try {
      return route(method, path, body);
    } catch (const Json::exception& e) {
      return error(400, std::string("bad request: ") + e.what());
    } catch (const ParseError& e) {
      return error(400, e.what());
    } catch (const Error& e) {
      return error(400, e.what());
    }
  }

  std::shared_ptr<Session> find(const std::string& id) const {
    std::shared_lock lock(store_mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  std::size_t session_count() const {
    std::shared_lock lock(store_mutex_);
    return sessions_.size();
  }

 private:
  static Response error(int status, std::string message) {
    return Response{status, Json{{"error", std::move(message)}}};
  }

  static std::vector<std::string_view> split(std::string_view path) {
    std::vector<std::string_view> out;
    while (!path.empty()) {
      while (!path.empty() && path.front() == '/') path.remove_prefix(1);
      std::size_t n = path.find('/');
      std::string_view part = path.substr(0, n);
      if (!part.empty()) out.push_back(part);
      path = n == std::string_view::npos ? std::string_view() : path.substr(n);
    }
    return out;
  }

  static Json parse_body(std::string_view body) {
    if (body.empty()) return Json::object();
    return Json::parse(body);
  }

  static Json state(const Session& s) {
    return Json{{"id", s.id},
                {"rootSort", s.root_sort},
                {"tree", wire::tree_json(s.tree.tree, s.spec)},
                {"sexpr", print_tree(s.tree.tree)},
                {"cursorPath", s.tree.cursor_path},
                {"palette", wire::palette_json(s.tree.tree, s.spec)},
                {"historyLength", s.history.size()}};
  }

  Response route(std::string_view method, std::string_view path, std::string_view body) {
    std::vector<std::string_view> parts = split(path);
    if (parts.empty() || parts[0] != "sessions") return error(404, "no such route");
    if (parts.size() == 1) {
      if (method != "POST") return error(405, "method not allowed");
      return create(parse_body(body));
    }
    std::shared_ptr<Session> s = find(std::string(parts[1]));
    if (!s) return error(404, "unknown session " + std::string(parts[1]));
    std::lock_guard lock(s->mutex);
    if (parts.size() == 2) {
      if (method != "GET") return error(405, "method not allowed");
      return Response{200, state(*s)};
    }
    if (parts.size() != 3) return error(404, "no such route");
    std::string_view action = parts[2];
    if (action == "trace") {
      if (method != "GET") return error(405, "method not allowed");
      Json h = Json::array();
      for (const HistoryEntry& e : s->history) {
        h.push_back(Json{{"label", wire::label_string(e.label)},
                         {"tree", print_tree(e.tree.tree)}});
      }
      return Response{200, Json{{"history", h}}};
    }
    if (method != "POST") return error(405, "method not allowed");
    Json req = parse_body(body);
    if (action == "command") return command(*s, req);
    if (action == "script") return script(*s, req);
    if (action == "query") return query(*s, req);
    return error(404, "no such route");
  }

  Response create(const Json& req) {
    LanguageSpec spec = editor_extend(load_spec(req.at("spec").get<std::string>()));
    Sort root = req.at("rootSort").get<std::string>();
    if (!spec.has_sort(root)) return error(400, "unknown sort " + root);
    std::unique_lock lock(store_mutex_);
    std::string id = "s" + std::to_string(++next_id_);
    auto s = std::make_shared<Session>(id, std::move(spec), std::move(root));
    sessions_[id] = s;
    Json out = state(*s);
    return Response{201, out};
  }

  static Response command(Session& s, const Json& req) {
    Apc cmd = wire::command_from_json(req);
    Transition r = apply_command(s.tree, cmd, s.spec);
    if (!r.ok()) {
      return Response{200, Json{{"ok", false},
                                {"stuck", to_string(r.reason())},
                                {"state", state(s)}}};
    }
    s.tree = r.tree();
    s.history.push_back(HistoryEntry{cmd, s.tree});
    return Response{200, Json{{"ok", true}, {"state", state(s)}}};
  }

  static Response script(Session& s, const Json& req) {
    EditorExpr e = parse_editor_expr(req.at("text").get<std::string>());
    std::size_t fuel = kDefaultFuel;
    if (req.contains("fuel")) {
      std::int64_t f = req.at("fuel").get<std::int64_t>();
      if (f < 0) return error(400, "fuel must be non-negative");
      fuel = std::min<std::size_t>(static_cast<std::size_t>(f), kMaxFuel);
    }
    RunResult r = run(Config{e, s.tree}, s.spec, fuel);
    bool commit = r.outcome == RunResult::Outcome::kTerminal;
    if (commit) {
      for (const TraceEntry& t : r.trace) s.history.push_back(HistoryEntry{t.label, t.tree});
      s.tree = r.final.tree;
    }
    Json out = wire::run_json(r, s.spec);
    out["committed"] = commit;
    out["state"] = state(s);
    return Response{200, out};
  }

  static Response query(Session& s, const Json& req) {
    Condition phi = parse_condition(req.at("phi").get<std::string>());
    try {
      validate_condition(phi, s.spec);
    } catch (const UnknownOperatorError& e) {
      return error(400, e.what());
    }
    bool value = satisfies(enclosed(s.tree), phi, s.spec,
                           env_at(s.tree.tree, s.tree.cursor_path, s.spec));
    return Response{200, Json{{"value", value}}};
  }

  mutable std::shared_mutex store_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::size_t next_id_ = 0;
};

}  // namespace abtedit::service
