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

// The abt-edit command line: run, query, check-soundness and (when the
// caller supplies a server) serve. Kept out of main() so tests can drive it
// in-process.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "abtedit/abt.hpp"
#include "abtedit/engine.hpp"
#include "abtedit/error.hpp"
#include "abtedit/harness.hpp"
#include "abtedit/language_spec.hpp"
#include "abtedit/logic.hpp"
#include "abtedit/wire.hpp"

namespace abtedit::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kStuck = 2,
  kFuel = 3,
  kMismatch = 4,
};

// Starts a blocking server on `port`; returns the process exit code.
using ServeFn = std::function<int(int port, std::ostream& out, std::ostream& err)>;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TreeSource {
  std::string spec_path;
  std::string tree_path;
  std::string init_sort;
};

struct Loaded {
  LanguageSpec spec;
  WellFormedTree tree;
};

inline Loaded load(const TreeSource& src) {
  if (src.tree_path.empty() == src.init_sort.empty()) {
    throw Error("exactly one of --tree and --init-sort is required");
  }
  LanguageSpec spec = editor_extend(load_spec(read_file(src.spec_path)));
  WellFormedTree tree = src.init_sort.empty()
                            ? check_well_formed(parse_tree(read_file(src.tree_path), spec), spec)
                            : initial_tree(spec, src.init_sort);
  return Loaded{std::move(spec), std::move(tree)};
}

inline void add_tree_source(CLI::App& cmd, TreeSource& src) {
  cmd.add_option("--spec", src.spec_path, "language definition file")->required();
  auto* tree = cmd.add_option("--tree", src.tree_path, "tree file (s-expression)");
  auto* init = cmd.add_option("--init-sort", src.init_sort, "start from (cursor (hole SORT))");
  tree->excludes(init);
}

}  // namespace detail

inline int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                const ServeFn& serve = nullptr) {
  CLI::App app{"Structure editor calculus over abstract binding trees", "abt-edit"};
  app.require_subcommand(1);

  detail::TreeSource run_src;
  std::string script_path, script_text, output = "tree";
  std::int64_t fuel = static_cast<std::int64_t>(kDefaultFuel);
  CLI::App* run_cmd = app.add_subcommand("run", "run an editor expression");
  detail::add_tree_source(*run_cmd, run_src);
  auto* script_opt = run_cmd->add_option("--script", script_path, "script file");
  auto* inline_opt = run_cmd->add_option("-e", script_text, "inline script");
  script_opt->excludes(inline_opt);
  run_cmd->add_option("--fuel", fuel, "maximum number of steps")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--output", output, "tree | trace | json")
      ->check(CLI::IsMember({"tree", "trace", "json"}));

  detail::TreeSource query_src;
  std::string phi_text;
  CLI::App* query_cmd = app.add_subcommand("query", "evaluate a condition at the cursor");
  detail::add_tree_source(*query_cmd, query_src);
  query_cmd->add_option("condition", phi_text, "condition, e.g. @hole_e")->required();

  std::string sound_spec, report_path;
  std::size_t cases = 500;
  std::uint64_t seed = 1;
  std::size_t sound_fuel = 1000;
  bool mutate = false;
  CLI::App* sound_cmd =
      app.add_subcommand("check-soundness", "compare direct and encoded semantics");
  sound_cmd->add_option("--spec", sound_spec, "language definition file")->required();
  sound_cmd->add_option("--cases", cases, "number of random cases");
  sound_cmd->add_option("--seed", seed, "generator seed");
  sound_cmd->add_option("--fuel", sound_fuel, "editor fuel per case");
  sound_cmd->add_option("--report", report_path, "write one line per case here");
  sound_cmd->add_flag("--mutate-encoding", mutate, "deliberately break the insert encoding");

  int port = 8080;
  CLI::App* serve_cmd = app.add_subcommand("serve", "run the JSON/HTTP session service");
  serve_cmd->add_option("--port", port, "listen port")->check(CLI::Range(1, 65535));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*run_cmd) {
      if (script_path.empty() == (run_cmd->count("-e") == 0)) {
        throw Error("exactly one of --script and -e is required");
      }
      detail::Loaded l = detail::load(run_src);
      EditorExpr e = parse_editor_expr(script_path.empty() ? script_text
                                                           : detail::read_file(script_path));
      RunResult r = run(Config{std::move(e), std::move(l.tree)}, l.spec,
                        static_cast<std::size_t>(fuel));
      if (output == "json") {
        out << wire::run_json(r, l.spec).dump(2) << "\n";
      } else {
        if (output == "trace") {
          for (const TraceEntry& t : r.trace) {
            out << to_string(t.label) << "\t" << print_tree(t.tree.tree) << "\n";
          }
        }
        out << print_tree(r.final.tree.tree) << "\n";
      }
      switch (r.outcome) {
        case RunResult::Outcome::kTerminal:
          return kOk;
        case RunResult::Outcome::kStuck:
          err << "stuck: " << to_string(*r.reason) << "\n";
          return kStuck;
        case RunResult::Outcome::kFuelExhausted:
          err << "fuel exhausted after " << r.steps() << " steps\n";
          return kFuel;
      }
    }
    if (*query_cmd) {
      detail::Loaded l = detail::load(query_src);
      Condition phi = parse_condition(phi_text);
      validate_condition(phi, l.spec);
      bool v = satisfies(enclosed(l.tree), phi, l.spec,
                         env_at(l.tree.tree, l.tree.cursor_path, l.spec));
      out << (v ? "true" : "false") << "\n";
      return kOk;
    }
    if (*sound_cmd) {
      SuiteOptions opts;
      opts.cases = cases;
      opts.seed = seed;
      opts.fuel = sound_fuel;
      opts.mutate_encoding = mutate;
      SuiteResult res = run_soundness_suite(load_spec(detail::read_file(sound_spec)), opts);
      if (!report_path.empty()) {
        std::ofstream rep(report_path, std::ios::binary);
        if (!rep) throw Error("cannot write '" + report_path + "'");
        for (const SuiteCase& c : res.cases) rep << format_case(c) << "\n";
        rep << res.summary.line() << "\n";
      }
      out << res.summary.line() << "\n";
      return res.summary.mismatch ? kMismatch : kOk;
    }
    if (*serve_cmd) {
      if (!serve) {
        err << "error: serve is not available in this build\n";
        return kUsage;
      }
      return serve(port, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace abtedit::cli
