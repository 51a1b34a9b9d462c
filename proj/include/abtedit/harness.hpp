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

// Randomized soundness suite: seeded (tree, script) cases checked with
// check_soundness, reported one line per case plus a summary.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "abtedit/encoding.hpp"
#include "abtedit/random.hpp"

namespace abtedit {

struct SuiteOptions {
  std::size_t cases = 500;
  std::uint64_t seed = 1;
  std::size_t fuel = 1000;
  bool mutate_encoding = false;
  int max_tree_depth = 4;
  int max_script_size = 12;
  lambda::Limits lambda_limits{2'000'000, 40'000};
};

struct SuiteCase {
  std::size_t index = 0;
  Sort root;
  WellFormedTree tree;
  EditorExpr script;
  SoundnessReport report;
};

struct SuiteSummary {
  std::size_t cases = 0, match = 0, mismatch = 0, stuck_agree = 0, stuck_diverge = 0, fuel = 0;

  std::string line() const {
    return std::to_string(cases) + " cases: " + std::to_string(match) + " match, " +
           std::to_string(stuck_agree) + " stuck-agree, " + std::to_string(fuel) + " fuel, " +
           std::to_string(mismatch) + " mismatch" +
           (stuck_diverge ? ", " + std::to_string(stuck_diverge) + " stuck-diverge" : "");
  }
};

struct SuiteResult {
  std::vector<SuiteCase> cases;
  SuiteSummary summary;
};

inline std::string format_case(const SuiteCase& c) {
  return "case " + std::to_string(c.index) + ": " + format_report(c.report) + " root=" + c.root +
         " tree=" + print_tree(c.tree.tree) + " script=" + to_string(c.script);
}

inline SuiteResult run_soundness_suite(const LanguageSpec& spec0, const SuiteOptions& opts) {
  LanguageSpec spec = spec0.editor_extended() ? spec0 : editor_extend(spec0);
  Generator gen(spec, opts.seed);
  EncodingOptions eo;
  eo.mutate_insert = opts.mutate_encoding;
  std::map<Sort, EncodingEnv> envs;
  for (const Sort& s : spec.sorts()) envs.emplace(s, EncodingEnv(spec, s, eo));

  SoundnessOptions so;
  so.fuel = opts.fuel;
  so.lambda_limits = opts.lambda_limits;

  SuiteResult out;
  for (std::size_t i = 0; i < opts.cases; ++i) {
    Sort root = gen.pick(spec.sorts());
    WellFormedTree t = gen.well_formed(
        root, 1 + static_cast<int>(gen.below(static_cast<std::uint64_t>(opts.max_tree_depth))));
    EditorExpr e = gen.script(
        t, 2 + static_cast<int>(gen.below(static_cast<std::uint64_t>(opts.max_script_size - 1))));
    SoundnessReport r = check_soundness(e, t, envs.at(root), so);
    SuiteSummary& s = out.summary;
    ++s.cases;
    switch (r.status) {
      case SoundnessStatus::kMatch:
        ++s.match;
        break;
      case SoundnessStatus::kMismatch:
        ++s.mismatch;
        break;
      case SoundnessStatus::kStuckAgree:
        ++s.stuck_agree;
        break;
      case SoundnessStatus::kStuckDiverge:
        ++s.stuck_diverge;
        break;
      case SoundnessStatus::kFuel:
        ++s.fuel;
        break;
    }
    out.cases.push_back(SuiteCase{i, root, std::move(t), std::move(e), std::move(r)});
  }
  return out;
}

}  // namespace abtedit
