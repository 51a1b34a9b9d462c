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

#include <string>
#include <string_view>

#include "abtedit/abt.hpp"
#include "abtedit/language_spec.hpp"

namespace abtedit::testing {

inline constexpr std::string_view kLetlang =
    "sort s\n"
    "sort e\n"
    "op let : (e, e.s) s\n"
    "op exp : (e) s\n"
    "op plus : (e, e) e\n"
    "litop num : int e\n"
    "litop var : name e\n";

inline const LanguageSpec& letlang() {
  static const LanguageSpec spec = editor_extend(load_spec(kLetlang));
  return spec;
}

inline Abt abt(std::string_view text) { return parse_tree(text, letlang()); }

inline WellFormedTree wf(std::string_view text) {
  return check_well_formed(abt(text), letlang());
}

// let x = cursor(hole_e) in exp(x + 5)
inline constexpr std::string_view kLetCursorInHole =
    "(let (cursor (hole e)) (bind (x) (exp (plus (var x) (num 5)))))";

}  // namespace abtedit::testing
