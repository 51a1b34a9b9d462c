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

#include <gtest/gtest.h>

#include "abtedit/language_spec.hpp"
#include "support.hpp"

namespace abtedit {
namespace {

using testing::kLetlang;

TEST(LoadSpec, Letlang) {
  LanguageSpec spec = load_spec(kLetlang);
  EXPECT_EQ(spec.sorts(), (std::vector<Sort>{"s", "e"}));
  ASSERT_EQ(spec.operators().size(), 5u);
  const OperatorDecl* let = spec.find("let");
  ASSERT_NE(let, nullptr);
  EXPECT_EQ(let->result, "s");
  ASSERT_EQ(let->args.size(), 2u);
  EXPECT_EQ(let->args[0], (Valence{{}, "e"}));
  EXPECT_EQ(let->args[1], (Valence{{"e"}, "s"}));
  EXPECT_FALSE(spec.editor_extended());
}

TEST(LoadSpec, OneSortNoOperators) {
  LanguageSpec spec = load_spec("sort t\n");
  EXPECT_EQ(spec.sorts().size(), 1u);
  EXPECT_TRUE(spec.operators().empty());
}

TEST(LoadSpec, ReservedName) {
  EXPECT_THROW(load_spec("sort e\nop cursor_e : (e) e\n"), SpecError);
  EXPECT_THROW(load_spec("sort e\nop hole_e : () e\n"), SpecError);
}

TEST(LoadSpec, Errors) {
  EXPECT_THROW(load_spec("sort e\nsort e\n"), SpecError);
  EXPECT_THROW(load_spec("sort e\nop a : () e\nop a : () e\n"), SpecError);
  EXPECT_THROW(load_spec("sort e\nop a : (q) e\n"), SpecError);
  EXPECT_THROW(load_spec("sort e\nop a : (e.q) e\n"), SpecError);
  EXPECT_THROW(load_spec("sort e\nlitop n : float e\n"), ParseError);
  EXPECT_THROW(load_spec("sort e\nfrob x\n"), ParseError);
  EXPECT_THROW(load_spec("sort e\nop a : (e e) e\n"), ParseError);
  EXPECT_THROW(load_spec("sort e\nlitop a : name e\nlitop b : name e\n"), SpecError);
}

TEST(LoadSpec, ParseErrorLocation) {
  try {
    load_spec("sort e\nop a : ? e\nsort f\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadSpec, MultiBinderValence) {
  LanguageSpec spec = load_spec("sort e\nop lam2 : (e e.e) e\n");
  EXPECT_EQ(spec.find("lam2")->args[0], (Valence{{"e", "e"}, "e"}));
}

TEST(LoadSpec, SerializeRoundTrip) {
  LanguageSpec spec = load_spec(kLetlang);
  EXPECT_EQ(load_spec(serialize_spec(spec)), spec);
}

TEST(EditorExtend, AddsCursorAndHolePerSort) {
  LanguageSpec ext = editor_extend(load_spec(kLetlang));
  EXPECT_TRUE(ext.editor_extended());
  EXPECT_EQ(ext.operators().size(), 9u);
  for (const char* s : {"s", "e"}) {
    const OperatorDecl* c = ext.find(cursor_operator(s));
    const OperatorDecl* h = ext.find(hole_operator(s));
    ASSERT_NE(c, nullptr);
    ASSERT_NE(h, nullptr);
    EXPECT_TRUE(c->is_cursor());
    EXPECT_EQ(c->args, (std::vector<Valence>{Valence{{}, s}}));
    EXPECT_EQ(c->result, s);
    EXPECT_TRUE(h->args.empty());
    EXPECT_EQ(h->result, s);
  }
  for (const char* o : {"let", "exp", "plus", "num", "var"}) EXPECT_NE(ext.find(o), nullptr);
}

TEST(EditorExtend, MinimalSpec) {
  LanguageSpec ext = editor_extend(load_spec("sort t\n"));
  ASSERT_EQ(ext.operators().size(), 2u);
  EXPECT_EQ(ext.operators()[0].name, "cursor_t");
  EXPECT_EQ(ext.operators()[1].name, "hole_t");
}

TEST(EditorExtend, Twice) {
  LanguageSpec ext = editor_extend(load_spec(kLetlang));
  EXPECT_THROW(editor_extend(ext), SpecError);
}

TEST(LookupOperator, Plus) {
  LanguageSpec spec = load_spec(kLetlang);
  OperatorRef r = lookup_operator(spec, "plus");
  EXPECT_EQ(r.decl->args, (std::vector<Valence>{Valence{{}, "e"}, Valence{{}, "e"}}));
  EXPECT_EQ(r.decl->result, "e");
}

TEST(LookupOperator, LiteralLeaf) {
  LanguageSpec spec = load_spec(kLetlang);
  OperatorRef r = lookup_operator(spec, "num", Literal{std::int64_t{5}});
  EXPECT_TRUE(r.decl->is_literal());
  EXPECT_TRUE(r.decl->args.empty());
  EXPECT_EQ(r.decl->result, "e");
  EXPECT_EQ(std::get<std::int64_t>(*r.literal), 5);
}

TEST(LookupOperator, Errors) {
  LanguageSpec spec = load_spec(kLetlang);
  EXPECT_THROW(lookup_operator(spec, "minus"), UnknownOperatorError);
  EXPECT_THROW(lookup_operator(spec, "num"), UnknownOperatorError);
  EXPECT_THROW(lookup_operator(spec, "plus", Literal{std::int64_t{1}}), UnknownOperatorError);
  EXPECT_THROW(lookup_operator(spec, "num", Literal{std::string("x")}), UnknownOperatorError);
  EXPECT_THROW(lookup_operator(spec, "var", Literal{std::int64_t{3}}), UnknownOperatorError);
}

TEST(Insertable, FilteredBySort) {
  const LanguageSpec& spec = testing::letlang();
  std::vector<std::string> names;
  for (const OperatorDecl* d : spec.insertable("e")) names.push_back(d->name);
  EXPECT_EQ(names, (std::vector<std::string>{"plus", "num", "var", "hole_e"}));
  EXPECT_EQ(spec.variable_operator("e")->name, "var");
  EXPECT_EQ(spec.variable_operator("s"), nullptr);
}

}  // namespace
}  // namespace abtedit
