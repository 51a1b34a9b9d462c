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

#include "abtedit/zipper.hpp"
#include "support.hpp"

namespace abtedit {
namespace {

using testing::abt;
using testing::letlang;
using testing::wf;

std::string apply(std::string_view tree, const Apc& cmd) {
  Transition r = apply_command(wf(tree), cmd, letlang());
  return r.ok() ? print_tree(r.tree().tree) : std::string("stuck ") + to_string(r.reason());
}

TEST(Decompose, LetCursorInHole) {
  auto [ctx, focus] = decompose(wf(testing::kLetCursorInHole));
  EXPECT_EQ(focus, abt("(cursor (hole e))"));
  ASSERT_EQ(ctx.frames.size(), 1u);
  EXPECT_EQ(ctx.frames[0].op, "let");
  EXPECT_TRUE(ctx.frames[0].left.empty());
  ASSERT_EQ(ctx.frames[0].right.size(), 1u);
  EXPECT_EQ(ctx.frames[0].right[0].binders, (std::vector<std::string>{"x"}));
  EXPECT_EQ(ctx.frames[0].right[0].body, abt("(exp (plus (var x) (num 5)))"));
}

TEST(Decompose, Root) {
  auto [ctx, focus] = decompose(wf("(cursor (hole s))"));
  EXPECT_TRUE(ctx.empty());
  EXPECT_EQ(focus, abt("(cursor (hole s))"));
}

TEST(Decompose, RecomposeIsIdentity) {
  for (std::string_view text :
       {testing::kLetCursorInHole, std::string_view("(cursor (hole s))"),
        std::string_view("(let (num 1) (bind (y) (exp (plus (var y) (cursor (num 2))))))")}) {
    WellFormedTree t = wf(text);
    auto d = decompose(t);
    EXPECT_EQ(recompose(d.context, d.focus), t.tree);
  }
}

TEST(ContextEnv, CollectsBinders) {
  auto d = decompose(wf("(let (num 1) (bind (y) (exp (cursor (var y)))))"));
  SortEnv env = context_env(d.context, letlang());
  EXPECT_EQ(env, (SortEnv{{"y", "e"}}));
}

TEST(ApplyCommand, InsertPlus) {
  EXPECT_EQ(apply("(cursor (hole e))", Apc::insert("plus")),
            "(cursor (op plus (hole e) (hole e)))");
}

TEST(ApplyCommand, InsertLetIntoExpressionHole) {
  EXPECT_EQ(apply("(let (cursor (hole e)) (bind (x) (exp (var x))))", Apc::insert("let")),
            "stuck sort-mismatch");
}

TEST(ApplyCommand, ChildOfLet) {
  EXPECT_EQ(apply("(cursor (let (num 1) (bind (x) (exp (var x)))))", Apc::child_n(1)),
            "(op let (cursor (op num 1)) (bind (x) (op exp (var x))))");
  EXPECT_EQ(apply("(cursor (let (num 1) (bind (x) (exp (var x)))))", Apc::child_n(2)),
            "(op let (op num 1) (bind (x) (cursor (op exp (var x)))))");
}

TEST(ApplyCommand, ChildThenParent) {
  WellFormedTree t = wf("(cursor (let (num 1) (bind (x) (exp (var x)))))");
  Transition down = apply_command(t, Apc::child_n(2), letlang());
  ASSERT_TRUE(down.ok());
  Transition up = apply_command(down.tree(), Apc::parent(), letlang());
  ASSERT_TRUE(up.ok());
  EXPECT_TRUE(alpha_eq(up.tree().tree, t.tree));
  EXPECT_EQ(up.tree().cursor_path, t.cursor_path);
}

TEST(ApplyCommand, StuckCases) {
  EXPECT_EQ(apply("(cursor (hole s))", Apc::parent()), "stuck at-root");
  EXPECT_EQ(apply("(cursor (hole e))", Apc::child_n(1)), "stuck no-such-child");
  EXPECT_EQ(apply("(cursor (plus (hole e) (hole e)))", Apc::child_n(3)), "stuck no-such-child");
  EXPECT_EQ(apply("(cursor (plus (hole e) (hole e)))", Apc::child_n(0)), "stuck no-such-child");
  EXPECT_EQ(apply("(cursor (hole e))", Apc::insert("minus")), "stuck unknown-operator");
  EXPECT_EQ(apply("(cursor (hole e))", Apc::insert("num")), "stuck unknown-operator");
  EXPECT_EQ(apply("(cursor (hole e))", Apc::insert("cursor_e")), "stuck unknown-operator");
}

TEST(ApplyCommand, InsertLiterals) {
  EXPECT_EQ(apply("(cursor (hole e))", Apc::insert("num", Literal{std::int64_t{7}})),
            "(cursor (op num 7))");
  EXPECT_EQ(apply("(let (num 1) (bind (x) (exp (cursor (hole e)))))",
                  Apc::insert("var", Literal{std::string("x")})),
            "(op let (op num 1) (bind (x) (op exp (cursor (var x)))))");
  // x is not in scope here.
  EXPECT_EQ(apply("(cursor (hole e))", Apc::insert("var", Literal{std::string("x")})),
            "stuck sort-mismatch");
}

TEST(ApplyCommand, InsertHoleClears) {
  EXPECT_EQ(apply("(cursor (plus (num 1) (num 2)))", Apc::insert("hole_e")), "(cursor (hole e))");
}

TEST(FreshTemplate, Examples) {
  const LanguageSpec& spec = letlang();
  EXPECT_EQ(print_tree(fresh_template(*spec.find("let"), std::nullopt, {})),
            "(op let (hole e) (bind (x1) (hole s)))");
  EXPECT_EQ(print_tree(fresh_template(*spec.find("num"), Literal{std::int64_t{7}}, {})),
            "(op num 7)");
  EXPECT_EQ(print_tree(fresh_template(*spec.find("plus"), std::nullopt, {})),
            "(op plus (hole e) (hole e))");
  EXPECT_EQ(print_tree(fresh_template(*spec.find("let"), std::nullopt, {"x1", "x2"})),
            "(op let (hole e) (bind (x3) (hole s)))");
}

TEST(ApplyCommand, InsertAvoidsNamesInTree) {
  EXPECT_EQ(apply("(let (num 1) (bind (x1) (cursor (hole s))))", Apc::insert("let")),
            "(op let (op num 1) (bind (x1) (cursor (op let (hole e) (bind (x2) (hole s))))))");
}

TEST(Enclosed, IsCursorChild) {
  EXPECT_EQ(enclosed(wf(testing::kLetCursorInHole)), abt("(hole e)"));
}

}  // namespace
}  // namespace abtedit
