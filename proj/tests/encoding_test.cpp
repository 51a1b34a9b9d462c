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

#include "abtedit/encoding.hpp"
#include "support.hpp"

namespace abtedit {
namespace {

using testing::abt;
using testing::letlang;
using testing::wf;

class EncodingTest : public ::testing::Test {
 protected:
  EncodingEnv env_s{letlang(), "s"};
  EncodingEnv env_e{letlang(), "e"};

  lambda::ValuePtr value(const Term& t, lambda::Evaluator& ev) {
    lambda::EvalResult r = ev.evaluate(t);
    EXPECT_TRUE(r.ok()) << lambda::to_string(r.status) << " " << r.detail;
    return r.value;
  }

  bool decide(const Condition& c, std::string_view tree, const EncodingEnv& env) {
    lambda::Evaluator ev(env.spec());
    Term t = Term::app(encode_condition(c, env, sort_of(abt(tree), letlang())),
                       encode_abt(abt(tree), env));
    return value(t, ev)->boolean;
  }

  std::string run_encoded(std::string_view script, std::string_view tree, const EncodingEnv& env) {
    lambda::Evaluator ev(env.spec());
    Term program = Term::app(encode_editor_expr(parse_editor_expr(script), env),
                             encode_configuration(wf(tree), env));
    lambda::EvalResult r = ev.evaluate(program);
    if (!r.ok()) return lambda::to_string(r.status);
    return print_tree(decode_configuration(r.value, env, ev));
  }
};

TEST_F(EncodingTest, EncodeAbt) {
  EXPECT_EQ(lambda::to_string(encode_abt(abt("(plus (num 1) (hole e))"), env_s)),
            "plus (num 1) hole_e");
  EXPECT_EQ(lambda::to_string(encode_abt(abt(testing::kLetCursorInHole), env_s)),
            "let (cursor_e hole_e) (\\x:e. exp (plus x (num 5)))");
  EXPECT_EQ(encode_abt(abt("(hole s)"), env_s), Term::constant("hole_s"));
}

TEST_F(EncodingTest, EncodeAbtFreeVariables) {
  Term t = encode_abt(abt("(plus (var y) (num 1))"), env_e, {{"y", "e"}});
  EXPECT_EQ(lambda::to_string(t), "plus (var y) (num 1)");
  EXPECT_EQ(lambda::typecheck(t, env_e.spec()), Type::base("e"));
}

TEST_F(EncodingTest, EncodeAbtTypes) {
  for (std::string_view tree : {testing::kLetCursorInHole, std::string_view("(cursor (hole e))"),
                                std::string_view("(let (num 1) (bind (a) (let (var a) (bind (b) "
                                                 "(exp (plus (var a) (var b)))))))")}) {
    Abt a = abt(tree);
    EXPECT_EQ(lambda::typecheck(encode_abt(a, env_s), env_s.spec()),
              Type::base(sort_of(a, letlang())));
  }
}

TEST_F(EncodingTest, DecodeAbt) {
  lambda::Evaluator ev(env_e.spec());
  auto plus12 = value(Term::app(Term::constant("plus"),
                                {Term::constant("num", Literal{std::int64_t{1}}),
                                 Term::constant("num", Literal{std::int64_t{2}})}),
                      ev);
  EXPECT_EQ(print_tree(decode_abt(plus12, env_e)), "(op plus (op num 1) (op num 2))");
  Abt let = abt("(let (num 4) (bind (x) (exp (plus (var x) (var x)))))");
  EXPECT_TRUE(alpha_eq(decode_abt(value(encode_abt(let, env_s), ev), env_s), let));
  EXPECT_THROW(decode_abt(value(Term::truth(), ev), env_s), Error);
}

TEST_F(EncodingTest, EncodeContextAtRoot) {
  EXPECT_EQ(lambda::to_string(encode_context(wf("(cursor (hole s))"), env_s)),
            "(cursor_s hole_s, <ctx:s>)");
}

TEST_F(EncodingTest, EncodeContextOfLet) {
  WellFormedTree t = wf(testing::kLetCursorInHole);
  Term c = encode_context(t, env_s);
  EXPECT_EQ(lambda::to_string(c), "(cursor_e hole_e, let <ctx:e> (\\x:e. exp (plus x (num 5))))");
  lambda::Evaluator ev(env_s.spec());
  EXPECT_EQ(decode_configuration(value(c, ev), env_s, ev), t.tree);
}

TEST_F(EncodingTest, EncodeContextFocusUnderBinder) {
  WellFormedTree t = wf("(let (num 1) (bind (x) (exp (cursor (plus (var x) (num 2))))))");
  Term c = encode_context(t, env_s);
  EXPECT_EQ(lambda::typecheck(c, env_s.spec()),
            Type::product(Type::base("e"), Type::base("s")));
  lambda::Evaluator ev(env_s.spec());
  EXPECT_TRUE(alpha_eq(decode_configuration(value(c, ev), env_s, ev), t.tree));
}

TEST_F(EncodingTest, EncodeCommand) {
  const lambda::ZipperLibrary& z = env_s.zipper();
  EXPECT_EQ(encode_command(Apc::parent(), env_s), z.up("s"));
  EXPECT_EQ(encode_command(Apc::child_n(1), env_s), z.down("s"));
  EXPECT_EQ(encode_command(Apc::child_n(2), env_s),
            Term::lam("t", Type::base("s"),
                      Term::app(z.right("s"), Term::app(z.down("s"), Term::var("t")))));
  EXPECT_EQ(encode_command(Apc::insert("plus"), env_s),
            Term::app(z.set("e", "s"), Term::app(Term::constant("plus"),
                                                 {Term::constant("hole_e"),
                                                  Term::constant("hole_e")})));
  EXPECT_THROW(encode_command(Apc::insert("minus"), env_s), UnknownOperatorError);
  EXPECT_THROW(encode_command(Apc::insert("cursor_e"), env_s), UnknownOperatorError);
}

TEST_F(EncodingTest, EncodeCondition) {
  EXPECT_TRUE(decide(Condition::at("hole_e"), "(hole e)", env_e));
  EXPECT_TRUE(decide(Condition::possibly("plus"),
                     "(let (num 5) (bind (x) (exp (plus (var x) (num 1)))))", env_s));
  EXPECT_TRUE(decide(Condition::neg(Condition::at("plus")), "(hole e)", env_e));
  EXPECT_FALSE(decide(Condition::possibly("plus"), "(let (num 5) (bind (x) (exp (var x))))",
                      env_s));
  EXPECT_TRUE(decide(parse_condition("<>var"), "(let (num 5) (bind (x) (exp (var x))))", env_s));
  EXPECT_FALSE(decide(parse_condition("<>var"), "(let (num 5) (bind (x) (exp (num 1))))", env_s));
  EXPECT_TRUE(decide(parse_condition("<>num:5 & !<>num:6"), "(let (num 5) (bind (x) (exp (var x))))",
                     env_s));
  EXPECT_TRUE(decide(parse_condition("[]hole_e"), "(exp (hole e))", env_s));
}

TEST_F(EncodingTest, NameLiteralConditionsRejected) {
  EXPECT_THROW(encode_condition(parse_condition("<>var:x"), env_s), Error);
  EXPECT_THROW(encode_condition(parse_condition("@minus"), env_s), UnknownOperatorError);
  EXPECT_TRUE(decide(parse_condition("[]hole_e"), "(exp (hole e))", env_s));
}

TEST_F(EncodingTest, NilIsIdentity) {
  EXPECT_EQ(encode_editor_expr(EditorExpr::nil(), env_s),
            Term::lam("C", env_s.ctx_type(), Term::var("C")));
}

TEST_F(EncodingTest, SeqComposesInOrder) {
  EXPECT_EQ(run_encoded("child 1. nil >> {num:4}. nil", "(cursor (plus (hole e) (hole e)))",
                        env_e),
            "(op plus (cursor (op num 4)) (hole e))");
}

TEST_F(EncodingTest, GuardedPlus) {
  EXPECT_EQ(run_encoded("@hole_e => {plus}.nil | nil", "(cursor (hole e))", env_e),
            "(cursor (op plus (hole e) (hole e)))");
}

TEST_F(EncodingTest, StuckBecomesMatchFailure) {
  EXPECT_EQ(run_encoded("{let}.nil", testing::kLetCursorInHole, env_s), "match-failure");
  EXPECT_EQ(run_encoded("parent. nil", "(cursor (hole s))", env_s), "match-failure");
  EXPECT_EQ(run_encoded("{minus}.nil", "(cursor (hole s))", env_s), "match-failure");
}

TEST_F(EncodingTest, RecursionTypechecks) {
  Term t = encode_editor_expr(parse_editor_expr("rec X. (<>plus => child 1. X | nil)"), env_e);
  EXPECT_EQ(lambda::typecheck(t, env_e.spec()), Type::arrow(env_e.ctx_type(), env_e.ctx_type()));
  EXPECT_EQ(run_encoded("rec X. (<>plus => child 1. X | nil)",
                        "(cursor (plus (plus (num 1) (num 2)) (num 3)))", env_e),
            "(op plus (op plus (cursor (op num 1)) (op num 2)) (op num 3))");
}

TEST_F(EncodingTest, FreeRecursionVariableRejected) {
  EXPECT_THROW(encode_editor_expr(EditorExpr::rec_var("X"), env_s), Error);
}

TEST_F(EncodingTest, SoundnessExamples) {
  SoundnessReport r = check_soundness(parse_editor_expr("@hole_e => {plus}.nil | nil"),
                                      wf("(cursor (hole e))"), env_e);
  EXPECT_EQ(r.status, SoundnessStatus::kMatch) << format_report(r);

  WellFormedTree t = wf("(cursor (plus (hole e) (hole e)))");
  r = check_soundness(parse_editor_expr("child 1. parent. nil"), t, env_e);
  EXPECT_EQ(r.status, SoundnessStatus::kMatch) << format_report(r);
  ASSERT_TRUE(r.encoded_tree);
  EXPECT_TRUE(alpha_eq(*r.encoded_tree, t.tree));

  r = check_soundness(parse_editor_expr("{let}.nil"), wf(testing::kLetCursorInHole), env_s);
  EXPECT_EQ(r.status, SoundnessStatus::kStuckAgree) << format_report(r);

  r = check_soundness(parse_editor_expr("rec X. X"), t, env_e, SoundnessOptions{5, {100'000, 1'000}});
  EXPECT_EQ(r.status, SoundnessStatus::kFuel) << format_report(r);
}

TEST_F(EncodingTest, SoundnessWalkthrough) {
  for (std::string_view script :
       {"parent. nil", "parent. child 2. child 1. child 1. nil",
        "parent. child 2. child 1. child 2. {var:x}. nil", "@hole_e => {num:3}.nil | nil",
        "parent. child 2. (<>var => child 1. nil | nil)",
        "parent. (child 2. child 1. child 1. parent. nil >> parent. parent. nil)"}) {
    SoundnessReport r = check_soundness(parse_editor_expr(script), wf(testing::kLetCursorInHole), env_s);
    EXPECT_EQ(r.status, SoundnessStatus::kMatch) << script << ": " << format_report(r);
  }
}

TEST_F(EncodingTest, MutatedInsertIsCaught) {
  EncodingOptions o;
  o.mutate_insert = true;
  EncodingEnv bad(letlang(), "e", o);
  SoundnessReport r = check_soundness(parse_editor_expr("{plus}.nil"), wf("(cursor (hole e))"), bad);
  EXPECT_EQ(r.status, SoundnessStatus::kMismatch);
  EXPECT_NE(format_report(r).find("MISMATCH"), std::string::npos);
}

}  // namespace
}  // namespace abtedit
