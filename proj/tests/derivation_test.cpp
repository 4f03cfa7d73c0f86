#include <gtest/gtest.h>

#include "lamlab/lamlab.hpp"

using namespace lamlab;

namespace {
Term P(const char* s) { return parse_term(s); }
Type T(const char* s) { return parse_type(s); }
const Type o = designated_atom();

Derivation node(TypingRule r, Context c, Term t, Type a, std::vector<Derivation> ps = {}) {
  return {r, {std::move(c), std::move(t), std::move(a)}, std::move(ps)};
}
}  // namespace

TEST(CheckDerivation, Examples) {
  Context cx{{"x", o}};
  Derivation ax = axiom(cx, "x");
  EXPECT_TRUE(check_derivation(ax));
  Derivation lam = arrow_intro({}, "x", o, ax);
  EXPECT_TRUE(check_derivation(lam));
  EXPECT_EQ(lam.type(), T("o -> o"));

  Context cxy{{"x", o}, {"y", o}};
  Derivation bad = node(TypingRule::MeetI, cxy, P("x"), T("o /\\ o"), {axiom(cxy, "x"), axiom(cxy, "y")});
  EXPECT_FALSE(check_derivation(bad));
}

TEST(CheckDerivation, RejectsEachKindOfMistake) {
  Context c{{"f", T("o -> o")}, {"a", o}};
  Derivation app = arrow_elim(axiom(c, "f"), axiom(c, "a"));
  EXPECT_TRUE(check_derivation(app));

  Derivation wrong_type = app;
  wrong_type.conclusion.type = T("o -> o");
  EXPECT_FALSE(check_derivation(wrong_type));

  Derivation wrong_arity = app;
  wrong_arity.premises.pop_back();
  EXPECT_FALSE(check_derivation(wrong_arity));

  Derivation wrong_ctx = app;
  wrong_ctx.conclusion.context.insert_or_assign("z", o);
  EXPECT_FALSE(check_derivation(wrong_ctx));

  Derivation undeclared = node(TypingRule::Ax, {}, P("x"), o);
  EXPECT_FALSE(check_derivation(undeclared));

  Derivation arg_mismatch = arrow_elim(axiom(c, "f"), axiom(c, "f"));
  EXPECT_FALSE(check_derivation(arg_mismatch));

  auto e = derivation_error(arg_mismatch);
  ASSERT_TRUE(e);
  EXPECT_NE(e->find("argument type mismatch"), std::string::npos);
}

TEST(CheckDerivation, MeetRules) {
  Context c{{"x", T("o /\\ (o -> o) /\\ A")}};
  auto d = var_derive(c, "x", T("o -> o"));
  ASSERT_TRUE(d);
  EXPECT_TRUE(check_derivation(*d));
  EXPECT_EQ(d->rule, TypingRule::MeetELeft);
  EXPECT_EQ(d->premises[0].rule, TypingRule::MeetERight);

  auto last = var_derive(c, "x", T("A"));
  ASSERT_TRUE(last);
  EXPECT_TRUE(check_derivation(*last));

  auto both = var_derive(c, "x", T("A /\\ o"));
  ASSERT_TRUE(both);
  EXPECT_EQ(both->rule, TypingRule::MeetI);
  EXPECT_TRUE(check_derivation(*both));
  EXPECT_FALSE(var_derive(c, "x", T("B")));

  // MeetE_left must give the first conjunct in ordered mode
  Derivation wrong = node(TypingRule::MeetELeft, c, P("x"), T("A"), {axiom(c, "x")});
  EXPECT_FALSE(check_derivation(wrong));
  EXPECT_TRUE(check_derivation(wrong, MeetEquality::UpToPermutation));
}

TEST(IsNormal, Examples) {
  Context c{{"x", T("o /\\ A")}};
  EXPECT_TRUE(is_normal(axiom(c, "x")));

  Context cx{{"x", o}};
  Derivation intro = meet_intro({axiom(cx, "x"), axiom(cx, "x")});
  Derivation elim = node(TypingRule::MeetELeft, cx, P("x"), o, {intro});
  EXPECT_TRUE(check_derivation(elim));
  EXPECT_FALSE(is_normal(elim));

  // MeetI under ArrowI under MeetE: not immediate (shape only)
  Context cy{{"f", T("o /\\ o -> o")}};
  Context cxy = extend(cy, "x", o);
  Derivation body = arrow_elim(axiom(cxy, "f"), meet_intro({axiom(cxy, "x"), axiom(cxy, "x")}));
  Derivation lam = arrow_intro(cy, "x", o, body);
  EXPECT_TRUE(check_derivation(lam));
  EXPECT_TRUE(is_normal(lam));
  Derivation shape = node(TypingRule::MeetELeft, cy, lam.subject(), lam.type(), {lam});
  EXPECT_TRUE(is_normal(shape));
  Derivation direct = node(TypingRule::MeetELeft, cy, lam.subject(), lam.type(), {meet_intro({lam, lam})});
  EXPECT_FALSE(is_normal(direct));
}

TEST(FindDerivation, Examples) {
  auto d = find_derivation({{"x", o}}, P("x"), o, 100);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->rule, TypingRule::Ax);

  d = find_derivation({}, P("\\x.x"), T("o -> o"), 100);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->rule, TypingRule::ArrowI);
  EXPECT_EQ(d->premises[0].rule, TypingRule::Ax);
  EXPECT_TRUE(check_derivation(*d));

  EXPECT_FALSE(find_derivation({}, P("\\x.x"), o, 100));
  EXPECT_THROW(find_derivation({}, P("x"), o, 0), std::invalid_argument);
}

TEST(FindDerivation, IntersectionsAndRedexes) {
  Type self = T("o /\\ (o -> o) -> o");
  auto d = find_derivation({}, P("\\x.(x x)"), self, 1000);
  ASSERT_TRUE(d);
  EXPECT_TRUE(check_derivation(*d));
  EXPECT_TRUE(is_normal(*d));

  d = find_derivation({{"y", o}}, P("(\\x.(x x) \\z.z y)"), o, 1000);
  ASSERT_TRUE(d);
  EXPECT_TRUE(check_derivation(*d));

  // erased argument still has to be typed
  d = find_derivation({{"y", o}}, P("(\\x.y \\z.(z z))"), o, 1000);
  ASSERT_TRUE(d);
  EXPECT_TRUE(check_derivation(*d));
  EXPECT_FALSE(find_derivation({}, P("(\\x.\\y.y (\\z.(z z) \\z.(z z)))"), T("o -> o"), 2000));
}

TEST(FindDerivation, BudgetIsRespected) {
  TypeSearch s(3);
  EXPECT_FALSE(s.check({{"f", T("o -> o -> o")}, {"a", o}}, P("(f a (f a a))"), o));
  EXPECT_TRUE(s.exhausted());
}

TEST(TypeSearch, TypeWithFixedDeclarations) {
  TypeSearch s(10000);
  auto r = s.type_with({{"x", T("o -> o")}}, P("(x y)"));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->type, o);
  EXPECT_EQ(r->context.at("x"), T("o -> o"));
  EXPECT_EQ(r->context.at("y"), o);
  EXPECT_TRUE(check_derivation(r->derivation));

  EXPECT_FALSE(TypeSearch(10000).type_with({{"x", o}}, P("(x x)")));
  auto self = TypeSearch(10000).type_with({{"x", T("((o /\\ (o -> o)) -> o) -> o")}}, P("(x \\y.(y y))"));
  ASSERT_TRUE(self);
  EXPECT_TRUE(check_derivation(self->derivation));
}

TEST(Json, DerivationShape) {
  Derivation lam = arrow_intro({}, "x", o, axiom({{"x", o}}, "x"));
  json j = derivation_json(lam);
  EXPECT_EQ(j["rule"], "ArrowI");
  EXPECT_EQ(j["term"], "\\x.x");
  EXPECT_EQ(j["type"], "o -> o");
  EXPECT_TRUE(j["ctx"].empty());
  ASSERT_EQ(j["premises"].size(), 1u);
  EXPECT_EQ(j["premises"][0]["rule"], "Ax");
  EXPECT_EQ(j["premises"][0]["ctx"]["x"], "o");
}
