#include <gtest/gtest.h>

#include <random>

#include "lamlab/lamlab.hpp"
#include "oracles.hpp"

using namespace lamlab;

namespace {
Type T(const char* s) { return parse_type(s); }
const Type o = Type::atom("o");
}  // namespace

TEST(Type, Construction) {
  EXPECT_THROW(Type::arrow(o, Type::meet({o, o})), std::invalid_argument);
  EXPECT_EQ(Type::meet({o}), o);
  Type m = Type::meet({Type::meet({o, T("A")}), T("B")});
  ASSERT_TRUE(m.is_meet());
  EXPECT_EQ(m.components().size(), 3u);
  EXPECT_EQ(Type::meet({o, o}).components().size(), 2u);  // duplicates kept
}

TEST(Type, ParseAndPrint) {
  EXPECT_EQ(T("o -> o -> o"), Type::arrow(o, Type::arrow(o, o)));
  EXPECT_EQ(T("(o -> o) -> o"), Type::arrow(Type::arrow(o, o), o));
  EXPECT_EQ(T("A /\\ B -> C"), Type::arrow(Type::meet({T("A"), T("B")}), T("C")));
  EXPECT_EQ(to_string(T("o /\\ (o -> o) -> o")), "o /\\ (o -> o) -> o");
  EXPECT_EQ(to_string(T("(o -> o) -> o")), "(o -> o) -> o");
  EXPECT_THROW(parse_type("a"), TypeParseError);
  EXPECT_THROW(parse_type("o ->"), TypeParseError);
  EXPECT_THROW(parse_type("(o"), TypeParseError);
}

TEST(RestrictType, Examples) {
  auto A = RawType::atom("A"), B = RawType::atom("B"), C = RawType::atom("C"), D = RawType::atom("D");
  EXPECT_EQ(restrict_type(RawType::arrow(A, RawType::meet(B, C))), T("(A -> B) /\\ (A -> C)"));
  EXPECT_EQ(restrict_type(A), T("A"));
  EXPECT_EQ(restrict_type(RawType::arrow(A, RawType::meet(B, RawType::meet(C, D)))),
            T("(A -> B) /\\ (A -> C) /\\ (A -> D)"));
  EXPECT_EQ(parse_type("A -> B /\\ C"), T("(A -> B) /\\ (A -> C)"));
}

TEST(RestrictType, RandomTypesAreRestricted) {
  std::mt19937 rng(20240611);
  for (int i = 0; i < 5000; ++i) {
    RawType u = oracle::random_raw_type(rng, 6);
    Type t = restrict_type(u);
    ASSERT_TRUE(is_restricted(t)) << to_string(u);
    if (t.is_meet())
      for (const auto& c : t.components()) ASSERT_TRUE(c.is_simple());
    // the restricted type reads back as itself
    ASSERT_EQ(parse_type(to_string(t)), t) << to_string(t);
  }
}

TEST(TypeSize, Examples) {
  EXPECT_EQ(type_size(o), 1u);
  EXPECT_EQ(type_size(T("o -> o")), 3u);
  EXPECT_EQ(type_size(T("o /\\ o")), 3u);
  EXPECT_EQ(type_size(T("o /\\ o /\\ (o -> o)")), 7u);
}

TEST(TypesEqual, Modes) {
  Type ab = T("A /\\ B"), ba = T("B /\\ A"), aab = T("A /\\ A /\\ B");
  EXPECT_FALSE(types_equal(ab, ba));
  EXPECT_TRUE(types_equal(ab, ba, MeetEquality::UpToPermutation));
  EXPECT_TRUE(types_equal(aab, ba, MeetEquality::UpToPermutation));
  EXPECT_FALSE(types_equal(aab, ab));
  EXPECT_TRUE(types_equal(T("A /\\ B -> C"), T("B /\\ A -> C"), MeetEquality::UpToPermutation));
  EXPECT_TRUE(types_equal(T("A /\\ A"), T("A"), MeetEquality::UpToPermutation));
}

TEST(ContextMeet, Examples) {
  EXPECT_EQ(context_meet({{"x", o}}, {{"y", o}}), (Context{{"x", o}, {"y", o}}));
  EXPECT_EQ(context_meet({{"x", o}}, {{"x", T("o -> o")}}), (Context{{"x", T("o /\\ (o -> o)")}}));
  EXPECT_TRUE(context_meet({}, {}).empty());
}

TEST(ContextMeet, AssociativeAndCommutativeUpToPermutation) {
  std::mt19937 rng(7);
  const char* names[] = {"x", "y", "z"};
  auto random_ctx = [&] {
    Context c;
    for (const char* n : names)
      if (rng() % 2) c.insert_or_assign(n, restrict_type(oracle::random_raw_type(rng, 3)));
    return c;
  };
  for (int i = 0; i < 2000; ++i) {
    Context a = random_ctx(), b = random_ctx(), c = random_ctx();
    ASSERT_TRUE(contexts_equal(context_meet(a, b), context_meet(b, a), MeetEquality::UpToPermutation));
    ASSERT_TRUE(contexts_equal(context_meet(context_meet(a, b), c), context_meet(a, context_meet(b, c)),
                               MeetEquality::UpToPermutation));
    ASSERT_TRUE(contexts_equal(context_meet(context_meet(a, b), c), context_meet(a, context_meet(b, c))));
  }
}
