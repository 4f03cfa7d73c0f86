#include <gtest/gtest.h>

#include <set>

#include "lamlab/lamlab.hpp"
#include "oracles.hpp"

using namespace lamlab;

TEST(Enumerate, Examples) {
  auto ts = enumerate({1, {"x"}, false});
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0], Term::var("x"));
  ts = enumerate({2, {"x"}, true});
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0], parse_term("\\x.x"));
  EXPECT_EQ(enumerate({3, {"x"}, false}).size(), 7u);
}

TEST(Enumerate, CountsMatchGrammarOracle) {
  for (int n = 1; n <= 7; ++n) {
    EXPECT_EQ(enumerate({std::size_t(n), {}, true}).size(), oracle::count_up_to(n, 0)) << n;
    EXPECT_EQ(enumerate({std::size_t(n), {"x"}, false}).size(), oracle::count_up_to(n, 1)) << n;
    EXPECT_EQ(enumerate({std::size_t(n), {"x", "y"}, false}).size(), oracle::count_up_to(n, 2)) << n;
  }
  EXPECT_EQ(oracle::count_up_to(9, 0), 2622u);
  EXPECT_EQ(oracle::count_up_to(7, 2), 1711u);
  EXPECT_EQ(enumerate({9, {}, true}).size(), 2622u);
}

TEST(Enumerate, DistinctClassesWithinBounds) {
  auto ts = enumerate({7, {"x", "y"}, false});
  std::set<std::string> keys;
  std::size_t last = 0;
  for (const auto& t : ts) {
    ASSERT_TRUE(keys.insert(canonical_key(t)).second) << to_string(t);
    ASSERT_LE(t.size(), 7u);
    ASSERT_GE(t.size(), last);
    last = t.size();
    for (const auto& v : free_vars(t)) ASSERT_TRUE(v == "x" || v == "y");
  }
}

TEST(Enumerate, ClosedOnlyAndDeterministic) {
  for (const auto& t : enumerate({6, {"x"}, true})) ASSERT_TRUE(free_vars(t).empty());
  auto a = enumerate({6, {"x", "y"}, false}), b = enumerate({6, {"x", "y"}, false});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a[i], b[i]);
}

TEST(Enumerate, BindersAvoidPoolNames) {
  auto ts = enumerate({4, {"x", "y"}, false});
  bool saw = false;
  for (const auto& t : ts)
    if (to_string(t) == "\\z.(x y)") saw = true;
  EXPECT_TRUE(saw);
}

TEST(Enumerate, RejectsBadSpecs) {
  EXPECT_THROW(enumerate({0, {}, true}), std::invalid_argument);
  EXPECT_THROW(enumerate({3, {"X"}, false}), std::invalid_argument);
  EXPECT_THROW(enumerate({3, {"x", "x"}, false}), std::invalid_argument);
}
