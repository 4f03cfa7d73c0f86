#include <gtest/gtest.h>

#include "lamlab/lamlab.hpp"

using namespace lamlab;

namespace {
const EnumSpec kSmall{5, {"x", "y"}, false};
}

TEST(Properties, PreservationUpToFive) {
  auto r = run_property("preservation", kSmall, kDefaultFuel);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.tested, 126u);
  EXPECT_EQ(r.skipped, 0u);
}

TEST(Properties, SubstCommuteUpToFour) {
  auto r = run_property("subst_commute", {4, {"x", "y"}, false}, kDefaultFuel);
  EXPECT_TRUE(r.passed()) << r.counterexamples.dump();
  EXPECT_GT(r.tested, 0u);
}

TEST(Properties, FuelOneSkipsEverything) {
  auto r = run_property("preservation", kSmall, 1);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.tested, 0u);
  EXPECT_EQ(r.skipped, 126u);
}

TEST(Properties, AllPassAtSmallSize) {
  for (const auto& name : property_names()) {
    if (name == "substitution_theorem") continue;
    auto r = run_property(name, kSmall, kDefaultFuel);
    EXPECT_TRUE(r.passed()) << name << ": " << r.counterexamples.dump();
    EXPECT_GT(r.tested, 0u) << name;
  }
}

TEST(Properties, LiteralSubstitutionPropertyHasCounterexamples) {
  // t SN, a SN and typable, yet t[x:=a] is not SN: (x x) with \x.(x x)
  auto r = run_property("substitution_theorem", {3, {"x"}, false}, kDefaultFuel, {4, "x", 10000});
  ASSERT_FALSE(r.passed());
  bool found = false;
  for (const auto& c : r.counterexamples)
    if (c["t"] == "(x x)" && c["a"] == "\\x.(x x)") {
      found = true;
      EXPECT_EQ(c["substituted"]["verdict"], "NotSN");
      EXPECT_TRUE(c["substituted"].contains("graph"));
    }
  EXPECT_TRUE(found);

  auto typed = run_property("substitution_theorem_typed", {3, {"x"}, false}, kDefaultFuel, {4, "x", 10000});
  EXPECT_TRUE(typed.passed()) << typed.counterexamples.dump();
}

TEST(Properties, UnknownNameThrows) {
  EXPECT_THROW(run_property("no_such_property", kSmall, 10), std::invalid_argument);
}

TEST(Properties, ReportsAreReproducible) {
  for (const char* name : {"prepa2", "cs_sn", "subject_reduction"}) {
    auto a = run_property(name, kSmall, kDefaultFuel), b = run_property(name, kSmall, kDefaultFuel);
    EXPECT_EQ(report_json(a, false).dump(), report_json(b, false).dump()) << name;
  }
}

TEST(Properties, ReportShape) {
  auto r = run_property("cs_sn", {4, {"x"}, false}, 50);
  json j = report_json(r);
  for (const char* k : {"property", "spec", "tested", "skipped", "counterexamples", "seconds"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["property"], "cs_sn");
  EXPECT_EQ(j["spec"]["max_size"], 4);
  EXPECT_EQ(j["spec"]["pool"], json::array({"x"}));
  EXPECT_EQ(j["spec"]["fuel"], 50);
  EXPECT_FALSE(report_json(r, false).contains("seconds"));
}

TEST(Properties, CounterexamplesCarryEvidence) {
  // eta_monotone never fails; make the evidence path run through a forced report
  auto r = run_property("typable_iff_beta_sn", {9, {}, true}, kDefaultFuel);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.diagnostics["rejected_not_beta_sn"], 1);
}
