#include <gtest/gtest.h>

#include <json.hpp>

#include "hreg/errors.hpp"
#include "hreg/suites.hpp"

using namespace hreg;

TEST(Suites, RegistryHasEveryId) {
  const std::vector<std::string> want{"claim-3.1", "claim-3.2", "claim-3.3", "claim-3.4",
                                      "claim-3.5", "lemma-a1",  "claim-a2",  "lemma-a3",
                                      "eq-red-d",  "oct-equiv", "def-4.3-nonneg", "claim-4.8",
                                      "schacht",   "paste-density", "schedule"};
  EXPECT_EQ(suite_ids(), want);
}

TEST(Suites, UnknownIdThrows) {
  try {
    run_suite({"no-such-suite", 0, 1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownSuite);
  }
}

TEST(Suites, RefinementSizePasses) {
  const Report r = run_suite({"claim-3.5", 0, 1, 100});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.records.size(), 100u);
}

TEST(Suites, OctahedronEquivalenceHasNoCaveats) {
  const Report r = run_suite({"oct-equiv", 6, 0, 50});
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.caveats.empty());
}

TEST(Suites, EverySuitePassesAtReducedTrials) {
  for (const auto& id : suite_ids()) {
    const Report r = run_suite({id, 0, 3, 5});
    EXPECT_TRUE(r.pass) << id;
    for (const auto& rec : r.records) EXPECT_NE(rec.outcome, "fail") << id << ": " << rec.detail;
  }
}

TEST(Suites, ReportJsonShapeAndDeterminism) {
  const Report a = run_suite({"eq-red-d", 0, 5, 10});
  const Report b = run_suite({"eq-red-d", 0, 5, 10});
  const std::string ja = report_json(a), jb = report_json(b);
  EXPECT_EQ(ja, jb);
  const auto j = nlohmann::json::parse(ja);
  EXPECT_EQ(j["suite"], "eq-red-d");
  EXPECT_EQ(j["aggregate"], "pass");
  EXPECT_EQ(j["records"].size(), 10u);
  EXPECT_FALSE(j.contains("wall_seconds"));
  EXPECT_TRUE(nlohmann::json::parse(report_json(a, true)).contains("wall_seconds"));
  // different seed, different instances
  EXPECT_NE(report_json(run_suite({"eq-red-d", 0, 6, 10})), ja);
}
