#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "fedo/cli/commands.hpp"

namespace fedo::cli {
namespace {

GlobalOptions opts(int threads = 1) {
  GlobalOptions g;
  g.threads = threads;
  return g;
}

TEST(Commands, DimsDifferenceForScalars) {
  const auto a = cmd_dims({0, -4, 2}, opts());
  const auto b = cmd_dims({0, -4, 4}, opts());
  EXPECT_EQ(std::get<std::int64_t>(a.checks[0].payload[0].value), 2);
  EXPECT_EQ(std::get<std::int64_t>(b.checks[0].payload[0].value), 3);
}

TEST(Commands, UsageErrors) {
  EXPECT_THROW(cmd_dims({3, -1, 4}, opts()), std::invalid_argument);
  EXPECT_THROW(cmd_dims({0, -4, 3}, opts()), UsageError);
  EXPECT_THROW(cmd_dims({0, -4, 4, 0, "rational"}, opts()), UsageError);
  EXPECT_NO_THROW(cmd_dims({0, -4, 2, 0, "exact"}, opts()));
  EXPECT_THROW(cmd_verify({"nope"}, opts()), UsageError);
  EXPECT_THROW(cmd_eval({"/nonexistent.ten"}, opts()), UsageError);
  EXPECT_THROW(cmd_reduce({"builtin:nope"}, opts()), UsageError);
}

TEST(Commands, VerifyScalarDimTwo) {
  const auto r = cmd_verify({"scalar", 2, 10}, opts());
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Commands, ReportsAreSeedReproducibleAndThreadIndependent) {
  const auto a = cmd_verify({"chern", 4, 4}, opts(1));
  const auto b = cmd_verify({"chern", 4, 4}, opts(3));
  EXPECT_EQ(a.json(false), b.json(false));
  GlobalOptions other = opts(1);
  other.seed = 99;
  EXPECT_NE(cmd_verify({"scalar", 4, 3}, other).json(false), cmd_verify({"scalar", 4, 3}, opts()).json(false));
}

TEST(Commands, EvalOnFlatStructureIsZero) {
  const auto r = cmd_eval({std::string(FEDO_CORPUS_DIR) + "/eq2.ten", 4, "flat"}, opts());
  EXPECT_TRUE(std::get<bool>(r.checks[0].payload[0].value));
}

TEST(Commands, ReduceBuiltinEq4) {
  const auto r = cmd_reduce({"builtin:eq4", 4, 2}, opts());
  EXPECT_TRUE(r.passed());
  ASSERT_EQ(r.checks.size(), 2u);
  EXPECT_EQ(r.checks[1].status, Status::Pass);
}

TEST(Commands, SeedFromEnvironment) {
  ::setenv("FEDOCHECK_SEED", "123", 1);
  EXPECT_EQ(seed_from_env(7), 123u);
  ::setenv("FEDOCHECK_SEED", "12x", 1);
  EXPECT_THROW(seed_from_env(7), UsageError);
  ::unsetenv("FEDOCHECK_SEED");
  EXPECT_EQ(seed_from_env(7), 7u);
}

TEST(Report, JsonAndTextCarryChecks) {
  RunReport r;
  r.command = "demo";
  r.check("measured thing", Status::Measured).add("value", std::int64_t{3});
  r.pass_if("ok", true);
  EXPECT_NE(r.text().find("[measured] measured thing"), std::string::npos);
  EXPECT_NE(r.json().find("\"value\": 3"), std::string::npos);
  EXPECT_EQ(r.json(false).find("wall_seconds"), std::string::npos);
  r.pass_if("bad", false);
  EXPECT_EQ(r.exit_code(), 1);
}

}  // namespace
}  // namespace fedo::cli
