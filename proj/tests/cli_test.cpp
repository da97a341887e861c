#include "pathmoments/commands.hpp"

#include <gtest/gtest.h>

namespace pathmoments::cli {
namespace {

run_config config(std::optional<family> f, unsigned r_max) {
    run_config cfg;
    cfg.path_family = f;
    cfg.r_max = r_max;
    return cfg;
}

TEST(Cli, PowersumsJson) {
    auto cfg = config(family::dyck, 1);
    cfg.n_max = 5;
    auto out = cmd_powersums(cfg, budget{});
    EXPECT_EQ(out.exit_code, exit_code::ok);
    auto j = nlohmann::json::parse(out.artifact);
    EXPECT_EQ(j["family"], "dyck");
    EXPECT_EQ(j["rows"][0]["values"], nlohmann::json::array({"1", "1", "2", "5", "14", "42"}));
    EXPECT_EQ(j["rows"][1]["values"], nlohmann::json::array({"0", "1", "6", "29", "130", "562"}));
}

TEST(Cli, PowersumsCsvAndLatex) {
    auto cfg = config(family::motzkin, 1);
    cfg.n_max = 3;
    cfg.format = output_format::csv;
    EXPECT_EQ(cmd_powersums(cfg, budget{}).artifact,
              "family,r,n,value\nmotzkin,0,0,1\nmotzkin,0,1,1\nmotzkin,0,2,2\nmotzkin,0,3,4\n"
              "motzkin,1,0,0\nmotzkin,1,1,0\nmotzkin,1,2,1\nmotzkin,1,3,4\n");
    cfg.format = output_format::latex;
    auto tex = cmd_powersums(cfg, budget{}).artifact;
    EXPECT_NE(tex.find("3 & 4 & 4 \\\\"), std::string::npos);
}

TEST(Cli, PowersumsNeedsFamily) {
    EXPECT_THROW(cmd_powersums(config(std::nullopt, 2), budget{}), precondition_error);
}

TEST(Cli, FitMatchesPrintedFormulas) {
    for (auto [f, r_max] : {std::pair{family::dyck, 5U}, std::pair{family::motzkin, 4U}}) {
        auto out = cmd_fit(config(f, r_max), budget{});
        ASSERT_EQ(out.exit_code, exit_code::ok) << out.diagnostics;
        auto j = nlohmann::json::parse(out.artifact);
        ASSERT_EQ(j["forms"].size(), r_max);
        for (unsigned r = 1; r <= r_max; ++r) {
            EXPECT_EQ(closed_form_from_json(j["forms"][r - 1]), paper_formula(f, r));
            EXPECT_EQ(j["verification"][r - 1]["holdout_pass"], true);
            EXPECT_EQ(j["verification"][r - 1]["vault"], "match");
        }
    }
}

TEST(Cli, FitBeyondPrintedRange) {
    auto out = cmd_fit(config(family::dyck, 7), budget{});
    ASSERT_EQ(out.exit_code, exit_code::ok);
    auto j = nlohmann::json::parse(out.artifact);
    EXPECT_EQ(j["verification"][6]["vault"], "not_covered");
    EXPECT_EQ(j["verification"][6]["holdout_pass"], true);
}

TEST(Cli, CompareBelowThirdOrderIsEmpty) {
    auto out = cmd_compare(config(std::nullopt, 2), budget{});
    EXPECT_EQ(out.exit_code, exit_code::ok);
    auto j = nlohmann::json::parse(out.artifact);
    EXPECT_TRUE(j["rows"].empty());
    EXPECT_EQ(j["all_pass"], true);
}

TEST(Cli, CompareLowOrders) {
    auto out = cmd_compare(config(family::motzkin, 4), budget{});
    ASSERT_EQ(out.exit_code, exit_code::ok) << out.diagnostics;
    auto j = nlohmann::json::parse(out.artifact);
    ASSERT_EQ(j["rows"].size(), 2U);
    EXPECT_EQ(j["rows"][0]["r"], 3);
    EXPECT_EQ(j["rows"][0]["pass"], true);
}

TEST(Cli, ValidationErrors) {
    auto cfg = config(family::dyck, 21);
    EXPECT_THROW(cmd_powersums(cfg, budget{}), precondition_error);
    cfg.r_max = 3;
    cfg.precision_digits = 20;
    EXPECT_THROW(cmd_powersums(cfg, budget{}), precondition_error);
    cfg.precision_digits = 60;
    cfg.guard = 0;
    EXPECT_THROW(cmd_fit(cfg, budget{}), precondition_error);
    EXPECT_THROW(parse_format("xml"), precondition_error);
    auto moments = config(family::dyck, 2);
    EXPECT_THROW(cmd_moments(moments, budget{}), precondition_error);
}

TEST(Cli, ExpiredBudgetAborts) {
    budget expired(std::chrono::duration<double>(0));
    EXPECT_THROW(cmd_fit(config(family::motzkin, 6), expired), resource_budget_exceeded);
    EXPECT_THROW(cmd_compare(config(family::dyck, 6), expired), resource_budget_exceeded);
}

TEST(Cli, Deterministic) {
    auto cfg = config(family::motzkin, 4);
    EXPECT_EQ(cmd_fit(cfg, budget{}).artifact, cmd_fit(cfg, budget{}).artifact);
    auto ex = config(std::nullopt, 6);
    EXPECT_EQ(cmd_excursion(ex, budget{}).artifact, cmd_excursion(ex, budget{}).artifact);
}

}  // namespace
}  // namespace pathmoments::cli
