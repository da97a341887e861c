#include "pathmoments/power_sums.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace pathmoments {
namespace {

TEST(Counting, Catalan) {
    EXPECT_EQ(catalan(0), 1);
    EXPECT_EQ(catalan(1), 1);
    EXPECT_EQ(catalan(5), 42);
    auto seq = catalan_sequence(30);
    for (unsigned n = 0; n <= 30; ++n) EXPECT_EQ(seq[n], catalan(n));
}

TEST(Counting, Motzkin) {
    EXPECT_EQ(motzkin(0), 1);
    EXPECT_EQ(motzkin(2), 2);
    EXPECT_EQ(motzkin(4), 9);
    // three-term recurrence (n+3) M_{n+1} = (2n+3) M_n + 3n M_{n-1}, independent of the sum formula
    for (unsigned n = 1; n < 200; ++n)
        EXPECT_EQ((n + 3) * motzkin(n + 1), (2 * n + 3) * motzkin(n) + 3 * n * motzkin(n - 1)) << n;
}

TEST(PowerSumTable, SmallExamples) {
    auto dyck = build_power_sum_table(family::dyck, 2, 2);
    EXPECT_EQ(dyck.at(1, 2), 6);
    EXPECT_EQ(build_power_sum_table(family::dyck, 1, 2).at(2, 1), 1);
    EXPECT_EQ(build_power_sum_table(family::motzkin, 3, 1).at(1, 3), 4);
}

TEST(PowerSumTable, BoundaryEntries) {
    for (family f : {family::dyck, family::motzkin}) {
        auto t = build_power_sum_table(f, 30, 5);
        EXPECT_EQ(t.at(0, 0), 1);
        for (unsigned r = 1; r <= 5; ++r) EXPECT_EQ(t.at(r, 0), 0);
        for (unsigned n = 0; n <= 30; ++n) EXPECT_EQ(t.at(0, n), path_count(f, n));
    }
}

TEST(PowerSumTable, MatchesBruteForce) {
    auto dyck = build_power_sum_table(family::dyck, 9, 6);
    for (unsigned n = 0; n <= 9; ++n)
        for (unsigned r = 0; r <= 6; ++r) EXPECT_EQ(dyck.at(r, n), power_sum_bruteforce(family::dyck, n, r));
    auto motz = build_power_sum_table(family::motzkin, 10, 6);
    for (unsigned n = 0; n <= 10; ++n)
        for (unsigned r = 0; r <= 6; ++r) EXPECT_EQ(motz.at(r, n), power_sum_bruteforce(family::motzkin, n, r));
}

TEST(PowerSumTable, LooseUpperBound) {
    // Area never exceeds n^2 for Dyck semilength n, so S_r <= (n^2)^r S_0.
    auto t = build_power_sum_table(family::dyck, 40, 8);
    for (unsigned n = 0; n <= 40; ++n)
        for (unsigned r = 0; r <= 8; ++r) {
            EXPECT_GE(t.at(r, n), 0);
            EXPECT_LE(t.at(r, n), pow_int(big_int(n) * n, r) * t.at(0, n));
        }
}

TEST(PowerSumTable, RangeChecks) {
    auto t = build_power_sum_table(family::dyck, 4, 2);
    EXPECT_THROW(t.at(3, 1), range_unavailable);
    EXPECT_THROW(t.at(1, 5), range_unavailable);
    EXPECT_THROW(build_power_sum_table(family::dyck, 4, 21), precondition_error);
    EXPECT_NO_THROW(build_power_sum_table(family::dyck, 4, 21, {25, nullptr}));
}

TEST(PowerSumTable, BudgetExhaustion) {
    budget expired(std::chrono::duration<double>(0));
    table_options opts;
    opts.limit = &expired;
    EXPECT_THROW(build_power_sum_table(family::motzkin, 50, 4, opts), resource_budget_exceeded);
}

TEST(PowerSumTable, CsvDump) {
    std::ostringstream out;
    write_table_csv(build_power_sum_table(family::dyck, 2, 1), out);
    EXPECT_EQ(out.str(),
              "family,r,n,value\n"
              "dyck,0,0,1\ndyck,0,1,1\ndyck,0,2,2\n"
              "dyck,1,0,0\ndyck,1,1,1\ndyck,1,2,6\n");
}

}  // namespace
}  // namespace pathmoments
