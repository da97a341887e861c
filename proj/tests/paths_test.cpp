#include "pathmoments/paths.hpp"

#include <gtest/gtest.h>

#include <set>

namespace pathmoments {
namespace {

// Independent counting oracles: closed factorial expressions.
big_int catalan_by_factorials(unsigned n) { return factorial(2 * n) / (factorial(n) * factorial(n + 1)); }

big_int motzkin_by_factorials(unsigned n) {
    big_int sum = 0;
    for (unsigned r = 0; 2 * r <= n; ++r)
        sum += factorial(n) / (factorial(n - 2 * r) * factorial(r) * factorial(r + 1));
    return sum;
}

TEST(Paths, EmptyDyckPath) {
    auto paths = enumerate_paths(family::dyck, 0);
    ASSERT_EQ(paths.size(), 1U);
    EXPECT_TRUE(paths[0].steps().empty());
    EXPECT_EQ(doubled_area(paths[0]), 0U);
}

TEST(Paths, DyckThreeHasFivePaths) {
    EXPECT_EQ(enumerate_paths(family::dyck, 3).size(), 5U);
    EXPECT_EQ(catalan_by_factorials(3), 5);
}

TEST(Paths, MotzkinFourHasNinePaths) {
    EXPECT_EQ(enumerate_paths(family::motzkin, 4).size(), 9U);
    EXPECT_EQ(motzkin_by_factorials(4), 9);
}

TEST(Paths, LexicographicOrderUpFlatDown) {
    auto paths = enumerate_paths(family::motzkin, 3);
    std::vector<std::string> got;
    for (const auto& p : paths) got.push_back(p.str());
    EXPECT_EQ(got, (std::vector<std::string>{"UFD", "UDF", "FUD", "FFF"}));

    auto dyck = enumerate_paths(family::dyck, 2);
    ASSERT_EQ(dyck.size(), 2U);
    EXPECT_EQ(dyck[0].str(), "UUDD");
    EXPECT_EQ(dyck[1].str(), "UDUD");
}

TEST(Paths, CountsMatchCountingSequences) {
    for (unsigned n = 0; n <= 10; ++n) {
        std::size_t count = 0;
        for_each_path(family::dyck, n, [&](const lattice_path&) { ++count; });
        EXPECT_EQ(big_int(count), catalan_by_factorials(n)) << "n=" << n;
        EXPECT_EQ(path_count(family::dyck, n), catalan_by_factorials(n));
    }
    for (unsigned n = 0; n <= 12; ++n) {
        std::size_t count = 0;
        for_each_path(family::motzkin, n, [&](const lattice_path&) { ++count; });
        EXPECT_EQ(big_int(count), motzkin_by_factorials(n)) << "n=" << n;
        EXPECT_EQ(path_count(family::motzkin, n), motzkin_by_factorials(n));
    }
}

TEST(Paths, EnumerationYieldsDistinctPaths) {
    std::set<std::string> seen;
    for_each_path(family::motzkin, 9, [&](const lattice_path& p) { EXPECT_TRUE(seen.insert(p.str()).second); });
    EXPECT_EQ(big_int(seen.size()), motzkin(9));
}

TEST(Paths, DoubledAreaExamples) {
    EXPECT_EQ(doubled_area(lattice_path::parse(family::dyck, "UD")), 2U);
    EXPECT_EQ(doubled_area(lattice_path::parse(family::dyck, "UUDD")), 8U);
    EXPECT_EQ(doubled_area(lattice_path::parse(family::dyck, "UDUD")), 4U);
    EXPECT_EQ(doubled_area(lattice_path::parse(family::motzkin, "F")), 0U);
    EXPECT_EQ(doubled_area(lattice_path::parse(family::motzkin, "UFD")), 4U);
}

TEST(Paths, DoubledAreaIsEvenAndReversalInvariant) {
    for (family f : {family::dyck, family::motzkin}) {
        const unsigned n = f == family::dyck ? 8 : 10;
        for_each_path(f, n, [&](const lattice_path& p) {
            const auto a = doubled_area(p);
            EXPECT_EQ(a % 2, 0U) << p.str();
            EXPECT_EQ(doubled_area(p.reversed()), a) << p.str();
        });
    }
}

TEST(Paths, InvalidPathsRejected) {
    EXPECT_THROW(lattice_path::parse(family::dyck, "DU"), invalid_path);
    EXPECT_THROW(lattice_path::parse(family::dyck, "UUD"), invalid_path);
    EXPECT_THROW(lattice_path::parse(family::dyck, "UFD"), invalid_path);
    EXPECT_THROW(lattice_path::parse(family::motzkin, "UX"), invalid_path);
    EXPECT_NO_THROW(lattice_path::parse(family::motzkin, "UFD"));
}

TEST(Paths, BruteForcePowerSums) {
    EXPECT_EQ(power_sum_bruteforce(family::dyck, 2, 1), 6);
    EXPECT_EQ(power_sum_bruteforce(family::motzkin, 2, 1), 1);
    EXPECT_EQ(power_sum_bruteforce(family::motzkin, 3, 1), 4);
    EXPECT_EQ(power_sum_bruteforce(family::dyck, 1, 2), 1);
    for (unsigned n = 0; n <= 9; ++n) EXPECT_EQ(power_sum_bruteforce(family::dyck, n, 0), catalan_by_factorials(n));
    for (unsigned n = 0; n <= 10; ++n)
        EXPECT_EQ(power_sum_bruteforce(family::motzkin, n, 0), motzkin_by_factorials(n));
}

TEST(Paths, BruteForceRespectsCap) {
    EXPECT_THROW(power_sum_bruteforce(family::dyck, 12, 1, 1000), cap_exceeded);
    EXPECT_NO_THROW(power_sum_bruteforce(family::dyck, 5, 1, 42));
}

TEST(Paths, FamilyNames) {
    EXPECT_EQ(parse_family("dyck"), family::dyck);
    EXPECT_EQ(parse_family("motzkin"), family::motzkin);
    EXPECT_THROW(parse_family(""), precondition_error);
    EXPECT_THROW(parse_family("Dyck"), precondition_error);
}

}  // namespace
}  // namespace pathmoments
