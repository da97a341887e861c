#include "pathmoments/brownian.hpp"

#include <gtest/gtest.h>

namespace pathmoments {
namespace {

real pi_value() {
    real pi;
    mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
    return pi;
}

TEST(Takacs, FirstValues) {
    auto K = takacs_K(4);
    EXPECT_EQ(K[0], rational(-1, 2));
    EXPECT_EQ(K[1], rational(1, 8));
    EXPECT_EQ(K[2], rational(5, 64));
    EXPECT_EQ(K[3], rational(15, 128));
    EXPECT_EQ(K[4], rational(1105, 4096));
}

TEST(Takacs, ConvolutionSummedInReverse) {
    auto K = takacs_K(30);
    for (unsigned k = 1; k <= 30; ++k) {
        rational v = rational(3 * static_cast<long>(k) - 4, 4) * K[k - 1];
        for (unsigned j = k - 1; j >= 1; --j) v += K[k - j] * K[j];
        EXPECT_EQ(K[k], v) << k;
    }
    EXPECT_EQ(takacs_K(10)[10], K[10]);
}

TEST(Gamma, Examples) {
    EXPECT_EQ(gamma_exact(rational(1)), surd(rational(1)));
    EXPECT_EQ(gamma_exact(rational(5)), surd(rational(24)));
    EXPECT_EQ(gamma_exact(rational(1, 2)), surd(rational(1), 0, 1));
    EXPECT_EQ(gamma_exact(rational(5, 2)), surd(rational(3, 4), 0, 1));
}

TEST(Gamma, FunctionalEquation) {
    for (long num = 1; num <= 41; ++num) {
        const rational x(num, 2);
        EXPECT_EQ(gamma_exact(x + 1), surd(x) * gamma_exact(x)) << num;
    }
}

TEST(Gamma, DomainErrors) {
    EXPECT_THROW(gamma_exact(rational(0)), domain_error);
    EXPECT_THROW(gamma_exact(rational(-3, 2)), domain_error);
    EXPECT_THROW(gamma_exact(rational(1, 3)), domain_error);
}

TEST(Surd, Arithmetic) {
    surd two_sqrt2(rational(1), 3);
    EXPECT_EQ(two_sqrt2.q(), 2);
    EXPECT_EQ(two_sqrt2.p(), 1);
    EXPECT_EQ(surd(rational(1), 1) * surd(rational(1), 1), surd(rational(2)));
    EXPECT_EQ(surd(rational(1), -1), surd(rational(1, 2), 1));
    EXPECT_EQ(surd(rational(1), 0, 1) + surd(rational(2), 0, 1), surd(rational(3), 0, 1));
    EXPECT_THROW(surd(rational(1)) + surd(rational(1), 0, 1), domain_error);
    EXPECT_THROW(surd(rational(1), 1) + surd(rational(1)), domain_error);
    EXPECT_THROW(surd(rational(1)) / surd(rational(0)), domain_error);
    EXPECT_EQ(surd(rational(0), 1, 3), surd(rational(0)));
}

TEST(Excursion, LowMoments) {
    auto K = takacs_K(6);
    precision_scope scope(50);
    const real pi = pi_value();
    EXPECT_LT(abs(excursion_raw_moment(1, K).value() - sqrt(pi / 8)), real(1e-40));
    EXPECT_EQ(to_decimal_string(excursion_raw_moment(1, K).value(), 10), "6.266570687e-1");
    EXPECT_EQ(excursion_raw_moment(2, K), surd(rational(5, 12)));
    EXPECT_EQ(excursion_raw_moment(3, K), surd(rational(15, 128), 1, 1));
    EXPECT_EQ(excursion_raw_moment(4, K), surd(rational(221, 1008)));
    EXPECT_EQ(excursion_raw_moment(0, K), surd(rational(1)));
    EXPECT_THROW(excursion_raw_moment(7, K), range_unavailable);
}

TEST(Excursion, EvenMomentsAreRational) {
    auto K = takacs_K(20);
    for (unsigned k = 2; k <= 20; k += 2) {
        auto m = excursion_raw_moment(k, K);
        EXPECT_EQ(m.p(), 0) << k;
        EXPECT_EQ(m.s(), 0) << k;
        EXPECT_GT(m.q(), 0) << k;
    }
    for (unsigned k = 1; k <= 19; k += 2) {
        auto m = excursion_raw_moment(k, K);
        EXPECT_EQ(m.p(), 1) << k;
        EXPECT_EQ(m.s(), 1) << k;
    }
}

TEST(Excursion, MomentInequalities) {
    auto K = takacs_K(12);
    precision_scope scope(50);
    for (unsigned k = 1; k < 12; ++k) {
        // Lyapunov: (E B^k)^(1/k) is nondecreasing in k
        real a = pow(excursion_raw_moment(k, K).value(), real(1) / k);
        real b = pow(excursion_raw_moment(k + 1, K).value(), real(1) / (k + 1));
        EXPECT_LT(a, b) << k;
    }
}

TEST(Excursion, CentralMoments) {
    auto K = takacs_K(4);
    precision_scope scope(60);
    auto mu2 = excursion_central_moment(2, K);
    // 5/12 - pi/8
    ASSERT_EQ(mu2.terms().size(), 2U);
    EXPECT_LT(abs(mu2.value() - (real(5) / 12 - pi_value() / 8)), real(1e-50));
    EXPECT_TRUE(excursion_central_moment(1, K).terms().empty());
}

TEST(Excursion, StandardizedSkewness) {
    precision_scope scope(60);
    const real s3 = excursion_standardized_moment(3, 30);
    const real pi = pi_value();
    // direct evaluation from the three raw moments
    const real m1 = sqrt(pi / 8), m2 = real(5) / 12, m3 = real(15) / 128 * sqrt(2 * pi);
    const real var = m2 - m1 * m1;
    const real direct = (m3 - 3 * m1 * m2 + 2 * m1 * m1 * m1) / (var * sqrt(var));
    EXPECT_LT(abs(s3 - direct), real(1e-28));
    EXPECT_THROW(excursion_standardized_moment(1, 30), precondition_error);
}

TEST(Excursion, PrecisionIndependence) {
    real low = excursion_standardized_moment(4, 60);
    real high = excursion_standardized_moment(4, 200);
    precision_scope scope(220);
    EXPECT_LT(abs(low - high), pow(real(10), -50));
    EXPECT_EQ(to_decimal_string(low, 50), to_decimal_string(high, 50));
}

TEST(Excursion, OracleJson) {
    auto j = excursion_oracle_json(4, 20);
    ASSERT_EQ(j.size(), 4U);
    EXPECT_EQ(j[0]["k"], 1);
    EXPECT_EQ(j[0]["raw"]["q"], "1/4");
    EXPECT_EQ(j[0]["raw"]["p"], 1);
    EXPECT_EQ(j[0]["raw"]["s"], 1);
    EXPECT_EQ(j[1]["raw"]["q"], "5/12");
    EXPECT_TRUE(j[1]["standardized"].is_string());
    EXPECT_EQ(j[3]["raw"]["q"], "221/1008");
}

}  // namespace
}  // namespace pathmoments
