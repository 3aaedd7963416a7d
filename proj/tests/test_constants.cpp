#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <theta_tails/constants.hpp>

using namespace theta_tails;

namespace {

// Published table of 1/C(q), q = 1..100.
const char* const kTable =
    "1/2 1/2 2 2 3 2 4 4 6 3 6 8 7 4 12 8 9 6 10 12 "
    "16 6 12 16 15 7 18 16 15 12 16 16 24 9 24 24 19 10 28 24 "
    "21 16 22 24 36 12 24 32 28 15 36 28 27 18 36 32 40 15 30 48 "
    "31 16 48 32 42 24 34 36 48 24 36 48 37 19 60 40 48 28 40 48 "
    "54 21 42 64 54 22 60 48 45 36 56 48 64 24 60 64 49 28 72 60";

// Literal closed form, no rearrangement.
double d_rat_literal(double r) {
    return 2.0 * r * std::atanh(1.0 / r) + 0.5 * std::log(r * r - 1.0) + 0.5 * r * r * std::log(1.0 - 1.0 / (r * r));
}

}  // namespace

TEST(Constants, PublishedTableExact) {
    std::istringstream in(kTable);
    auto table = orbit_constant_table(100);
    std::string tok;
    for (std::int64_t q = 1; q <= 100; ++q) {
        ASSERT_TRUE(in >> tok);
        EXPECT_EQ(table[q - 1], parse_rational(tok)) << "q = " << q;
    }
}

TEST(Constants, CaseFormula) {
    for (std::int64_t q = 1; q <= 500; ++q) {
        auto [l, m] = dyadic_split(q);
        Rational expect = (l <= 1) ? Rational(2, dedekind_psi(m))
                                   : Rational(1, (std::int64_t{1} << (l - 1)) * dedekind_psi(m));
        EXPECT_EQ(orbit_constant(q), expect) << q;
    }
}

TEST(Constants, DRatValues) {
    EXPECT_DOUBLE_EQ(d_rat(1.0), 2.0 * std::log(2.0));
    EXPECT_NEAR(d_rat(2.0), 2.1711664, 1e-6);
    for (double r : {1.5, 2.0, 3.0, 7.5, 40.0}) EXPECT_NEAR(d_rat(r), d_rat_literal(r), 1e-12 * d_rat(r)) << r;
    EXPECT_NEAR(d_rat(1.0 + 1e-9), 2.0 * std::log(2.0), 1e-7);
    EXPECT_THROW(d_rat(0.5), std::invalid_argument);
}

TEST(Constants, DRatIncreasing) {
    double prev = d_rat(1.0);
    for (double r = 1.05; r < 20.0; r += 0.05) {
        double v = d_rat(r);
        EXPECT_GT(v, prev) << r;
        prev = v;
    }
}

TEST(Constants, TailConstant) {
    EXPECT_NEAR(tail_constant(1, 1.0), 4.0 * std::log(2.0) / (M_PI * M_PI), 1e-15);
    EXPECT_NEAR(tail_constant(1, 1.0), 0.280922, 1e-6);
    EXPECT_EQ(tail_constant(RationalPair{1, 1, 6}, 1.0), 0.0);
    EXPECT_NEAR(tail_constant(RationalPair{1, 0, 2}, 1.0), tail_constant(1, 1.0), 1e-15);
}

TEST(Constants, CsvShape) {
    std::string csv = constants_csv(3);
    EXPECT_EQ(csv, "q,one_over_C,C\n1,1/2,2\n2,1/2,2\n3,2,0.5\n");
}
