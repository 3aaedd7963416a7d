#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <theta_tails/theta.hpp>
#include <theta_tails/weylsum.hpp>

using namespace theta_tails;

namespace {

// theta_3 via the modular transformation: (-i tau)^{-1/2} sum_k exp(-pi i (w + k)^2 / tau).
cplx theta3_dual(double w, cplx tau) {
    cplx acc = 0.0;
    for (int k = -60; k <= 60; ++k) {
        double s = w + k;
        acc += std::exp(cplx(0.0, -kPi) * s * s / tau);
    }
    return acc / std::sqrt(cplx(0.0, -1.0) * tau);
}

GPoint random_point(std::mt19937_64& rng, double ylo, double yhi) {
    std::uniform_real_distribution<double> ux(-3.0, 3.0), uy(ylo, yhi), uphi(0.0, 2 * kPi), uxi(-1.0, 1.0);
    return {ux(rng), uy(rng), uphi(rng), uxi(rng), uxi(rng)};
}

}  // namespace

TEST(Theta, KeyIdentityGaussian) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u01(0.0, 1.0), ux(-2.0, 2.0);
    std::uniform_int_distribution<int> uN(1, 200);
    auto g = gaussian_weight();
    for (int i = 0; i < 100; ++i) {
        double x = ux(rng), alpha = u01(rng), beta = u01(rng), zeta = u01(rng);
        int N = uN(rng);
        cplx s = weighted_weyl_sum(x, N, WeylSumSpec::from_reals(alpha, beta, zeta), g);
        GPoint p{x, 1.0 / (double(N) * N), 0.0, alpha + beta * x, 0.0};
        cplx th = theta_f(g, p, zeta * x);
        double rn = std::sqrt(double(N));
        EXPECT_LT(std::abs(th - s / rn) / (std::abs(s) / rn + 1.0), 1e-10) << i;
    }
}

TEST(Theta, KeyIdentitySharpIndicator) {
    auto chi = sharp_indicator_weight(1.0);
    for (int N : {1, 17, 150}) {
        double x = 0.3141, alpha = 0.2, beta = 0.7;
        cplx s = weyl_sum(x, N, WeylSumSpec::from_reals(alpha, beta));
        GPoint p{x, 1.0 / (double(N) * N), 0.0, alpha + beta * x, 0.0};
        EXPECT_LT(std::abs(theta_f(chi, p) - s / std::sqrt(double(N))), 1e-12) << N;
    }
}

TEST(Theta, ClassicalBridge) {
    auto g = gaussian_weight();
    for (int N : {3, 40, 120}) {
        double x = 0.77, alpha = 0.1, beta = 0.35, zeta = 0.4;
        GPoint p{x, 1.0 / (double(N) * N), 0.0, alpha + beta * x, 0.0};
        cplx lhs = theta_f(g, p, zeta * x);
        cplx rhs = e_of(zeta * x) / std::sqrt(double(N)) * theta3(alpha + beta * x, cplx(x, 1.0 / (double(N) * N)));
        EXPECT_LT(std::abs(lhs - rhs), 1e-11) << N;
    }
}

TEST(Theta, Theta3ModularTransformation) {
    for (cplx tau : {cplx(0.3, 0.8), cplx(-1.2, 0.5), cplx(0.0, 1.7), cplx(2.5, 1.1)})
        for (double w : {0.0, 0.2, -0.45}) {
            EXPECT_LT(std::abs(theta3(w, tau) - theta3_dual(w, tau)), 1e-12) << tau << " " << w;
        }
    EXPECT_THROW(theta3(0.0, cplx(0.0, 0.0)), std::invalid_argument);
}

TEST(Theta, ZetaEntersAsPhase) {
    auto g = gaussian_weight();
    GPoint p{0.4, 0.9, 0.3, 0.2, -0.1};
    EXPECT_LT(std::abs(theta_f(g, p, 0.37) - e_of(0.37) * theta_f(g, p)), 1e-14);
}

TEST(Theta, PairInvariantUnderGammaAndRho) {
    std::mt19937_64 rng(22);
    auto g = gaussian_weight();
    std::vector<GroupElement> elems{gamma1(), gamma2(), gamma3(), gamma4(), rho(), rho1(), rho2(),
                                    gamma1() * gamma2().pow(-1) * gamma3()};
    for (int i = 0; i < 60; ++i) {
        GPoint p = random_point(rng, 0.4, 2.5);
        cplx v = theta_pair(g, g, p);
        for (const auto& el : elems) {
            cplx w = theta_pair(g, g, el.act(p));
            EXPECT_LT(std::abs(w - v), 1e-10 * (1.0 + std::abs(v))) << i;
        }
    }
}

TEST(Theta, ThetaFTransformsUpToUnimodularFactorUnderGamma) {
    std::mt19937_64 rng(23);
    auto g = gaussian_weight();
    for (int i = 0; i < 30; ++i) {
        GPoint p = random_point(rng, 0.4, 2.5);
        double a = std::abs(theta_f(g, p));
        for (const auto& el : gamma_generators())
            EXPECT_NEAR(std::abs(theta_f(g, el.act(p))), a, 1e-10 * (1.0 + a));
    }
}

TEST(Theta, ReducedEvaluationAgrees) {
    std::mt19937_64 rng(24);
    auto g = gaussian_weight();
    for (int i = 0; i < 200; ++i) {
        GPoint p = random_point(rng, 0.002, 3.0);
        cplx a = theta_pair(g, g, p), b = theta_pair_reduced(g, g, p);
        EXPECT_LT(std::abs(a - b), 1e-9 * (1.0 + std::abs(a))) << p.x << " " << p.y;
        GPoint r = reduce_for_pair(p);
        EXPECT_LE(std::fabs(r.x), 0.5 + 1e-12);
        EXPECT_GE(r.x * r.x + r.y * r.y, 1.0 - 1e-12);
    }
}

TEST(Theta, CuspBoundHolds) {
    std::mt19937_64 rng(25);
    auto g = gaussian_weight();
    std::exponential_distribution<double> ey(0.3);
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
        GPoint p = random_point(rng, 0.5, 0.5);
        p.y = 0.5 + ey(rng);
        cplx diff = theta_pair(g, g, p) - cusp_main_term(g, g, p.y, p.phi, cusp_offset(p.xi2));
        violations += std::abs(diff) > cusp_error_bound(g, g, p.y, 2.0);
    }
    EXPECT_EQ(violations, 0);
    EXPECT_NEAR(cusp_error_bound(g, g, 1.0, 2.0), 4096.0 * std::pow(kPi * kPi / 6.0, 2), 1e-8);
}

TEST(Theta, CuspMainTermDominatesHighInCusp) {
    auto g = gaussian_weight();
    GPoint p{0.3, 40.0, 1.1, 0.25, 0.02};
    cplx diff = theta_pair(g, g, p) - cusp_main_term(g, g, p.y, p.phi, cusp_offset(p.xi2));
    EXPECT_LT(std::abs(diff), 1e-10);
}

TEST(Theta, CuspOffset) {
    EXPECT_DOUBLE_EQ(cusp_offset(0.5), -0.5);
    EXPECT_DOUBLE_EQ(cusp_offset(-0.5), -0.5);
    EXPECT_DOUBLE_EQ(cusp_offset(2.25), 0.25);
    EXPECT_DOUBLE_EQ(cusp_offset(0.0), 0.0);
}

TEST(Theta, Errors) {
    auto g = gaussian_weight();
    auto chi = sharp_indicator_weight(1.0);
    EXPECT_THROW(theta_f(g, GPoint{0.0, 0.0, 0.0, 0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(theta_f(chi, GPoint{0.0, 1.0, 0.5, 0.0, 0.0}), UnsupportedOperation);
    EXPECT_THROW(theta_f(g, GPoint{0.0, 1e-20, 0.0, 0.0, 0.0}), ResourceLimitError);
    EXPECT_THROW(cusp_error_bound(g, g, 0.4, 2.0), std::invalid_argument);
    EXPECT_THROW(cusp_error_bound(g, g, 1.0, 1.0), std::invalid_argument);
}
