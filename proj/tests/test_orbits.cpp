#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include <theta_tails/orbits.hpp>
#include <theta_tails/thetagroup.hpp>

using namespace theta_tails;

namespace {

struct Worked {
    RationalPair pair;
    OrbitSizes sizes;
    Rational constant;
};

const Worked kWorked[] = {
    {{1, 0, 5}, {24, 4, 0}, Rational(1, 3)},  {{1, 0, 6}, {16, 2, 4}, Rational(1, 2)},
    {{1, 0, 8}, {32, 4, 0}, Rational(1, 4)},  {{1, 1, 6}, {8, 0, 0}, Rational(0)},
    {{1, 1, 8}, {16, 0, 4}, Rational(1, 4)},
};

// Orbit closure computed with exact rational torus actions of all four generators.
std::set<std::pair<Rational, Rational>> rational_orbit(const RationalPair& p) {
    std::set<std::pair<Rational, Rational>> seen;
    std::vector<TorusPoint> stack{{p.alpha(), p.beta()}};
    seen.insert({p.alpha(), p.beta()});
    while (!stack.empty()) {
        TorusPoint t = stack.back();
        stack.pop_back();
        for (const auto& g : gamma_generators()) {
            TorusPoint u = g.act(t);
            if (seen.insert({u.xi1, u.xi2}).second) stack.push_back(u);
        }
    }
    return seen;
}

}  // namespace

TEST(Orbits, WorkedExamplesClosedForm) {
    for (const auto& w : kWorked) {
        EXPECT_EQ(orbit_sizes_formula(w.pair), w.sizes) << w.pair.q;
        EXPECT_EQ(leading_constant(w.pair), w.constant) << w.pair.q;
    }
}

TEST(Orbits, WorkedExamplesBfs) {
    for (const auto& w : kWorked) {
        EXPECT_EQ(orbit_sizes_bfs(w.pair), w.sizes) << w.pair.q;
    }
}

TEST(Orbits, BfsMatchesExactRationalClosure) {
    for (std::int64_t q = 1; q <= 12; ++q)
        for (std::int64_t a = 0; a < q; ++a)
            for (std::int64_t b = 0; b < q; ++b) {
                RationalPair p = make_pair(a, b, q);
                if (p.q != q) continue;
                auto pts = orbit_enumerate(p);
                auto ref = rational_orbit(p);
                ASSERT_EQ(pts.size(), ref.size());
                for (auto [r, s] : pts) ASSERT_TRUE(ref.count({Rational(r, q), Rational(s, q)}));
            }
}

TEST(Orbits, ListedOrbitOfOneSixthOneSixth) {
    auto pts = orbit_enumerate({1, 1, 6});
    std::vector<LatticePoint> expect{{1, 1}, {1, 3}, {1, 5}, {3, 1}, {3, 5}, {5, 1}, {5, 3}, {5, 5}};
    EXPECT_EQ(pts, expect);
}

TEST(Orbits, OneFifthOrbitIsEverythingButOrigin) {
    auto pts = orbit_enumerate({1, 0, 5});
    EXPECT_EQ(pts.size(), 24u);
    EXPECT_FALSE(std::binary_search(pts.begin(), pts.end(), LatticePoint{0, 0}));
}

TEST(Orbits, IntegerPair) {
    RationalPair p{0, 0, 1};
    EXPECT_EQ(orbit_sizes_formula(p), (OrbitSizes{1, 1, 0}));
    EXPECT_EQ(orbit_sizes_bfs(p), (OrbitSizes{1, 1, 0}));
    EXPECT_EQ(leading_constant(p), Rational(2));
    EXPECT_EQ(representative(p).kind, OrbitRep::Kind::Origin);
}

TEST(Orbits, ClosedFormsMatchBfsForAllPairsUpTo40) {
    for (std::int64_t q = 1; q <= 40; ++q) {
        auto labels = orbit_partition_bfs(q);
        std::map<std::int32_t, std::vector<LatticePoint>> orbits;
        for (std::int64_t k = 0; k < q * q; ++k) orbits[labels[k]].emplace_back(k / q, k % q);
        for (std::int64_t a = 0; a < q; ++a)
            for (std::int64_t b = 0; b < q; ++b) {
                if (std::gcd(std::gcd(a, b), q) != 1) continue;
                RationalPair p{a, b, q};
                const auto& pts = orbits[labels[a * q + b]];
                OrbitSizes bfs{static_cast<std::int64_t>(pts.size()), count_U(pts), count_V(pts, q)};
                ASSERT_EQ(bfs, orbit_sizes_formula(p)) << a << "/" << q << ", " << b << "/" << q;
            }
    }
}

TEST(Orbits, RepresentativeOfThreeTwentiethsFiveTwentieths) {
    RationalPair p = normalize_pair(Rational(3, 20), Rational(5, 20));
    OrbitRep rep = representative(p);
    EXPECT_EQ(rep.kind, OrbitRep::Kind::Rep11);
    EXPECT_EQ(rep.q, 20);
    auto pts = orbit_enumerate(p);
    EXPECT_TRUE(std::binary_search(pts.begin(), pts.end(), LatticePoint{1, 1}));
}

TEST(Orbits, RepresentativeLiesInOrbit) {
    for (std::int64_t q = 1; q <= 30; ++q)
        for (std::int64_t a = 0; a < q; ++a)
            for (std::int64_t b = 0; b < q; ++b) {
                if (std::gcd(std::gcd(a, b), q) != 1) continue;
                RationalPair p{a, b, q};
                auto [r, s] = representative(p).numerators();
                auto pts = orbit_enumerate(p);
                ASSERT_TRUE(std::binary_search(pts.begin(), pts.end(), LatticePoint{r % q, s % q}));
            }
}

TEST(Orbits, PartitionOfTwenty) {
    std::vector<std::int64_t> sizes;
    for (auto& [rep, n] : orbit_representatives(20)) sizes.push_back(n);
    std::sort(sizes.rbegin(), sizes.rend());
    EXPECT_EQ(sizes, (std::vector<std::int64_t>{192, 96, 48, 24, 24, 8, 4, 2, 1, 1}));
}

TEST(Orbits, RepresentativeSizesSumToQSquared) {
    for (std::int64_t q = 1; q <= 200; ++q) {
        std::int64_t total = 0;
        for (auto& [rep, n] : orbit_representatives(q)) total += n;
        ASSERT_EQ(total, q * q) << q;
    }
}

TEST(Orbits, PartitionCountMatchesBfs) {
    for (std::int64_t q = 1; q <= 40; ++q) {
        auto labels = orbit_partition_bfs(q);
        auto n = static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end()) + 1);
        EXPECT_EQ(n, orbit_representatives(q).size()) << q;
    }
}

TEST(Orbits, SignSymmetry) {
    for (std::int64_t q = 1; q <= 24; ++q) {
        auto labels = orbit_partition_bfs(q);
        for (std::int64_t a = 0; a < q; ++a)
            for (std::int64_t b = 0; b < q; ++b) {
                auto id = labels[a * q + b];
                for (int sa : {-1, 1})
                    for (int sb : {-1, 1}) {
                        std::int64_t r = detail::mod(sa * a, q), s = detail::mod(sb * b, q);
                        ASSERT_EQ(labels[r * q + s], id);
                    }
            }
    }
}

TEST(Orbits, GeneratorsPreserveParityForEvenQ) {
    for (std::int64_t q = 2; q <= 30; q += 2)
        for (std::int64_t r = 0; r < q; ++r)
            for (std::int64_t s = 0; s < q; ++s) {
                bool both_odd = (r & 1) && (s & 1);
                std::int64_t r1 = detail::mod(-s, q), s1 = r;
                std::int64_t r2 = detail::mod(r + 2 * s, q), s2 = s;
                ASSERT_EQ(both_odd, (r1 & 1) && (s1 & 1));
                ASSERT_EQ(both_odd, (r2 & 1) && (s2 & 1));
            }
}

TEST(Orbits, CuspDistanceMinima) {
    EXPECT_EQ(theta_min_infty({1, 0, 5}), Rational(1, 5));
    EXPECT_FALSE(theta_min_infty({0, 0, 1}).has_value());
    // The origin lies on neither V line, so its distance to them is 1/2.
    EXPECT_EQ(theta_min_one({0, 0, 1}), Rational(1, 2));
    for (std::int64_t q = 1; q <= 40; ++q)
        for (std::int64_t a = 0; a < q; ++a)
            for (std::int64_t b = 0; b < q; ++b) {
                if (std::gcd(std::gcd(a, b), q) != 1) continue;
                RationalPair p{a, b, q};
                if (auto t = theta_min_infty(p)) {
                    ASSERT_GE(*t, Rational(1, q));
                }
                if (auto t = theta_min_one(p)) {
                    ASSERT_GE(*t, Rational(1, 2 * q));
                }
            }
}

TEST(Orbits, VCountIsWindowInvariant) {
    // U never depends on the window; V is compared in [-1/2,1/2)^2 and [0,1)^2.
    int differing = 0;
    for (std::int64_t q = 1; q <= 24; ++q)
        for (std::int64_t a = 0; a < q; ++a)
            for (std::int64_t b = 0; b < q; ++b) {
                if (std::gcd(std::gcd(a, b), q) != 1) continue;
                auto pts = orbit_enumerate({a, b, q});
                differing += count_V(pts, q, TorusWindow::Centered) != count_V(pts, q, TorusWindow::Unit);
            }
    EXPECT_EQ(differing, 0);
}

TEST(Orbits, EnumerationCap) {
    EXPECT_THROW(orbit_enumerate({1, 0, 2001}), ResourceLimitError);
    EXPECT_NO_THROW(orbit_enumerate({1, 0, 7}, 7));
    EXPECT_THROW(orbit_enumerate({1, 0, 8}, 7), ResourceLimitError);
}
