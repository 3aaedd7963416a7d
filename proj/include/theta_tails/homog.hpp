#pragma once

/**
 * @file homog.hpp
 * @brief The fundamental domain F = {|z| > 1, |z - 2| > 1, 0 <= Re z < 2} of
 *        Gamma_theta with its two cusps, reduction of points of G into
 *        F x [0, pi) x [-1/2, 1/2)^2, Haar sampling and the flow lifts.
 *
 * Haar measure is dx dy dphi / y^2; F has area pi and F x [0, pi) volume pi^2.
 */

#include <cmath>
#include <concepts>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numerics.hpp"
#include "orbits.hpp"
#include "thetagroup.hpp"

namespace theta_tails {

enum class Cusp { Infinity, One };

/// F^(1) is the part of F inside |z - 1| < 1; the rest is F^(infinity).
inline Cusp cusp_of(const GPoint& p) {
    const double dx = p.x - 1.0;
    return dx * dx + p.y * p.y < 1.0 ? Cusp::One : Cusp::Infinity;
}

/// Membership in F x [0, pi) x [-1/2, 1/2)^2 with slack tol on the arcs.
inline bool in_fundamental_domain(const GPoint& p, double tol = 1e-12) {
    if (!(p.x >= 0.0 && p.x < 2.0)) return false;
    if (p.x * p.x + p.y * p.y < 1.0 - tol) return false;
    const double dx = p.x - 2.0;
    if (dx * dx + p.y * p.y < 1.0 - tol) return false;
    if (!(p.phi >= 0.0 && p.phi < kPi)) return false;
    auto in_half = [](double v) { return v >= -0.5 && v < 0.5; };
    return in_half(p.xi1) && in_half(p.xi2);
}

struct Reduction {
    GPoint point;
    /// point = element.act(input) up to rounding and 2 pi shifts in phi.
    GroupElement element;
    /// (generator index 1..4, exponent), applied left to right.
    std::vector<std::pair<int, std::int64_t>> word;

    std::string word_string() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < word.size(); ++i)
            os << (i ? " " : "") << 'g' << word[i].first << '^' << word[i].second;
        return os.str();
    }
};

inline constexpr int kMaxReductionSteps = 100000;

/// Reduces p into F x [0, pi) x [-1/2, 1/2)^2 by elements of Gamma.
inline Reduction reduce(const GPoint& p) {
    if (!(p.y > 0.0) || !std::isfinite(p.y) || !std::isfinite(p.x))
        throw std::invalid_argument("reduce requires a finite point with y > 0");
    Reduction r{p, GroupElement(), {}};
    auto apply = [&](int gen, std::int64_t e) {
        if (e == 0) return;
        GroupElement g = gamma_generators()[static_cast<std::size_t>(gen - 1)].pow(e);
        r.point = g.act(r.point);
        r.element = g * r.element;
        r.word.emplace_back(gen, e);
    };
    int steps = 0;
    for (;; ++steps) {
        if (steps >= kMaxReductionSteps) throw NumericFailure("reduction exceeded the iteration cap");
        const double k = std::floor(r.point.x / 2.0);
        if (std::fabs(k) > 4.0e15) throw std::invalid_argument("x too large to reduce");
        apply(2, -static_cast<std::int64_t>(k));
        if (r.point.x >= 2.0) apply(2, -1);  // rounding at the right edge
        const double x = r.point.x, y = r.point.y;
        if (x * x + y * y < 1.0) {
            apply(1, 1);
        } else if ((x - 2.0) * (x - 2.0) + y * y < 1.0) {
            apply(2, -1);
            apply(1, 1);
        } else {
            break;
        }
    }
    // phi into [0, 2 pi), then gamma_1^2 = (-I; 0) shifts phi by pi.
    r.point.phi -= kTwoPi * std::floor(r.point.phi / kTwoPi);
    if (r.point.phi >= kPi) {
        apply(1, 2);
        r.point.phi -= kTwoPi * std::floor(r.point.phi / kTwoPi);
    }
    if (r.point.phi >= kPi || r.point.phi < 0.0) r.point.phi = 0.0;  // rounding at 2 pi
    apply(3, -static_cast<std::int64_t>(std::floor(r.point.xi1 + 0.5)));
    apply(4, -static_cast<std::int64_t>(std::floor(r.point.xi2 + 0.5)));
    return r;
}

/// Uniform double in (0, 1) from the top 53 bits of a 64-bit engine.
template <class Rng>
    requires std::uniform_random_bit_generator<Rng>
inline double uniform01(Rng& rng) {
    static_assert(Rng::max() - Rng::min() == ~std::uint64_t{0}, "uniform01 needs a 64-bit engine");
    return (static_cast<double>((rng() - Rng::min()) >> 11) + 0.5) * 0x1.0p-53;
}

/// Haar-distributed point of F x [0, pi) with xi = 0. The x-marginal is
/// proportional to 1/h(x), h the lower boundary of F, so x = sin t (or
/// 2 - sin t) with t uniform on (0, pi/2), h = cos t and y = h / U.
template <class Rng>
inline GPoint sample_haar(Rng& rng) {
    const double side = uniform01(rng);
    const double t = 0.5 * kPi * uniform01(rng);
    const double u = uniform01(rng);
    const double phi = kPi * uniform01(rng);
    GPoint p;
    const double s = std::sin(t);
    p.x = side < 0.5 ? s : 2.0 - s;
    p.y = std::cos(t) / u;
    p.phi = phi;
    return p;
}

/// Sample from mu^{(alpha, beta)}: Haar on F x [0, pi) times the uniform
/// measure on the orbit points, taken in [-1/2, 1/2)^2.
template <class Rng>
inline GPoint sample_mu_ab(const std::vector<LatticePoint>& orbit, std::int64_t q, Rng& rng) {
    if (orbit.empty()) throw std::invalid_argument("empty orbit");
    GPoint p = sample_haar(rng);
    const double u = uniform01(rng);
    auto idx = static_cast<std::size_t>(u * static_cast<double>(orbit.size()));
    if (idx >= orbit.size()) idx = orbit.size() - 1;
    auto [r, s] = orbit[idx];
    p.xi1 = static_cast<double>(detail::centered(r, q)) / static_cast<double>(q);
    p.xi2 = static_cast<double>(detail::centered(s, q)) / static_cast<double>(q);
    return p;
}

/// (I; (alpha + beta u, 0)) Psi^u Phi^t: z = u + i e^{-t}, phi = 0.
inline GPoint flow_point(double alpha, double beta, double u, double t) {
    GPoint p;
    p.x = u;
    p.y = std::exp(-t);
    p.phi = 0.0;
    p.xi1 = alpha + beta * u;
    p.xi2 = 0.0;
    return p;
}

}  // namespace theta_tails
