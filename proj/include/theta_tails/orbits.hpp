#pragma once

/**
 * @file orbits.hpp
 * @brief Gamma-orbits of rational points on the torus: breadth-first
 *        enumeration, closed-form sizes S, U, V, orbit representatives,
 *        leading constants (2U + V)/S and the cusp-distance minima.
 *
 * A point (r/q, s/q) is stored as integer numerators (r, s) in [0, q)^2.
 * Only gamma_1 and gamma_2 move such points; the integer shifts act
 * trivially mod Z^2.
 */

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"

namespace theta_tails {

inline constexpr std::int64_t kDefaultEnumerationCap = 2000;

struct OrbitRep {
    enum class Kind { Origin, Rep10, Rep11 };
    Kind kind = Kind::Origin;
    std::int64_t q = 1;

    std::string str() const {
        switch (kind) {
            case Kind::Origin: return "(0,0)";
            case Kind::Rep10: return "(1/" + std::to_string(q) + ",0)";
            case Kind::Rep11: return "(1/" + std::to_string(q) + ",1/" + std::to_string(q) + ")";
        }
        return "?";
    }
    /// Numerators over q of the representative point.
    std::pair<std::int64_t, std::int64_t> numerators() const {
        switch (kind) {
            case Kind::Origin: return {0, 0};
            case Kind::Rep10: return {1, 0};
            case Kind::Rep11: return {1, 1};
        }
        return {0, 0};
    }
    friend bool operator==(const OrbitRep&, const OrbitRep&) = default;
};

struct OrbitSizes {
    std::int64_t S = 0;
    std::int64_t U = 0;
    std::int64_t V = 0;
    friend bool operator==(const OrbitSizes&, const OrbitSizes&) = default;
};

using LatticePoint = std::pair<std::int64_t, std::int64_t>;

/// Window used to decide membership of the lines xi_2 = xi_1 +- 1/2.
enum class TorusWindow { Centered, Unit };

namespace detail {

// Coordinate in the centered window [-q/2, q/2).
inline std::int64_t centered(std::int64_t r, std::int64_t q) { return 2 * r < q ? r : r - q; }

inline void check_cap(std::int64_t q, std::int64_t cap) {
    if (q < 1) throw std::invalid_argument("denominator must be positive");
    if (q > cap)
        throw ResourceLimitError("orbit enumeration for q = " + std::to_string(q) + " exceeds cap " +
                                 std::to_string(cap));
}

}  // namespace detail

/// Every Gamma-orbit of X_q has a representative with denominator q.
inline OrbitRep representative(const RationalPair& p) {
    if (p.q == 1) return {OrbitRep::Kind::Origin, 1};
    if (p.q % 2 == 0 && (p.a & 1) && (p.b & 1)) return {OrbitRep::Kind::Rep11, p.q};
    return {OrbitRep::Kind::Rep10, p.q};
}

inline OrbitSizes orbit_sizes_formula(const OrbitRep& rep) {
    const std::int64_t q = rep.q;
    switch (rep.kind) {
        case OrbitRep::Kind::Origin: return {1, 1, 0};
        case OrbitRep::Kind::Rep10: {
            auto [l, m] = dyadic_split(q);
            std::int64_t S = l == 0 ? jordan_j2(q) : (std::int64_t{1} << (2 * l - 1)) * jordan_j2(m);
            std::int64_t U = euler_phi(q);
            std::int64_t V = q % 4 == 2 ? 2 * euler_phi(q) : 0;
            return {S, U, V};
        }
        case OrbitRep::Kind::Rep11: {
            auto [l, m] = dyadic_split(q);
            std::int64_t S = (std::int64_t{1} << (2 * (l - 1))) * jordan_j2(m);
            std::int64_t V = q % 4 == 0 ? euler_phi(q) : 0;
            return {S, 0, V};
        }
    }
    return {};
}

inline OrbitSizes orbit_sizes_formula(const RationalPair& p) { return orbit_sizes_formula(representative(p)); }

inline Rational leading_constant(const OrbitSizes& s) { return Rational(2 * s.U + s.V, s.S); }

/// (2U + V)/S for the orbit of the pair, from the closed forms.
inline Rational leading_constant(const RationalPair& p) { return leading_constant(orbit_sizes_formula(p)); }

/// Orbit of (a/q, b/q) by breadth-first search, sorted lexicographically.
inline std::vector<LatticePoint> orbit_enumerate(const RationalPair& p,
                                                 std::int64_t cap = kDefaultEnumerationCap) {
    const std::int64_t q = p.q;
    detail::check_cap(q, cap);
    std::vector<bool> seen(static_cast<std::size_t>(q * q), false);
    std::vector<LatticePoint> pts;
    auto visit = [&](std::int64_t r, std::int64_t s) {
        std::size_t k = static_cast<std::size_t>(r * q + s);
        if (seen[k]) return;
        seen[k] = true;
        pts.emplace_back(r, s);
    };
    visit(detail::mod(p.a, q), detail::mod(p.b, q));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto [r, s] = pts[i];
        visit(detail::mod(-s, q), r);             // gamma_1
        visit(s, detail::mod(-r, q));             // gamma_1^-1
        visit(detail::mod(r + 2 * s, q), s);      // gamma_2
        visit(detail::mod(r - 2 * s, q), s);      // gamma_2^-1
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

/// Points with xi_2 = 0.
inline std::int64_t count_U(const std::vector<LatticePoint>& pts) {
    return std::count_if(pts.begin(), pts.end(), [](const LatticePoint& v) { return v.second == 0; });
}

/// Points on xi_2 = xi_1 +- 1/2 with coordinates taken in the given window.
inline std::int64_t count_V(const std::vector<LatticePoint>& pts, std::int64_t q,
                            TorusWindow window = TorusWindow::Centered) {
    std::int64_t n = 0;
    for (auto [r, s] : pts) {
        std::int64_t rr = window == TorusWindow::Centered ? detail::centered(r, q) : r;
        std::int64_t ss = window == TorusWindow::Centered ? detail::centered(s, q) : s;
        std::int64_t d = 2 * (ss - rr);
        if (d == q || d == -q) ++n;
    }
    return n;
}

inline OrbitSizes orbit_sizes_bfs(const RationalPair& p, std::int64_t cap = kDefaultEnumerationCap) {
    auto pts = orbit_enumerate(p, cap);
    return {static_cast<std::int64_t>(pts.size()), count_U(pts), count_V(pts, p.q)};
}

struct OrbitData {
    RationalPair pair;
    OrbitSizes sizes;
    OrbitRep rep;
    Rational leading;
    std::optional<std::vector<LatticePoint>> points;
};

/// Closed-form orbit data; points are enumerated only on request.
inline OrbitData orbit_data(const RationalPair& p, bool with_points = false,
                            std::int64_t cap = kDefaultEnumerationCap) {
    OrbitData d{p, orbit_sizes_formula(p), representative(p), leading_constant(p), std::nullopt};
    if (with_points) d.points = orbit_enumerate(p, cap);
    return d;
}

/// Orbit representatives of X_q = ((1/q) Z / Z)^2 with their sizes.
inline std::vector<std::pair<OrbitRep, std::int64_t>> orbit_representatives(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("denominator must be positive");
    std::vector<std::pair<OrbitRep, std::int64_t>> out;
    out.emplace_back(OrbitRep{OrbitRep::Kind::Origin, 1}, 1);
    for (std::int64_t d : divisors(q)) {
        if (d == 1) continue;
        OrbitRep r10{OrbitRep::Kind::Rep10, d};
        out.emplace_back(r10, orbit_sizes_formula(r10).S);
        if (d % 2 == 0) {
            OrbitRep r11{OrbitRep::Kind::Rep11, d};
            out.emplace_back(r11, orbit_sizes_formula(r11).S);
        }
    }
    return out;
}

/// Labels every point of X_q (index r*q + s) with its BFS orbit id.
inline std::vector<std::int32_t> orbit_partition_bfs(std::int64_t q, std::int64_t cap = kDefaultEnumerationCap) {
    detail::check_cap(q, cap);
    std::vector<std::int32_t> label(static_cast<std::size_t>(q * q), -1);
    std::vector<std::int64_t> queue;
    std::int32_t next = 0;
    for (std::int64_t start = 0; start < q * q; ++start) {
        if (label[start] >= 0) continue;
        queue.assign(1, start);
        label[start] = next;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            std::int64_t r = queue[i] / q, s = queue[i] % q;
            const std::int64_t nb[4] = {detail::mod(-s, q) * q + r, s * q + detail::mod(-r, q),
                                        detail::mod(r + 2 * s, q) * q + s, detail::mod(r - 2 * s, q) * q + s};
            for (std::int64_t k : nb) {
                if (label[k] < 0) {
                    label[k] = next;
                    queue.push_back(k);
                }
            }
        }
        ++next;
    }
    return label;
}

/// min |xi_2| over orbit points off xi_2 = 0; empty when the orbit lies on it.
inline std::optional<Rational> theta_min_infty(const RationalPair& p, std::int64_t cap = kDefaultEnumerationCap) {
    std::optional<std::int64_t> best;
    for (auto [r, s] : orbit_enumerate(p, cap)) {
        if (s == 0) continue;
        std::int64_t v = std::abs(detail::centered(s, p.q));
        if (!best || v < *best) best = v;
    }
    if (!best) return std::nullopt;
    return Rational(*best, p.q);
}

/// min over orbit points of the distance |xi_2 - xi_1 -+ 1/2| to each line of
/// V that the point is not on; coordinates in the centered window.
inline std::optional<Rational> theta_min_one(const RationalPair& p, std::int64_t cap = kDefaultEnumerationCap) {
    const std::int64_t q = p.q;
    std::optional<std::int64_t> best;  // in units of 1/(2q)
    for (auto [r, s] : orbit_enumerate(p, cap)) {
        std::int64_t d = 2 * (detail::centered(s, q) - detail::centered(r, q));
        for (std::int64_t shifted : {d + q, d - q}) {
            if (shifted == 0) continue;
            std::int64_t v = std::abs(shifted);
            if (!best || v < *best) best = v;
        }
    }
    if (!best) return std::nullopt;
    return Rational(*best, 2 * q);
}

}  // namespace theta_tails
