#pragma once

/**
 * @file constants.hpp
 * @brief The orbit constant C(q), the dilation constant D_rat(r) for sharp
 *        cut-offs and the tail constant T(q; r) = C(q) D_rat(r) / pi^2.
 */

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "numerics.hpp"
#include "orbits.hpp"

namespace theta_tails {

/// C(q) = (2U + V)/S for a type H pair with denominator q.
inline Rational orbit_constant(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("denominator must be positive");
    return leading_constant(orbit_sizes_formula(OrbitRep{q == 1 ? OrbitRep::Kind::Origin : OrbitRep::Kind::Rep10, q}));
}

/// 1/C(q) for q = 1..q_max.
inline std::vector<Rational> orbit_constant_table(std::int64_t q_max) {
    if (q_max < 1) throw std::invalid_argument("q_max must be positive");
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(q_max));
    for (std::int64_t q = 1; q <= q_max; ++q) out.push_back(Rational(1) / orbit_constant(q));
    return out;
}

/// D_rat(r) = int_0^pi |chi_phi(0) chi_{r,phi}(0)|^2 dphi for r >= 1, in the
/// rearranged form whose log(r - 1) coefficient (r - 1)^2/2 vanishes at r = 1.
inline double d_rat(double r) {
    if (!(r >= 1.0) || !std::isfinite(r)) throw std::invalid_argument("D_rat requires r >= 1");
    if (r == 1.0) return 2.0 * std::log(2.0);
    double rm1 = r - 1.0;
    return (r + 0.5 + 0.5 * r * r) * std::log1p(r) + 0.5 * rm1 * rm1 * std::log(rm1) - r * r * std::log(r);
}

/// T(q; r) = C(q) D_rat(r) / pi^2.
inline double tail_constant(std::int64_t q, double r) {
    return orbit_constant(q).to_double() * d_rat(r) / (kPi * kPi);
}

/// Tail constant of a specific pair, zero for type C pairs.
inline double tail_constant(const RationalPair& p, double r) {
    return leading_constant(p).to_double() * d_rat(r) / (kPi * kPi);
}

/// 9 significant digits, the CLI float convention.
inline std::string format_sig9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

/// CSV with columns q, one_over_C, C.
inline std::string constants_csv(std::int64_t q_max) {
    std::ostringstream os;
    os << "q,one_over_C,C\n";
    auto table = orbit_constant_table(q_max);
    for (std::int64_t q = 1; q <= q_max; ++q) {
        const Rational& inv = table[static_cast<std::size_t>(q - 1)];
        os << q << ',' << inv.str() << ',' << format_sig9(orbit_constant(q).to_double()) << '\n';
    }
    return os.str();
}

}  // namespace theta_tails
