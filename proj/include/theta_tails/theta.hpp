#pragma once

/**
 * @file theta.hpp
 * @brief The Jacobi theta function
 *        Theta_f(z, phi; xi, zeta) = y^{1/4} e(zeta - xi_1 xi_2 / 2)
 *            sum_n f_phi((n - xi_2) sqrt y) e((n - xi_2)^2 x / 2 + n xi_1),
 *        the pair product Theta_f1 conj(Theta_f2), the classical theta
 *        function used as a bridge, and the cusp approximation at infinity.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "errors.hpp"
#include "numerics.hpp"
#include "thetagroup.hpp"
#include "weight.hpp"

namespace theta_tails {

namespace detail {

// Phase (n - xi2)^2 x / 2 + n xi1 in turns.
inline double theta_phase(double x, double xi1, double xi2, std::int64_t n) {
    const double dn = static_cast<double>(n);
    dd d = two_sum(dn, -xi2);
    dd sq = two_prod(d.hi, d.hi);
    sq = two_sum(sq.hi, sq.lo + 2.0 * d.hi * d.lo);
    dd half{0.5 * sq.hi, 0.5 * sq.lo};
    return frac_centered(reduced_product(half, x) + frac_centered(two_prod(xi1, dn)));
}

struct SumRange {
    std::int64_t lo;
    std::int64_t hi;
};

inline constexpr std::int64_t kMaxThetaTerms = std::int64_t{1} << 24;

// Indices n whose term can exceed the truncation tolerance.
inline SumRange theta_range(const WeightFunction& f, double y, double phi, double xi2) {
    const double sy = std::sqrt(y);
    double lo, hi;
    if (auto s = f.support ? f.support(phi) : std::nullopt) {
        lo = s->first;
        hi = s->second;
    } else if (f.envelope) {
        // Tail of the sum is at most y^{1/4} * 2 (B(W) + int_W^inf B / sqrt y).
        const double tol = 1e-17 * std::max(1.0, std::pow(y, -0.25));
        const double y4 = std::pow(y, 0.25);
        double W = 0.5;
        while (y4 * 2.0 * (f.envelope(W) + f.envelope_tail(W) / sy) > tol) {
            W *= 1.25;
            if (W > 1e8) throw NumericFailure("theta truncation radius diverged");
        }
        lo = -W;
        hi = W;
    } else {
        throw UnsupportedOperation("weight '" + f.name + "' has no evaluator at this rotation angle");
    }
    const double a = std::floor(xi2 + lo / sy) - 1.0;
    const double b = std::ceil(xi2 + hi / sy) + 1.0;
    if (!(b - a < static_cast<double>(kMaxThetaTerms)))
        throw ResourceLimitError("theta sum needs more than 2^24 terms; reduce the point first");
    return {static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)};
}

}  // namespace detail

/// Theta_f(z, phi; xi, zeta) by direct summation.
inline cplx theta_f(const WeightFunction& f, const GPoint& p, double zeta = 0.0) {
    if (!(p.y > 0.0) || !std::isfinite(p.y)) throw std::invalid_argument("theta requires y > 0");
    const double sy = std::sqrt(p.y);
    auto [lo, hi] = detail::theta_range(f, p.y, p.phi, p.xi2);
    CompensatedSum acc;
    for (std::int64_t n = lo; n <= hi; ++n) {
        const double w = (static_cast<double>(n) - p.xi2) * sy;
        cplx fv = f.f_phi(p.phi, w);
        if (fv == 0.0) continue;
        acc.add(fv * e_of(detail::theta_phase(p.x, p.xi1, p.xi2, n)));
    }
    const dd prod = two_prod(p.xi1, p.xi2);
    const double pre_phase = frac_centered(zeta) - frac_centered(dd{0.5 * prod.hi, 0.5 * prod.lo});
    return std::pow(p.y, 0.25) * e_of(pre_phase) * acc.value();
}

/// Theta_f1 conj(Theta_f2), independent of zeta.
inline cplx theta_pair(const WeightFunction& f1, const WeightFunction& f2, const GPoint& p) {
    return theta_f(f1, p) * std::conj(theta_f(f2, p));
}

/// Moves p by rho_1 and powers of rho_2 until |x| <= 1/2 and |z| >= 1. The
/// pair product is invariant under both, so only the point changes.
inline GPoint reduce_for_pair(GPoint p) {
    for (int it = 0; it < 100000; ++it) {
        const double k = std::nearbyint(p.x);
        if (k != 0.0) {
            if (std::fabs(k) > 9.0e15) throw std::invalid_argument("x too large to reduce");
            const auto ki = static_cast<std::int64_t>(k);
            p = GroupElement({1, -ki, 0, 1}, Rational(-ki, 2), 0).act(p);
        }
        if (p.x * p.x + p.y * p.y >= 1.0) return p;
        p = rho1().act(p);
    }
    throw NumericFailure("pair reduction did not terminate");
}

/// theta_pair evaluated after reduce_for_pair; agrees with theta_pair.
inline cplx theta_pair_reduced(const WeightFunction& f1, const WeightFunction& f2, const GPoint& p) {
    return theta_pair(f1, f2, reduce_for_pair(p));
}

/// theta_3(w, tau) = sum_n e(n^2 tau / 2 + n w) for Im tau > 0.
inline cplx theta3(double w, std::complex<double> tau) {
    const double t = tau.imag();
    if (!(t > 0.0)) throw std::invalid_argument("theta3 requires Im tau > 0");
    const auto nmax = static_cast<std::int64_t>(std::ceil(std::sqrt(42.0 / (kPi * t)))) + 1;
    if (nmax > detail::kMaxThetaTerms) throw ResourceLimitError("theta3 needs too many terms");
    CompensatedSum acc;
    for (std::int64_t n = -nmax; n <= nmax; ++n) {
        const double dn = static_cast<double>(n);
        const double phase = reduced_product(dd{0.5 * dn * dn, 0.0}, tau.real()) + frac_centered(two_prod(w, dn));
        acc.add(std::exp(-kPi * dn * dn * t) * e_of(phase));
    }
    return acc.value();
}

/// y^{1/2} f1_phi(-theta sqrt y) conj(f2_phi(-theta sqrt y)).
inline cplx cusp_main_term(const WeightFunction& f1, const WeightFunction& f2, double y, double phi, double theta) {
    const double w = -theta * std::sqrt(y);
    return std::sqrt(y) * f1.f_phi(phi, w) * std::conj(f2.f_phi(phi, w));
}

/// theta in [-1/2, 1/2) with xi_2 - theta an integer.
inline double cusp_offset(double xi2) {
    return xi2 - std::floor(xi2 + 0.5);
}

/// C_eta kappa_eta(f1) kappa_eta(f2) y^{-(eta - 1)/2} with C_eta = 2^{6 eta} zeta(eta)^2.
inline double cusp_error_bound(const WeightFunction& f1, const WeightFunction& f2, double y, double eta) {
    if (!(eta > 1.0)) throw std::invalid_argument("cusp bound requires eta > 1");
    if (!(y >= 0.5)) throw std::invalid_argument("cusp bound requires y >= 1/2");
    const double z = std::riemann_zeta(eta);
    const double c_eta = std::pow(2.0, 6.0 * eta) * z * z;
    return c_eta * f1.kappa(eta) * f2.kappa(eta) * std::pow(y, -0.5 * (eta - 1.0));
}

}  // namespace theta_tails
