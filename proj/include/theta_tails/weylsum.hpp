#pragma once

/**
 * @file weylsum.hpp
 * @brief Quadratic Weyl sums S_N(x) = sum_{n=1}^N e((n^2/2 + beta n + zeta) x + alpha n),
 *        their smoothed versions, the normalized product S_N conj(S_{floor(rN)})/N
 *        and curlicue partial sums.
 *
 * Each phase is reduced mod 1 in double-double before the exponential, so the
 * absolute phase error stays near 1e-16 for n up to 2^26. Sharp sums step
 * through the terms with the second-difference recurrence and reseed from
 * the exact phase every kReseedInterval terms.
 */

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "numerics.hpp"
#include "weight.hpp"

namespace theta_tails {

inline constexpr std::int64_t kMaxWeylLength = std::int64_t{1} << 26;

/// Coefficients alpha, beta, zeta of the phase, exact for rational inputs to ~1e-32.
struct WeylSumSpec {
    dd alpha;
    dd beta;
    dd zeta;

    static WeylSumSpec from_reals(double alpha, double beta, double zeta = 0.0) {
        return {dd::from_double(alpha), dd::from_double(beta), dd::from_double(zeta)};
    }
    static WeylSumSpec from_pair(const RationalPair& p, double zeta = 0.0) {
        return {dd::from_ratio(p.a, p.q), dd::from_ratio(p.b, p.q), dd::from_double(zeta)};
    }
};

namespace detail {

inline void check_length(std::int64_t N) {
    if (N < 0) throw std::invalid_argument("sum length must be non-negative");
    if (N > kMaxWeylLength) throw ResourceLimitError("sum length exceeds 2^26");
}

/// Phase of term n in turns, centered mod 1.
inline double weyl_phase(const WeylSumSpec& sp, double x, std::int64_t n) {
    const double dn = static_cast<double>(n);
    dd c = dd_add(dd{0.5 * dn * dn, 0.0}, dd_mul(sp.beta, dn));
    c = dd_add(c, sp.zeta);
    return frac_centered(reduced_product(c, x) + frac_centered(dd_mul(sp.alpha, dn)));
}

inline constexpr std::int64_t kReseedInterval = 64;

/// Terms e(phase_n) for n = 1, 2, ...; the phase has second difference x.
class WeylTerms {
public:
    WeylTerms(const WeylSumSpec& sp, double x) : sp_(sp), x_(x), w_(e_of(x)) {}

    cplx next() {
        if ((n_ - 1) % kReseedInterval == 0) {
            const double p0 = weyl_phase(sp_, x_, n_);
            const double p1 = weyl_phase(sp_, x_, n_ + 1);
            u_ = e_of(p0);
            v_ = e_of(p1 - p0);
        }
        const cplx out = u_;
        u_ *= v_;
        v_ *= w_;
        ++n_;
        return out;
    }

private:
    const WeylSumSpec& sp_;
    double x_;
    cplx w_;
    cplx u_{1.0, 0.0};
    cplx v_{1.0, 0.0};
    std::int64_t n_ = 1;
};

}  // namespace detail

inline cplx weyl_sum(double x, std::int64_t N, const WeylSumSpec& sp) {
    detail::check_length(N);
    CompensatedSum acc;
    detail::WeylTerms terms(sp, x);
    for (std::int64_t n = 1; n <= N; ++n) acc.add(terms.next());
    return acc.value();
}

/// sum_{n in Z} f(n/N) e(...), truncated by the support or decay envelope of f.
inline cplx weighted_weyl_sum(double x, std::int64_t N, const WeylSumSpec& sp, const WeightFunction& f) {
    if (N < 1) throw std::invalid_argument("N must be positive");
    detail::check_length(N);
    double lo = f.integration_lo, hi = f.integration_hi;
    if (f.envelope) {
        double W = 1.0;
        while (f.envelope(W) + f.envelope_tail(W) * N > 1e-18 && W < 1e6) W *= 1.25;
        lo = -W;
        hi = W;
    }
    const double dN = static_cast<double>(N);
    std::int64_t n0 = static_cast<std::int64_t>(std::floor(lo * dN)) - 1;
    std::int64_t n1 = static_cast<std::int64_t>(std::ceil(hi * dN)) + 1;
    if (std::max(std::abs(n0), std::abs(n1)) > kMaxWeylLength)
        throw ResourceLimitError("weighted sum range exceeds 2^26 terms");
    CompensatedSum acc;
    for (std::int64_t n = n0; n <= n1; ++n) {
        double fv = f.evaluate(static_cast<double>(n) / dN);
        if (fv == 0.0) continue;
        acc.add(fv * e_of(detail::weyl_phase(sp, x, n)));
    }
    return acc.value();
}

/// S_N conj(S_{floor(rN)}) / N from one pass of partial sums.
inline cplx normalized_pair_product(double x, std::int64_t N, double r, const WeylSumSpec& sp) {
    if (N < 1) throw std::invalid_argument("N must be positive");
    if (!(r >= 1.0) || !std::isfinite(r)) throw std::invalid_argument("r must be >= 1");
    const std::int64_t M = static_cast<std::int64_t>(std::floor(r * static_cast<double>(N)));
    detail::check_length(M);
    CompensatedSum acc;
    cplx sN;
    detail::WeylTerms terms(sp, x);
    for (std::int64_t n = 1; n <= M; ++n) {
        acc.add(terms.next());
        if (n == N) sN = acc.value();
    }
    return sN * std::conj(acc.value()) / static_cast<double>(N);
}

/// Partial sums S_0, ..., S_N.
inline std::vector<cplx> curlicue(double x, std::int64_t N, const WeylSumSpec& sp) {
    detail::check_length(N);
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(N + 1));
    CompensatedSum acc;
    out.push_back(0.0);
    detail::WeylTerms terms(sp, x);
    for (std::int64_t n = 1; n <= N; ++n) {
        acc.add(terms.next());
        out.push_back(acc.value());
    }
    return out;
}

/// CSV with columns k, re, im.
inline std::string curlicue_csv(const std::vector<cplx>& pts) {
    std::ostringstream os;
    os << "k,re,im\n";
    for (std::size_t k = 0; k < pts.size(); ++k)
        os << k << ',' << format_sig9(pts[k].real()) << ',' << format_sig9(pts[k].imag()) << '\n';
    return os.str();
}

}  // namespace theta_tails
