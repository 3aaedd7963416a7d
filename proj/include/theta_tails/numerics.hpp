#pragma once

/**
 * @file numerics.hpp
 * @brief Error-free transformations, phase reduction mod 1 and compensated
 *        complex accumulation shared by the Weyl sums and theta sums.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace theta_tails {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct dd {
    double hi = 0.0;
    double lo = 0.0;

    static dd from_double(double x) { return {x, 0.0}; }
    /// a/q to roughly 106 bits; requires |a|, q < 2^53.
    static dd from_ratio(std::int64_t a, std::int64_t q) {
        double da = static_cast<double>(a), dq = static_cast<double>(q);
        double h = da / dq;
        double l = std::fma(-h, dq, da) / dq;
        return {h, l};
    }
    double value() const { return hi + lo; }
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return two_sum(s.hi, lo);
}

/// a * n for an integer-valued double n.
inline dd dd_mul(dd a, double n) {
    dd p = two_prod(a.hi, n);
    return two_sum(p.hi, p.lo + a.lo * n);
}

/// Centered fractional part in [-1/2, 1/2]. Rounds with the 1.5 * 2^52
/// shift, exact for |t| < 2^51; larger doubles are already multiples of 1/2.
inline double frac_centered(double t) {
    constexpr double kShift = 0x1.8p52;
    if (!(std::fabs(t) < 0x1.0p51)) return t - std::nearbyint(t);
    return t - ((t + kShift) - kShift);
}

/// Centered fractional part of hi + lo without losing lo.
inline double frac_centered(dd t) { return frac_centered(frac_centered(t.hi) + t.lo); }

/// {c * x} mod 1 where c is double-double and x a double.
inline double reduced_product(dd c, double x) {
    dd p = two_prod(c.hi, x);
    return frac_centered(frac_centered(p.hi) + (p.lo + c.lo * x));
}

/// e(t) = exp(2 pi i t); t is reduced mod 1 first.
inline cplx e_of(double t) {
    double r = kTwoPi * frac_centered(t);
    double s, c;
    ::sincos(r, &s, &c);
    return {c, s};
}

/// Neumaier-compensated accumulation of complex terms.
class CompensatedSum {
public:
    void add(cplx z) {
        step(re_, cre_, z.real());
        step(im_, cim_, z.imag());
    }
    cplx value() const { return {re_ + cre_, im_ + cim_}; }

private:
    static void step(double& s, double& c, double x) {
        double t = s + x;
        if (std::fabs(s) >= std::fabs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double re_ = 0.0, cre_ = 0.0, im_ = 0.0, cim_ = 0.0;
};

}  // namespace theta_tails
