#pragma once

/**
 * @file weight.hpp
 * @brief Weight functions f, their rotated versions f_phi under the
 *        Shale-Weil representation, Fresnel integrals and the dilation
 *        integral D(f1, f2) = int_0^pi |f1_phi(0) f2_phi(0)|^2 dphi.
 *
 * f_phi(w) = e(sigma_{-phi}/8) |sin phi|^{-1/2}
 *            int e(((w^2 + v^2) cos phi / 2 - w v) / sin phi) f(v) dv,
 * and f_{k pi}(w) = e(-k/4) f((-1)^k w).
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"
#include "numerics.hpp"

namespace theta_tails {

/// Fresnel integrals C(x) = int_0^x cos(pi t^2/2) dt and S(x) likewise with sin.
/// Power series for |x| <= 1.5, Lentz continued fraction beyond.
inline std::complex<double> fresnel_cs(double x) {
    constexpr double kEps = 1e-16;
    constexpr double kFpMin = 1e-300;
    constexpr int kMaxIt = 200;
    const double ax = std::fabs(x);
    double c = 0.0, s = 0.0;
    if (ax < 1e-150) {
        c = ax;
    } else if (ax <= 1.5) {
        double sum = 0.0, sums = 0.0, sumc = ax, sign = 1.0;
        const double fact = 0.5 * kPi * ax * ax;
        bool odd = true;
        double term = ax;
        double n = 3.0;
        for (int k = 1; k <= kMaxIt; ++k) {
            term *= fact / k;
            sum += sign * term / n;
            const double test = std::fabs(sum) * kEps;
            if (odd) {
                sign = -sign;
                sums = sum;
                sum = sumc;
            } else {
                sumc = sum;
                sum = sums;
            }
            if (term < test) break;
            odd = !odd;
            n += 2.0;
        }
        s = sums;
        c = sumc;
    } else {
        const double pix2 = kPi * ax * ax;
        std::complex<double> b(1.0, -pix2);
        std::complex<double> cc = 1.0 / kFpMin;
        std::complex<double> d = 1.0 / b;
        std::complex<double> h = d;
        double n = -1.0;
        int k = 2;
        for (; k <= kMaxIt; ++k) {
            n += 2.0;
            const double a = -n * (n + 1.0);
            b += 4.0;
            d = 1.0 / (a * d + b);
            cc = b + a / cc;
            const std::complex<double> del = cc * d;
            h *= del;
            if (std::abs(del - 1.0) < kEps) break;
        }
        if (k > kMaxIt) throw NumericFailure("Fresnel continued fraction did not converge");
        h *= std::complex<double>(ax, -ax);
        // exp(i pi x^2 / 2) with the argument reduced mod 1 in turns.
        const std::complex<double> rot = e_of(0.25 * ax * ax);
        const std::complex<double> cs = std::complex<double>(0.5, 0.5) * (1.0 - rot * h);
        c = cs.real();
        s = cs.imag();
    }
    if (x < 0) {
        c = -c;
        s = -s;
    }
    return {c, s};
}

/// int_0^r exp(i pi u v^2) dv for r >= 0.
inline std::complex<double> fresnel_segment(double u, double r) {
    if (u == 0.0) return r;
    const double au = std::fabs(u);
    const double k = std::sqrt(2.0 * au);
    std::complex<double> v = fresnel_cs(r * k) / k;
    return u > 0 ? v : std::conj(v);
}

/// sigma_phi = 2 nu at phi = nu pi and 2 nu + 1 on (nu pi, (nu + 1) pi).
inline int maslov_index(double phi) {
    const double nu = std::floor(phi / kPi);
    if (std::remainder(phi, kPi) == 0.0) return 2 * static_cast<int>(std::nearbyint(phi / kPi));
    return 2 * static_cast<int>(nu) + 1;
}

/// e(sigma_{-phi}/8).
inline cplx shale_weil_phase(double phi) {
    int s = maslov_index(-phi);
    return e_of(static_cast<double>(((s % 8) + 8) % 8) / 8.0);
}

/// phi is an exact multiple of pi.
inline bool on_pi_lattice(double phi) { return std::remainder(phi, kPi) == 0.0; }

struct WeightFunction {
    std::string name;
    /// f(w), real valued.
    std::function<double(double)> evaluate;
    /// Interval carrying all mass of f used by quadrature.
    double integration_lo = 0.0;
    double integration_hi = 0.0;
    /// f_phi(w); throws UnsupportedOperation where no evaluator exists.
    std::function<cplx(double, double)> f_phi;
    /// Compact support of f_phi in w, when known for this phi.
    std::function<std::optional<std::pair<double, double>>(double)> support;
    /// B(w) >= sup_phi |f_phi(w)|, decreasing in |w|; empty when f has no decay bound.
    std::function<double(double)> envelope;
    /// int_W^infty B(t) dt.
    std::function<double(double)> envelope_tail;
    /// kappa_eta(f) = sup_{phi, w} (1 + w^2)^{eta/2} |f_phi(w)|.
    std::function<double(double)> kappa;

    cplx f_phi0(double phi) const { return f_phi(phi, 0.0); }
    double modulus_f_phi(double phi, double w) const { return std::abs(f_phi(phi, w)); }
};

/// f(w) = exp(-pi w^2); f_phi(w) = exp(-i phi/2) f(w) for every real phi.
inline WeightFunction gaussian_weight() {
    WeightFunction w;
    w.name = "gaussian";
    w.evaluate = [](double v) { return std::exp(-kPi * v * v); };
    w.integration_lo = -7.0;
    w.integration_hi = 7.0;
    w.f_phi = [](double phi, double v) { return std::polar(std::exp(-kPi * v * v), -0.5 * phi); };
    w.support = [](double) { return std::optional<std::pair<double, double>>{}; };
    w.envelope = [](double v) { return std::exp(-kPi * v * v); };
    w.envelope_tail = [](double W) { return 0.5 * std::erfc(std::sqrt(kPi) * W); };
    w.kappa = [](double eta) {
        if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
        double t = std::max(0.0, eta / (2.0 * kPi) - 1.0);
        return std::pow(1.0 + t, 0.5 * eta) * std::exp(-kPi * t);
    };
    return w;
}

/// chi_r = 1 on (0, r]. f_phi is available at phi in pi Z and, through
/// Fresnel integrals, at w = 0 for every phi.
inline WeightFunction sharp_indicator_weight(double r = 1.0) {
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("indicator length must be positive");
    WeightFunction w;
    w.name = r == 1.0 ? "chi" : "chi_" + std::to_string(r);
    w.evaluate = [r](double v) { return (v > 0.0 && v <= r) ? 1.0 : 0.0; };
    w.integration_lo = 0.0;
    w.integration_hi = r;
    w.f_phi = [r](double phi, double v) -> cplx {
        if (on_pi_lattice(phi)) {
            long k = std::lround(phi / kPi);
            double arg = (k % 2 == 0) ? v : -v;
            return shale_weil_phase(phi) * ((arg > 0.0 && arg <= r) ? 1.0 : 0.0);
        }
        if (v != 0.0)
            throw UnsupportedOperation("indicator f_phi(w) is only provided at w = 0 off pi Z");
        const double s = std::sin(phi);
        const double cot = std::cos(phi) / s;
        return shale_weil_phase(phi) * fresnel_segment(cot, r) / std::sqrt(std::fabs(s));
    };
    w.support = [r](double phi) -> std::optional<std::pair<double, double>> {
        if (!on_pi_lattice(phi)) return std::nullopt;
        long k = std::lround(phi / kPi);
        return k % 2 == 0 ? std::make_pair(0.0, r) : std::make_pair(-r, 0.0);
    };
    w.kappa = [](double) -> double {
        throw UnsupportedOperation("the sharp indicator has no finite kappa_eta for eta > 1");
    };
    return w;
}

/// f_phi(w) by direct quadrature of the Shale-Weil kernel against f.
inline cplx f_phi_numeric(const WeightFunction& f, double phi, double w) {
    if (on_pi_lattice(phi)) {
        long k = std::lround(phi / kPi);
        return shale_weil_phase(phi) * f.evaluate(k % 2 == 0 ? w : -w);
    }
    const double s = std::sin(phi), c = std::cos(phi);
    const double lo = f.integration_lo, hi = f.integration_hi;
    const double vmax = std::max(std::fabs(lo), std::fabs(hi));
    const double freq = (vmax * std::fabs(c) + std::fabs(w)) / std::fabs(s);
    const int panels = static_cast<int>(std::min(1e5, std::ceil((hi - lo) * freq) + 4.0));
    auto integrand = [&](double v) -> cplx {
        double fv = f.evaluate(v);
        if (fv == 0.0) return 0.0;
        return fv * e_of(((0.5 * (w * w + v * v) * c - w * v) / s));
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    CompensatedSum acc;
    const double h = (hi - lo) / panels;
    for (int i = 0; i < panels; ++i) {
        double a = lo + i * h, b = (i + 1 == panels) ? hi : lo + (i + 1) * h;
        acc.add(GK::integrate(integrand, a, b, 8, 1e-11));
    }
    return shale_weil_phase(phi) * acc.value() / std::sqrt(std::fabs(s));
}

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
};

/// D(f1, f2) via u = cot phi: int_R |f1_phi(0)|^2 |f2_phi(0)|^2 du / (1 + u^2).
/// [-U, U] is integrated in panels; beyond U the integrand is extrapolated as
/// A/u^2 + B/u^4, with A, B fitted by least squares on [U/2, U] of each side.
inline QuadratureResult d_rat_numeric(const WeightFunction& f1, const WeightFunction& f2, double U = 500.0,
                                      double panel = 0.5) {
    auto g = [&](double u) {
        double phi = std::atan2(1.0, u);
        double a = std::norm(f1.f_phi0(phi));
        double b = std::norm(f2.f_phi0(phi));
        return a * b / (1.0 + u * u);
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    const int panels = static_cast<int>(std::ceil(2.0 * U / panel));
    const double h = 2.0 * U / panels;
    double sum = 0.0, comp = 0.0, err = 0.0;
    for (int i = 0; i < panels; ++i) {
        double a = -U + i * h, b = (i + 1 == panels) ? U : -U + (i + 1) * h;
        double e = 0.0;
        double v = GK::integrate(g, a, b, 6, 1e-11, &e);
        double t = sum + v;
        comp += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
        err += e;
    }
    auto side_tail = [&](double sign) {
        // Normal equations for u^2 g(u) = A + B t with t = 1/u^2.
        const int m = 2000;
        double s0 = 0, s1 = 0, s2 = 0, r0 = 0, r1 = 0;
        for (int k = 0; k < m; ++k) {
            double u = U * (0.5 + 0.5 * (k + 0.5) / m);
            double t = 1.0 / (u * u);
            double v = u * u * g(sign * u);
            s0 += 1.0;
            s1 += t;
            s2 += t * t;
            r0 += v;
            r1 += v * t;
        }
        double det = s0 * s2 - s1 * s1;
        double A = (r0 * s2 - r1 * s1) / det;
        double B = (s0 * r1 - s1 * r0) / det;
        return A / U + B / (3.0 * U * U * U);
    };
    double tail = side_tail(1.0) + side_tail(-1.0);
    if (!std::isfinite(sum + tail)) throw NumericFailure("D quadrature produced a non-finite value");
    return {sum + comp + tail, err + 0.05 * std::fabs(tail)};
}

}  // namespace theta_tails
