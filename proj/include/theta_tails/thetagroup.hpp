#pragma once

/**
 * @file thetagroup.hpp
 * @brief The theta group Gamma_theta, the semidirect product with Z^2 and its
 *        actions on the torus R^2/Z^2 and on G in Iwasawa coordinates
 *        (z, phi; xi).
 *
 * Elements are (M; v) with M in SL(2, Z) and v in Q^2. The product is
 * (M; v)(M'; v') = (M M'; v + M v').
 */

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "arith.hpp"

namespace theta_tails {

struct Mat2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    std::int64_t det() const { return a * d - b * c; }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// ac = bd = 0 (mod 2) and det 1.
inline bool in_theta_group(const Mat2& m) {
    return m.det() == 1 && (m.a * m.c) % 2 == 0 && (m.b * m.d) % 2 == 0;
}

struct TorusPoint {
    Rational xi1;
    Rational xi2;
    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

/// A point of G = SL(2,R) x| R^2 in coordinates z = x + iy, phi, xi.
struct GPoint {
    double x = 0.0;
    double y = 1.0;
    double phi = 0.0;
    double xi1 = 0.0;
    double xi2 = 0.0;

    std::complex<double> z() const { return {x, y}; }
};

class GroupElement {
public:
    GroupElement() = default;

    /// Throws std::invalid_argument unless det M = 1.
    GroupElement(Mat2 m, Rational v1, Rational v2) : m_(m), v1_(v1), v2_(v2) {
        if (m.det() != 1) throw std::invalid_argument("matrix is not unimodular");
    }

    const Mat2& matrix() const { return m_; }
    Rational v1() const { return v1_; }
    Rational v2() const { return v2_; }

    /// Membership in Gamma = Gamma_theta x| Z^2.
    bool in_gamma() const { return in_theta_group(m_) && v1_.is_integer() && v2_.is_integer(); }

    friend GroupElement operator*(const GroupElement& g, const GroupElement& h) {
        const Mat2& m = g.m_;
        return GroupElement(m * h.m_, g.v1_ + Rational(m.a) * h.v1_ + Rational(m.b) * h.v2_,
                            g.v2_ + Rational(m.c) * h.v1_ + Rational(m.d) * h.v2_);
    }

    GroupElement inverse() const {
        Mat2 mi{m_.d, -m_.b, -m_.c, m_.a};
        Rational w1 = -(Rational(mi.a) * v1_ + Rational(mi.b) * v2_);
        Rational w2 = -(Rational(mi.c) * v1_ + Rational(mi.d) * v2_);
        return GroupElement(mi, w1, w2);
    }

    GroupElement pow(std::int64_t k) const {
        GroupElement base = k < 0 ? inverse() : *this;
        std::int64_t e = k < 0 ? -k : k;
        GroupElement acc;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    friend bool operator==(const GroupElement&, const GroupElement&) = default;

    /// xi -> v + M xi (mod Z^2), representatives in [0, 1).
    TorusPoint act(const TorusPoint& p) const {
        Rational n1 = v1_ + Rational(m_.a) * p.xi1 + Rational(m_.b) * p.xi2;
        Rational n2 = v2_ + Rational(m_.c) * p.xi1 + Rational(m_.d) * p.xi2;
        return {n1.frac(), n2.frac()};
    }

    /// (z, phi; xi) -> (Mz, phi + arg(cz + d); v + M xi); xi is not reduced.
    GPoint act(const GPoint& p) const {
        std::complex<double> z = p.z();
        std::complex<double> den = static_cast<double>(m_.c) * z + static_cast<double>(m_.d);
        std::complex<double> w = (static_cast<double>(m_.a) * z + static_cast<double>(m_.b)) / den;
        GPoint out;
        out.x = w.real();
        // Im(Mz) = y / |cz + d|^2 keeps full relative precision for tiny y.
        out.y = p.y / std::norm(den);
        out.phi = p.phi + std::arg(den);
        out.xi1 = v1_.to_double() + static_cast<double>(m_.a) * p.xi1 + static_cast<double>(m_.b) * p.xi2;
        out.xi2 = v2_.to_double() + static_cast<double>(m_.c) * p.xi1 + static_cast<double>(m_.d) * p.xi2;
        return out;
    }

private:
    Mat2 m_{};
    Rational v1_{0};
    Rational v2_{0};
};

/// gamma_1 = ((0,-1;1,0); 0)
inline GroupElement gamma1() { return GroupElement({0, -1, 1, 0}, 0, 0); }
/// gamma_2 = ((1,2;0,1); 0)
inline GroupElement gamma2() { return GroupElement({1, 2, 0, 1}, 0, 0); }
/// gamma_3 = (I; (1,0))
inline GroupElement gamma3() { return GroupElement({1, 0, 0, 1}, 1, 0); }
/// gamma_4 = (I; (0,1))
inline GroupElement gamma4() { return GroupElement({1, 0, 0, 1}, 0, 1); }

inline std::array<GroupElement, 4> gamma_generators() { return {gamma1(), gamma2(), gamma3(), gamma4()}; }

/// rho = ((0,1;-1,1); (0,1/2)); swaps the cusps 1 and infinity.
inline GroupElement rho() { return GroupElement({0, 1, -1, 1}, 0, Rational(1, 2)); }

/// rho_1 = ((0,-1;1,0); 0) and rho_2 = ((1,1;0,1); (1/2,0)) generate, with
/// integer shifts, a group under which Theta_f conj(Theta_g) is invariant.
inline GroupElement rho1() { return GroupElement({0, -1, 1, 0}, 0, 0); }
inline GroupElement rho2() { return GroupElement({1, 1, 0, 1}, Rational(1, 2), 0); }

}  // namespace theta_tails
