#pragma once

/**
 * @file arith.hpp
 * @brief Exact rationals, canonical rational pairs and the arithmetic
 *        functions (Euler phi, Dedekind psi, Jordan J_2) used by the orbit
 *        counts.
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace theta_tails {

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::invalid_argument("integer overflow");
    return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::invalid_argument("integer overflow");
    return r;
}

// Floor modulus, result in [0, m).
inline std::int64_t mod(std::int64_t x, std::int64_t m) {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

}  // namespace detail

/// Rational number kept in lowest terms with a positive denominator.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (d == 0) throw std::invalid_argument("rational with zero denominator");
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_integer() const { return den_ == 1; }

    /// Fractional part {x} in [0, 1).
    Rational frac() const { return Rational(detail::mod(num_, den_), den_); }
    std::int64_t floor() const { return (num_ - detail::mod(num_, den_)) / den_; }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rational operator+(Rational a, Rational b) {
        std::int64_t g = std::gcd(a.den_, b.den_);
        std::int64_t d = detail::checked_mul(a.den_ / g, b.den_);
        std::int64_t n = detail::checked_add(detail::checked_mul(a.num_, b.den_ / g),
                                             detail::checked_mul(b.num_, a.den_ / g));
        return Rational(n, d);
    }
    friend Rational operator-(Rational a) { return Rational(-a.num_, a.den_); }
    friend Rational operator-(Rational a, Rational b) { return a + (-b); }
    friend Rational operator*(Rational a, Rational b) {
        std::int64_t g1 = std::gcd(a.num_, b.den_);
        std::int64_t g2 = std::gcd(b.num_, a.den_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        return Rational(detail::checked_mul(a.num_ / g1, b.num_ / g2),
                        detail::checked_mul(a.den_ / g2, b.den_ / g1));
    }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num_ == 0) throw std::invalid_argument("rational division by zero");
        return a * Rational(b.den_, b.num_);
    }
    Rational& operator+=(Rational b) { return *this = *this + b; }
    Rational& operator-=(Rational b) { return *this = *this - b; }
    Rational& operator*=(Rational b) { return *this = *this * b; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        // Cross multiplication in 128 bits cannot overflow.
        __int128 l = static_cast<__int128>(a.num_) * b.den_;
        __int128 r = static_cast<__int128>(b.num_) * a.den_;
        return l < r ? std::strong_ordering::less
                     : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Parses "p/q", "p" or a short decimal such as "0.25".
inline Rational parse_rational(const std::string& text) {
    auto to_i64 = [&](const std::string& s) -> std::int64_t {
        if (s.empty()) throw std::invalid_argument("malformed rational: '" + text + "'");
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed rational: '" + text + "'");
        }
        if (pos != s.size()) throw std::invalid_argument("malformed rational: '" + text + "'");
        return v;
    };
    if (auto slash = text.find('/'); slash != std::string::npos) {
        return Rational(to_i64(text.substr(0, slash)), to_i64(text.substr(slash + 1)));
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string ip = text.substr(0, dot);
        std::string fp = text.substr(dot + 1);
        if (fp.size() > 15) throw std::invalid_argument("too many decimals: '" + text + "'");
        bool neg = !ip.empty() && ip[0] == '-';
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
        std::int64_t whole = (ip.empty() || ip == "-" || ip == "+") ? 0 : to_i64(ip);
        std::int64_t part = fp.empty() ? 0 : to_i64(fp);
        if (part < 0 || (!fp.empty() && (fp[0] == '-' || fp[0] == '+')))
            throw std::invalid_argument("malformed rational: '" + text + "'");
        Rational r = Rational(whole) + Rational(neg ? -part : part, scale);
        return r;
    }
    return Rational(to_i64(text));
}

enum class PairKind { H, C };

inline const char* to_string(PairKind k) { return k == PairKind::H ? "H" : "C"; }

/// ({alpha}, {beta}) = (a/q, b/q) with 0 <= a, b < q and gcd(a, b, q) = 1.
struct RationalPair {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t q = 1;

    Rational alpha() const { return Rational(a, q); }
    Rational beta() const { return Rational(b, q); }
    friend bool operator==(const RationalPair&, const RationalPair&) = default;
};

inline RationalPair normalize_pair(Rational alpha, Rational beta) {
    Rational fa = alpha.frac();
    Rational fb = beta.frac();
    std::int64_t g = std::gcd(fa.den(), fb.den());
    std::int64_t q = detail::checked_mul(fa.den() / g, fb.den());
    RationalPair p{fa.num() * (q / fa.den()), fb.num() * (q / fb.den()), q};
    // Lowest common denominator already gives gcd(a, b, q) = 1.
    return p;
}

/// Builds a canonical pair from numerators over a common q (reduced mod q).
inline RationalPair make_pair(std::int64_t a, std::int64_t b, std::int64_t q) {
    if (q < 1) throw std::invalid_argument("denominator must be positive");
    return normalize_pair(Rational(a, q), Rational(b, q));
}

/// Type C iff q = 2 mod 4 with both numerators odd.
inline PairKind pair_kind(const RationalPair& p) {
    return (p.q % 4 == 2 && (p.a & 1) && (p.b & 1)) ? PairKind::C : PairKind::H;
}

/// Prime factorization by trial division, primes ascending.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("factorize requires n >= 1");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> d{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t base = d.size();
        std::int64_t pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) d.push_back(d[i] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

inline std::int64_t euler_phi(std::int64_t n) {
    std::int64_t r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

/// psi(n) = n prod_{p|n} (1 + 1/p).
inline std::int64_t dedekind_psi(std::int64_t n) {
    std::int64_t r = n;
    for (auto [p, e] : factorize(n)) r = detail::checked_mul(r / p, p + 1);
    return r;
}

/// J_2(n) = n^2 prod_{p|n} (1 - 1/p^2) = phi(n) psi(n).
inline std::int64_t jordan_j2(std::int64_t n) {
    std::int64_t r = detail::checked_mul(n, n);
    for (auto [p, e] : factorize(n)) r = r / (p * p) * (p * p - 1);
    return r;
}

/// q = 2^l m with m odd.
struct DyadicSplit {
    int l = 0;
    std::int64_t m = 1;
};

inline DyadicSplit dyadic_split(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("dyadic_split requires q >= 1");
    DyadicSplit s{0, q};
    while ((s.m & 1) == 0) {
        s.m >>= 1;
        ++s.l;
    }
    return s;
}

}  // namespace theta_tails
