#pragma once

/**
 * @file tailsim.hpp
 * @brief Monte-Carlo survival curves for |S_N conj(S_{floor(rN)})|/N with
 *        random x, and for |Theta_f1 conj(Theta_f2)| under mu^{(alpha, beta)},
 *        the R^{-4} tail-constant fit and the compact-support report.
 *
 * Samples are split into fixed blocks; block b draws from an engine seeded by
 * (seed, b) alone, so output is bit-identical for any worker count.
 */

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <json.hpp>

#include "arith.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "homog.hpp"
#include "orbits.hpp"
#include "theta.hpp"
#include "weight.hpp"
#include "weylsum.hpp"

namespace theta_tails {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;
inline constexpr std::int64_t kBlockSize = 4096;

enum class SampleLaw { StandardNormal, Uniform01 };

inline SampleLaw parse_law(const std::string& s) {
    if (s == "normal") return SampleLaw::StandardNormal;
    if (s == "uniform01") return SampleLaw::Uniform01;
    throw std::invalid_argument("unknown law '" + s + "' (expected normal or uniform01)");
}

/// Geometric grid of `steps` thresholds from lo to hi inclusive.
inline std::vector<double> geometric_grid(double lo, double hi, int steps) {
    if (!(lo > 0.0) || !(hi >= lo) || steps < 1) throw std::invalid_argument("bad threshold grid");
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        g.push_back(steps == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (steps - 1)));
    return g;
}

inline std::vector<double> default_thresholds() { return geometric_grid(1.5, 6.0, 20); }

/// Parses "lo:hi:steps".
inline std::vector<double> parse_thresholds(const std::string& spec) {
    auto a = spec.find(':');
    auto b = a == std::string::npos ? a : spec.find(':', a + 1);
    if (b == std::string::npos) throw std::invalid_argument("thresholds must look like lo:hi:steps");
    try {
        std::size_t p1 = 0, p2 = 0, p3 = 0;
        std::string s1 = spec.substr(0, a), s2 = spec.substr(a + 1, b - a - 1), s3 = spec.substr(b + 1);
        double lo = std::stod(s1, &p1), hi = std::stod(s2, &p2);
        int steps = std::stoi(s3, &p3);
        if (p1 != s1.size() || p2 != s2.size() || p3 != s3.size()) throw std::invalid_argument("trailing");
        return geometric_grid(lo, hi, steps);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed thresholds '" + spec + "'");
    }
}

/// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(mix64(mix64(seed) ^ mix64(index + 0x5851F42D4C957F2Dull)));
}

/// Runs fn(rng, i) for every sample i, writing into out[i].
template <class Fn>
inline std::vector<double> run_samples(std::int64_t n, std::uint64_t seed, int workers, Fn fn) {
    if (n < 1) throw std::invalid_argument("sample count must be positive");
    if (workers < 1) throw std::invalid_argument("worker count must be positive");
    std::vector<double> out(static_cast<std::size_t>(n));
    const std::int64_t blocks = (n + kBlockSize - 1) / kBlockSize;
    std::atomic<std::int64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        try {
            for (std::int64_t b; !failed && (b = next.fetch_add(1)) < blocks;) {
                auto rng = substream(seed, static_cast<std::uint64_t>(b));
                const std::int64_t end = std::min(n, (b + 1) * kBlockSize);
                for (std::int64_t i = b * kBlockSize; i < end; ++i) out[static_cast<std::size_t>(i)] = fn(rng);
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
        }
    };
    const int nthreads = static_cast<int>(std::min<std::int64_t>(workers, blocks));
    if (nthreads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    return out;
}

template <class Rng>
inline double draw_x(SampleLaw law, Rng& rng) {
    const double u = uniform01(rng);
    if (law == SampleLaw::Uniform01) return u;
    static const boost::math::normal_distribution<double> normal(0.0, 1.0);
    return boost::math::quantile(normal, u);
}

/// |S_N conj(S_{floor(rN)})| / N for x drawn from the law.
inline std::vector<double> collect_weyl_samples(const WeylSumSpec& sp, std::int64_t N, double r, SampleLaw law,
                                                std::int64_t n, std::uint64_t seed, int workers = 1) {
    if (N < 1) throw std::invalid_argument("N must be positive");
    return run_samples(n, seed, workers, [&](std::mt19937_64& rng) {
        return std::abs(normalized_pair_product(draw_x(law, rng), N, r, sp));
    });
}

/// |Theta_f1 conj(Theta_f2)| under mu^{(alpha, beta)}.
inline std::vector<double> collect_theta_samples(const RationalPair& pair, const WeightFunction& f1,
                                                 const WeightFunction& f2, std::int64_t n, std::uint64_t seed,
                                                 int workers = 1) {
    const auto orbit = orbit_enumerate(pair);
    return run_samples(n, seed, workers, [&](std::mt19937_64& rng) {
        return std::abs(theta_pair_reduced(f1, f2, sample_mu_ab(orbit, pair.q, rng)));
    });
}

struct TailCurve {
    std::vector<double> R;
    std::vector<double> survival;
    std::vector<double> predicted;
    std::vector<std::int64_t> count;
    std::int64_t samples = 0;
    double constant = 0.0;

    std::string csv() const {
        std::ostringstream os;
        os << "R,survival,predicted,count\n";
        for (std::size_t i = 0; i < R.size(); ++i)
            os << format_sig9(R[i]) << ',' << format_sig9(survival[i]) << ',' << format_sig9(predicted[i]) << ','
               << count[i] << '\n';
        return os.str();
    }
};

/// Survival of values above R^2, with prediction constant * R^{-4}.
inline TailCurve tail_curve(std::vector<double> values, const std::vector<double>& thresholds, double constant) {
    if (values.empty()) throw std::invalid_argument("no samples");
    std::sort(values.begin(), values.end());
    TailCurve c;
    c.samples = static_cast<std::int64_t>(values.size());
    c.constant = constant;
    for (double R : thresholds) {
        auto above = static_cast<std::int64_t>(values.end() - std::upper_bound(values.begin(), values.end(), R * R));
        c.R.push_back(R);
        c.count.push_back(above);
        c.survival.push_back(static_cast<double>(above) / static_cast<double>(c.samples));
        c.predicted.push_back(constant / (R * R * R * R));
    }
    return c;
}

inline TailCurve simulate_weyl_tail(const RationalPair& pair, std::int64_t N, double r, SampleLaw law,
                                    std::int64_t n, const std::vector<double>& thresholds,
                                    std::uint64_t seed = kDefaultSeed, int workers = 1) {
    auto v = collect_weyl_samples(WeylSumSpec::from_pair(pair), N, r, law, n, seed, workers);
    return tail_curve(std::move(v), thresholds, tail_constant(pair, r));
}

/// Prediction (2U + V)/(S pi^2) D(f1, f2).
inline double theta_tail_constant(const RationalPair& pair, const WeightFunction& f1, const WeightFunction& f2) {
    return leading_constant(pair).to_double() * d_rat_numeric(f1, f2).value / (kPi * kPi);
}

inline TailCurve simulate_theta_tail(const RationalPair& pair, const WeightFunction& f1, const WeightFunction& f2,
                                     std::int64_t n, const std::vector<double>& thresholds,
                                     std::uint64_t seed = kDefaultSeed, int workers = 1) {
    auto v = collect_theta_samples(pair, f1, f2, n, seed, workers);
    return tail_curve(std::move(v), thresholds, theta_tail_constant(pair, f1, f2));
}

struct TailFit {
    double constant = 0.0;
    double std_error = 0.0;
    int points = 0;
    bool insufficient_tail = false;
};

/// Fits log survival = log T - 4 log R over thresholds in [R_lo, R_hi],
/// skipping empty bins; standard error from a case-resampling bootstrap.
inline TailFit fit_tail_constant(const TailCurve& c, double R_lo, double R_hi, std::uint64_t seed = kDefaultSeed,
                                 int resamples = 400) {
    std::vector<double> logs;
    bool any = false;
    for (std::size_t i = 0; i < c.R.size(); ++i) {
        if (c.R[i] < R_lo || c.R[i] > R_hi) continue;
        any = true;
        if (c.survival[i] <= 0.0) continue;
        logs.push_back(std::log(c.survival[i]) + 4.0 * std::log(c.R[i]));
    }
    if (!any) throw std::invalid_argument("fit window contains no thresholds");
    TailFit f;
    f.points = static_cast<int>(logs.size());
    if (logs.size() < 3) {
        f.insufficient_tail = true;
        f.constant = logs.empty() ? 0.0 : std::exp(logs.front());
        return f;
    }
    auto mean_exp = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return std::exp(s / static_cast<double>(v.size()));
    };
    f.constant = mean_exp(logs);
    auto rng = substream(seed, 0xF17);
    std::vector<double> pick(logs.size()), boot(static_cast<std::size_t>(resamples));
    for (auto& t : boot) {
        for (auto& p : pick) {
            auto k = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(logs.size()));
            p = logs[std::min(k, logs.size() - 1)];
        }
        t = mean_exp(pick);
    }
    double m = 0.0, ss = 0.0;
    for (double t : boot) m += t;
    m /= resamples;
    for (double t : boot) ss += (t - m) * (t - m);
    f.std_error = std::sqrt(ss / resamples);
    return f;
}

struct CompactReport {
    std::int64_t samples = 0;
    double max_value = 0.0;
    std::vector<double> R;
    std::vector<double> survival_times_R4;
    /// Ratio survival(2) 2^4 / (survival(4) 4^4); infinite when survival(4) = 0.
    double decay_ratio = 0.0;
    bool compact_support_compatible = false;
    /// Histogram of sqrt(value) on [0, hist_max) in equal bins.
    double hist_max = 0.0;
    std::vector<std::int64_t> radial_histogram;
};

/// Survival(R) R^4 at dyadic R; compatible when it falls 10x from R = 2 to 4
/// (trivially so when both are zero).
inline CompactReport compact_support_report(std::vector<double> values, int bins = 40) {
    if (values.empty()) throw std::invalid_argument("no samples");
    std::sort(values.begin(), values.end());
    CompactReport rep;
    rep.samples = static_cast<std::int64_t>(values.size());
    rep.max_value = values.back();
    auto survival = [&](double R) {
        auto above = values.end() - std::upper_bound(values.begin(), values.end(), R * R);
        return static_cast<double>(above) / static_cast<double>(values.size());
    };
    for (double R : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        rep.R.push_back(R);
        rep.survival_times_R4.push_back(survival(R) * R * R * R * R);
    }
    const double s2 = rep.survival_times_R4[1], s4 = rep.survival_times_R4[2];
    rep.decay_ratio = s4 > 0.0 ? s2 / s4 : (s2 > 0.0 ? INFINITY : 0.0);
    rep.compact_support_compatible = s4 <= 0.1 * s2;
    rep.hist_max = std::max(1e-12, std::sqrt(rep.max_value) * (1.0 + 1e-9));
    rep.radial_histogram.assign(static_cast<std::size_t>(bins), 0);
    for (double v : values) {
        auto k = static_cast<std::size_t>(std::sqrt(v) / rep.hist_max * bins);
        ++rep.radial_histogram[std::min<std::size_t>(k, static_cast<std::size_t>(bins) - 1)];
    }
    return rep;
}

inline nlohmann::json to_json(const CompactReport& r) {
    nlohmann::json j;
    j["samples"] = r.samples;
    j["max"] = r.max_value;
    j["R"] = r.R;
    j["survival_times_R4"] = r.survival_times_R4;
    j["decay_ratio_2_to_4"] = std::isfinite(r.decay_ratio) ? nlohmann::json(r.decay_ratio) : nlohmann::json("inf");
    j["verdict"] = r.compact_support_compatible ? "compatible-with-compact-support" : "heavy-tail";
    j["radial_histogram"] = {{"max_radius", r.hist_max}, {"counts", r.radial_histogram}};
    return j;
}

}  // namespace theta_tails
