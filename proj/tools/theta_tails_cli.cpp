// theta_tails_cli: tables, orbit reports, curlicues and tail experiments as CSV/JSON.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "theta_tails/arith.hpp"
#include "theta_tails/constants.hpp"
#include "theta_tails/errors.hpp"
#include "theta_tails/orbits.hpp"
#include "theta_tails/tailsim.hpp"
#include "theta_tails/weight.hpp"
#include "theta_tails/weylsum.hpp"

namespace tt = theta_tails;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kOther = 1, kInvalid = 2, kResource = 3, kNumeric = 4 };

struct RunConfig {
    std::string pair;
    std::string alpha = "0";
    std::string beta = "0";
    std::int64_t q_max = 100;
    std::int64_t q = 1;
    std::int64_t cap = tt::kDefaultEnumerationCap;
    double x = 0.0;
    std::int64_t N = 500;
    double r = 1.0;
    std::int64_t samples = 100000;
    std::string seed;
    std::string law = "normal";
    std::string thresholds;
    std::string weights = "gaussian,gaussian";
    double fit_lo = 2.0;
    double fit_hi = 4.0;
    bool points = false;
    int workers = 1;
    std::string format = "csv";
    std::string out;
    std::string summary;
};

// Rounds every float in the document to 9 significant digits.
void round_floats(json& j) {
    if (j.is_number_float()) {
        double v = j.get<double>();
        if (std::isfinite(v)) j = std::stod(tt::format_sig9(v));
    } else if (j.is_structured()) {
        for (auto& e : j) round_floats(e);
    }
}

std::string dump(json j) {
    round_floats(j);
    return j.dump(2) + "\n";
}

tt::RationalPair parse_pair(const RunConfig& c) {
    if (!c.pair.empty()) {
        auto comma = c.pair.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("pair must be 'alpha,beta': " + c.pair);
        return tt::normalize_pair(tt::parse_rational(c.pair.substr(0, comma)),
                                  tt::parse_rational(c.pair.substr(comma + 1)));
    }
    return tt::normalize_pair(tt::parse_rational(c.alpha), tt::parse_rational(c.beta));
}

std::uint64_t parse_seed(const std::string& s) {
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &pos, 0);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed seed: '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("malformed seed: '" + s + "'");
    return v;
}

// Flag beats environment beats the fixed default.
std::uint64_t resolve_seed(const RunConfig& c) {
    if (!c.seed.empty()) return parse_seed(c.seed);
    if (const char* env = std::getenv("THETA_TAILS_SEED"); env && *env) return parse_seed(env);
    return tt::kDefaultSeed;
}

std::vector<double> resolve_thresholds(const RunConfig& c) {
    return c.thresholds.empty() ? tt::default_thresholds() : tt::parse_thresholds(c.thresholds);
}

tt::WeightFunction parse_weight(const std::string& s) {
    if (s == "gaussian") return tt::gaussian_weight();
    if (s == "chi") return tt::sharp_indicator_weight(1.0);
    if (s.rfind("chi:", 0) == 0) return tt::sharp_indicator_weight(std::stod(s.substr(4)));
    throw std::invalid_argument("unknown weight: '" + s + "'");
}

json pair_json(const tt::RationalPair& p) {
    return {{"a", p.a},
            {"b", p.b},
            {"q", p.q},
            {"alpha", p.alpha().str()},
            {"beta", p.beta().str()},
            {"kind", tt::to_string(tt::pair_kind(p))}};
}

void check_positive(std::int64_t v, const char* name) {
    if (v < 1) throw std::invalid_argument(std::string(name) + " must be positive");
}

std::string cmd_constants(const RunConfig& c) {
    check_positive(c.q_max, "--q-max");
    if (c.format == "csv") return tt::constants_csv(c.q_max);
    json rows = json::array();
    auto table = tt::orbit_constant_table(c.q_max);
    for (std::int64_t q = 1; q <= c.q_max; ++q) {
        const tt::Rational inv = table[static_cast<std::size_t>(q - 1)];
        rows.push_back({{"q", q}, {"one_over_C", inv.str()}, {"C", tt::orbit_constant(q).str()}});
    }
    return dump(rows);
}

std::string cmd_orbit(const RunConfig& c) {
    const auto p = parse_pair(c);
    const auto d = tt::orbit_data(p, c.points, c.cap);
    json j;
    j["pair"] = pair_json(p);
    j["sizes"] = {{"S", d.sizes.S}, {"U", d.sizes.U}, {"V", d.sizes.V}};
    j["representative"] = d.rep.str();
    j["leading_constant"] = d.leading.str();
    if (d.points) {
        json pts = json::array();
        for (const auto& [a, b] : *d.points) pts.push_back({a, b});
        j["points"] = std::move(pts);
    }
    return dump(j);
}

std::string cmd_partition(const RunConfig& c) {
    check_positive(c.q, "--q");
    const auto reps = tt::orbit_representatives(c.q);
    if (c.format == "json") {
        json rows = json::array();
        for (const auto& [rep, size] : reps)
            rows.push_back({{"representative", rep.str()}, {"q", rep.q}, {"size", size}});
        return dump(rows);
    }
    std::ostringstream os;
    os << "representative,q,size\n";
    for (const auto& [rep, size] : reps) os << '"' << rep.str() << "\"," << rep.q << ',' << size << '\n';
    return os.str();
}

std::string cmd_curlicue(const RunConfig& c) {
    check_positive(c.N, "--N");
    const auto p = parse_pair(c);
    const auto pts = tt::curlicue(c.x, c.N, tt::WeylSumSpec::from_pair(p));
    if (c.format == "csv") return tt::curlicue_csv(pts);
    json rows = json::array();
    for (std::size_t k = 0; k < pts.size(); ++k) rows.push_back({{"k", k}, {"re", pts[k].real()}, {"im", pts[k].imag()}});
    return dump(rows);
}

json curve_json(const tt::TailCurve& t) {
    return {{"R", t.R}, {"survival", t.survival}, {"predicted", t.predicted}, {"count", t.count},
            {"samples", t.samples}, {"constant", t.constant}};
}

json fit_json(const tt::TailCurve& t, const RunConfig& c, std::uint64_t seed) {
    const auto f = tt::fit_tail_constant(t, c.fit_lo, c.fit_hi, seed);
    return {{"R_lo", c.fit_lo}, {"R_hi", c.fit_hi}, {"constant", f.constant}, {"std_error", f.std_error},
            {"points", f.points}, {"insufficient_tail", f.insufficient_tail}};
}

// CSV goes to the primary output; the summary to --summary or stderr.
struct TailOutput {
    std::string primary;
    std::string summary;
};

TailOutput render_tail(const tt::TailCurve& t, json summary, const RunConfig& c) {
    if (c.format == "json") return {dump({{"curve", curve_json(t)}, {"summary", std::move(summary)}}), ""};
    return {t.csv(), dump(std::move(summary))};
}

TailOutput cmd_tail(const RunConfig& c) {
    check_positive(c.N, "--N");
    check_positive(c.samples, "--samples");
    const auto p = parse_pair(c);
    const auto seed = resolve_seed(c);
    const auto law = tt::parse_law(c.law);
    auto values = tt::collect_weyl_samples(tt::WeylSumSpec::from_pair(p), c.N, c.r, law, c.samples, seed, c.workers);
    auto curve = tt::tail_curve(values, resolve_thresholds(c), tt::tail_constant(p, c.r));
    const bool compact = tt::pair_kind(p) == tt::PairKind::C;
    json s;
    s["pair"] = pair_json(p);
    s["N"] = c.N;
    s["r"] = c.r;
    s["law"] = c.law;
    s["samples"] = c.samples;
    s["seed"] = seed;
    s["predicted_T"] = curve.constant;
    s["fit"] = fit_json(curve, c, seed);
    s["verdict"] = compact ? "compact-support" : "heavy-tail";
    s["compact_report"] = tt::to_json(tt::compact_support_report(std::move(values)));
    return render_tail(curve, std::move(s), c);
}

TailOutput cmd_theta_tail(const RunConfig& c) {
    check_positive(c.samples, "--samples");
    const auto p = parse_pair(c);
    const auto seed = resolve_seed(c);
    auto comma = c.weights.find(',');
    const auto f1 = parse_weight(c.weights.substr(0, comma));
    const auto f2 = comma == std::string::npos ? f1 : parse_weight(c.weights.substr(comma + 1));
    auto curve = tt::simulate_theta_tail(p, f1, f2, c.samples, resolve_thresholds(c), seed, c.workers);
    json s;
    s["pair"] = pair_json(p);
    s["weights"] = {f1.name, f2.name};
    s["samples"] = c.samples;
    s["seed"] = seed;
    s["predicted_T"] = curve.constant;
    s["fit"] = fit_json(curve, c, seed);
    return render_tail(curve, std::move(s), c);
}

void write_primary(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + path);
    f << text;
}

void write_summary(const std::string& text, const std::string& path) {
    if (text.empty()) return;
    if (path.empty()) {
        std::cerr << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open summary file: " + path);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact orbit constants, Weyl sums and tail experiments for rational quadratic Weyl sums"};
    app.require_subcommand(1);
    RunConfig c;

    auto add_pair = [&](CLI::App* s) {
        s->add_option("--alpha", c.alpha, "alpha as p/q, integer or decimal");
        s->add_option("--beta", c.beta, "beta as p/q, integer or decimal");
        s->add_option("--pair", c.pair, "\"alpha,beta\"; overrides --alpha/--beta");
    };
    auto add_format = [&](CLI::App* s) {
        s->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
        s->add_option("--out", c.out, "output path (default stdout)");
    };
    auto add_sim = [&](CLI::App* s) {
        s->add_option("--samples", c.samples);
        s->add_option("--seed", c.seed, "decimal or 0x-hex; default THETA_TAILS_SEED or 0xC0FFEE");
        s->add_option("--thresholds", c.thresholds, "lo:hi:steps geometric grid of R");
        s->add_option("--workers", c.workers)->check(CLI::Range(1, 1024));
        s->add_option("--fit-lo", c.fit_lo);
        s->add_option("--fit-hi", c.fit_hi);
        s->add_option("--summary", c.summary, "summary JSON path for csv format (default stderr)");
    };

    auto* constants = app.add_subcommand(
        "constants",
        "q, 1/C(q), C(q) for q = 1..q_max; for q = 2 mod 4 the row is the nonzero branch (a or b even)");
    constants->add_option("--q-max", c.q_max);
    add_format(constants);

    auto* orbit = app.add_subcommand("orbit", "orbit sizes S, U, V and leading constant (JSON)");
    add_pair(orbit);
    orbit->add_flag("--points", c.points, "include the enumerated orbit as numerators over q");
    orbit->add_option("--cap", c.cap, "largest q allowed for enumeration");
    orbit->add_option("--out", c.out);

    auto* partition = app.add_subcommand("partition", "orbit representatives of the q-torsion points");
    partition->add_option("--q", c.q);
    add_format(partition);

    auto* curlicue = app.add_subcommand("curlicue", "partial sums S_0..S_N");
    add_pair(curlicue);
    curlicue->add_option("--x", c.x);
    curlicue->add_option("--N", c.N);
    add_format(curlicue);

    auto* tail = app.add_subcommand("tail", "survival of |S_N conj S_rN|/N against T R^-4");
    add_pair(tail);
    tail->add_option("--N", c.N);
    tail->add_option("--r", c.r);
    tail->add_option("--law", c.law)->check(CLI::IsMember({"normal", "uniform01"}));
    add_sim(tail);
    add_format(tail);

    auto* theta_tail = app.add_subcommand("theta-tail", "survival of |Theta_f1 conj Theta_f2| under the orbit measure");
    add_pair(theta_tail);
    theta_tail->add_option("--weights", c.weights, "f1,f2 from gaussian, chi, chi:r");
    add_sim(theta_tail);
    add_format(theta_tail);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    try {
        if (*constants) {
            write_primary(cmd_constants(c), c.out);
        } else if (*orbit) {
            write_primary(cmd_orbit(c), c.out);
        } else if (*partition) {
            write_primary(cmd_partition(c), c.out);
        } else if (*curlicue) {
            write_primary(cmd_curlicue(c), c.out);
        } else {
            auto o = *tail ? cmd_tail(c) : cmd_theta_tail(c);
            write_primary(o.primary, c.out);
            write_summary(o.summary, c.summary);
        }
    } catch (const tt::ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kResource;
    } catch (const tt::NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const tt::UnsupportedOperation& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kOther;
    }
    return kOk;
}
