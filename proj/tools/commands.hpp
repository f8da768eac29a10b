/**
 * @file commands.hpp
 * @brief Command implementations behind the `cotan` executable. Each writes to a stream and returns an exit code.
 */
#pragma once

#include "acceptance.hpp"
#include "cotan/cotan.hpp"

#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cotan::cli {

using ojson = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kSuiteFailure = 1, kUsage = 2 };

/// Thrown for invalid user input; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    Precision precision = Precision::extended;
    u64 seed = 42;
    std::string output;  // empty: stdout
    std::string format = "csv";
    ojson args = ojson::object();

    // The output path is left out so that the same run written to two files gives identical bytes.
    ojson to_json() const {
        ojson j;
        j["command"] = command;
        j["precision"] = precision == Precision::extended ? "extended" : "double";
        j["seed"] = seed;
        j["format"] = format;
        j["args"] = args;
        return j;
    }
    std::string canonical() const { return to_json().dump(); }
    std::string header() const { return output_header(command, canonical()); }
    bool json() const { return format == "json"; }
};

inline void csv_preamble(const RunConfig& cfg, std::ostream& out) {
    out << cfg.header() << "\n# config " << cfg.canonical() << "\n";
}

inline ojson json_preamble(const RunConfig& cfg) {
    ojson j;
    j["header"] = cfg.header();
    j["config"] = cfg.to_json();
    return j;
}

// nlohmann serializes doubles in shortest round-trip form, which is deterministic; CSV uses %.17g.
inline std::string num(double v) { return format_real(v); }

inline ReducedFraction checked_fraction(i64 r, i64 b) {
    if (b < 2) throw UsageError("b must be >= 2");
    if (r < 1 || r > b) throw UsageError("r must satisfy 1 <= r <= b");
    if (gcd64(r, b) != 1) throw UsageError("r and b are not coprime: " + std::to_string(r) + "/" + std::to_string(b));
    return ReducedFraction(r, b);
}

// ---------------------------------------------------------------------------------------------

inline int cmd_c0(const RunConfig& cfg, i64 r, i64 b, const std::string& method, std::ostream& out) {
    ReducedFraction x = checked_fraction(r, b);
    if (method != "naive" && method != "fast" && method != "asymptotic" && method != "all")
        throw UsageError("unknown method: " + method);
    std::vector<SumValue> rows;
    if (method == "naive" || method == "all") rows.push_back(c0_naive(x, cfg.precision));
    if (method == "fast" || method == "all") rows.push_back(c0_fast(x));
    if (method == "asymptotic" || method == "all") rows.push_back(c0_asymptotic(b, b >= 6 ? 1 : 0, x.r()));

    struct Pair {
        std::string a, b;
        double diff, bound;
    };
    std::vector<Pair> agree;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j)
            agree.push_back({method_name(rows[i].method), method_name(rows[j].method), std::abs(rows[i].value - rows[j].value),
                             rows[i].error_bound + rows[j].error_bound});

    if (cfg.json()) {
        ojson j = json_preamble(cfg);
        ojson res = ojson::array();
        for (const auto& v : rows) res.push_back({{"r", x.r()}, {"b", b}, {"method", method_name(v.method)}, {"value", v.value}, {"error_bound", v.error_bound}});
        j["results"] = res;
        if (!agree.empty()) {
            ojson ag = ojson::array();
            for (const auto& p : agree)
                ag.push_back({{"method_a", p.a}, {"method_b", p.b}, {"abs_diff", p.diff}, {"combined_bound", p.bound}, {"within", p.diff <= p.bound}});
            j["agreement"] = ag;
        }
        out << j.dump(2) << "\n";
        return kOk;
    }
    csv_preamble(cfg, out);
    out << "r,b,method,value,error_bound\n";
    for (const auto& v : rows)
        out << csv_row({std::to_string(x.r()), std::to_string(b), method_name(v.method), num(v.value), num(v.error_bound)}) << "\n";
    if (!agree.empty()) {
        out << "# agreement\nmethod_a,method_b,abs_diff,combined_bound,within\n";
        for (const auto& p : agree)
            out << csv_row({p.a, p.b, num(p.diff), num(p.bound), p.diff <= p.bound ? "1" : "0"}) << "\n";
    }
    return kOk;
}

inline int cmd_ellipse(const RunConfig& cfg, i64 b, std::optional<std::pair<double, double>> range, std::ostream& out) {
    if (b < 3) throw UsageError("ellipse: b must be >= 3");
    if (b > 2'000'000) throw UsageError("ellipse: b must be <= 2000000");
    if (range && !(range->first >= 0.0 && range->first < range->second && range->second <= 1.0))
        throw UsageError("ellipse: range must satisfy 0 <= A0 < A1 <= 1");
    const bool naive = b <= 20000;
    std::vector<double> all = naive ? c0_naive_all(b) : std::vector<double>{};
    std::vector<i64> rs;
    for (i64 r = 1; r < b; ++r) {
        if (gcd64(r, b) != 1) continue;
        double t = static_cast<double>(r) / static_cast<double>(b);
        if (range && !(t > range->first && t < range->second)) continue;
        rs.push_back(r);
    }
    // Σ_k |cot(πk/b)| bounds the weighted magnitude for every r, so one rounding bound serves the whole row set
    long double mag = 0.0L;
    if (naive)
        for (i64 k = 1; k < b; ++k) mag += std::abs(cot_pi_frac(k, b));
    std::vector<SumValue> vals(rs.size());
    parallel_for(static_cast<std::int64_t>(rs.size()), [&](std::int64_t i) {
        ReducedFraction x(rs[i], b);
        if (!naive) {
            vals[i] = c0_fast(x);
        } else if (cfg.precision == Precision::double_) {
            vals[i] = c0_naive(x, cfg.precision);
        } else {
            double v = all[rs[i]];
            double err = static_cast<double>(mag) * (8.0 * 1.1e-19 + 1.1e-19 * 0.5 * static_cast<double>(b)) + 2.3e-16 * std::abs(v);
            vals[i] = {v, Method::naive, err};
        }
    });
    if (cfg.json()) {
        ojson j = json_preamble(cfg);
        ojson rows = ojson::array();
        for (std::size_t i = 0; i < rs.size(); ++i)
            rows.push_back({{"r", rs[i]}, {"c0", vals[i].value}, {"method", method_name(vals[i].method)}, {"error_bound", vals[i].error_bound}});
        j["rows"] = rows;
        out << j.dump(1) << "\n";
        return kOk;
    }
    csv_preamble(cfg, out);
    out << "r,c0,method,error_bound\n";
    for (std::size_t i = 0; i < rs.size(); ++i)
        out << csv_row({std::to_string(rs[i]), num(vals[i].value), method_name(vals[i].method), num(vals[i].error_bound)}) << "\n";
    return kOk;
}

inline int cmd_equidist(const RunConfig& cfg, i64 b, double A0, double A1, int k_max, i64 samples, std::ostream& out) {
    if (!(A0 > 0.5 && A0 < A1 && A1 < 1.0)) throw UsageError("equidist: need 1/2 < A0 < A1 < 1");
    if (b < 101) throw UsageError("equidist: b must be >= 101");
    if (k_max < 1 || k_max > 6) throw UsageError("equidist: k_max must lie in [1, 6]");
    std::vector<double> H{kH1}, Hse{0.0};
    std::vector<std::string> Hsrc{"exact"};
    if (k_max >= 2) {
        MCConfig mc;
        mc.samples = samples;
        mc.seed = cfg.seed;
        MomentTable mt = moments(k_max, mc);
        for (int k = 2; k <= k_max; ++k) {
            H.push_back(mt.entries[k - 1].H);
            Hse.push_back(mt.entries[k - 1].H_stderr);
            Hsrc.push_back("monte_carlo");
        }
    }
    StripMoments sm = strip_moments(b, A0, A1, H);
    if (cfg.json()) {
        ojson j = json_preamble(cfg);
        j["fractions_in_strip"] = sm.count;
        ojson rows = ojson::array();
        for (const auto& r : sm.rows)
            rows.push_back({{"k", r.k}, {"even", r.even}, {"even_target", r.even_target}, {"ratio", r.even / r.even_target},
                            {"H_source", Hsrc[r.k - 1]}, {"H_stderr", Hse[r.k - 1]}, {"odd_normalized", r.odd},
                            {"q_even", r.q_even}, {"q_target", r.q_target}, {"q_odd_normalized", r.q_odd}});
        j["rows"] = rows;
        out << j.dump(2) << "\n";
        return kOk;
    }
    csv_preamble(cfg, out);
    out << "# fractions_in_strip " << sm.count << "\n";
    out << "k,even,even_target,ratio,H_source,H_stderr,odd_normalized,q_even,q_target,q_odd_normalized\n";
    for (const auto& r : sm.rows)
        out << csv_row({std::to_string(r.k), num(r.even), num(r.even_target), num(r.even / r.even_target), Hsrc[r.k - 1],
                        num(Hse[r.k - 1]), num(r.odd), num(r.q_even), num(r.q_target), num(r.q_odd)})
            << "\n";
    return kOk;
}

inline int cmd_dn(const RunConfig& cfg, int N, const std::string& kind, std::ostream& out) {
    if (N < 1 || N > 2000) throw UsageError("dn: N must lie in [1, 2000]");
    if (kind != "vn" && kind != "optimal" && kind != "both") throw UsageError("dn: kind must be vn, optimal or both");
    if (kind == "vn" && N < 2) throw UsageError("dn: V_N needs N >= 2");
    GramSystem full = assemble_gram(N);
    std::vector<GramSystem> rows;
    if (kind != "vn") rows.push_back(d_squared_from(full, N, DKind::optimal));
    if (kind != "optimal" && N >= 2) rows.push_back(d_squared_from(full, N, DKind::v_n_polynomial));
    // forward-error estimate of the quadratic form: eps * N * ||G|| / λ_min
    auto estimate = [&](const GramSystem& g) {
        double gn = g.G.cwiseAbs().rowwise().sum().maxCoeff();
        return 2.3e-16 * g.N * gn / std::max(g.min_eigenvalue, 1e-300) * std::max(1.0, g.coeffs.squaredNorm());
    };
    if (cfg.json()) {
        ojson j = json_preamble(cfg);
        ojson res = ojson::array();
        for (const auto& g : rows)
            res.push_back({{"N", g.N}, {"kind", dkind_name(g.kind)}, {"d2", g.d2}, {"error_estimate", estimate(g)}, {"min_eigenvalue", g.min_eigenvalue}});
        j["results"] = res;
        out << j.dump(2) << "\n";
        return kOk;
    }
    csv_preamble(cfg, out);
    out << "N,kind,d2,error_estimate,min_eigenvalue\n";
    for (const auto& g : rows)
        out << csv_row({std::to_string(g.N), dkind_name(g.kind), num(g.d2), num(estimate(g)), num(g.min_eigenvalue)}) << "\n";
    return kOk;
}

/// Always JSON: timings are the payload.
inline int cmd_bench(const RunConfig& cfg, const std::vector<i64>& bs, std::ostream& out) {
    if (bs.empty()) throw UsageError("bench: give at least one b");
    for (i64 b : bs)
        if (b < 3 || b >= kMaxDenominator) throw UsageError("bench: b out of range");
    auto recs = bench_c0(bs);
    ojson j = json_preamble(cfg);
    ojson arr = ojson::array();
    for (const auto& r : recs)
        arr.push_back({{"b", r.b}, {"method", r.method}, {"nanoseconds", r.nanoseconds}, {"value", r.value}, {"error_bound", r.error_bound}, {"steps", r.steps}});
    j["records"] = arr;
    out << j.dump(2) << "\n";
    return kOk;
}

inline int cmd_max(const RunConfig& cfg, i64 b, double C, double A0, std::optional<double> omega, bool naive, std::ostream& out) {
    if (b < 3) throw UsageError("max: b must be >= 3");
    if (!(C > 0 && C < 0.5)) throw UsageError("max: C must lie in (0, 1/2)");
    if (!(A0 > 0 && A0 < 1)) throw UsageError("max: A0 must lie in (0, 1)");
    MaxScanResult m;
    try {
        m = max_scan(b, C, A0, omega, naive);
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
    SumValue at = c0_naive(ReducedFraction(m.argmax, b), cfg.precision);
    if (cfg.json()) {
        ojson j = json_preamble(cfg);
        j["result"] = {{"b", m.b}, {"C", m.C}, {"A0", m.A0}, {"Delta", m.Delta}, {"r_lo", m.r_lo}, {"r_hi", m.r_hi},
                       {"coprime_in_strip", m.coprime_in_strip}, {"argmax", m.argmax}, {"M", m.M}, {"method", "naive"},
                       {"error_bound", at.error_bound}, {"observed_D", m.observed_D}};
        if (m.N) j["result"]["N"] = *m.N;
        out << j.dump(2) << "\n";
        return kOk;
    }
    csv_preamble(cfg, out);
    out << "b,C,A0,Delta,r_lo,r_hi,coprime_in_strip,argmax,M,method,error_bound,observed_D,N\n";
    out << csv_row({std::to_string(m.b), num(m.C), num(m.A0), num(m.Delta), std::to_string(m.r_lo), std::to_string(m.r_hi),
                    std::to_string(m.coprime_in_strip), std::to_string(m.argmax), num(m.M), "naive", num(at.error_bound),
                    num(m.observed_D), m.N ? std::to_string(*m.N) : ""})
        << "\n";
    return kOk;
}

inline int cmd_moments(const RunConfig& cfg, int k_max, i64 samples, std::ostream& out) {
    if (k_max < 1 || k_max > 10) throw UsageError("moments: k_max must lie in [1, 10]");
    if (samples < 1000) throw UsageError("moments: samples must be >= 1000");
    MCConfig mc;
    mc.samples = samples;
    mc.seed = cfg.seed;
    MomentTable mt = moments(k_max, mc);
    if (cfg.json()) {
        ojson j = json_preamble(cfg);
        ojson arr = ojson::array();
        for (const auto& e : mt.entries)
            arr.push_back({{"k", e.k}, {"H", e.H}, {"H_stderr", e.H_stderr}, {"E", e.E}, {"E_stderr", e.E_stderr}, {"method", "monte_carlo"}});
        j["moments"] = arr;
        j["H1_exact"] = kH1;
        j["variance_warning"] = mt.variance_warning;
        out << j.dump(2) << "\n";
        return kOk;
    }
    csv_preamble(cfg, out);
    if (mt.variance_warning) out << "# warning: Monte Carlo variance is large for the highest moments\n";
    out << "k,H,H_stderr,E,E_stderr,method\n";
    for (const auto& e : mt.entries)
        out << csv_row({std::to_string(e.k), num(e.H), num(e.H_stderr), num(e.E), num(e.E_stderr), "monte_carlo"}) << "\n";
    out << csv_row({"1", num(kH1), "0", num(kH1 / 3.0), "0", "exact"}) << "\n";
    return kOk;
}

inline std::string accept_document(const RunConfig& cfg, const accept::SuiteRun& run) {
    ojson j = json_preamble(cfg);
    for (auto& [k, v] : run.manifest.items()) j[k] = v;
    return j.dump(2) + "\n";
}

/// accept with the configuration the command line builds for `accept <suite> --seed <seed>`.
inline RunConfig accept_config(const std::string& suite, u64 seed) {
    RunConfig cfg;
    cfg.command = "accept";
    cfg.format = "json";
    cfg.seed = seed;
    cfg.args = {{"suite", suite}};
    return cfg;
}

/// JSON manifest; exit 1 when any criterion fails.
inline int cmd_accept(const RunConfig& cfg, const std::string& suite, std::ostream& out, std::ostream* progress = nullptr) {
    bool known = false;
    for (const auto& n : accept::suite_names()) known = known || n == suite;
    if (!known) throw UsageError("accept: unknown suite " + suite);
    auto run = accept::run_suite(suite, cfg.seed, [&](const accept::Criterion& c) {
        if (progress) *progress << "criterion " << c.id << " " << c.name << ": " << (c.passed() ? "pass" : "FAIL") << "\n" << std::flush;
    });
    out << accept_document(cfg, run);
    return run.passed ? kOk : kSuiteFailure;
}

}  // namespace cotan::cli
