// cotan: command-line front end for the cotangent-sum library.

#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

using namespace cotan;
using cli::RunConfig;

namespace {

const char* kFooter =
    "Output: CSV with a '# cotan-rh v1 <command> <config-hash>' header line and a '# config <json>' line;\n"
    "reals are printed with 17 significant digits. --format json emits one JSON document carrying the same\n"
    "header and config. bench and accept always emit JSON.\n"
    "Exit codes: 0 success, 1 acceptance failure, 2 usage error. COTAN_THREADS caps worker threads.";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cotangent sums, reciprocity, moments and Nyman-Beurling distances"};
    app.footer(kFooter);
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    RunConfig cfg;
    std::string precision = "extended";
    app.add_option("--precision", precision, "Arithmetic for direct sums")->check(CLI::IsMember({"double", "extended"}));
    app.add_option("--seed", cfg.seed, "Seed for Monte Carlo commands");
    app.add_option("-o,--output", cfg.output, "Write to this file instead of stdout");
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // c0
    i64 r = 0, b = 0;
    std::string method = "all";
    auto* c0 = app.add_subcommand("c0", "c_0(r/b) by one or all methods");
    c0->add_option("r", r)->required();
    c0->add_option("b", b)->required();
    c0->add_option("--method", method)->check(CLI::IsMember({"naive", "fast", "asymptotic", "all"}));

    // ellipse
    i64 eb = 0;
    std::vector<double> range;
    auto* ell = app.add_subcommand("ellipse", "CSV of (r, c_0(r/b)) over reduced r");
    ell->add_option("b", eb)->required();
    ell->add_option("--range", range, "A0 A1")->expected(2);

    // equidist
    i64 qb = 0;
    double qA0 = 0.55, qA1 = 0.95;
    int qk = 2;
    i64 qsamples = 1'000'000;
    auto* eq = app.add_subcommand("equidist", "strip moments of c_0 against H_k");
    eq->add_option("b", qb)->required();
    eq->add_option("A0", qA0);
    eq->add_option("A1", qA1);
    eq->add_option("k_max", qk);
    eq->add_option("--samples", qsamples, "Monte Carlo samples for H_k, k >= 2");

    // dn
    int dN = 1;
    std::string kind = "both";
    auto* dn = app.add_subcommand("dn", "Nyman-Beurling distance d_N^2");
    dn->add_option("N", dN)->required();
    dn->add_option("--kind", kind)->check(CLI::IsMember({"vn", "optimal", "both"}));

    // bench
    std::vector<i64> bs;
    auto* bench = app.add_subcommand("bench", "time naive and fast c_0");
    bench->add_option("b", bs)->required();

    // max
    i64 mb = 0;
    double mC = 0.4, mA0 = 0.3;
    std::optional<double> omega;
    bool mnaive = false;
    auto* mx = app.add_subcommand("max", "M(b, C, A0) over a short strip");
    mx->add_option("b", mb)->required();
    mx->add_option("C", mC);
    mx->add_option("A0", mA0);
    mx->add_option("--omega", omega, "also count N(b, Delta, Omega)");
    mx->add_flag("--naive", mnaive, "scan with the direct sum");

    // moments
    int mk = 2;
    i64 msamples = 1'000'000;
    auto* mo = app.add_subcommand("moments", "H_k and E_k by stratified Monte Carlo");
    mo->add_option("--k-max", mk);
    mo->add_option("--samples", msamples);

    // accept
    std::string suite = "full";
    bool quiet = false;
    auto* ac = app.add_subcommand("accept", "run the acceptance suite and emit a JSON manifest");
    ac->add_option("suite", suite)->check(CLI::IsMember(accept::suite_names()));
    ac->add_flag("-q,--quiet", quiet, "no progress on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kUsage;
    }
    cfg.precision = precision == "double" ? Precision::double_ : Precision::extended;

    std::unique_ptr<std::ofstream> file;
    std::ostream* out = &std::cout;
    if (!cfg.output.empty()) {
        file = std::make_unique<std::ofstream>(cfg.output, std::ios::binary);
        if (!*file) {
            std::cerr << "error: cannot open " << cfg.output << "\n";
            return cli::kUsage;
        }
        out = file.get();
    }

    try {
        if (*c0) {
            cfg.command = "c0";
            cfg.args = {{"r", r}, {"b", b}, {"method", method}};
            return cli::cmd_c0(cfg, r, b, method, *out);
        }
        if (*ell) {
            cfg.command = "ellipse";
            std::optional<std::pair<double, double>> rg;
            cfg.args = {{"b", eb}};
            if (range.size() == 2) {
                rg = std::make_pair(range[0], range[1]);
                cfg.args["range"] = range;
            }
            return cli::cmd_ellipse(cfg, eb, rg, *out);
        }
        if (*eq) {
            cfg.command = "equidist";
            cfg.args = {{"b", qb}, {"A0", qA0}, {"A1", qA1}, {"k_max", qk}, {"samples", qsamples}};
            return cli::cmd_equidist(cfg, qb, qA0, qA1, qk, qsamples, *out);
        }
        if (*dn) {
            cfg.command = "dn";
            cfg.args = {{"N", dN}, {"kind", kind}};
            return cli::cmd_dn(cfg, dN, kind, *out);
        }
        if (*bench) {
            cfg.command = "bench";
            cfg.format = "json";
            cfg.args = {{"b", bs}};
            return cli::cmd_bench(cfg, bs, *out);
        }
        if (*mx) {
            cfg.command = "max";
            cfg.args = {{"b", mb}, {"C", mC}, {"A0", mA0}, {"naive", mnaive}};
            if (omega) cfg.args["omega"] = *omega;
            return cli::cmd_max(cfg, mb, mC, mA0, omega, mnaive, *out);
        }
        if (*mo) {
            cfg.command = "moments";
            cfg.args = {{"k_max", mk}, {"samples", msamples}};
            return cli::cmd_moments(cfg, mk, msamples, *out);
        }
        if (*ac) {
            RunConfig ac_cfg = cli::accept_config(suite, cfg.seed);
            ac_cfg.precision = cfg.precision;
            cfg = ac_cfg;
            return cli::cmd_accept(cfg, suite, *out, quiet ? nullptr : &std::cerr);
        }
    } catch (const cli::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kSuiteFailure;
    }
    return cli::kUsage;
}
