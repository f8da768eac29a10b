// Acceptance run: one pass/fail line per criterion. Criterion 8 reruns the full suite with the same
// seed and compares the two manifests byte for byte.

#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"acceptance suite"};
    cotan::u64 seed = 42;
    std::string manifest_path;
    app.add_option("--seed", seed);
    app.add_option("--manifest", manifest_path, "write the first manifest here");
    CLI11_PARSE(app, argc, argv);

    using namespace cotan;
    const auto cfg = cli::accept_config("full", seed);
    auto line = [](const accept::Criterion& c) {
        bool ok = c.passed() && c.within_time();
        std::printf("criterion %d %-16s %s  (%.1f s%s)\n", c.id, c.name.c_str(), ok ? "PASS" : "FAIL", c.seconds,
                    c.within_time() ? "" : ", over time limit");
        if (!c.passed())
            for (const auto& k : c.checks)
                if (!k.passed) std::printf("    failed check %s: %.6g %s %.6g\n", k.name.c_str(), k.value, k.relation.c_str(), k.limit);
        std::fflush(stdout);
    };

    auto first = accept::run_suite("full", seed, line);
    bool all = true;
    for (const auto& c : first.criteria) all = all && c.passed() && c.within_time();
    std::string doc1 = cli::accept_document(cfg, first);
    if (!manifest_path.empty()) std::ofstream(manifest_path, std::ios::binary) << doc1;

    auto second = accept::run_suite("full", seed);
    std::string doc2 = cli::accept_document(cfg, second);
    bool same = doc1 == doc2;
    std::printf("criterion 8 %-16s %s  (%zu bytes each)\n", "determinism", same ? "PASS" : "FAIL", doc1.size());
    all = all && same;
    std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}
