// Runs the cotan binary and inspects its output.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <regex>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(COTAN_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

int data_rows(const std::string& s) {
    std::istringstream in(s);
    std::string line;
    int n = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        ++n;
    }
    return n;
}

}  // namespace

TEST(Cli, HeaderLine) {
    auto r = run("c0 1 3");
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string first, second;
    std::getline(in, first);
    std::getline(in, second);
    EXPECT_TRUE(std::regex_match(first, std::regex("# cotan-rh v1 c0 [0-9a-f]{16}"))) << first;
    EXPECT_EQ(second.rfind("# config {", 0), 0u) << second;
    EXPECT_NE(r.out.find("0.19245008972987"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("c0 2 4").code, 2);
    EXPECT_EQ(run("c0 1 1").code, 2);
    EXPECT_EQ(run("nosuchcommand").code, 2);
    EXPECT_EQ(run("c0 1 3 --method bogus").code, 2);
    EXPECT_EQ(run("dn 0").code, 2);
    EXPECT_EQ(run("c0 1 2").code, 0);
}

TEST(Cli, EllipseRowCounts) {
    auto a = run("ellipse 1021");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(data_rows(a.out), 1020);
    auto b = run("ellipse 1357");
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(data_rows(b.out), 1276);  // φ(1357) = φ(23)φ(59)
}

TEST(Cli, JsonFormat) {
    auto r = run("dn 1 --kind optimal --format json");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.contains("header"));
    EXPECT_TRUE(j.contains("config"));
    EXPECT_NE(r.out.find("0.85821205139551"), std::string::npos);
}

TEST(Cli, RepeatedRunsAreIdentical) {
    auto a = run("moments --k-max 2 --samples 20000 --seed 7");
    auto b = run("moments --k-max 2 --samples 20000 --seed 7");
    auto c = run("moments --k-max 2 --samples 20000 --seed 8");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, c.out);
}

TEST(Cli, Bench) {
    auto r = run("bench 1009");
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(nlohmann::json::accept(r.out));
}
