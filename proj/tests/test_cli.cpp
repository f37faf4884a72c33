#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(HEAR_CLI) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p))
        out.append(buf.data(), n);
    const int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

std::map<std::string, std::string> keys(const std::string& out) {
    std::map<std::string, std::string> m;
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos && line.find(' ') == std::string::npos)
            m[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return m;
}

double num(const std::map<std::string, std::string>& m, const std::string& k) { return std::stod(m.at(k)); }

std::string tmp(const std::string& name) { return std::string(HEAR_TMP) + "/" + name; }

} // namespace

TEST(Cli, Invariants) {
    const auto r = run("invariants --sides 3,4,5");
    ASSERT_EQ(r.code, 0) << r.out;
    const auto k = keys(r.out);
    EXPECT_EQ(k.at("A"), "6");
    EXPECT_EQ(k.at("P"), "12");
    EXPECT_EQ(k.at("f"), "6");
    EXPECT_EQ(k.at("R"), "3.26902386");
    EXPECT_EQ(keys(run("invariants --sides 1,1,1").out).at("R"), "2.86478898");
}

TEST(Cli, InvariantsErrors) {
    const auto bad = run("invariants --sides 1,1,3");
    EXPECT_NE(bad.code, 0);
    EXPECT_NE(bad.out.find("TriangleInequalityViolated"), std::string::npos);
    const auto parse = run("invariants --sides 1,x,3");
    EXPECT_NE(parse.code, 0);
    EXPECT_NE(parse.out.find("line 1, column 3"), std::string::npos);
}

TEST(Cli, Reconstruct) {
    const auto r = run("reconstruct --A 6 --P 12 --R 3.2690198");
    ASSERT_EQ(r.code, 0) << r.out;
    const auto k = keys(r.out);
    EXPECT_NEAR(num(k, "a"), 5.0, 1e-3);
    EXPECT_NEAR(num(k, "b"), 4.0, 3e-3);
    EXPECT_NEAR(num(k, "c"), 3.0, 3e-3);

    const auto e = keys(run("reconstruct --A 0.4330127 --P 3 --R 2.8647890").out);
    for (const char* s : {"a", "b", "c"})
        EXPECT_NEAR(num(e, s), 1.0, 1e-3);

    const auto bad = run("reconstruct --A 1 --P 1 --R 3");
    EXPECT_NE(bad.code, 0);
    EXPECT_NE(bad.out.find("InfeasibleTarget"), std::string::npos);
}

TEST(Cli, ExactEigs) {
    const auto r = run("eigs --half-square 1 --exact -k 5");
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    std::vector<double> v;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#')
            v.push_back(std::stod(line));
    const double pi2 = 9.869604401089358;
    const double ref[5] = {5, 10, 13, 17, 20};
    ASSERT_EQ(v.size(), 5u);
    for (int i = 0; i < 5; ++i)
        EXPECT_NEAR(v[i], ref[i] * pi2, 1e-12 * v[i]);
}

TEST(Cli, FemEigsAscending) {
    const auto r = run("eigs --sides 3,4,5 -n 64 -k 40");
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    std::vector<double> v;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#')
            v.push_back(std::stod(line));
    ASSERT_EQ(v.size(), 40u);
    EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
    EXPECT_NE(r.out.find("# method=fem-h"), std::string::npos);
    const auto g = run("eigs --gww 1 -n 16 -k 10");
    EXPECT_EQ(g.code, 0);
    EXPECT_NE(g.out.find("# k=10"), std::string::npos);
}

TEST(Cli, HearExactAndShort) {
    const std::string f = tmp("hs_exact.txt");
    ASSERT_EQ(run("eigs --half-square 1 --exact --lambda-max 1e5 --output " + f).code, 0);
    const auto r = run("hear " + f);
    ASSERT_EQ(r.code, 0) << r.out;
    const auto k = keys(r.out);
    EXPECT_NEAR(num(k, "a"), std::sqrt(2.0), 0.01 * std::sqrt(2.0));
    EXPECT_NEAR(num(k, "b"), 1.0, 0.01);
    EXPECT_NEAR(num(k, "c"), 1.0, 0.01);
    for (const char* key : {"a0", "a_half", "a1", "A", "P", "R", "residual"})
        EXPECT_TRUE(k.count(key)) << key;

    const std::string s = tmp("hs_short.txt");
    ASSERT_EQ(run("eigs --half-square 1 --exact -k 5 --output " + s).code, 0);
    const auto bad = run("hear " + s);
    EXPECT_NE(bad.code, 0);
    EXPECT_NE(bad.out.find("TailTooLarge"), std::string::npos);
}

TEST(Cli, HearFemEquilateral) {
    const std::string f = tmp("eq_fem.txt");
    ASSERT_EQ(run("eigs --equilateral 1 -n 64 -k 200 --richardson --output " + f).code, 0);
    const auto r = run("hear " + f);
    ASSERT_EQ(r.code, 0) << r.out;
    const auto k = keys(r.out);
    for (const char* s : {"a", "b", "c"})
        EXPECT_NEAR(num(k, s), 1.0, 0.05);
}

TEST(Cli, HearParseDiagnostics) {
    const std::string f = tmp("broken.txt");
    std::ofstream(f) << "# method=exact\n49.3\n98.x\n";
    const auto r = run("hear " + f);
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.out.find("line 3, column 4"), std::string::npos);
}

TEST(Cli, Billiard) {
    const auto a = keys(run("billiard --sides 3,4,5").out);
    EXPECT_EQ(a.at("kind"), "altitude");
    EXPECT_EQ(a.at("l0"), "4.8");
    const auto f = keys(run("billiard --sides 1,1,1").out);
    EXPECT_EQ(f.at("kind"), "fagnano");
    EXPECT_EQ(f.at("l0"), "1.5");
}

TEST(Cli, Isodemo) {
    const auto r = run("isodemo -k 10 --levels 8,16,32");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("shrinking=1"), std::string::npos);
    EXPECT_NE(r.out.find("congruent=0"), std::string::npos);
    EXPECT_NE(run("isodemo -k 10 --levels 32,8").code, 0);
}

TEST(Cli, DeterministicOutput) {
    for (const char* args : {"invariants --sides 2,3,4", "eigs --sides 3,4,5 -n 16 -k 8 --threads 1",
                             "reconstruct --A 6 --P 12 --R 3.26902386"})
        EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, OutputFile) {
    const std::string f = tmp("inv.txt");
    ASSERT_EQ(run("invariants --sides 3,4,5 --output " + f).out, "");
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), run("invariants --sides 3,4,5").out);
}

TEST(Cli, UsageErrors) {
    EXPECT_NE(run("").code, 0);
    EXPECT_NE(run("reconstruct --A 1").code, 0);
    EXPECT_NE(run("eigs --gww 3").code, 0);
}
