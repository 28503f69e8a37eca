#include "pants_cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

struct Run {
    int code = 0;
    std::string out;
    std::string err;

    json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "pants");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = pants::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string full(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

const std::string kSym = full(2 * std::acosh(2.0));
const std::string kExample = "x1 x4- x1 y3 x2 x5- y3- x4- x1 x4- y2 x3- x6 y2-";

TEST(Cli, PathsCount) {
    const auto r = run({"paths", "count", "--length", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.doc(), json::parse(R"({"n":4,"H":12})"));
    EXPECT_EQ(run({"paths", "count", "--length", "7"}).doc()["H"], 0);
}

TEST(Cli, PathsEnumerate) {
    const auto r = run({"paths", "enumerate", "--length", "4", "--primitive"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto d = r.doc();
    EXPECT_EQ(d["count"], 6);
    EXPECT_EQ(d["paths"].size(), 6u);
    EXPECT_EQ(d["paths"][0]["arcs"].get<std::string>().size(), 4u);
    EXPECT_EQ(run({"paths", "enumerate", "--length", "4"}).doc()["count"], 12);
}

TEST(Cli, BudgetFlagIsADomainError) {
    const auto r = run({"--budget", "4", "paths", "enumerate", "--length", "6"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.doc()["error"], "BudgetExceeded");
    // also accepted after the subcommand
    EXPECT_EQ(run({"paths", "enumerate", "--length", "6", "--budget", "4"}).code, 1);
}

TEST(Cli, WordValidateAndIntersect) {
    auto r = run({"word", "validate", "--word", kExample});
    ASSERT_EQ(r.code, 0) << r.out;
    auto d = r.doc();
    EXPECT_EQ(d["length"], 14);
    EXPECT_EQ(d["subword_count"], 4);
    EXPECT_EQ(d["alternating"], true);
    r = run({"word", "intersect", "--word", kExample});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.doc()["i_w"], 26);
}

TEST(Cli, InvalidWordIsADomainError) {
    auto r = run({"word", "validate", "--word", "x1 x2"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.doc()["error"], "NotClosed");
    EXPECT_EQ(r.doc()["index"], 0);
    r = run({"word", "validate", "--word", "x1 q"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.doc()["error"], "InvalidLabel");
}

TEST(Cli, GeometrySolve) {
    const auto r = run({"geometry", "solve", "--boundary", kSym, kSym, kSym});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto d = r.doc();
    EXPECT_NEAR(d["l_max"].get<double>(), std::acosh(2.0), 1e-12);
    EXPECT_NEAR(d["holonomy"]["trace_ab"].get<double>(), -4.0, 1e-9);
    EXPECT_EQ(run({"geometry", "solve", "--boundary", "1", "0", "1"}).code, 1);
}

TEST(Cli, OracleIntersections) {
    const auto r = run({"oracle", "intersections", "--boundary", kSym, kSym, kSym, "--word", kExample});
    ASSERT_EQ(r.code, 0) << r.out;
    const auto d = r.doc();
    EXPECT_EQ(d["i_w"], 26);
    EXPECT_EQ(d["i_geo"], 6);
    EXPECT_EQ(d["pieces"].size(), d["piece_count"].get<std::size_t>());
    const auto powered = run({"oracle", "intersections", "--boundary", kSym, kSym, kSym, "--word",
                              "x1 x4- x1 x4-"});
    EXPECT_EQ(powered.code, 1);
    EXPECT_EQ(powered.doc()["error"], "NotPrimitive");
}

TEST(Cli, CensusExactInputs) {
    const std::string L = full(16 * std::acosh(2.0));
    const auto r = run({"census", "--L", L, "--K", "48", "--boundary", kSym, kSym, kSym});
    ASSERT_EQ(r.code, 0) << r.out;
    const auto d = r.doc();
    EXPECT_EQ(d["schema"], "pants-census/1");
    EXPECT_EQ(d["count"], 12);
    EXPECT_EQ(d["records"].size(), 12u);
    EXPECT_EQ(d["lower_bound"], 4.0);
    EXPECT_EQ(d["orientation"], "oriented");
    EXPECT_TRUE(d["records"][0]["oracle_intersections"].is_null());
}

TEST(Cli, CensusRoundedInputsNeedTolerance) {
    const std::vector<std::string> base{"census", "--L",   "21.07", "--K",  "48",
                                        "--boundary", "2.634", "2.634", "2.634"};
    EXPECT_EQ(run(base).doc()["count"], 6);
    auto loose = base;
    loose.insert(loose.end(), {"--tolerance", "1e-4"});
    EXPECT_EQ(run(loose).doc()["count"], 12);
}

TEST(Cli, CensusWithOracleAndCsv) {
    const std::string L = full(16 * std::acosh(2.0));
    auto r = run({"census", "--L", L, "--K", "48", "--boundary", kSym, kSym, kSym, "--oracle"});
    ASSERT_EQ(r.code, 0);
    for (const auto& rec : r.doc()["records"])
        EXPECT_LE(rec["oracle_intersections"].get<int>(), rec["word_intersection"].get<int>());
    r = run({"--format", "csv", "census", "--L", L, "--K", "48", "--boundary", kSym, kSym, kSym});
    ASSERT_EQ(r.code, 0);
    std::istringstream lines(r.out);
    std::string header, line;
    std::getline(lines, header);
    EXPECT_EQ(header.rfind("path,arcs,path_length,word,", 0), 0u) << header;
    int rows = 0;
    while (std::getline(lines, line))
        ++rows;
    EXPECT_EQ(rows, 12);
}

TEST(Cli, CensusIsByteStable) {
    const std::string L = full(24 * std::acosh(2.0));
    const std::vector<std::string> args{"census", "--L", L, "--K", "108", "--boundary", "1", "2", "3"};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, BoundPants) {
    const std::string lmax = full(std::acosh(2.0));
    const std::string L = full(8 * std::acosh(2.0));
    auto r = run({"bound", "pants", "--L", L, "--K", "12", "--lmax", lmax});
    ASSERT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_EQ(r.doc()["value"], 3.0);
    r = run({"bound", "pants", "--L", L, "--K", "12", "--boundary", kSym, kSym, kSym});
    ASSERT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NEAR(r.doc()["value"].get<double>(), 3.0, 1e-12);
    r = run({"bound", "pants", "--L", L, "--K", "11", "--lmax", lmax});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.doc()["error"], "HypothesisViolated");
    EXPECT_EQ(run({"bound", "pants", "--L", L, "--K", "12"}).code, 2);
    EXPECT_EQ(run({"bound", "pants", "--L", L, "--K", "12", "--lmax", "1", "--boundary", "1", "1",
                   "1"})
                  .code,
              2);
}

TEST(Cli, BoundSurface) {
    const auto r = run({"bound", "surface", "--g", "2", "--n", "0", "--area", "12.566", "--sys",
                        "1", "--cx", "1", "--L", "1000", "--K", "48"});
    ASSERT_EQ(r.code, 0) << r.out;
    const auto d = r.doc();
    const double expected = 4 * std::pow(1000 / (6 * std::sqrt(48.0)), 6);
    EXPECT_NEAR(d["value"].get<double>(), expected, 1e-9 * expected);
    EXPECT_EQ(d["satisfies_L_gt_6_sXprime_sqrtK"], true);
    const auto bad = run({"bound", "surface", "--g", "2", "--n", "0", "--area", "12.566", "--sys",
                          "1", "--cx", "1", "--L", "1000", "--K", "12"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_EQ(bad.doc()["error"], "HypothesisViolated");
}

TEST(Cli, AlphabetDump) {
    const auto r = run({"alphabet", "dump"});
    ASSERT_EQ(r.code, 0);
    const auto d = r.doc();
    EXPECT_EQ(d["letters"].size(), 18u);
    EXPECT_EQ(d["fundamental_group"]["spanning_tree"].size(), 5u);
    EXPECT_EQ(d["fundamental_group"]["free_generators"].size(), 4u);
    EXPECT_EQ(d["letters"][0]["label"], "x1");
    EXPECT_EQ(d["letters"][0]["boundary_successor"], "x4-");
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({"paths", "count"}).code, 2);
    EXPECT_EQ(run({"paths", "count", "--length", "x"}).code, 2);
    EXPECT_EQ(run({"--format", "xml", "paths", "count", "--length", "2"}).code, 2);
    EXPECT_EQ(run({"geometry", "solve", "--boundary", "1", "2"}).code, 2);
    const auto help = run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("census"), std::string::npos);
}

} // namespace
