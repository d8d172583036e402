#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>
#include <sys/wait.h>

namespace {

struct Run
{
    int code = -1;
    nlohmann::json report;
};

std::filesystem::path scratch(std::string const & name)
{
    return std::filesystem::temp_directory_path() / ("topo_cli_test_" + std::to_string(::getpid()) + "_" + name);
}

Run run(std::string const & args)
{
    auto out = scratch("out.json");
    std::string cmd = std::string(TOPO_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
    int st = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    std::ifstream in(out);
    std::stringstream buf;
    buf << in.rdbuf();
    if (!buf.str().empty())
        r.report = nlohmann::json::parse(buf.str(), nullptr, false);
    std::filesystem::remove(out);
    return r;
}

void expect_report_shape(nlohmann::json const & j)
{
    for (auto key : {"command", "inputs", "precision_bits", "results", "checks", "pass", "wall_clock_seconds"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_TRUE(j["wall_clock_seconds"].is_string());
}

} // namespace

TEST(Cli, SeriesPasses)
{
    auto r = run("series hurwitz_quarter --tol 1e-5 --prec 128");
    ASSERT_EQ(r.code, 0);
    expect_report_shape(r.report);
    EXPECT_EQ(r.report["precision_bits"], 128);
    EXPECT_TRUE(r.report["pass"].get<bool>());
    auto v = r.report["results"]["series"]["value"];
    EXPECT_EQ(v["bits"], 128);
    EXPECT_EQ(v["decimal"].get<std::string>().substr(0, 12), "0.7853981633");
}

TEST(Cli, River)
{
    auto r = run("river 8 --prec 128");
    ASSERT_EQ(r.code, 0);
    expect_report_shape(r.report);
    EXPECT_EQ(r.report["results"]["pell"]["t"], "6");
    EXPECT_EQ(r.report["results"]["period_length"], 4);
}

TEST(Cli, DepthZeroPartial)
{
    auto r = run("sum-rst --root 1,0,1 --depth 0");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.report["results"]["direct_partial"], "0");
    EXPECT_EQ(r.report["results"]["telescoped_partial"], "0");
}

TEST(Cli, TelescopedPartials)
{
    auto r = run("sum-efg --root 1,2,2 --depth 1");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.report["results"]["telescoped_partial"], "1/48");
    EXPECT_EQ(r.report["results"]["direct_partial"], "1/48");
}

TEST(Cli, ClassNumber)
{
    auto r = run("class-number -23");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.report["results"]["h"], 3);
}

TEST(Cli, ExportWritesDotAndJson)
{
    auto dot = scratch("t.dot");
    auto js = scratch("t.json");
    std::string cmd = std::string(TOPO_CLI_PATH) + " export --root 2,5,2 --depth 2 --dot " + dot.string() +
                      " --json " + js.string();
    ASSERT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 0);
    std::ifstream d(dot), j(js);
    std::stringstream db, jb;
    db << d.rdbuf();
    jb << j.rdbuf();
    EXPECT_NE(db.str().find("digraph"), std::string::npos);
    auto rep = nlohmann::json::parse(jb.str());
    EXPECT_EQ(rep["results"]["topograph"]["vertices"].size(), 3u);
    std::filesystem::remove(dot);
    std::filesystem::remove(js);
}

TEST(Cli, UsageErrorsExitTwo)
{
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("bogus").code, 2);
    EXPECT_EQ(run("series nope").code, 2);
    EXPECT_EQ(run("sum-rst").code, 2);
    EXPECT_EQ(run("sum-rst --root 1,x,1").code, 2);
    EXPECT_EQ(run("river 9").code, 2);
    EXPECT_EQ(run("river -4").code, 2);
    EXPECT_EQ(run("series mu_family --mu -1").code, 2);
    EXPECT_EQ(run("series hurwitz_quarter --prec 8").code, 2);
}

TEST(Cli, FailureExitsOne)
{
    // the root vertex has a zero region: the report carries the error
    auto r = run("sum-rst --root 1,3,0 --depth 2");
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(r.report["pass"].get<bool>());
    EXPECT_TRUE(r.report.contains("error"));
}

TEST(Cli, VerifySubset)
{
    auto r = run("verify-all --only 5,9");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.report["results"]["criteria"].size(), 2u);
}
