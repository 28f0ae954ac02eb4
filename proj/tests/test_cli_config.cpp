#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args)
{
    const std::string cmd = std::string(LLC_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    CliRun r;
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string write_cfg(const std::string& name, const std::string& body)
{
    const std::string path = testing::TempDir() + name;
    std::ofstream(path) << body;
    return path;
}

const std::string identical = "nu_plus = 0.3\nmu_plus = 1\nnu_minus = 0.3\nmu_minus = 1\n";

}  // namespace

TEST(Cli, ConstantsIdentical)
{
    const CliRun r = run("constants --config " + write_cfg("same.cfg", identical));
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("\"epsilon\": 0.0"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("\"gamma\": 0.86130"), std::string::npos) << r.out;
}

TEST(Cli, MissingKey)
{
    const CliRun r = run("constants --config " + write_cfg("missing.cfg", "nu_plus = 0.3\nmu_plus = 1\nnu_minus = 0.3\n"));
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("mu_minus"), std::string::npos) << r.out;
}

TEST(Cli, UnknownKey)
{
    const CliRun r = run("constants --config " + write_cfg("unknown.cfg", identical + "mu_pluss = 2\n"));
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, FlagOverridesFile)
{
    const CliRun a = run("constants --config " + write_cfg("over.cfg", identical) + " --mu_plus 3");
    const CliRun b = run("constants --nu_plus 0.3 --mu_plus 3 --nu_minus 0.3 --mu_minus 1");
    ASSERT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.find("\"epsilon\": 0.0,"), std::string::npos);
}

TEST(Cli, SweepReproducible)
{
    const std::string args = "sweep --nu_plus 0 --nu_minus 0.5 --eta_steps 21";
    const CliRun a = run(args + " --threads 1"), b = run(args + " --threads 3");
    ASSERT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 22);
}

TEST(Cli, VerifyExample)
{
    const CliRun r = run("verify --config " + std::string(LLC_EXAMPLES_DIR) + "/verify_stiff_soft.cfg");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}

TEST(Cli, BadFormat)
{
    EXPECT_EQ(run("constants --nu_plus 0.3 --mu_plus 1 --nu_minus 0.3 --mu_minus 1 --format xml").code, 2);
}

TEST(Cli, BadCommand)
{
    EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, InvalidMaterial)
{
    EXPECT_EQ(run("constants --nu_plus 0.7 --mu_plus 1 --nu_minus 0.3 --mu_minus 1").code, 2);
}
