#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path()
            / ("cfgn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    Result run(const std::string& args) const {
        const std::string cmd = std::string(CFGN_CLI_PATH) + " " + args + " >" + (dir / "stdout").string() + " 2>"
                              + (dir / "stderr").string();
        const int status = std::system(cmd.c_str());
        Result r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(dir / "stdout");
        r.err = slurp(dir / "stderr");
        return r;
    }

    fs::path write_config(const std::string& name, const std::string& text) const {
        const fs::path p = dir / name;
        std::ofstream(p) << text;
        return p;
    }

    fs::path dir;
};

std::size_t data_rows(const std::string& csv) {
    std::size_t rows = 0;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') ++rows;
    return rows;
}

} // namespace

TEST_F(Cli, TheoryWritesAcvfTable) {
    const auto r = run("theory --out " + (dir / "t").string());
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string csv = slurp(dir / "t" / "theory_acvf.csv");
    EXPECT_EQ(csv.rfind("# artifact=theory_acvf\n", 0), 0u);
    EXPECT_NE(csv.find("\nh,gamma_theory\n"), std::string::npos);
    EXPECT_EQ(data_rows(csv), 1u + 21u);
    EXPECT_NE(r.out.find("\"subcommand\":\"theory\""), std::string::npos) << r.out;
}

TEST_F(Cli, SimulateIsReproducible) {
    const auto cfg = write_config("small.toml", "[simulation]\nn_points = 16\nreps = 20\n");
    const auto a = run("simulate --config " + cfg.string() + " --seed 7 --out " + (dir / "a").string());
    const auto b = run("simulate --config " + cfg.string() + " --seed 7 --out " + (dir / "b").string());
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    const std::string ea = slurp(dir / "a" / "ensemble.csv");
    EXPECT_FALSE(ea.empty());
    EXPECT_EQ(ea, slurp(dir / "b" / "ensemble.csv"));
    EXPECT_EQ(data_rows(ea), 1u + 16u * 20u);
    const auto c = run("simulate --config " + cfg.string() + " --seed 8 --out " + (dir / "c").string());
    ASSERT_EQ(c.code, 0);
    EXPECT_NE(ea, slurp(dir / "c" / "ensemble.csv"));
}

TEST_F(Cli, BadVariantIsConfigError) {
    const auto r = run("theory --variant anticausal --out " + dir.string());
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("\"error\":\"ConfigError\""), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("\"exit_code\":2"), std::string::npos);
}

TEST_F(Cli, MalformedConfigIsConfigError) {
    const auto cfg = write_config("bad.toml", "[process]\nh1 = 0.3\nnonsense\n");
    const auto r = run("theory --config " + cfg.string() + " --out " + dir.string());
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
    const auto missing = run("theory --config " + (dir / "nope.toml").string());
    EXPECT_EQ(missing.code, 2);
}

TEST_F(Cli, SingularParametersAreConfigErrors) {
    const auto cfg = write_config("sing.toml", "[process]\nh1 = 0.3\nh2 = 0.7\nrho = 0.1\n");
    const auto r = run("theory --config " + cfg.string() + " --out " + dir.string());
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("SingularParameter"), std::string::npos) << r.err;
}

TEST_F(Cli, MissingSubcommandIsConfigError) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("plot").code, 2);
}

TEST_F(Cli, ComparePassesOnAllSixCells) {
    for (const char* rho : {"-0.15", "0", "0.15"}) {
        const auto cfg = write_config(std::string("rho") + rho + ".toml", std::string("[process]\nrho = ") + rho + "\n");
        for (const char* variant : {"causal", "wellbalanced"}) {
            const fs::path out = dir / (std::string(variant) + rho);
            const auto r = run("compare --config " + cfg.string() + " --variant " + variant + " --seed 11 --out "
                               + out.string());
            EXPECT_EQ(r.code, 0) << variant << " rho=" << rho << "\n" << r.out << r.err;
            EXPECT_TRUE(fs::exists(out / "compare_summary.json"));
            EXPECT_TRUE(fs::exists(out / "compare_acvf.csv"));
        }
    }
}

TEST_F(Cli, IrrationalModulationIsNumericalError) {
    const auto cfg = write_config("irr.toml", "[process]\nlambda0_over_pi = 0.3183098861837907\n"
                                              "[simulation]\nreps = 50\n");
    const auto r = run("compare --config " + cfg.string() + " --out " + dir.string());
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("\"error\":\"PeriodMismatch\""), std::string::npos) << r.err;
}

TEST_F(Cli, TightToleranceFailsComparison) {
    const auto cfg = write_config("tight.toml", "[simulation]\nreps = 200\n");
    const auto r = run("compare --config " + cfg.string() + " --tol 0.01 --out " + dir.string());
    EXPECT_EQ(r.code, 1) << r.err;
}
