#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "cfgn/config.hpp"
#include "cfgn/error.hpp"
#include "cfgn/experiment.hpp"

using namespace cfgn;

namespace {

ErrorKind parse_kind(const std::string& text, std::string* message = nullptr) {
    try {
        (void)parse_config(text);
    } catch (const Error& e) {
        if (message) *message = e.what();
        return e.kind();
    }
    ADD_FAILURE() << "accepted: " << text;
    return ErrorKind::io_error;
}

} // namespace

TEST(Config, EmptyTextGivesDefaults) {
    const auto c = parse_config("");
    EXPECT_EQ(c, ExperimentConfig{});
    EXPECT_EQ(c.h1, 0.4);
    EXPECT_EQ(c.reps, 10000);
    EXPECT_EQ(c.variant, Variant::causal);
    EXPECT_TRUE(c.wants("spectrum"));
    EXPECT_FALSE(c.wants("periodogram"));
}

TEST(Config, ParsesAllTables) {
    const auto c = parse_config(R"(# experiment
[process]
h1 = 0.85
h2 = 0.4   # trailing comment
rho = -0.15
variant = "wellbalanced"
lambda0_over_pi = 0.2
a2 = 0.5
half_limit = true

[simulation]
n_points = 128
reps = 500
seed = 18446744073709551615
threads = 4

[estimation]
window = "bartlett"
tol = 3.5
spectrum_h_max = 64

[freq_grid]
count = 8
max_over_pi = 0.5

[output]
dir = "results/run 1"
statistics = ["acvf", "spectrum"]
)");
    EXPECT_EQ(c.h1, 0.85);
    EXPECT_EQ(c.h2, 0.4);
    EXPECT_EQ(c.rho, -0.15);
    EXPECT_EQ(c.variant, Variant::well_balanced);
    EXPECT_EQ(c.a2, 0.5);
    EXPECT_TRUE(c.half_limit);
    EXPECT_EQ(c.n_points, 128);
    EXPECT_EQ(c.seed, 18446744073709551615ull);
    EXPECT_EQ(c.threads, 4);
    EXPECT_EQ(c.window, LagWindow::bartlett);
    EXPECT_EQ(c.tol, 3.5);
    EXPECT_EQ(c.spectrum_h_max, 64);
    EXPECT_EQ(c.out_dir, "results/run 1");
    EXPECT_EQ(c.statistics, (std::vector<std::string>{"acvf", "spectrum"}));
    EXPECT_FALSE(c.wants("caf"));
    EXPECT_NEAR(c.cfgn_params().lambda0(), 0.2 * std::numbers::pi, 1e-15);

    const auto g = c.freq_grid();
    ASSERT_EQ(g.size(), 8u);
    EXPECT_NEAR(g.front(), std::numbers::pi / 16, 1e-15);
    EXPECT_NEAR(g.back(), std::numbers::pi / 2, 1e-15);
}

TEST(Config, TextRoundTrip) {
    ExperimentConfig c;
    c.h1 = 0.123456789012345;
    c.rho = -0.1;
    c.variant = Variant::well_balanced;
    c.seed = 99;
    c.window = LagWindow::bartlett;
    c.out_dir = "a \"quoted\" dir";
    c.statistics = {"caf"};
    const auto back = parse_config(to_text(c));
    EXPECT_EQ(back, c);
    EXPECT_EQ(to_text(back), to_text(c));
}

TEST(Config, SyntaxErrorsCarryLineNumbers) {
    std::string msg;
    EXPECT_EQ(parse_kind("[process]\nh1 0.3\n", &msg), ErrorKind::config_error);
    EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
    EXPECT_EQ(parse_kind("[process\n", &msg), ErrorKind::config_error);
    EXPECT_NE(msg.find("line 1"), std::string::npos);
    EXPECT_EQ(parse_kind("[process]\nh1 = 0.3\nh1 = 0.4\n", &msg), ErrorKind::config_error);
    EXPECT_NE(msg.find("duplicate"), std::string::npos);
    EXPECT_EQ(parse_kind("[process]\nhurst = 0.3\n", &msg), ErrorKind::config_error);
    EXPECT_NE(msg.find("unknown key"), std::string::npos);
    EXPECT_EQ(parse_kind("[process]\nh1 = \"high\"\n"), ErrorKind::config_error);
    EXPECT_EQ(parse_kind("[simulation]\nreps = 2.5\n"), ErrorKind::config_error);
    EXPECT_EQ(parse_kind("[simulation]\nseed = -1\n"), ErrorKind::config_error);
    EXPECT_EQ(parse_kind("[process]\nhalf_limit = yes\n"), ErrorKind::config_error);
    EXPECT_EQ(parse_kind("[output]\ndir = \"unterminated\n"), ErrorKind::config_error);
    EXPECT_EQ(parse_kind("[estimation]\nwindow = \"hann\"\n"), ErrorKind::config_error);
    EXPECT_EQ(parse_kind("[process]\nvariant = \"anticausal\"\n"), ErrorKind::config_error);
}

TEST(Config, RangeErrors) {
    EXPECT_EQ(parse_kind("[simulation]\nreps = 1\n"), ErrorKind::config_error);
    EXPECT_EQ(parse_kind("[simulation]\nn_points = 1\n"), ErrorKind::config_error);
    EXPECT_EQ(parse_kind("[estimation]\ntol = 0\n"), ErrorKind::config_error);
    EXPECT_EQ(parse_kind("[freq_grid]\nmax_over_pi = 1.5\n"), ErrorKind::config_error);
    EXPECT_EQ(parse_kind("[output]\nstatistics = [\"acvf\", \"bispectrum\"]\n"), ErrorKind::config_error);
    EXPECT_EQ(parse_kind("[process]\nh1 = 1.2\n"), ErrorKind::domain_error);
    EXPECT_EQ(parse_kind("[process]\nh1 = 0.3\nrho = 0.2\n"), ErrorKind::singular_parameter);
    // The covariance never needs the singular constant, so this configuration runs.
    EXPECT_NO_THROW((void)parse_config("[process]\nh1 = 0.5\nvariant = \"wellbalanced\"\n"));
}

TEST(Config, Variants) {
    EXPECT_EQ(parse_variant("causal"), Variant::causal);
    EXPECT_EQ(parse_variant("wellbalanced"), Variant::well_balanced);
    EXPECT_EQ(to_string(Variant::well_balanced), "wellbalanced");
    EXPECT_THROW((void)parse_variant("well-balanced"), Error);
}

TEST(Config, HashIgnoresThreadsAndOutputDir) {
    ExperimentConfig a;
    ExperimentConfig b = a;
    b.threads = 8;
    b.out_dir = "elsewhere";
    EXPECT_EQ(config_hash(a), config_hash(b));
    b.seed = 2;
    EXPECT_NE(config_hash(a), config_hash(b));
    ExperimentConfig c = a;
    c.rho = 0.0;
    EXPECT_NE(config_hash(a), config_hash(c));
}

TEST(Config, LoadFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "cfgn_test_config.toml";
    {
        std::ofstream out(path);
        out << "[simulation]\nreps = 42\n";
    }
    EXPECT_EQ(load_config(path).reps, 42);
    std::filesystem::remove(path);
    try {
        (void)load_config(path);
        FAIL() << "expected ConfigError";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::config_error);
    }
}

TEST(ExitCodes, Mapping) {
    EXPECT_EQ(exit_code_for(ErrorKind::config_error), 2);
    EXPECT_EQ(exit_code_for(ErrorKind::domain_error), 2);
    EXPECT_EQ(exit_code_for(ErrorKind::singular_parameter), 2);
    EXPECT_EQ(exit_code_for(ErrorKind::io_error), 2);
    EXPECT_EQ(exit_code_for(ErrorKind::factorization_failure), 3);
    EXPECT_EQ(exit_code_for(ErrorKind::non_convergence), 3);
    EXPECT_EQ(exit_code_for(ErrorKind::period_mismatch), 3);
    EXPECT_EQ(exit_code_for(ErrorKind::singular_frequency), 3);
    const std::string j = error_json(Error(ErrorKind::period_mismatch, "bad \"window\""));
    EXPECT_NE(j.find(R"("error":"PeriodMismatch")"), std::string::npos) << j;
    EXPECT_NE(j.find(R"("message":"bad \"window\"")"), std::string::npos) << j;
    EXPECT_NE(j.find(R"("exit_code":3)"), std::string::npos) << j;
}

TEST(ArtifactHeader, IdentifiesRun) {
    ExperimentConfig c;
    c.seed = 17;
    const std::string h = artifact_header(c, "theory_acvf");
    EXPECT_EQ(h.rfind("# artifact=theory_acvf\n# config_hash=", 0), 0u);
    EXPECT_NE(h.find(" seed=17 "), std::string::npos);
    EXPECT_NE(h.find("tool=cfgn 1.0.0\n"), std::string::npos);
}

TEST(Run, UnknownSubcommandIsConfigError) {
    try {
        (void)run("plot", ExperimentConfig{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::config_error);
    }
}
