#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfgn/config.hpp"
#include "cfgn/error.hpp"
#include "cfgn/experiment.hpp"

namespace {

int fail(const cfgn::Error& e) {
    std::cerr << cfgn::error_json(e) << '\n';
    return cfgn::exit_code_for(e.kind());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cyclic fractional Gaussian noise: simulation, theory and Monte Carlo comparison"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<long> reps;
    std::optional<std::string> variant;
    std::optional<double> tol;
    std::optional<long> threads;

    for (const auto& name : cfgn::subcommands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "experiment config file");
        sub->add_option("--seed", seed, "ensemble seed");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--reps", reps, "Monte Carlo replications M");
        sub->add_option("--variant", variant, "causal or wellbalanced")->check(CLI::IsMember({"causal", "wellbalanced"}));
        sub->add_option("--tol", tol, "pass threshold in standard errors");
        sub->add_option("--threads", threads, "worker threads");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return fail(cfgn::Error(cfgn::ErrorKind::config_error, e.what()));
    }

    const std::string subcommand = app.get_subcommands().front()->get_name();
    try {
        cfgn::ExperimentConfig cfg = config_path.empty() ? cfgn::ExperimentConfig{} : cfgn::load_config(config_path);
        if (seed) cfg.seed = *seed;
        if (out_dir) cfg.out_dir = *out_dir;
        if (reps) cfg.reps = *reps;
        if (variant) cfg.variant = cfgn::parse_variant(*variant);
        if (tol) cfg.tol = *tol;
        if (threads) cfg.threads = *threads;
        const auto outcome = cfgn::run(subcommand, cfg);
        std::cout << outcome.summary << '\n';
        return outcome.exit_code;
    } catch (const cfgn::Error& e) {
        return fail(e);
    } catch (const std::exception& e) {
        return fail(cfgn::Error(cfgn::ErrorKind::io_error, e.what()));
    }
}
