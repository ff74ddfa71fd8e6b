#include <cstdint>
#include <string>

#include "CLI11.hpp"
#include "rbc/runner.hpp"
#include "rbc/suites.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Infinite-Prandtl Rayleigh-Benard simulator and inequality checks"};
    app.require_subcommand(1);

    std::string config, out, suite, report, checkpoint, param, values;
    std::uint64_t seed = 1;

    auto* run = app.add_subcommand("run", "simulate one configuration");
    run->add_option("--config", config, "flat JSON config")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out, "output directory (overrides out_dir)");

    auto* verify = app.add_subcommand("verify", "run a randomized inequality suite");
    verify->add_option("--suite", suite, "suite tag")->required()->check(CLI::IsMember(rbc::suite_names()));
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--report", report, "JSON report path")->required();

    auto* analyze = app.add_subcommand("analyze", "functional reports for a stored checkpoint");
    analyze->add_option("--checkpoint", checkpoint, "checkpoint directory")->required()->check(CLI::ExistingDirectory);
    analyze->add_option("--report", report, "JSON report path")->required();

    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("--config", config, "base config")->required()->check(CLI::ExistingFile);
    sweep->add_option("--param", param, "H, Nx, Nz or t_avg")->required()->check(CLI::IsMember({"H", "Nx", "Nz", "t_avg"}));
    sweep->add_option("--values", values, "comma separated values")->required();
    sweep->add_option("--out", out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    if (*run) return rbc::cmd_run(config, out);
    if (*verify) return rbc::cmd_verify(suite, seed, report);
    if (*analyze) return rbc::cmd_analyze(checkpoint, report);
    return rbc::cmd_sweep(config, param, values, out);
}
