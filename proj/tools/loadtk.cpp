// Command-line front end; all real work happens behind the C API.
#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "loadtk.h"

namespace {

int report_result(int rc) {
    if (rc != LOADTK_OK) std::fprintf(stderr, "loadtk: %s\n", loadtk_last_error());
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"balancing-area load analytics"};
    app.set_version_flag("--version", std::string(loadtk_version()));
    app.require_subcommand(1);

    std::string config;
    std::string out_dir = ".";
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config, "run configuration file")->required();
        cmd->add_option("--out", out_dir, "output directory");
    };

    CLI::App* fit = app.add_subcommand("fit", "fit one load model on a fixed window");
    add_common(fit);
    CLI::App* report = app.add_subcommand(
        "report", "rolling counterfactual estimate with anomaly and energy analysis");
    add_common(report);
    CLI::App* feval =
        app.add_subcommand("forecast-eval", "score day-ahead forecasts against metered load");
    add_common(feval);
    CLI::App* cps = app.add_subcommand("cps1", "control performance score from minute telemetry");
    add_common(cps);
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic dataset with truth");
    add_common(synth);
    synth->add_option("--seed", seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        // CLI11 reports success (help/version) as 0; anything else is a
        // usage problem
        return rc == 0 ? 0 : LOADTK_ERR_VALIDATION;
    }

    if (fit->parsed()) return report_result(loadtk_run_fit(config.c_str(), out_dir.c_str()));
    if (report->parsed()) return report_result(loadtk_run_report(config.c_str(), out_dir.c_str()));
    if (feval->parsed())
        return report_result(loadtk_run_forecast_eval(config.c_str(), out_dir.c_str()));
    if (cps->parsed()) return report_result(loadtk_run_cps1(config.c_str(), out_dir.c_str()));
    if (synth->parsed())
        return report_result(loadtk_run_synth(config.c_str(), out_dir.c_str(), seed));
    return LOADTK_ERR_VALIDATION;
}
