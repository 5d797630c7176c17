#include <CLI11.hpp>

#include "sarfbp/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Spotlight SAR filtered-backprojection toolkit"};
    app.require_subcommand(1);

    sarfbp::cli::RunOptions opts;
    std::uint64_t seed = 0;
    int iterations = 0;
    bool no_ramp = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", opts.scenario_path, "Scenario file")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", opts.out_dir, "Output directory")->required();
        cmd->add_option("--seed", seed, "Override the scenario run seed");
        cmd->add_option("--iterations", iterations, "Override autofocus iteration cap")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("--ramp-filter", opts.ramp_filter, "Apply the ramp filter per pulse");
        cmd->add_flag("--no-ramp-filter", no_ramp, "Disable the ramp filter (default)");
        cmd->add_option("--export-db-range", opts.export_db_range,
                        "Dynamic range in dB for exported pixmaps")
            ->check(CLI::PositiveNumber);
    };

    for (const char* name : {"simulate", "image", "spectrum", "autofocus", "metrics", "all"})
        add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : sarfbp::cli::kExitValidation;
    }

    CLI::App* sub = app.get_subcommands().front();
    opts.subcommand = sub->get_name();
    if (sub->count("--seed") > 0) opts.seed_override = seed;
    if (sub->count("--iterations") > 0) opts.iterations_override = iterations;
    if (no_ramp) opts.ramp_filter = false;

    return sarfbp::cli::run(opts);
}
