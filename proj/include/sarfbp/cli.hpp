#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace sarfbp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitStageFailure = 3;

struct RunOptions {
    std::string subcommand;  // simulate | image | spectrum | autofocus | metrics | all
    std::filesystem::path scenario_path;
    std::filesystem::path out_dir;
    std::optional<std::uint64_t> seed_override;
    std::optional<int> iterations_override;
    bool ramp_filter = false;
    double export_db_range = 50.0;
};

/// Executes the requested stage(s) against the scenario, persisting all
/// artifacts under out_dir plus a run manifest. Returns a process exit code.
int run(const RunOptions& options);

}  // namespace sarfbp::cli
