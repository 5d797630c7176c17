#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "sarfbp/autofocus.hpp"
#include "sarfbp/echo_simulator.hpp"
#include "sarfbp/fbp_imager.hpp"
#include "sarfbp/scene_geometry.hpp"

namespace sarfbp {

/// Raised by the scenario parser with a message anchored to the offending
/// line of the file.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TrajectoryKind { Linear, Explicit };

struct TrajectorySpec {
    TrajectoryKind kind = TrajectoryKind::Linear;
    double velocity_mps = 0.0;
    double standoff_m = 0.0;
    Trajectory explicit_samples;

    Trajectory build(const RadarParams& params) const;
};

/// Full experiment description: radar, nominal path, perturbation, scene,
/// grid, and autofocus settings.
struct Scenario {
    RadarParams radar;
    TrajectorySpec nominal_trajectory;
    PerturbationSpec perturbation;
    Scene scene;
    ImageGrid grid;
    AutofocusConfig autofocus;
    std::uint64_t seed = 0;
    double noise_sigma = 0.0;

    /// Cross-field checks: grid Nyquist against the nominal trajectory and
    /// basic consistency. Throws ScenarioError.
    void validate() const;

    double standoff_m() const;
    double k_yc() const { return radar.k_rc(); }
};

/// Parses the key/value scenario format (see scenarios/ for the schema).
Scenario load_scenario(const std::filesystem::path& path);

/// FNV-1a hash of a file's bytes, used to pin scenario identity in run
/// manifests.
std::uint64_t file_fnv1a(const std::filesystem::path& path);

}  // namespace sarfbp
