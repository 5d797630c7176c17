#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sarfbp/array2d.hpp"
#include "sarfbp/scene_geometry.hpp"

namespace sarfbp {

/// Range-compressed phase history: rows are pulses, columns fast-time samples.
struct PhaseHistory {
    Array2D data;
    double fast_time_origin_s = 0.0;
    double fast_time_spacing_s = 0.0;
    RadarParams params;
};

enum class PerturbationKind { None, Sinusoidal, Polynomial, RandomWalk, ExplicitSamples };
enum class PerturbationAxis { X, Y, Both };

/// Deterministic position-deviation process added to a nominal trajectory.
/// The deviation magnitude per axis is bounded by amplitude_m for every kind:
/// sinusoidal by construction, polynomial coefficients are scaled so the peak
/// equals amplitude_m when rescale_to_amplitude is set, random walks are
/// de-meaned and rescaled to peak amplitude_m, explicit samples are the
/// caller's responsibility.
struct PerturbationSpec {
    PerturbationKind kind = PerturbationKind::None;
    PerturbationAxis axis = PerturbationAxis::Y;
    double amplitude_m = 0.0;
    double cycles_per_aperture = 1.0;
    double phase_rad = 0.0;
    std::vector<double> coefficients;  // polynomial in s = 2(t - tc)/T, s in [-1, 1]
    bool rescale_to_amplitude = false;
    std::uint64_t seed = 0;
    std::vector<double> explicit_x_m;
    std::vector<double> explicit_y_m;
};

struct SimulationOptions {
    double noise_sigma = 0.0;  // white Gaussian noise std dev per I/Q sample
    std::uint64_t noise_seed = 0;
    /// Fast-time window start; when unset the window is centered on the
    /// scene's round-trip delay span.
    std::optional<double> fast_time_origin_s;
};

/// Generates the range-compressed echo (sinc envelope times carrier phase)
/// for every target over the given trajectory. Throws "target outside range
/// gate" when the fast-time window cannot cover some target-APC delay.
PhaseHistory simulate_phase_history(const RadarParams& params, const Trajectory& true_trajectory,
                                    const Scene& scene, const SimulationOptions& options = {});

/// Nominal trajectory plus the deviation process described by the spec.
Trajectory perturb_trajectory(const Trajectory& nominal, const PerturbationSpec& spec);

/// Per-pulse range error r_e(t) = true range minus nominal range to the
/// target. Throws on mismatched time axes.
std::vector<double> range_error(const Trajectory& nominal, const Trajectory& true_traj,
                                Vec2 target);

/// The deviation samples themselves (x_e, y_e), exposed for diagnostics.
std::vector<Vec2> perturbation_samples(const Trajectory& nominal, const PerturbationSpec& spec);

}  // namespace sarfbp
