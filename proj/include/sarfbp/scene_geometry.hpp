#pragma once

#include <complex>
#include <vector>

#include "sarfbp/array2d.hpp"

namespace sarfbp {

inline constexpr double kSpeedOfLight = 299792458.0;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Waveform and sampling parameters of the radar. Wavenumber constants are
/// derived: k_rc = 4*pi*f_c/c and delta_k_r = 4*pi*B/c.
struct RadarParams {
    double carrier_frequency_hz = 0.0;
    double bandwidth_hz = 0.0;
    int fast_time_sample_count = 0;
    double fast_time_spacing_s = 0.0;
    int pulse_count = 0;
    double pulse_interval_s = 0.0;
    double propagation_speed_mps = kSpeedOfLight;

    double k_rc() const;
    double delta_k_r() const;
    double wavelength_m() const;

    /// Throws std::invalid_argument when an invariant is violated.
    void validate() const;
};

/// Time-sampled antenna phase center path in the 2-D slant plane.
struct Trajectory {
    std::vector<double> times_s;
    std::vector<Vec2> positions_m;

    std::size_t size() const { return times_s.size(); }
    double duration_s() const { return times_s.empty() ? 0.0 : times_s.back() - times_s.front(); }

    void validate() const;
    bool shares_time_axis(const Trajectory& other) const;
};

struct Target {
    double x_m = 0.0;
    double y_m = 0.0;
    cplx reflectivity{1.0, 0.0};
};

struct Scene {
    std::vector<Target> targets;

    void validate() const;
    /// Axis-aligned bounding box of the targets.
    void extent(Vec2& lo, Vec2& hi) const;
};

/// Annular-sector support region of an image spectrum in polar wavenumber
/// coordinates.
struct PolarSupport {
    double k_r_min = 0.0;
    double k_r_max = 0.0;
    double theta_start_rad = 0.0;
    double theta_end_rad = 0.0;

    void validate() const;
    double theta_span() const { return theta_end_rad - theta_start_rad; }
};

/// Euclidean distance between an APC position and a target.
double slant_range(Vec2 position, Vec2 target);

/// Aspect angle measured from the +y (range) axis toward +x (azimuth):
/// theta = atan((x_a - x_p)/(y_a - y_p)). Throws on y_a == y_p.
double aspect_angle(Vec2 position, Vec2 target);

/// Spectrum support of the given target: k_r in
/// [k_rc - dk/2, k_rc + dk/2], theta spanning the aspect angles swept by the
/// trajectory.
PolarSupport wavenumber_support(const RadarParams& params, const Trajectory& trajectory,
                                Vec2 target);

/// Linear skew rate of the spectrum support polar angle with target azimuth:
/// |delta_theta| = x_p / y_a(0). Throws on nonpositive standoff.
double support_shift(double target_azimuth_m, double standoff_m);

/// Uniform linear aperture centered on t = 0 at the given standoff, moving
/// along +x at constant velocity.
Trajectory make_linear_trajectory(const RadarParams& params, double velocity_mps,
                                  double standoff_m);

}  // namespace sarfbp
