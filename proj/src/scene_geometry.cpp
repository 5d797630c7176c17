#include "sarfbp/scene_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sarfbp {

double RadarParams::k_rc() const {
    return 4.0 * std::numbers::pi * carrier_frequency_hz / propagation_speed_mps;
}

double RadarParams::delta_k_r() const {
    return 4.0 * std::numbers::pi * bandwidth_hz / propagation_speed_mps;
}

double RadarParams::wavelength_m() const {
    return propagation_speed_mps / carrier_frequency_hz;
}

void RadarParams::validate() const {
    if (!(bandwidth_hz > 0.0) || !(carrier_frequency_hz > bandwidth_hz / 2.0))
        throw std::invalid_argument("RadarParams: require carrier_frequency > bandwidth/2 > 0");
    if (fast_time_sample_count < 2) throw std::invalid_argument("RadarParams: fast_time_sample_count >= 2");
    if (pulse_count < 2) throw std::invalid_argument("RadarParams: pulse_count >= 2");
    if (!(fast_time_spacing_s > 0.0)) throw std::invalid_argument("RadarParams: fast_time_spacing > 0");
    if (!(pulse_interval_s > 0.0)) throw std::invalid_argument("RadarParams: pulse_interval > 0");
    if (!(propagation_speed_mps > 0.0)) throw std::invalid_argument("RadarParams: propagation_speed > 0");
    if (!(k_rc() > delta_k_r() / 2.0)) throw std::invalid_argument("RadarParams: k_rc must exceed delta_k_r/2");
}

void Trajectory::validate() const {
    if (times_s.size() < 2) throw std::invalid_argument("Trajectory: need at least two samples");
    if (times_s.size() != positions_m.size())
        throw std::invalid_argument("Trajectory: positions length must equal times length");
    const double dt = times_s[1] - times_s[0];
    if (!(dt > 0.0)) throw std::invalid_argument("Trajectory: times must be strictly increasing");
    for (std::size_t i = 1; i < times_s.size(); ++i) {
        const double step = times_s[i] - times_s[i - 1];
        if (!(step > 0.0)) throw std::invalid_argument("Trajectory: times must be strictly increasing");
        if (std::abs(step - dt) > 1e-9 * std::abs(dt))
            throw std::invalid_argument("Trajectory: times must be uniformly spaced");
    }
    for (const auto& p : positions_m)
        if (!(p.y > 0.0)) throw std::invalid_argument("Trajectory: y_a(t) must stay positive");
}

bool Trajectory::shares_time_axis(const Trajectory& other) const {
    if (times_s.size() != other.times_s.size()) return false;
    for (std::size_t i = 0; i < times_s.size(); ++i)
        if (std::abs(times_s[i] - other.times_s[i]) > 1e-12 * std::max(1.0, std::abs(times_s[i])))
            return false;
    return true;
}

void Scene::validate() const {
    if (targets.empty()) throw std::invalid_argument("Scene: at least one target required");
}

void Scene::extent(Vec2& lo, Vec2& hi) const {
    lo = {std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    hi = {std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    for (const auto& t : targets) {
        lo.x = std::min(lo.x, t.x_m);
        lo.y = std::min(lo.y, t.y_m);
        hi.x = std::max(hi.x, t.x_m);
        hi.y = std::max(hi.y, t.y_m);
    }
}

void PolarSupport::validate() const {
    if (!(k_r_min < k_r_max)) throw std::invalid_argument("PolarSupport: k_r_min < k_r_max required");
    if (!(theta_start_rad < theta_end_rad))
        throw std::invalid_argument("PolarSupport: theta_start < theta_end required");
    if (!std::isfinite(k_r_max - k_r_min) || !std::isfinite(theta_span()))
        throw std::invalid_argument("PolarSupport: interval widths must be finite");
}

double slant_range(Vec2 position, Vec2 target) {
    return std::hypot(position.x - target.x, position.y - target.y);
}

double aspect_angle(Vec2 position, Vec2 target) {
    const double dy = position.y - target.y;
    if (dy == 0.0) throw std::domain_error("broadside-singular geometry");
    return std::atan((position.x - target.x) / dy);
}

PolarSupport wavenumber_support(const RadarParams& params, const Trajectory& trajectory,
                                Vec2 target) {
    trajectory.validate();
    PolarSupport s;
    s.k_r_min = params.k_rc() - params.delta_k_r() / 2.0;
    s.k_r_max = params.k_rc() + params.delta_k_r() / 2.0;
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (const auto& p : trajectory.positions_m) {
        const double th = aspect_angle(p, target);
        lo = std::min(lo, th);
        hi = std::max(hi, th);
    }
    s.theta_start_rad = lo;
    s.theta_end_rad = hi;
    return s;
}

double support_shift(double target_azimuth_m, double standoff_m) {
    if (!(standoff_m > 0.0)) throw std::invalid_argument("support_shift: standoff must be positive");
    return target_azimuth_m / standoff_m;
}

Trajectory make_linear_trajectory(const RadarParams& params, double velocity_mps,
                                  double standoff_m) {
    Trajectory t;
    const int n = params.pulse_count;
    t.times_s.resize(n);
    t.positions_m.resize(n);
    const double t0 = -0.5 * (n - 1) * params.pulse_interval_s;
    for (int i = 0; i < n; ++i) {
        t.times_s[i] = t0 + i * params.pulse_interval_s;
        t.positions_m[i] = {velocity_mps * t.times_s[i], standoff_m};
    }
    return t;
}

}  // namespace sarfbp
