#include "sarfbp/echo_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace sarfbp {

namespace {

// Envelope truncation: beyond this many sidelobes the sinc amplitude is
// below 1e-4 of the peak.
constexpr double kSincLobeCutoff = 32.0;

double sinc(double x) {
    if (std::abs(x) < 1e-12) return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

std::vector<double> normalized_slow_time(const Trajectory& nominal) {
    const double t0 = nominal.times_s.front();
    const double t1 = nominal.times_s.back();
    const double tc = 0.5 * (t0 + t1);
    const double half = 0.5 * (t1 - t0);
    std::vector<double> s(nominal.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = (nominal.times_s[i] - tc) / half;
    return s;
}

std::vector<double> deviation_profile(const Trajectory& nominal, const PerturbationSpec& spec) {
    const std::size_t n = nominal.size();
    std::vector<double> dev(n, 0.0);
    const auto s = normalized_slow_time(nominal);
    switch (spec.kind) {
        case PerturbationKind::None:
            break;
        case PerturbationKind::Sinusoidal: {
            for (std::size_t i = 0; i < n; ++i) {
                const double u = 0.5 * (s[i] + 1.0);  // 0..1 across the aperture
                dev[i] = spec.amplitude_m *
                         std::sin(2.0 * std::numbers::pi * spec.cycles_per_aperture * u +
                                  spec.phase_rad);
            }
            break;
        }
        case PerturbationKind::Polynomial: {
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t k = spec.coefficients.size(); k-- > 0;)
                    acc = acc * s[i] + spec.coefficients[k];
                dev[i] = acc;
            }
            if (spec.rescale_to_amplitude) {
                double peak = 0.0;
                for (double d : dev) peak = std::max(peak, std::abs(d));
                if (peak > 0.0)
                    for (double& d : dev) d *= spec.amplitude_m / peak;
            }
            break;
        }
        case PerturbationKind::RandomWalk: {
            std::mt19937_64 rng(spec.seed);
            std::normal_distribution<double> step(0.0, 1.0);
            double acc = 0.0;
            double mean = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += step(rng);
                dev[i] = acc;
                mean += acc;
            }
            mean /= static_cast<double>(n);
            double peak = 0.0;
            for (double& d : dev) {
                d -= mean;
                peak = std::max(peak, std::abs(d));
            }
            if (peak > 0.0)
                for (double& d : dev) d *= spec.amplitude_m / peak;
            break;
        }
        case PerturbationKind::ExplicitSamples:
            break;  // handled per axis by the caller
    }
    return dev;
}

}  // namespace

std::vector<Vec2> perturbation_samples(const Trajectory& nominal, const PerturbationSpec& spec) {
    const std::size_t n = nominal.size();
    std::vector<Vec2> out(n);
    if (spec.kind == PerturbationKind::ExplicitSamples) {
        if ((!spec.explicit_x_m.empty() && spec.explicit_x_m.size() != n) ||
            (!spec.explicit_y_m.empty() && spec.explicit_y_m.size() != n))
            throw std::invalid_argument("PerturbationSpec: explicit sample length mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            out[i].x = spec.explicit_x_m.empty() ? 0.0 : spec.explicit_x_m[i];
            out[i].y = spec.explicit_y_m.empty() ? 0.0 : spec.explicit_y_m[i];
        }
        return out;
    }
    const auto dev = deviation_profile(nominal, spec);
    for (std::size_t i = 0; i < n; ++i) {
        if (spec.axis == PerturbationAxis::X || spec.axis == PerturbationAxis::Both)
            out[i].x = dev[i];
        if (spec.axis == PerturbationAxis::Y || spec.axis == PerturbationAxis::Both)
            out[i].y = dev[i];
    }
    return out;
}

Trajectory perturb_trajectory(const Trajectory& nominal, const PerturbationSpec& spec) {
    nominal.validate();
    const auto dev = perturbation_samples(nominal, spec);
    Trajectory out = nominal;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.positions_m[i].x += dev[i].x;
        out.positions_m[i].y += dev[i].y;
    }
    return out;
}

std::vector<double> range_error(const Trajectory& nominal, const Trajectory& true_traj,
                                Vec2 target) {
    if (!nominal.shares_time_axis(true_traj))
        throw std::invalid_argument("range_error: trajectories must share the time axis");
    std::vector<double> err(nominal.size());
    for (std::size_t i = 0; i < err.size(); ++i)
        err[i] = slant_range(true_traj.positions_m[i], target) -
                 slant_range(nominal.positions_m[i], target);
    return err;
}

PhaseHistory simulate_phase_history(const RadarParams& params, const Trajectory& true_trajectory,
                                    const Scene& scene, const SimulationOptions& options) {
    params.validate();
    true_trajectory.validate();
    scene.validate();
    if (static_cast<int>(true_trajectory.size()) != params.pulse_count)
        throw std::invalid_argument("simulate_phase_history: trajectory length must equal pulse_count");

    const double c = params.propagation_speed_mps;
    const double B = params.bandwidth_hz;
    const int n_tau = params.fast_time_sample_count;
    const double d_tau = params.fast_time_spacing_s;

    // Round-trip delay span over every target-APC pair.
    double tau_min = std::numeric_limits<double>::max();
    double tau_max = std::numeric_limits<double>::lowest();
    for (const auto& p : true_trajectory.positions_m) {
        for (const auto& tgt : scene.targets) {
            const double tau = 2.0 * slant_range(p, {tgt.x_m, tgt.y_m}) / c;
            tau_min = std::min(tau_min, tau);
            tau_max = std::max(tau_max, tau);
        }
    }

    const double window = (n_tau - 1) * d_tau;
    double origin;
    if (options.fast_time_origin_s) {
        origin = *options.fast_time_origin_s;
    } else {
        origin = 0.5 * (tau_min + tau_max) - 0.5 * window;
    }
    if (tau_min < origin || tau_max > origin + window)
        throw std::invalid_argument("target outside range gate");

    PhaseHistory ph;
    ph.data = Array2D(params.pulse_count, n_tau);
    ph.fast_time_origin_s = origin;
    ph.fast_time_spacing_s = d_tau;
    ph.params = params;

    const double k_rc = params.k_rc();
    const double lobe_tau = kSincLobeCutoff / B;  // envelope truncation half-width

    for (int p = 0; p < params.pulse_count; ++p) {
        cplx* row = ph.data.row(p);
        for (const auto& tgt : scene.targets) {
            if (tgt.reflectivity == cplx(0.0, 0.0)) continue;
            const double r = slant_range(true_trajectory.positions_m[p], {tgt.x_m, tgt.y_m});
            const double tau_p = 2.0 * r / c;
            const cplx carrier = tgt.reflectivity * std::polar(1.0, -k_rc * r);
            const int j0 = std::max(0, static_cast<int>(std::ceil((tau_p - lobe_tau - origin) / d_tau)));
            const int j1 = std::min(n_tau - 1,
                                    static_cast<int>(std::floor((tau_p + lobe_tau - origin) / d_tau)));
            for (int j = j0; j <= j1; ++j) {
                const double tau = origin + j * d_tau;
                row[j] += carrier * sinc(B * (tau - tau_p));
            }
        }
    }

    if (options.noise_sigma > 0.0) {
        std::mt19937_64 rng(options.noise_seed);
        std::normal_distribution<double> noise(0.0, options.noise_sigma);
        for (int p = 0; p < params.pulse_count; ++p) {
            cplx* row = ph.data.row(p);
            for (int j = 0; j < n_tau; ++j) row[j] += cplx(noise(rng), noise(rng));
        }
    }
    return ph;
}

}  // namespace sarfbp
