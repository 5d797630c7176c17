#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace testsup {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Direct unnormalized forward DFT, exp(-j 2 pi i k / n) kernel.
std::vector<cplx> naive_forward(const std::vector<cplx>& x) {
    const std::size_t n = x.size();
    std::vector<cplx> spec(n, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            spec[k] += x[i] * std::polar(1.0, -kTwoPi * static_cast<double>(i) *
                                                  static_cast<double>(k) / static_cast<double>(n));
    return spec;
}

std::vector<cplx> naive_ramp_filter(const std::vector<cplx>& row, const RadarParams& params,
                                    double d_tau) {
    const std::size_t n = row.size();
    auto spec = naive_forward(row);
    const double df = 1.0 / (static_cast<double>(n) * d_tau);
    for (std::size_t m = 0; m < n; ++m) {
        const double ms = (m <= n / 2) ? static_cast<double>(m)
                                       : static_cast<double>(m) - static_cast<double>(n);
        spec[m] *= (params.carrier_frequency_hz + ms * df) / params.carrier_frequency_hz;
    }
    std::vector<cplx> out(n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k)
            out[i] += spec[k] * std::polar(1.0, kTwoPi * static_cast<double>(i) *
                                                    static_cast<double>(k) / static_cast<double>(n));
        out[i] /= static_cast<double>(n);
    }
    return out;
}

// Linear interpolation of (theta, value) samples with edge clamping; the
// theta samples must be monotonically increasing.
double interp_theta(const std::vector<double>& theta, const std::vector<double>& value,
                    double th) {
    if (th <= theta.front()) return value.front();
    if (th >= theta.back()) return value.back();
    const auto it = std::upper_bound(theta.begin(), theta.end(), th);
    const std::size_t i = static_cast<std::size_t>(it - theta.begin());
    const double w = (th - theta[i - 1]) / (theta[i] - theta[i - 1]);
    return (1.0 - w) * value[i - 1] + w * value[i];
}

}  // namespace

double rms(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc / static_cast<double>(v.size()));
}

double wrap_pi(double phase) {
    phase = std::fmod(phase + std::numbers::pi, kTwoPi);
    if (phase < 0.0) phase += kTwoPi;
    return phase - std::numbers::pi;
}

std::vector<cplx> naive_centered_dft(const std::vector<cplx>& v, int sign) {
    const std::size_t n = v.size();
    const double h = static_cast<double>(n / 2);
    const double s = sign > 0 ? 1.0 : -1.0;
    std::vector<cplx> out(n, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i)
            out[k] += v[i] * std::polar(1.0, s * kTwoPi * (static_cast<double>(i) - h) *
                                                 (static_cast<double>(k) - h) /
                                                 static_cast<double>(n));
        out[k] /= std::sqrt(static_cast<double>(n));
    }
    return out;
}

std::vector<cplx> naive_upsample_trig(const std::vector<cplx>& x, int factor) {
    const std::size_t n = x.size();
    if (factor == 1) return x;
    const auto spec = naive_forward(x);
    const std::size_t m = n * static_cast<std::size_t>(factor);
    const std::size_t half = n / 2;
    std::vector<cplx> fine(m, cplx(0.0, 0.0));
    for (std::size_t t = 0; t < m; ++t) {
        cplx acc(0.0, 0.0);
        const double u = static_cast<double>(t) / static_cast<double>(m);
        for (std::size_t k = 0; k < half; ++k)
            acc += spec[k] * std::polar(1.0, kTwoPi * static_cast<double>(k) * u);
        for (std::size_t k = half + 1; k < n; ++k)
            acc += spec[k] *
                   std::polar(1.0, kTwoPi * (static_cast<double>(k) - static_cast<double>(n)) * u);
        if (n % 2 == 0) {
            acc += spec[half] * std::cos(kTwoPi * static_cast<double>(half) * u);
        } else {
            acc += spec[half] * std::polar(1.0, kTwoPi * static_cast<double>(half) * u);
        }
        fine[t] = acc / static_cast<double>(n);
    }
    return fine;
}

ComplexImage oracle_backproject(const PhaseHistory& ph, const Trajectory& measured,
                                const ImageGrid& grid, const BackprojectOptions& options) {
    const int n_pulses = static_cast<int>(ph.data.rows());
    const int n_tau = static_cast<int>(ph.data.cols());
    const int up = options.range_upsample;
    const double d_fine = ph.fast_time_spacing_s / up;
    const double c = ph.params.propagation_speed_mps;
    const double k_rc = ph.params.k_rc();

    std::vector<std::vector<cplx>> fine(n_pulses);
    for (int p = 0; p < n_pulses; ++p) {
        std::vector<cplx> row(ph.data.row(p), ph.data.row(p) + n_tau);
        if (options.ramp_filter) row = naive_ramp_filter(row, ph.params, ph.fast_time_spacing_s);
        fine[p] = naive_upsample_trig(row, up);
    }

    const int margin = options.interp == RangeInterp::Sinc8 ? 4
                       : options.interp == RangeInterp::Linear ? 1
                                                               : 0;
    const double pos_lo = margin;
    const double pos_hi = static_cast<double>(n_tau * up - 1 - margin);

    ComplexImage img;
    img.data = Array2D(grid.nx, grid.ny);
    img.grid = grid;
    for (int ix = 0; ix < grid.nx; ++ix) {
        const double x = grid.x_at(ix);
        for (int iy = 0; iy < grid.ny; ++iy) {
            const double y = grid.y_at(iy);
            cplx acc(0.0, 0.0);
            for (int p = 0; p < n_pulses; ++p) {
                const Vec2& apc = measured.positions_m[p];
                const double r = std::hypot(apc.x - x, apc.y - y);
                const double pos = (2.0 * r / c - ph.fast_time_origin_s) / d_fine;
                if (pos < pos_lo || pos > pos_hi) {
                    ++img.annotation.clipped_samples;
                    continue;
                }
                acc += sample_profile(fine[p], pos, options.interp) * std::polar(1.0, k_rc * r);
            }
            img.data(ix, iy) = acc / static_cast<double>(n_pulses);
        }
    }
    return img;
}

PhaseErrorField truth_phase_field(const Trajectory& nominal, const Trajectory& true_traj,
                                  Vec2 scene_center, const std::vector<double>& k_x_axis,
                                  const std::vector<double>& k_y_phys_axis) {
    const std::size_t n = nominal.size();
    std::vector<double> theta(n), eps(n);
    for (std::size_t p = 0; p < n; ++p) {
        theta[p] = aspect_angle(nominal.positions_m[p], scene_center);
        eps[p] = slant_range(nominal.positions_m[p], scene_center) -
                 slant_range(true_traj.positions_m[p], scene_center);
    }
    if (theta.front() > theta.back()) {
        std::reverse(theta.begin(), theta.end());
        std::reverse(eps.begin(), eps.end());
    }

    PhaseErrorField field;
    field.k_x_axis = k_x_axis;
    field.k_y_axis = k_y_phys_axis;
    field.phase = RealArray2D(k_x_axis.size(), k_y_phys_axis.size());
    for (std::size_t ix = 0; ix < k_x_axis.size(); ++ix) {
        for (std::size_t iy = 0; iy < k_y_phys_axis.size(); ++iy) {
            const double ky = k_y_phys_axis[iy];
            if (!(ky > 0.0)) throw std::invalid_argument("truth_phase_field: k_y must be positive");
            const double kr = std::hypot(k_x_axis[ix], ky);
            const double th = std::atan(k_x_axis[ix] / ky);
            field.phase(ix, iy) = kr * interp_theta(theta, eps, th);
        }
    }
    return field;
}

AzimuthPhaseError truth_ape(const Trajectory& nominal, const Trajectory& true_traj,
                            Vec2 scene_center, const std::vector<double>& k_x_axis, double k_yc) {
    const auto field = truth_phase_field(nominal, true_traj, scene_center, k_x_axis, {k_yc});
    AzimuthPhaseError ape;
    ape.k_x_axis = k_x_axis;
    ape.phase_rad.resize(k_x_axis.size());
    for (std::size_t ix = 0; ix < k_x_axis.size(); ++ix) ape.phase_rad[ix] = field.phase(ix, 0);
    normalize_ape(ape);
    return ape;
}

TestSetup standard_setup(int nx, int ny) {
    TestSetup s;
    s.radar.carrier_frequency_hz = 1.0e10;
    s.radar.bandwidth_hz = 1.25e9;
    s.radar.fast_time_sample_count = 512;
    s.radar.fast_time_spacing_s = 1.0 / 1.5e9;
    s.radar.pulse_count = 512;

    const double standoff = 15000.0;
    const double velocity = 120.0;
    // aperture sized so the azimuth -3 dB width is ~0.12 m
    const double d_theta = 0.886 * kTwoPi / 0.12 / s.radar.k_rc();
    const double aperture = 2.0 * standoff * std::tan(0.5 * d_theta);
    s.radar.pulse_interval_s = aperture / (velocity * (s.radar.pulse_count - 1));

    s.nominal = make_linear_trajectory(s.radar, velocity, standoff);
    s.scene.targets = {{0.0, 0.0, cplx(1.0, 0.0)}};
    s.grid = {{0.0, 0.0}, 0.08, 0.0625, nx, ny};
    return s;
}

TestSetup nearfield_setup(double target_x_m) {
    TestSetup s;
    s.radar.carrier_frequency_hz = 1.0e10;
    s.radar.bandwidth_hz = 1.25e9;
    s.radar.fast_time_sample_count = 256;
    s.radar.fast_time_spacing_s = 1.0 / 1.5e9;
    s.radar.pulse_count = 512;

    const double standoff = 2000.0;
    const double velocity = 80.0;
    const double aperture = 2.0 * standoff * std::tan(0.02);  // ~0.04 rad span
    s.radar.pulse_interval_s = aperture / (velocity * (s.radar.pulse_count - 1));

    s.nominal = make_linear_trajectory(s.radar, velocity, standoff);
    s.scene.targets = {{target_x_m, 0.0, cplx(1.0, 0.0)}};
    // dx keeps the full skewed support of a +-40 m target inside the k_x span
    s.grid = {{0.0, 0.0}, 0.175, 0.1, 512, 64};
    return s;
}

TestSetup tiny_setup() {
    TestSetup s;
    s.radar.carrier_frequency_hz = 1.0e10;
    s.radar.bandwidth_hz = 1.25e9;
    s.radar.fast_time_sample_count = 64;
    s.radar.fast_time_spacing_s = 1.0 / 1.5e9;
    s.radar.pulse_count = 16;

    const double standoff = 1000.0;
    const double velocity = 50.0;
    const double aperture = 2.0 * standoff * std::tan(0.01);
    s.radar.pulse_interval_s = aperture / (velocity * (s.radar.pulse_count - 1));

    s.nominal = make_linear_trajectory(s.radar, velocity, standoff);
    s.scene.targets = {{0.3, -0.2, cplx(1.0, 0.0)}, {-0.5, 0.4, cplx(0.7, 0.2)}};
    s.grid = {{0.0, 0.0}, 0.1, 0.1, 32, 32};
    return s;
}

ComplexImage defocused_image(const TestSetup& s, const PerturbationSpec& pert,
                             const BackprojectOptions& options) {
    const Trajectory truth = perturb_trajectory(s.nominal, pert);
    const PhaseHistory ph = simulate_phase_history(s.radar, truth, s.scene);
    return backproject(ph, s.nominal, s.grid, options);
}

ComplexImage preprocess(const ComplexImage& raw, const TestSetup& s) {
    const double standoff = s.nominal.positions_m[s.nominal.size() / 2].y;
    return align_spectrum(eliminate_ambiguity(raw, s.radar.k_rc()), standoff, s.radar.k_rc());
}

}  // namespace testsup
