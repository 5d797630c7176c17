#include "sarfbp/fbp_imager.hpp"

#include <fftw3.h>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "sarfbp/fft.hpp"

namespace sarfbp {

namespace {

void parallel_rows(int n_rows, int thread_count, const std::function<void(int, int)>& fn) {
    int nt = thread_count > 0 ? thread_count
                              : static_cast<int>(std::thread::hardware_concurrency());
    if (nt < 1) nt = 1;
    nt = std::min(nt, n_rows);
    if (nt == 1) {
        fn(0, n_rows);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(nt);
    for (int w = 0; w < nt; ++w) {
        const int lo = n_rows * w / nt;
        const int hi = n_rows * (w + 1) / nt;
        workers.emplace_back(fn, lo, hi);
    }
    for (auto& t : workers) t.join();
}

// In-band ramp weighting k_r/k_rc applied in the fast-frequency domain.
std::vector<cplx> ramp_filter_row(const std::vector<cplx>& row, const RadarParams& params,
                                  double d_tau) {
    const std::size_t n = row.size();
    std::vector<cplx> spec(row);
    fftw_plan fwd = fftw_plan_dft_1d(static_cast<int>(n),
                                     reinterpret_cast<fftw_complex*>(spec.data()),
                                     reinterpret_cast<fftw_complex*>(spec.data()),
                                     FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(fwd);
    fftw_destroy_plan(fwd);
    const double df = 1.0 / (static_cast<double>(n) * d_tau);
    for (std::size_t m = 0; m < n; ++m) {
        const double ms = (m <= n / 2) ? static_cast<double>(m)
                                       : static_cast<double>(m) - static_cast<double>(n);
        const double f_r = ms * df;
        spec[m] *= (params.carrier_frequency_hz + f_r) / params.carrier_frequency_hz;
    }
    fftw_plan bwd = fftw_plan_dft_1d(static_cast<int>(n),
                                     reinterpret_cast<fftw_complex*>(spec.data()),
                                     reinterpret_cast<fftw_complex*>(spec.data()),
                                     FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(bwd);
    fftw_destroy_plan(bwd);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : spec) v *= scale;
    return spec;
}

int interp_margin(RangeInterp interp) {
    switch (interp) {
        case RangeInterp::Nearest: return 0;
        case RangeInterp::Linear: return 1;
        case RangeInterp::Sinc8: return 4;
    }
    return 4;
}

}  // namespace

void ImageGrid::validate() const {
    if (!(dx_m > 0.0) || !(dy_m > 0.0)) throw std::invalid_argument("ImageGrid: spacings must be positive");
    if (nx < 2 || ny < 2) throw std::invalid_argument("ImageGrid: dims must be >= 2");
    if (nx % 2 != 0 || ny % 2 != 0) throw std::invalid_argument("ImageGrid: dims must be even");
}

void check_grid_nyquist(const ImageGrid& grid, const RadarParams& params,
                        const Trajectory& trajectory) {
    grid.validate();
    const PolarSupport sup = wavenumber_support(params, trajectory, grid.center_m);
    const double k_x_span =
        sup.k_r_max * (std::sin(sup.theta_end_rad) - std::sin(sup.theta_start_rad));
    const double two_pi = 2.0 * std::numbers::pi;
    if (k_x_span > 0.0 && grid.dx_m > two_pi / k_x_span)
        throw std::invalid_argument("ImageGrid: dx violates azimuth Nyquist for the spectral support");
    if (grid.dy_m > two_pi / params.delta_k_r())
        throw std::invalid_argument("ImageGrid: dy violates range Nyquist for the signal bandwidth");
}

cplx sample_profile(const std::vector<cplx>& fine, double pos, RangeInterp interp) {
    switch (interp) {
        case RangeInterp::Nearest:
            return fine[static_cast<std::size_t>(std::llround(pos))];
        case RangeInterp::Linear: {
            const auto i0 = static_cast<std::size_t>(pos);
            const double w = pos - static_cast<double>(i0);
            return (1.0 - w) * fine[i0] + w * fine[i0 + 1];
        }
        case RangeInterp::Sinc8: {
            const auto base = static_cast<long>(std::floor(pos));
            cplx acc(0.0, 0.0);
            for (long k = base - 3; k <= base + 4; ++k) {
                const double d = pos - static_cast<double>(k);
                double w;
                if (std::abs(d) < 1e-12) {
                    w = 1.0;
                } else {
                    const double pd = std::numbers::pi * d;
                    const double hann = 0.5 * (1.0 + std::cos(pd / 4.0));
                    w = std::sin(pd) / pd * hann;
                }
                acc += w * fine[static_cast<std::size_t>(k)];
            }
            return acc;
        }
    }
    return {};
}

ComplexImage backproject(const PhaseHistory& ph, const Trajectory& measured_trajectory,
                         const ImageGrid& grid, const BackprojectOptions& options) {
    measured_trajectory.validate();
    if (static_cast<int>(measured_trajectory.size()) != static_cast<int>(ph.data.rows()))
        throw std::invalid_argument("backproject: trajectory and phase history pulse counts differ");
    check_grid_nyquist(grid, ph.params, measured_trajectory);
    if (options.range_upsample < 1)
        throw std::invalid_argument("backproject: range_upsample must be >= 1");

    const int n_pulses = static_cast<int>(ph.data.rows());
    const int n_tau = static_cast<int>(ph.data.cols());
    const int up = options.range_upsample;
    const double d_fine = ph.fast_time_spacing_s / up;
    const double c = ph.params.propagation_speed_mps;
    const double k_rc = ph.params.k_rc();

    std::vector<std::vector<cplx>> fine(n_pulses);
    for (int p = 0; p < n_pulses; ++p) {
        std::vector<cplx> row(ph.data.row(p), ph.data.row(p) + n_tau);
        if (options.ramp_filter) row = ramp_filter_row(row, ph.params, ph.fast_time_spacing_s);
        fine[p] = fft::upsample_trig(row, up);
    }

    ComplexImage img;
    img.data = Array2D(grid.nx, grid.ny);
    img.grid = grid;

    const int margin = interp_margin(options.interp);
    const double pos_lo = margin;
    const double pos_hi = static_cast<double>(n_tau * up - 1 - margin);
    const double inv_pulses = 1.0 / n_pulses;

    std::atomic<std::uint64_t> clipped{0};
    parallel_rows(grid.nx, options.thread_count, [&](int lo, int hi) {
        std::uint64_t local_clipped = 0;
        for (int ix = lo; ix < hi; ++ix) {
            const double x = grid.x_at(ix);
            for (int iy = 0; iy < grid.ny; ++iy) {
                const double y = grid.y_at(iy);
                cplx acc(0.0, 0.0);
                for (int p = 0; p < n_pulses; ++p) {
                    const Vec2& apc = measured_trajectory.positions_m[p];
                    const double r = std::hypot(apc.x - x, apc.y - y);
                    const double pos = (2.0 * r / c - ph.fast_time_origin_s) / d_fine;
                    if (pos < pos_lo || pos > pos_hi) {
                        ++local_clipped;
                        continue;
                    }
                    acc += sample_profile(fine[p], pos, options.interp) * std::polar(1.0, k_rc * r);
                }
                img.data(ix, iy) = acc * inv_pulses;
            }
        }
        clipped += local_clipped;
    });
    img.annotation.clipped_samples = clipped.load();
    return img;
}

ComplexImage ideal_reference_image(const Scene& scene, const ImageGrid& grid,
                                   const PolarSupport& support, int n_theta, int n_kr) {
    scene.validate();
    support.validate();
    grid.validate();

    ComplexImage img;
    img.data = Array2D(grid.nx, grid.ny);
    img.grid = grid;

    const double d_theta = support.theta_span() / n_theta;
    const double d_kr = (support.k_r_max - support.k_r_min) / n_kr;
    const double norm = 1.0 / (static_cast<double>(n_theta) * n_kr);

    std::vector<double> sin_th(n_theta), cos_th(n_theta);
    for (int it = 0; it < n_theta; ++it) {
        const double th = support.theta_start_rad + (it + 0.5) * d_theta;
        sin_th[it] = std::sin(th);
        cos_th[it] = std::cos(th);
    }
    const double k0 = support.k_r_min + 0.5 * d_kr;

    parallel_rows(grid.nx, 0, [&](int lo, int hi) {
        for (int ix = lo; ix < hi; ++ix) {
            const double x = grid.x_at(ix);
            for (int iy = 0; iy < grid.ny; ++iy) {
                const double y = grid.y_at(iy);
                cplx acc(0.0, 0.0);
                for (const auto& tgt : scene.targets) {
                    const double ax = tgt.x_m - x;
                    const double ay = tgt.y_m - y;
                    cplx tgt_acc(0.0, 0.0);
                    for (int it = 0; it < n_theta; ++it) {
                        const double a = ax * sin_th[it] + ay * cos_th[it];
                        // closed-form sum over the uniform k_r samples
                        const double half = 0.5 * d_kr * a;
                        double dirichlet;
                        if (std::abs(std::sin(half)) < 1e-14) {
                            dirichlet = n_kr;
                        } else {
                            dirichlet = std::sin(n_kr * half) / std::sin(half);
                        }
                        tgt_acc += std::polar(dirichlet, (k0 + 0.5 * (n_kr - 1) * d_kr) * a);
                    }
                    acc += tgt.reflectivity * tgt_acc;
                }
                img.data(ix, iy) = acc * norm;
            }
        }
    });
    return img;
}

}  // namespace sarfbp
