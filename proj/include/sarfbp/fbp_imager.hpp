#pragma once

#include <cstdint>
#include <string>

#include "sarfbp/array2d.hpp"
#include "sarfbp/echo_simulator.hpp"
#include "sarfbp/scene_geometry.hpp"

namespace sarfbp {

/// Scene-centered Cartesian grid, x = azimuth (row index), y = range
/// (column index). Dimensions must be even so centered transforms have a
/// well-defined origin bin.
struct ImageGrid {
    Vec2 center_m;
    double dx_m = 0.0;
    double dy_m = 0.0;
    int nx = 0;
    int ny = 0;

    double x_at(int ix) const { return center_m.x + (ix - nx / 2) * dx_m; }
    double y_at(int iy) const { return center_m.y + (iy - ny / 2) * dy_m; }

    void validate() const;
};

/// Checks the grid against the spectral support implied by the radar and
/// trajectory: dx <= 2*pi/span(k_x), dy <= 2*pi/delta_k_r.
void check_grid_nyquist(const ImageGrid& grid, const RadarParams& params,
                        const Trajectory& trajectory);

/// Correction bookkeeping. Flags are only ever set, never cleared.
struct Annotation {
    bool ambiguity_eliminated = false;
    bool aligned = false;
    bool autofocused = false;
    std::uint64_t clipped_samples = 0;
};

struct ComplexImage {
    Array2D data;
    ImageGrid grid;
    Annotation annotation;
};

enum class RangeInterp { Nearest, Linear, Sinc8 };

struct BackprojectOptions {
    bool ramp_filter = false;
    int range_upsample = 8;
    RangeInterp interp = RangeInterp::Sinc8;
    int thread_count = 0;  // 0 = hardware concurrency
};

/// Time-domain backprojection of a range-compressed phase history onto the
/// grid using the supplied (possibly erroneous) measured trajectory. Output
/// is normalized by pulse count so a unit scatterer peaks near one.
/// Out-of-window lookups contribute zero and are counted in the annotation.
ComplexImage backproject(const PhaseHistory& ph, const Trajectory& measured_trajectory,
                         const ImageGrid& grid, const BackprojectOptions& options = {});

/// Band-limited ideal point response: numerical quadrature of the spectrum
/// support integral per target, superposed. Normalized like backproject so a
/// unit scatterer peaks near one. Serves as the focus-quality oracle.
ComplexImage ideal_reference_image(const Scene& scene, const ImageGrid& grid,
                                   const PolarSupport& support, int n_theta = 512,
                                   int n_kr = 64);

/// Fine-profile lookup shared by backproject and its brute-force test
/// oracle; pos is in fine-sample units.
cplx sample_profile(const std::vector<cplx>& fine, double pos, RangeInterp interp);

}  // namespace sarfbp
