#pragma once

#include <vector>

#include "sarfbp/autofocus.hpp"
#include "sarfbp/echo_simulator.hpp"
#include "sarfbp/fbp_imager.hpp"
#include "sarfbp/scene_geometry.hpp"
#include "sarfbp/spectrum_tools.hpp"

namespace testsup {

using namespace sarfbp;

double rms(const std::vector<double>& v);

/// Direct O(n^2) evaluation of the centered unitary DFT convention.
std::vector<cplx> naive_centered_dft(const std::vector<cplx>& v, int sign);

/// Direct evaluation of the trigonometric interpolant (Nyquist bin split)
/// at the factor-refined sample positions.
std::vector<cplx> naive_upsample_trig(const std::vector<cplx>& x, int factor);

/// Brute-force backprojection double sum: per-pulse trigonometric
/// interpolation evaluated by direct DFT sums, then the same pixel
/// accumulation as the production path.
ComplexImage oracle_backproject(const PhaseHistory& ph, const Trajectory& measured,
                                const ImageGrid& grid, const BackprojectOptions& options = {});

/// Ground-truth spectrum phase error k_r * (r_nom - r_true)(theta) for a
/// scene-center scatterer, sampled on the given axes (k_y offset-restored).
PhaseErrorField truth_phase_field(const Trajectory& nominal, const Trajectory& true_traj,
                                  Vec2 scene_center, const std::vector<double>& k_x_axis,
                                  const std::vector<double>& k_y_phys_axis);

/// The k_y = k_yc row of the ground-truth field, mean/slope removed.
AzimuthPhaseError truth_ape(const Trajectory& nominal, const Trajectory& true_traj,
                            Vec2 scene_center, const std::vector<double>& k_x_axis, double k_yc);

/// Reusable simulation setup: radar, nominal path, scene, grid.
struct TestSetup {
    RadarParams radar;
    Trajectory nominal;
    Scene scene;
    ImageGrid grid;
};

/// 10 GHz / 1.25 GHz / 15 km standoff geometry sized for ~0.12 m azimuth
/// resolution (512 pulses). Grid spacing dx = 0.08, dy = 0.0625.
TestSetup standard_setup(int nx, int ny);

/// 2 km standoff, small-aperture geometry whose support skew is measurable.
TestSetup nearfield_setup(double target_x_m);

/// 16-pulse, 64-sample, 32x32 instance for exhaustive oracle comparison.
TestSetup tiny_setup();

/// Simulate with the perturbed trajectory, image with the nominal one.
ComplexImage defocused_image(const TestSetup& s, const PerturbationSpec& pert,
                             const BackprojectOptions& options = {});

/// eliminate_ambiguity + align_spectrum applied to a raw image.
ComplexImage preprocess(const ComplexImage& raw, const TestSetup& s);

double wrap_pi(double phase);

}  // namespace testsup
