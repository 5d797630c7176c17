#pragma once

#include <vector>

#include "sarfbp/fbp_imager.hpp"
#include "sarfbp/spectrum_tools.hpp"

namespace sarfbp {

/// Sampled 1-D azimuth phase error on a k_x axis. Normalized means the mean
/// and best-fit linear component have been removed (they map to global phase
/// and image shift only).
struct AzimuthPhaseError {
    std::vector<double> k_x_axis;
    std::vector<double> phase_rad;
    bool normalized = false;
    bool converged = true;
};

struct AutofocusConfig {
    int max_iterations = 2;
    int pga_iterations = 6;
    int range_collapse_factor = 4;
    int subaperture_count = 1;
    double convergence_rms_rad = 0.05;

    void validate() const;
};

struct AutofocusResult {
    ComplexImage refocused;
    std::vector<AzimuthPhaseError> ape_history;
    std::vector<PhaseErrorField> field_history;
    struct Metrics {
        double entropy_nats = 0.0;
        double contrast = 0.0;
    };
    std::vector<Metrics> metrics_history;  // [0] = preprocessed input, then one per accepted pass
    int iterations_run = 0;
    bool rolled_back = false;
};

/// Removes the mean and best-fit slope in place.
void normalize_ape(AzimuthPhaseError& ape);

/// Keeps the central 1/factor range-frequency band at reduced length,
/// coarsening the range cell by the factor. Azimuth is untouched.
ComplexImage reduce_range_resolution(const ComplexImage& img, int factor);

/// Phase gradient autofocus on range-collapsed imagery: strongest-scatterer
/// centering, shrinking window, magnitude-weighted conjugate-product gradient
/// across range bins, integration, constant+linear removal. Requires the
/// ambiguity-eliminated and aligned annotation flags.
AzimuthPhaseError estimate_ape_pga(const ComplexImage& img, const AutofocusConfig& config);

/// Maps a 1-D APE onto the 2-D spectrum phase error: each offset-restored
/// k_y row is the APE resampled at (k_yc/k_y)*k_x and scaled by k_y/k_yc.
/// Arguments outside the APE support take the edge value and are counted.
PhaseErrorField synthesize_2d_phase(const AzimuthPhaseError& ape,
                                    const std::vector<double>& k_y_axis, double k_yc);

struct SceneGeometryHint {
    double k_yc = 0.0;
    double standoff_m = 0.0;
};

/// Full knowledge-aided pipeline: ambiguity elimination, spectrum alignment,
/// then iterated {range-collapse, PGA, 2-D synthesis, spectrum-domain
/// correction} until the entropy improvement stalls or max_iterations is
/// reached. An iteration that increases entropy is rolled back.
AutofocusResult autofocus_pipeline(const ComplexImage& img, const SceneGeometryHint& geometry,
                                   const AutofocusConfig& config);

}  // namespace sarfbp
