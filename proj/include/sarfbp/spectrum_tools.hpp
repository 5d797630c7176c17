#pragma once

#include <vector>

#include "sarfbp/array2d.hpp"
#include "sarfbp/fbp_imager.hpp"

namespace sarfbp {

/// Centered 2-D transform of an image. Axes are baseband: the physical range
/// wavenumber is k_y_axis + k_yc once the ambiguity has been eliminated.
struct Spectrum {
    Array2D data;
    std::vector<double> k_x_axis;
    std::vector<double> k_y_axis;
    bool baseband = true;
    ImageGrid source_grid;
    Annotation annotation;
};

/// Sampled 2-D phase error on a spectrum grid; k_y_axis is offset-restored
/// (values near k_yc). The k_y = k_yc row reproduces the generating azimuth
/// phase error exactly.
struct PhaseErrorField {
    std::vector<double> k_x_axis;
    std::vector<double> k_y_axis;
    RealArray2D phase;
    std::uint64_t extrapolated_samples = 0;
};

/// Unitary centered 2-D FFT with the exp(+j k x) kernel, so a scatterer at
/// (x_p, y_p) contributes exp(+j(x_p k_x + y_p k_y)).
Spectrum to_spectrum(const ComplexImage& img);
ComplexImage to_image(const Spectrum& spec);

/// Down-converts the range spectrum to baseband by multiplying each pixel by
/// exp(+j y k_yc). Throws "already baseband" on double application.
ComplexImage eliminate_ambiguity(const ComplexImage& img, double k_yc);

/// Removes the azimuth-position-dependent support skew with the quadratic
/// phase exp(-j k_y x^2 / (2 standoff)) applied in the (x, k_y) domain with
/// the offset-restored k_y. Requires a baseband image.
ComplexImage align_spectrum(const ComplexImage& img, double standoff_m, double k_yc);

struct SupportMeasurement {
    std::vector<bool> mask;  // row-major, same shape as the spectrum
    double centroid_k_x = 0.0;
    double centroid_k_y = 0.0;
    double principal_axis_rad = 0.0;  // from the k_y axis toward k_x
    double angular_extent_rad = 0.0;  // theta span seen from the wavenumber origin
    std::size_t bin_count = 0;
};

/// Thresholded support mask (power dB relative to the spectrum peak) with
/// binary centroid, principal-axis angle, and angular extent. k_y_offset is
/// added to the baseband axis when converting bins to polar angles (pass
/// k_yc for an ambiguity-eliminated spectrum).
SupportMeasurement measure_support(const Spectrum& spec, double threshold_db = 6.0,
                                   double k_y_offset = 0.0);

/// Samplewise multiply by exp(j*sign*phase). Unitary.
Spectrum apply_phase(const Spectrum& spec, const PhaseErrorField& field, int sign);
ComplexImage apply_phase(const ComplexImage& img, const PhaseErrorField& field, int sign);

}  // namespace sarfbp
