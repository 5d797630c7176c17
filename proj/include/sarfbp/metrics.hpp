#pragma once

#include "sarfbp/fbp_imager.hpp"

namespace sarfbp {

struct FocusReport {
    double contrast = 0.0;
    double entropy_nats = 0.0;
    Vec2 peak_position_m;
    Vec2 mainlobe_width_m;  // -3 dB widths along x and y
    double measured_rcm_m = 0.0;
};

/// std(|I|^2) / mean(|I|^2) over the pixel intensities. Throws on an
/// all-zero image.
double contrast(const ComplexImage& img);

/// -sum p ln p with p the intensity-normalized pixel distribution (nats).
/// Throws on an all-zero image.
double entropy(const ComplexImage& img);

/// Interpolated peak position, -3 dB mainlobe widths, and the per-azimuth-bin
/// range excursion of the dominant response seen in the range-compressed
/// (azimuth-FFT) view. Requires a dominant peak >= 10 dB above the image
/// median magnitude.
FocusReport point_response_report(const ComplexImage& img, Vec2 expected_m);

}  // namespace sarfbp
