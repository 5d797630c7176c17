#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sarfbp/autofocus.hpp"
#include "sarfbp/echo_simulator.hpp"
#include "sarfbp/fbp_imager.hpp"
#include "sarfbp/spectrum_tools.hpp"

namespace sarfbp::io {

/// Phase history binary: magic "SARPHB01", u32 pulse_count, u32 sample
/// count, f64 fast_time_origin, f64 fast_time_spacing, f64 carrier, f64
/// bandwidth, then row-major interleaved re/im float32, little-endian.
void write_phase_history(const std::filesystem::path& path, const PhaseHistory& ph);
PhaseHistory read_phase_history(const std::filesystem::path& path);

/// Complex image binary: magic "SARIMG01", u32 nx, u32 ny, f64 center x/y,
/// f64 dx/dy, u32 annotation bitmask (1 = baseband, 2 = aligned,
/// 4 = autofocused), u64 clipped counter, then interleaved float32 data.
void write_complex_image(const std::filesystem::path& path, const ComplexImage& img);
ComplexImage read_complex_image(const std::filesystem::path& path);

/// 8-bit binary PGM of the dB-scaled magnitude, clipped to the given
/// dynamic range below the peak.
void write_magnitude_pgm(const std::filesystem::path& path, const Array2D& data,
                         double dynamic_range_db = 50.0);

/// Two-column CSV (axis, value) used for phase-profile dumps.
void write_profile_csv(const std::filesystem::path& path, const std::string& axis_name,
                       const std::string& value_name, const std::vector<double>& axis,
                       const std::vector<double>& values);

}  // namespace sarfbp::io
