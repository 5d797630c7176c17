#include "sarfbp/spectrum_tools.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sarfbp/fft.hpp"

namespace sarfbp {

Spectrum to_spectrum(const ComplexImage& img) {
    img.grid.validate();
    Spectrum spec;
    spec.data = img.data;
    fft::centered_dft_rows(spec.data, +1);  // along y -> k_y
    fft::centered_dft_cols(spec.data, +1);  // along x -> k_x
    spec.k_x_axis = fft::freq_axis(img.grid.nx, img.grid.dx_m);
    spec.k_y_axis = fft::freq_axis(img.grid.ny, img.grid.dy_m);
    spec.baseband = true;
    spec.source_grid = img.grid;
    spec.annotation = img.annotation;
    return spec;
}

ComplexImage to_image(const Spectrum& spec) {
    ComplexImage img;
    img.data = spec.data;
    fft::centered_dft_cols(img.data, -1);
    fft::centered_dft_rows(img.data, -1);
    img.grid = spec.source_grid;
    img.annotation = spec.annotation;
    return img;
}

ComplexImage eliminate_ambiguity(const ComplexImage& img, double k_yc) {
    if (img.annotation.ambiguity_eliminated) throw std::logic_error("already baseband");
    ComplexImage out = img;
    for (int iy = 0; iy < out.grid.ny; ++iy) {
        const cplx rot = std::polar(1.0, out.grid.y_at(iy) * k_yc);
        for (int ix = 0; ix < out.grid.nx; ++ix) out.data(ix, iy) *= rot;
    }
    out.annotation.ambiguity_eliminated = true;
    return out;
}

ComplexImage align_spectrum(const ComplexImage& img, double standoff_m, double k_yc) {
    if (!img.annotation.ambiguity_eliminated) throw std::logic_error("ambiguity not eliminated");
    if (!(standoff_m > 0.0)) throw std::invalid_argument("align_spectrum: standoff must be positive");
    ComplexImage out = img;
    fft::centered_dft_rows(out.data, +1);  // image -> (x, k_y)
    const auto ky = fft::freq_axis(out.grid.ny, out.grid.dy_m);
    for (int ix = 0; ix < out.grid.nx; ++ix) {
        const double x = out.grid.x_at(ix);
        const double quad = x * x / (2.0 * standoff_m);
        for (int iy = 0; iy < out.grid.ny; ++iy)
            out.data(ix, iy) *= std::polar(1.0, -(ky[iy] + k_yc) * quad);
    }
    fft::centered_dft_rows(out.data, -1);
    out.annotation.aligned = true;
    return out;
}

SupportMeasurement measure_support(const Spectrum& spec, double threshold_db, double k_y_offset) {
    const std::size_t nx = spec.data.rows();
    const std::size_t ny = spec.data.cols();
    const double peak = spec.data.max_abs();
    if (!(peak > 0.0)) throw std::invalid_argument("measure_support: empty spectrum");
    const double floor = peak * std::pow(10.0, -threshold_db / 20.0);

    SupportMeasurement m;
    m.mask.assign(nx * ny, false);
    double sum_kx = 0.0, sum_ky = 0.0;
    double theta_lo = std::numbers::pi, theta_hi = -std::numbers::pi;
    for (std::size_t ix = 0; ix < nx; ++ix) {
        for (std::size_t iy = 0; iy < ny; ++iy) {
            if (std::abs(spec.data(ix, iy)) < floor) continue;
            m.mask[ix * ny + iy] = true;
            ++m.bin_count;
            sum_kx += spec.k_x_axis[ix];
            sum_ky += spec.k_y_axis[iy];
            const double ky_phys = spec.k_y_axis[iy] + k_y_offset;
            if (ky_phys != 0.0) {
                const double th = std::atan(spec.k_x_axis[ix] / ky_phys);
                theta_lo = std::min(theta_lo, th);
                theta_hi = std::max(theta_hi, th);
            }
        }
    }
    if (m.bin_count == 0) throw std::runtime_error("measure_support: threshold leaves empty mask");
    m.centroid_k_x = sum_kx / static_cast<double>(m.bin_count);
    m.centroid_k_y = sum_ky / static_cast<double>(m.bin_count);
    m.angular_extent_rad = std::max(0.0, theta_hi - theta_lo);

    // principal axis from central second moments of the binary mask
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix) {
        for (std::size_t iy = 0; iy < ny; ++iy) {
            if (!m.mask[ix * ny + iy]) continue;
            const double dx = spec.k_x_axis[ix] - m.centroid_k_x;
            const double dy = spec.k_y_axis[iy] - m.centroid_k_y;
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
        }
    }
    m.principal_axis_rad = 0.5 * std::atan2(2.0 * sxy, syy - sxx);
    return m;
}

namespace {

void check_field_shape(const Array2D& data, const PhaseErrorField& field) {
    if (!field.phase.same_shape(data) || field.k_x_axis.size() != data.rows() ||
        field.k_y_axis.size() != data.cols())
        throw std::invalid_argument("apply_phase: shape mismatch");
}

}  // namespace

Spectrum apply_phase(const Spectrum& spec, const PhaseErrorField& field, int sign) {
    check_field_shape(spec.data, field);
    Spectrum out = spec;
    const double s = sign >= 0 ? 1.0 : -1.0;
    for (std::size_t ix = 0; ix < out.data.rows(); ++ix)
        for (std::size_t iy = 0; iy < out.data.cols(); ++iy)
            out.data(ix, iy) *= std::polar(1.0, s * field.phase(ix, iy));
    return out;
}

ComplexImage apply_phase(const ComplexImage& img, const PhaseErrorField& field, int sign) {
    Spectrum spec = to_spectrum(img);
    check_field_shape(spec.data, field);
    return to_image(apply_phase(spec, field, sign));
}

}  // namespace sarfbp
