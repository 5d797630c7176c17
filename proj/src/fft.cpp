#include "sarfbp/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sarfbp::fft {

namespace {

void raw_dft(cplx* data, std::size_t n, int sign) {
    // FFTW_BACKWARD carries exp(+j*2*pi*i*k/n), matching our sign = +1.
    fftw_plan plan = fftw_plan_dft_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(data),
        reinterpret_cast<fftw_complex*>(data),
        sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

}  // namespace

void centered_dft(std::vector<cplx>& v, int sign) {
    const std::size_t n = v.size();
    if (n % 2 != 0) throw std::invalid_argument("centered_dft: length must be even");
    const std::size_t h = n / 2;
    std::vector<cplx> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = v[(i + h) % n];
    raw_dft(buf.data(), n, sign);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) v[i] = buf[(i + h) % n] * scale;
}

void centered_dft_rows(Array2D& a, int sign) {
    std::vector<cplx> buf(a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        buf.assign(a.row(r), a.row(r) + a.cols());
        centered_dft(buf, sign);
        std::copy(buf.begin(), buf.end(), a.row(r));
    }
}

void centered_dft_cols(Array2D& a, int sign) {
    std::vector<cplx> buf(a.rows());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        for (std::size_t r = 0; r < a.rows(); ++r) buf[r] = a(r, c);
        centered_dft(buf, sign);
        for (std::size_t r = 0; r < a.rows(); ++r) a(r, c) = buf[r];
    }
}

std::vector<double> freq_axis(std::size_t n, double spacing) {
    std::vector<double> k(n);
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * spacing);
    for (std::size_t i = 0; i < n; ++i)
        k[i] = (static_cast<double>(i) - static_cast<double>(n / 2)) * dk;
    return k;
}

std::vector<cplx> upsample_trig(const std::vector<cplx>& x, int factor) {
    if (factor < 1) throw std::invalid_argument("upsample_trig: factor must be >= 1");
    const std::size_t n = x.size();
    if (factor == 1) return x;
    std::vector<cplx> spec(x);
    raw_dft(spec.data(), n, -1);  // forward DFT, unnormalized

    const std::size_t m = n * static_cast<std::size_t>(factor);
    std::vector<cplx> pad(m, cplx(0.0, 0.0));
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) pad[i] = spec[i];
    for (std::size_t i = half + 1; i < n; ++i) pad[m - n + i] = spec[i];
    if (n % 2 == 0) {
        // split the Nyquist bin so the interpolant is real for real input
        pad[half] = 0.5 * spec[half];
        pad[m - half] = 0.5 * spec[half];
    } else {
        pad[half] = spec[half];
    }
    raw_dft(pad.data(), m, +1);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : pad) v *= scale;
    return pad;
}

}  // namespace sarfbp::fft
