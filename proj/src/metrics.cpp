#include "sarfbp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sarfbp/fft.hpp"

namespace sarfbp {

namespace {

std::vector<double> intensities(const ComplexImage& img) {
    std::vector<double> p(img.data.size());
    const cplx* d = img.data.data();
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(d[i]);
    return p;
}

struct SliceStats {
    double peak_pos_fine = 0.0;  // fine-sample units
    double width_fine = 0.0;     // -3 dB width in fine-sample units
};

// Upsampled magnitude profile statistics around the strongest lobe.
SliceStats analyze_slice(const std::vector<cplx>& slice, int upsample) {
    const auto fine = fft::upsample_trig(slice, upsample);
    std::vector<double> mag(fine.size());
    std::size_t ipk = 0;
    for (std::size_t i = 0; i < fine.size(); ++i) {
        mag[i] = std::abs(fine[i]);
        if (mag[i] > mag[ipk]) ipk = i;
    }
    const double half = mag[ipk] / std::sqrt(2.0);

    auto cross = [&](long dir) -> double {
        long i = static_cast<long>(ipk);
        const long n = static_cast<long>(mag.size());
        while (true) {
            const long next = i + dir;
            if (next < 0 || next >= n) return static_cast<double>(i);
            if (mag[next] < half) {
                const double f = (mag[i] - half) / (mag[i] - mag[next]);
                return static_cast<double>(i) + f * static_cast<double>(dir);
            }
            i = next;
        }
    };

    SliceStats s;
    s.peak_pos_fine = static_cast<double>(ipk);
    // parabolic refinement of the peak on the fine grid
    if (ipk > 0 && ipk + 1 < mag.size()) {
        const double denom = mag[ipk - 1] - 2.0 * mag[ipk] + mag[ipk + 1];
        if (denom < 0.0) s.peak_pos_fine += 0.5 * (mag[ipk - 1] - mag[ipk + 1]) / denom;
    }
    s.width_fine = cross(+1) - cross(-1);
    return s;
}

}  // namespace

double contrast(const ComplexImage& img) {
    const auto p = intensities(img);
    double mean = 0.0;
    for (double v : p) mean += v;
    mean /= static_cast<double>(p.size());
    if (!(mean > 0.0)) throw std::invalid_argument("contrast: all-zero image");
    double var = 0.0;
    for (double v : p) var += (v - mean) * (v - mean);
    var /= static_cast<double>(p.size());
    return std::sqrt(var) / mean;
}

double entropy(const ComplexImage& img) {
    const auto p = intensities(img);
    double total = 0.0;
    for (double v : p) total += v;
    if (!(total > 0.0)) throw std::invalid_argument("entropy: all-zero image");
    double h = 0.0;
    for (double v : p) {
        if (v <= 0.0) continue;
        const double q = v / total;
        h -= q * std::log(q);
    }
    return h;
}

FocusReport point_response_report(const ComplexImage& img, Vec2 expected_m) {
    (void)expected_m;  // recorded by callers; the report is measured blind
    const int nx = img.grid.nx;
    const int ny = img.grid.ny;

    std::vector<double> mags(img.data.size());
    for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::abs(img.data.data()[i]);
    std::size_t ipk = 0;
    for (std::size_t i = 0; i < mags.size(); ++i)
        if (mags[i] > mags[ipk]) ipk = i;
    std::vector<double> sorted(mags);
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    if (mags[ipk] < median * std::pow(10.0, 0.5))
        throw std::runtime_error("point_response_report: no dominant peak");

    const int ix_pk = static_cast<int>(ipk) / ny;
    const int iy_pk = static_cast<int>(ipk) % ny;

    constexpr int kUpsample = 16;
    std::vector<cplx> x_slice(nx), y_slice(ny);
    for (int ix = 0; ix < nx; ++ix) x_slice[ix] = img.data(ix, iy_pk);
    for (int iy = 0; iy < ny; ++iy) y_slice[iy] = img.data(ix_pk, iy);
    const SliceStats sx = analyze_slice(x_slice, kUpsample);
    const SliceStats sy = analyze_slice(y_slice, kUpsample);

    FocusReport rep;
    rep.contrast = contrast(img);
    rep.entropy_nats = entropy(img);
    rep.peak_position_m = {
        img.grid.center_m.x + (sx.peak_pos_fine / kUpsample - nx / 2) * img.grid.dx_m,
        img.grid.center_m.y + (sy.peak_pos_fine / kUpsample - ny / 2) * img.grid.dy_m};
    rep.mainlobe_width_m = {sx.width_fine / kUpsample * img.grid.dx_m,
                            sy.width_fine / kUpsample * img.grid.dy_m};

    // Range-compressed view: azimuth FFT, then track the per-bin range peak.
    Array2D rc = img.data;
    fft::centered_dft_cols(rc, +1);
    std::vector<double> row_energy(nx, 0.0);
    double max_energy = 0.0;
    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy) row_energy[ix] += std::norm(rc(ix, iy));
        max_energy = std::max(max_energy, row_energy[ix]);
    }
    double bin_lo = ny, bin_hi = -1.0;
    for (int ix = 0; ix < nx; ++ix) {
        if (row_energy[ix] < 0.1 * max_energy) continue;
        int jpk = 0;
        double best = 0.0;
        for (int iy = 0; iy < ny; ++iy) {
            const double m = std::abs(rc(ix, iy));
            if (m > best) {
                best = m;
                jpk = iy;
            }
        }
        double pos = jpk;
        if (jpk > 0 && jpk + 1 < ny) {
            const double m0 = std::abs(rc(ix, jpk - 1));
            const double m1 = std::abs(rc(ix, jpk));
            const double m2 = std::abs(rc(ix, jpk + 1));
            const double denom = m0 - 2.0 * m1 + m2;
            if (denom < 0.0) pos += 0.5 * (m0 - m2) / denom;
        }
        bin_lo = std::min(bin_lo, pos);
        bin_hi = std::max(bin_hi, pos);
    }
    rep.measured_rcm_m = (bin_hi >= bin_lo) ? (bin_hi - bin_lo) * img.grid.dy_m : 0.0;
    return rep;
}

}  // namespace sarfbp
