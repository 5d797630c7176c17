#include "sarfbp/autofocus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "sarfbp/fft.hpp"
#include "sarfbp/metrics.hpp"

namespace sarfbp {

namespace {

constexpr int kMaxPgaColumns = 64;
constexpr double kWindowShrink = 0.7;
constexpr int kMinWindow = 7;

struct LinearFit {
    double offset = 0.0;
    double slope = 0.0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y, std::size_t lo,
                   std::size_t hi) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinearFit f;
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) > 0.0) {
        f.slope = (n * sxy - sx * sy) / denom;
        f.offset = (sy - f.slope * sx) / n;
    } else {
        f.offset = sy / n;
    }
    return f;
}

double rms(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc / static_cast<double>(v.size()));
}

std::vector<cplx> center_and_window(const std::vector<cplx>& col, int window) {
    const int n = static_cast<int>(col.size());
    int ipk = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(col[i]) > std::abs(col[ipk])) ipk = i;
    const int shift = n / 2 - ipk;
    std::vector<cplx> out(n, cplx(0.0, 0.0));
    const int half = window / 2;
    for (int d = -half; d <= half; ++d) {
        const int dst = n / 2 + d;
        if (dst < 0 || dst >= n) continue;
        out[dst] = col[((dst - shift) % n + n) % n];
    }
    return out;
}

// Integrated conjugate-product phase gradient over the given k-bin range.
// The estimate spans [lo, hi) with phase(lo) = 0.  Bins whose aggregate
// product is negligible carry no signal; their gradient is taken as zero so
// out-of-support noise does not random-walk into the integral.
std::vector<double> integrate_gradient(const std::vector<std::vector<cplx>>& spectra,
                                       std::size_t lo, std::size_t hi) {
    std::vector<cplx> prod(hi - lo, cplx(0.0, 0.0));
    double max_mag = 0.0;
    for (std::size_t k = lo + 1; k < hi; ++k) {
        cplx num(0.0, 0.0);
        for (const auto& g : spectra) num += g[k] * std::conj(g[k - 1]);
        prod[k - lo] = num;
        max_mag = std::max(max_mag, std::abs(num));
    }
    std::vector<double> phase(hi - lo, 0.0);
    for (std::size_t k = lo + 1; k < hi; ++k) {
        const cplx num = prod[k - lo];
        const double grad = (std::abs(num) > 0.01 * max_mag) ? std::arg(num) : 0.0;
        phase[k - lo] = phase[k - lo - 1] + grad;
    }
    return phase;
}

double gradient_rms(const std::vector<std::vector<cplx>>& spectra) {
    const std::size_t n = spectra.front().size();
    std::vector<double> grads;
    double max_mag = 0.0;
    std::vector<double> mags(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        cplx num(0.0, 0.0);
        for (const auto& g : spectra) num += g[k] * std::conj(g[k - 1]);
        mags[k] = std::abs(num);
        max_mag = std::max(max_mag, mags[k]);
    }
    for (std::size_t k = 1; k < n; ++k) {
        cplx num(0.0, 0.0);
        for (const auto& g : spectra) num += g[k] * std::conj(g[k - 1]);
        if (mags[k] > 0.01 * max_mag) grads.push_back(std::arg(num));
    }
    if (grads.empty()) return 0.0;
    return rms(grads);
}

// Single-pass phase estimate from shifted/windowed azimuth-domain columns.
// With more than one subaperture, the azimuth spectrum is split into
// overlapping bands, each band is re-centered as a low-resolution sub-image
// before its local gradient is integrated, and the band estimates are
// stitched by matching offset and slope in the overlaps.
std::vector<double> estimate_pass_phase(const std::vector<std::vector<cplx>>& windowed_cols,
                                        const std::vector<double>& k_x_axis, int subapertures) {
    const std::size_t n = windowed_cols.front().size();
    std::vector<std::vector<cplx>> spectra(windowed_cols.size());
    for (std::size_t j = 0; j < windowed_cols.size(); ++j) {
        spectra[j] = windowed_cols[j];
        fft::centered_dft(spectra[j], +1);
    }

    if (subapertures <= 1) {
        return integrate_gradient(spectra, 0, n);
    }

    const std::size_t seg_len = std::max<std::size_t>(8, 2 * n / (subapertures + 1));
    const std::size_t hop = seg_len / 2;
    std::vector<double> phase(n, 0.0);
    std::vector<bool> covered(n, false);
    std::size_t prev_lo = 0, prev_hi = 0;

    for (int s = 0; s < subapertures; ++s) {
        const std::size_t lo = std::min<std::size_t>(s * hop, n - seg_len);
        const std::size_t hi = lo + seg_len;

        // band-limit each column to the segment and re-center it
        std::vector<std::vector<cplx>> band(spectra.size());
        for (std::size_t j = 0; j < spectra.size(); ++j) {
            std::vector<cplx> g(n, cplx(0.0, 0.0));
            for (std::size_t k = lo; k < hi; ++k) g[k] = spectra[j][k];
            fft::centered_dft(g, -1);
            g = center_and_window(g, static_cast<int>(n));
            fft::centered_dft(g, +1);
            band[j] = std::move(g);
        }
        std::vector<double> seg = integrate_gradient(band, lo, hi);

        if (s == 0) {
            for (std::size_t k = lo; k < hi; ++k) phase[k] = seg[k - lo];
        } else {
            const std::size_t olo = std::max(lo, prev_lo);
            const std::size_t ohi = std::min(hi, prev_hi);
            std::vector<double> xs, diff;
            for (std::size_t k = olo; k < ohi; ++k) {
                xs.push_back(k_x_axis[k]);
                diff.push_back(phase[k] - seg[k - lo]);
            }
            const LinearFit f = fit_line(xs, diff, 0, xs.size());
            for (std::size_t k = lo; k < hi; ++k) {
                const double adj = seg[k - lo] + f.offset + f.slope * k_x_axis[k];
                if (!covered[k]) phase[k] = adj;
            }
        }
        for (std::size_t k = lo; k < hi; ++k) covered[k] = true;
        prev_lo = lo;
        prev_hi = hi;
    }
    return phase;
}

void apply_azimuth_phase(Array2D& data, const std::vector<double>& phase) {
    std::vector<cplx> col(data.rows());
    for (std::size_t c = 0; c < data.cols(); ++c) {
        for (std::size_t r = 0; r < data.rows(); ++r) col[r] = data(r, c);
        fft::centered_dft(col, +1);
        for (std::size_t r = 0; r < data.rows(); ++r) col[r] *= std::polar(1.0, -phase[r]);
        fft::centered_dft(col, -1);
        for (std::size_t r = 0; r < data.rows(); ++r) data(r, c) = col[r];
    }
}

}  // namespace

void AutofocusConfig::validate() const {
    if (max_iterations < 1 || pga_iterations < 1 || range_collapse_factor < 1 ||
        subaperture_count < 1 || !(convergence_rms_rad > 0.0))
        throw std::invalid_argument("AutofocusConfig: all fields must be positive");
    if ((range_collapse_factor & (range_collapse_factor - 1)) != 0)
        throw std::invalid_argument("AutofocusConfig: range_collapse_factor must be a power of two");
}

void normalize_ape(AzimuthPhaseError& ape) {
    const LinearFit f = fit_line(ape.k_x_axis, ape.phase_rad, 0, ape.phase_rad.size());
    for (std::size_t i = 0; i < ape.phase_rad.size(); ++i)
        ape.phase_rad[i] -= f.offset + f.slope * ape.k_x_axis[i];
    ape.normalized = true;
}

ComplexImage reduce_range_resolution(const ComplexImage& img, int factor) {
    if (factor < 1 || img.grid.ny % factor != 0)
        throw std::invalid_argument("reduce_range_resolution: factor must divide the range dimension");
    if (factor == 1) return img;
    const int nb = img.grid.ny / factor;
    if (nb < 2 || nb % 2 != 0)
        throw std::invalid_argument("reduce_range_resolution: reduced range dimension too small");

    Array2D spec = img.data;
    fft::centered_dft_rows(spec, +1);
    Array2D kept(img.grid.nx, nb);
    const int off = img.grid.ny / 2 - nb / 2;
    for (int ix = 0; ix < img.grid.nx; ++ix)
        for (int j = 0; j < nb; ++j) kept(ix, j) = spec(ix, off + j);
    fft::centered_dft_rows(kept, -1);

    ComplexImage out;
    out.data = std::move(kept);
    out.grid = img.grid;
    out.grid.ny = nb;
    out.grid.dy_m = img.grid.dy_m * factor;
    out.annotation = img.annotation;
    return out;
}

AzimuthPhaseError estimate_ape_pga(const ComplexImage& img, const AutofocusConfig& config) {
    config.validate();
    if (!img.annotation.ambiguity_eliminated || !img.annotation.aligned)
        throw std::logic_error("estimate_ape_pga: image must be ambiguity-eliminated and aligned");
    const int nx = img.grid.nx;
    const int ny = img.grid.ny;

    Array2D working = img.data;
    std::vector<double> total_phase(nx, 0.0);
    const auto k_x_axis = fft::freq_axis(nx, img.grid.dx_m);
    int window = 0;
    int subapertures = config.subaperture_count;
    bool converged = false;

    for (int iter = 0; iter < config.pga_iterations; ++iter) {
        // dominant-scatterer range bins
        std::vector<double> peak(ny, 0.0), mean(ny, 0.0);
        double gmax = 0.0;
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                const double m = std::abs(working(i, j));
                peak[j] = std::max(peak[j], m);
                mean[j] += m;
            }
            mean[j] /= nx;
            gmax = std::max(gmax, peak[j]);
        }
        std::vector<int> selected;
        for (int j = 0; j < ny; ++j)
            if (peak[j] >= 0.1 * gmax && peak[j] >= 3.0 * mean[j]) selected.push_back(j);
        if (selected.empty()) {
            // severely defocused bins rarely clear the 3x gate; fall back to
            // the most peaked bins as long as they are not featureless
            std::vector<int> ranked;
            for (int j = 0; j < ny; ++j)
                if (peak[j] >= 0.1 * gmax && peak[j] >= 1.5 * mean[j]) ranked.push_back(j);
            std::sort(ranked.begin(), ranked.end(),
                      [&](int a, int b) { return peak[a] / mean[a] > peak[b] / mean[b]; });
            if (static_cast<int>(ranked.size()) > 8) ranked.resize(8);
            selected = std::move(ranked);
        }
        if (selected.empty()) throw std::runtime_error("insufficient scatterers");
        std::sort(selected.begin(), selected.end(),
                  [&](int a, int b) { return peak[a] > peak[b]; });
        if (static_cast<int>(selected.size()) > kMaxPgaColumns) selected.resize(kMaxPgaColumns);

        // center the strongest scatterer of each bin, then window
        std::vector<std::vector<cplx>> cols(selected.size());
        for (std::size_t s = 0; s < selected.size(); ++s) {
            cols[s].resize(nx);
            for (int i = 0; i < nx; ++i) cols[s][i] = working(i, selected[s]);
        }
        if (iter == 0) {
            std::vector<double> profile(nx, 0.0);
            for (auto& c : cols) {
                const auto centered = center_and_window(c, nx);
                for (int i = 0; i < nx; ++i) profile[i] += std::norm(centered[i]);
            }
            const double total = std::accumulate(profile.begin(), profile.end(), 0.0);
            double acc = profile[nx / 2];
            int half = 0;
            while (acc < 0.95 * total && half < nx / 2 - 1) {
                ++half;
                acc += profile[nx / 2 - half];
                if (nx / 2 + half < nx) acc += profile[nx / 2 + half];
            }
            window = std::max(kMinWindow, 2 * half + 1);
        } else {
            window = std::max(kMinWindow, static_cast<int>(window * kWindowShrink));
        }
        std::vector<std::vector<cplx>> windowed(cols.size());
        for (std::size_t s = 0; s < cols.size(); ++s) windowed[s] = center_and_window(cols[s], window);

        if (iter == 0 && config.subaperture_count == 1) {
            std::vector<std::vector<cplx>> probe(windowed.size());
            for (std::size_t s = 0; s < windowed.size(); ++s) {
                probe[s] = windowed[s];
                fft::centered_dft(probe[s], +1);
            }
            // severe-defocus heuristic: fall back to a subaperture split
            if (gradient_rms(probe) > std::numbers::pi / 2.0) subapertures = 4;
        }

        std::vector<double> phase = estimate_pass_phase(windowed, k_x_axis, subapertures);
        const LinearFit f = fit_line(k_x_axis, phase, 0, phase.size());
        for (int i = 0; i < nx; ++i) phase[i] -= f.offset + f.slope * k_x_axis[i];

        apply_azimuth_phase(working, phase);
        for (int i = 0; i < nx; ++i) total_phase[i] += phase[i];

        if (rms(phase) < config.convergence_rms_rad) {
            converged = true;
            break;
        }
    }

    AzimuthPhaseError ape;
    ape.k_x_axis = k_x_axis;
    ape.phase_rad = std::move(total_phase);
    ape.converged = converged;
    normalize_ape(ape);
    return ape;
}

PhaseErrorField synthesize_2d_phase(const AzimuthPhaseError& ape,
                                    const std::vector<double>& k_y_axis, double k_yc) {
    if (ape.k_x_axis.size() < 2 || ape.k_x_axis.size() != ape.phase_rad.size())
        throw std::invalid_argument("synthesize_2d_phase: invalid APE sampling");
    for (double ky : k_y_axis)
        if (!(ky > 0.0)) throw std::invalid_argument("synthesize_2d_phase: k_y axis must be positive");
    if (!(k_yc > 0.0)) throw std::invalid_argument("synthesize_2d_phase: k_yc must be positive");

    const std::size_t nx = ape.k_x_axis.size();
    const std::size_t ny = k_y_axis.size();
    const double kx0 = ape.k_x_axis.front();
    const double dkx = ape.k_x_axis[1] - ape.k_x_axis[0];

    // gain-normalized windowed-sinc resampling of the APE samples, edge
    // values replicated outside the support
    auto sample_ape = [&](double kx, std::uint64_t& warn) -> double {
        double pos = (kx - kx0) / dkx;
        if (pos < 0.0 || pos > static_cast<double>(nx - 1)) {
            ++warn;
            pos = std::clamp(pos, 0.0, static_cast<double>(nx - 1));
            return ape.phase_rad[static_cast<std::size_t>(std::llround(pos))];
        }
        const auto base = static_cast<long>(std::floor(pos));
        double acc = 0.0, wsum = 0.0;
        for (long k = base - 3; k <= base + 4; ++k) {
            const double d = pos - static_cast<double>(k);
            double w;
            if (std::abs(d) < 1e-12) {
                w = 1.0;
            } else {
                const double pd = std::numbers::pi * d;
                w = std::sin(pd) / pd * 0.5 * (1.0 + std::cos(pd / 4.0));
            }
            const long kc = std::clamp(k, 0L, static_cast<long>(nx - 1));
            acc += w * ape.phase_rad[static_cast<std::size_t>(kc)];
            wsum += w;
        }
        return acc / wsum;
    };

    PhaseErrorField field;
    field.k_x_axis = ape.k_x_axis;
    field.k_y_axis = k_y_axis;
    field.phase = RealArray2D(nx, ny);
    for (std::size_t iy = 0; iy < ny; ++iy) {
        const double ky = k_y_axis[iy];
        const double scale = k_yc / ky;
        const double gain = ky / k_yc;
        const bool center_row = std::abs(ky - k_yc) < 1e-12 * k_yc;
        for (std::size_t ix = 0; ix < nx; ++ix) {
            if (center_row) {
                field.phase(ix, iy) = ape.phase_rad[ix];  // fixed row, bitwise
            } else {
                field.phase(ix, iy) =
                    gain * sample_ape(scale * ape.k_x_axis[ix], field.extrapolated_samples);
            }
        }
    }
    return field;
}

AutofocusResult autofocus_pipeline(const ComplexImage& img, const SceneGeometryHint& geometry,
                                   const AutofocusConfig& config) {
    config.validate();
    if (img.annotation.ambiguity_eliminated || img.annotation.aligned || img.annotation.autofocused)
        throw std::invalid_argument("autofocus_pipeline: expects a raw FBP image (no flags set)");

    AutofocusResult res;
    ComplexImage cur = align_spectrum(eliminate_ambiguity(img, geometry.k_yc),
                                      geometry.standoff_m, geometry.k_yc);
    res.metrics_history.push_back({entropy(cur), contrast(cur)});

    for (int it = 0; it < config.max_iterations; ++it) {
        ComplexImage est_src = reduce_range_resolution(cur, config.range_collapse_factor);
        AzimuthPhaseError ape = estimate_ape_pga(est_src, config);

        Spectrum spec = to_spectrum(cur);
        std::vector<double> ky_phys = spec.k_y_axis;
        for (double& v : ky_phys) v += geometry.k_yc;
        PhaseErrorField field = synthesize_2d_phase(ape, ky_phys, geometry.k_yc);
        ComplexImage cand = to_image(apply_phase(spec, field, -1));

        res.ape_history.push_back(std::move(ape));
        res.field_history.push_back(std::move(field));

        const double e_old = res.metrics_history.back().entropy_nats;
        const double e_new = entropy(cand);
        if (e_new > e_old) {
            res.rolled_back = true;
            break;
        }
        cand.annotation.autofocused = true;
        cur = std::move(cand);
        res.metrics_history.push_back({e_new, contrast(cur)});
        ++res.iterations_run;
        if (e_old - e_new < 1e-3) break;
    }
    res.refocused = std::move(cur);
    return res;
}

}  // namespace sarfbp
