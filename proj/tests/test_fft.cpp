#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sarfbp/fft.hpp"
#include "support.hpp"

using namespace sarfbp;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& x : v) x = cplx(dist(rng), dist(rng));
    return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("centered_dft matches the direct evaluation") {
    for (std::size_t n : {4u, 16u, 64u}) {
        auto v = random_vector(n, 7 + n);
        auto fftd = v;
        fft::centered_dft(fftd, +1);
        const auto naive = testsup::naive_centered_dft(v, +1);
        CHECK(max_diff(fftd, naive) < 1e-10);

        fftd = v;
        fft::centered_dft(fftd, -1);
        CHECK(max_diff(fftd, testsup::naive_centered_dft(v, -1)) < 1e-10);
    }
}

TEST_CASE("centered_dft round trip and unitarity") {
    auto v = random_vector(128, 11);
    const auto orig = v;
    const double e0 = [&] {
        double e = 0.0;
        for (auto& x : v) e += std::norm(x);
        return e;
    }();
    fft::centered_dft(v, +1);
    double e1 = 0.0;
    for (auto& x : v) e1 += std::norm(x);
    CHECK(std::abs(e1 - e0) / e0 < 1e-12);  // Parseval under unitary scaling
    fft::centered_dft(v, -1);
    CHECK(max_diff(v, orig) / std::sqrt(e0) < 1e-12);
}

TEST_CASE("centered_dft rejects odd lengths") {
    std::vector<cplx> v(9, cplx(1.0, 0.0));
    CHECK_THROWS_AS(fft::centered_dft(v, +1), std::invalid_argument);
}

TEST_CASE("single tone lands on the expected centered bin") {
    // x[i] = exp(+j * k0 * (i - n/2) * 2pi/n) transforms (sign=-1) to a spike
    // at bin n/2 + k0.
    const std::size_t n = 32;
    const int k0 = 5;
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = std::polar(1.0, 2.0 * std::numbers::pi * k0 *
                                   (static_cast<double>(i) - 16.0) / static_cast<double>(n));
    fft::centered_dft(v, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const double expect = (i == 16 + k0) ? std::sqrt(static_cast<double>(n)) : 0.0;
        CHECK(std::abs(std::abs(v[i]) - expect) < 1e-9);
    }
}

TEST_CASE("freq_axis is centered with 2pi/(n*spacing) steps") {
    const auto k = fft::freq_axis(8, 0.5);
    const double dk = 2.0 * std::numbers::pi / 4.0;
    CHECK(k.size() == 8);
    CHECK(k[4] == doctest::Approx(0.0));
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(k[i] == doctest::Approx((static_cast<double>(i) - 4.0) * dk));
}

TEST_CASE("rows/cols transforms agree with per-vector transforms") {
    Array2D a(4, 6);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> dist;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 6; ++c) a(r, c) = cplx(dist(rng), dist(rng));

    Array2D rows = a;
    fft::centered_dft_rows(rows, +1);
    for (std::size_t r = 0; r < 4; ++r) {
        std::vector<cplx> buf(a.row(r), a.row(r) + 6);
        fft::centered_dft(buf, +1);
        for (std::size_t c = 0; c < 6; ++c) CHECK(std::abs(rows(r, c) - buf[c]) < 1e-12);
    }

    Array2D cols = a;
    fft::centered_dft_cols(cols, -1);
    for (std::size_t c = 0; c < 6; ++c) {
        std::vector<cplx> buf(4);
        for (std::size_t r = 0; r < 4; ++r) buf[r] = a(r, c);
        fft::centered_dft(buf, -1);
        for (std::size_t r = 0; r < 4; ++r) CHECK(std::abs(cols(r, c) - buf[r]) < 1e-12);
    }
}

TEST_CASE("upsample_trig interpolates through the original samples") {
    const auto x = random_vector(16, 21);
    for (int factor : {2, 4, 8}) {
        const auto fine = fft::upsample_trig(x, factor);
        REQUIRE(fine.size() == x.size() * static_cast<std::size_t>(factor));
        for (std::size_t i = 0; i < x.size(); ++i)
            CHECK(std::abs(fine[i * factor] - x[i]) < 1e-12);
    }
}

TEST_CASE("upsample_trig equals the direct trigonometric interpolant") {
    const auto x = random_vector(24, 33);
    const auto fine = fft::upsample_trig(x, 8);
    const auto naive = testsup::naive_upsample_trig(x, 8);
    CHECK(max_diff(fine, naive) < 1e-10);
}

TEST_CASE("upsample_trig keeps real input real") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> dist;
    std::vector<cplx> x(32);
    for (auto& v : x) v = cplx(dist(rng), 0.0);
    const auto fine = fft::upsample_trig(x, 4);
    for (const auto& v : fine) CHECK(std::abs(v.imag()) < 1e-12);
}

TEST_CASE("upsample_trig rejects nonpositive factors") {
    std::vector<cplx> x(8);
    CHECK_THROWS_AS(fft::upsample_trig(x, 0), std::invalid_argument);
}
