#include "sarfbp/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sarfbp::io {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary formats are little-endian; byte swapping is not implemented");

constexpr char kPhMagic[8] = {'S', 'A', 'R', 'P', 'H', 'B', '0', '1'};
constexpr char kImgMagic[8] = {'S', 'A', 'R', 'I', 'M', 'G', '0', '1'};

template <typename T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw std::runtime_error("unexpected end of file");
    return v;
}

void write_samples(std::ofstream& out, const Array2D& data) {
    std::vector<float> buf(2 * data.cols());
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const cplx* row = data.row(r);
        for (std::size_t c = 0; c < data.cols(); ++c) {
            buf[2 * c] = static_cast<float>(row[c].real());
            buf[2 * c + 1] = static_cast<float>(row[c].imag());
        }
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size() * sizeof(float)));
    }
}

void read_samples(std::ifstream& in, Array2D& data) {
    std::vector<float> buf(2 * data.cols());
    for (std::size_t r = 0; r < data.rows(); ++r) {
        in.read(reinterpret_cast<char*>(buf.data()),
                static_cast<std::streamsize>(buf.size() * sizeof(float)));
        if (!in) throw std::runtime_error("unexpected end of file");
        cplx* row = data.row(r);
        for (std::size_t c = 0; c < data.cols(); ++c) row[c] = cplx(buf[2 * c], buf[2 * c + 1]);
    }
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path, const char (&magic)[8]) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    char got[8];
    in.read(got, 8);
    if (!in || std::memcmp(got, magic, 8) != 0)
        throw std::runtime_error("bad magic in " + path.string());
    return in;
}

}  // namespace

void write_phase_history(const std::filesystem::path& path, const PhaseHistory& ph) {
    auto out = open_out(path);
    out.write(kPhMagic, 8);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(ph.data.rows()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(ph.data.cols()));
    put<double>(out, ph.fast_time_origin_s);
    put<double>(out, ph.fast_time_spacing_s);
    put<double>(out, ph.params.carrier_frequency_hz);
    put<double>(out, ph.params.bandwidth_hz);
    write_samples(out, ph.data);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

PhaseHistory read_phase_history(const std::filesystem::path& path) {
    auto in = open_in(path, kPhMagic);
    PhaseHistory ph;
    const auto pulses = get<std::uint32_t>(in);
    const auto samples = get<std::uint32_t>(in);
    ph.fast_time_origin_s = get<double>(in);
    ph.fast_time_spacing_s = get<double>(in);
    ph.params.carrier_frequency_hz = get<double>(in);
    ph.params.bandwidth_hz = get<double>(in);
    ph.params.pulse_count = static_cast<int>(pulses);
    ph.params.fast_time_sample_count = static_cast<int>(samples);
    ph.params.fast_time_spacing_s = ph.fast_time_spacing_s;
    ph.data = Array2D(pulses, samples);
    read_samples(in, ph.data);
    return ph;
}

void write_complex_image(const std::filesystem::path& path, const ComplexImage& img) {
    auto out = open_out(path);
    out.write(kImgMagic, 8);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(img.grid.nx));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(img.grid.ny));
    put<double>(out, img.grid.center_m.x);
    put<double>(out, img.grid.center_m.y);
    put<double>(out, img.grid.dx_m);
    put<double>(out, img.grid.dy_m);
    std::uint32_t flags = 0;
    if (img.annotation.ambiguity_eliminated) flags |= 1u;
    if (img.annotation.aligned) flags |= 2u;
    if (img.annotation.autofocused) flags |= 4u;
    put<std::uint32_t>(out, flags);
    put<std::uint64_t>(out, img.annotation.clipped_samples);
    write_samples(out, img.data);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

ComplexImage read_complex_image(const std::filesystem::path& path) {
    auto in = open_in(path, kImgMagic);
    ComplexImage img;
    img.grid.nx = static_cast<int>(get<std::uint32_t>(in));
    img.grid.ny = static_cast<int>(get<std::uint32_t>(in));
    img.grid.center_m.x = get<double>(in);
    img.grid.center_m.y = get<double>(in);
    img.grid.dx_m = get<double>(in);
    img.grid.dy_m = get<double>(in);
    const auto flags = get<std::uint32_t>(in);
    img.annotation.ambiguity_eliminated = (flags & 1u) != 0;
    img.annotation.aligned = (flags & 2u) != 0;
    img.annotation.autofocused = (flags & 4u) != 0;
    img.annotation.clipped_samples = get<std::uint64_t>(in);
    img.data = Array2D(img.grid.nx, img.grid.ny);
    read_samples(in, img.data);
    return img;
}

void write_magnitude_pgm(const std::filesystem::path& path, const Array2D& data,
                         double dynamic_range_db) {
    const double peak = data.max_abs();
    auto out = open_out(path);
    out << "P5\n" << data.cols() << " " << data.rows() << "\n255\n";
    std::vector<unsigned char> buf(data.cols());
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t c = 0; c < data.cols(); ++c) {
            double db = -dynamic_range_db;
            const double m = std::abs(data(r, c));
            if (peak > 0.0 && m > 0.0) db = 20.0 * std::log10(m / peak);
            db = std::clamp(db, -dynamic_range_db, 0.0);
            buf[c] = static_cast<unsigned char>(std::lround(255.0 * (1.0 + db / dynamic_range_db)));
        }
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size()));
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_profile_csv(const std::filesystem::path& path, const std::string& axis_name,
                       const std::string& value_name, const std::vector<double>& axis,
                       const std::vector<double>& values) {
    if (axis.size() != values.size())
        throw std::invalid_argument("write_profile_csv: axis/value length mismatch");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << axis_name << "," << value_name << "\n";
    out.precision(17);
    for (std::size_t i = 0; i < axis.size(); ++i) out << axis[i] << "," << values[i] << "\n";
}

}  // namespace sarfbp::io
