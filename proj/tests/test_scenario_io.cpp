#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <string>

#include "sarfbp/io.hpp"
#include "sarfbp/scenario.hpp"
#include "support.hpp"

using namespace sarfbp;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("sarfbp_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const char* kValidScenario = R"(# demo scenario
[radar]
carrier_frequency_hz = 1.0e10
bandwidth_hz = 1.25e9
fast_time_sample_count = 256
fast_time_spacing_s = 6.666666666666667e-10
pulse_count = 128
pulse_interval_s = 0.0059

[trajectory]
kind = linear
velocity_mps = 80.0
standoff_m = 2000.0

[perturbation]
kind = sinusoidal
axis = y
amplitude_m = 0.02
cycles_per_aperture = 2.0

[targets]
target = 0.0 0.0 1.0
target = 2.0 -1.5 0.8 0.1

[grid]
dx_m = 0.2
dy_m = 0.1
nx = 128
ny = 64

[autofocus]
max_iterations = 2
range_collapse_factor = 4

[run]
seed = 42
)";

fs::path write_file(const TempDir& dir, const std::string& name, const std::string& text) {
    const fs::path p = dir.path / name;
    std::ofstream out(p);
    out << text;
    return p;
}

}  // namespace

TEST_CASE("valid scenario loads with all fields") {
    TempDir dir;
    const Scenario sc = load_scenario(write_file(dir, "ok.ini", kValidScenario));
    CHECK(sc.radar.carrier_frequency_hz == 1.0e10);
    CHECK(sc.radar.pulse_count == 128);
    CHECK(sc.nominal_trajectory.kind == TrajectoryKind::Linear);
    CHECK(sc.standoff_m() == doctest::Approx(2000.0));
    CHECK(sc.perturbation.kind == PerturbationKind::Sinusoidal);
    CHECK(sc.perturbation.amplitude_m == 0.02);
    REQUIRE(sc.scene.targets.size() == 2);
    CHECK(sc.scene.targets[1].reflectivity == cplx(0.8, 0.1));
    CHECK(sc.grid.nx == 128);
    CHECK(sc.autofocus.range_collapse_factor == 4);
    CHECK(sc.seed == 42);
    CHECK(sc.k_yc() == doctest::Approx(419.169).epsilon(1e-5));
}

TEST_CASE("parse errors carry file and line anchors") {
    TempDir dir;
    const fs::path p = write_file(dir, "bad.ini",
                                  "[radar]\ncarrier_frequency_hz = ten\n");
    try {
        load_scenario(p);
        FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bad.ini:2:") != std::string::npos);
        CHECK(msg.find("carrier_frequency_hz") != std::string::npos);
    }
}

TEST_CASE("structural errors are reported") {
    TempDir dir;
    CHECK_THROWS_AS(load_scenario(dir.path / "missing.ini"), ScenarioError);
    CHECK_THROWS_AS(load_scenario(write_file(dir, "a.ini", "key = 1\n")), ScenarioError);
    CHECK_THROWS_AS(load_scenario(write_file(dir, "b.ini", "[radar\n")), ScenarioError);
    CHECK_THROWS_AS(load_scenario(write_file(dir, "c.ini", "[radar]\nnonsense\n")),
                    ScenarioError);

    std::string no_targets = kValidScenario;
    no_targets.replace(no_targets.find("target = 0.0 0.0 1.0\ntarget = 2.0 -1.5 0.8 0.1\n"),
                       std::string("target = 0.0 0.0 1.0\ntarget = 2.0 -1.5 0.8 0.1\n").size(),
                       "");
    CHECK_THROWS_AS(load_scenario(write_file(dir, "d.ini", no_targets)), ScenarioError);
}

TEST_CASE("cross-field validation failures") {
    TempDir dir;
    std::string s = kValidScenario;
    s.replace(s.find("dy_m = 0.1"), 10, "dy_m = 0.2");  // violates range Nyquist
    CHECK_THROWS_AS(load_scenario(write_file(dir, "nyq.ini", s)), ScenarioError);

    s = kValidScenario;
    s.replace(s.find("target = 2.0 -1.5 0.8 0.1"), 25, "target = 99.0 0.0 1.0 0.0");
    CHECK_THROWS_AS(load_scenario(write_file(dir, "out.ini", s)), ScenarioError);

    s = kValidScenario;
    s.replace(s.find("range_collapse_factor = 4"), 25, "range_collapse_factor = 8");
    // ny = 64 divisible by 8: fine
    CHECK_NOTHROW(load_scenario(write_file(dir, "div8.ini", s)));
    s.replace(s.find("ny = 64"), 7, "ny = 60");
    CHECK_THROWS_AS(load_scenario(write_file(dir, "div.ini", s)), ScenarioError);
}

TEST_CASE("explicit trajectory parsing") {
    TempDir dir;
    std::string s = kValidScenario;
    const std::string lin = "kind = linear\nvelocity_mps = 80.0\nstandoff_m = 2000.0";
    std::string expl = "kind = explicit\n";
    for (int i = 0; i < 128; ++i) {
        char line[96];
        std::snprintf(line, sizeof(line), "sample = %.17g %.17g 2000.0\n", i * 0.0059,
                      (i - 63.5) * 0.472);
        expl += line;
    }
    s.replace(s.find(lin), lin.size(), expl);
    const Scenario sc = load_scenario(write_file(dir, "expl.ini", s));
    CHECK(sc.nominal_trajectory.kind == TrajectoryKind::Explicit);
    CHECK(sc.nominal_trajectory.explicit_samples.size() == 128);
    CHECK(sc.standoff_m() == doctest::Approx(2000.0));
}

TEST_CASE("phase history round trip preserves float32 samples") {
    TempDir dir;
    testsup::TestSetup s = testsup::tiny_setup();
    const PhaseHistory ph = simulate_phase_history(s.radar, s.nominal, s.scene);
    const fs::path p = dir.path / "ph.bin";
    io::write_phase_history(p, ph);
    const PhaseHistory rt = io::read_phase_history(p);
    CHECK(rt.data.rows() == ph.data.rows());
    CHECK(rt.data.cols() == ph.data.cols());
    CHECK(rt.fast_time_origin_s == ph.fast_time_origin_s);
    CHECK(rt.fast_time_spacing_s == ph.fast_time_spacing_s);
    CHECK(rt.params.carrier_frequency_hz == ph.params.carrier_frequency_hz);
    for (std::size_t r = 0; r < ph.data.rows(); ++r)
        for (std::size_t c = 0; c < ph.data.cols(); ++c) {
            CHECK(rt.data(r, c).real() ==
                  static_cast<double>(static_cast<float>(ph.data(r, c).real())));
            CHECK(rt.data(r, c).imag() ==
                  static_cast<double>(static_cast<float>(ph.data(r, c).imag())));
        }
}

TEST_CASE("complex image round trip preserves grid and flags") {
    TempDir dir;
    ComplexImage img;
    img.grid = {{1.5, -2.5}, 0.1, 0.05, 8, 4};
    img.data = Array2D(8, 4);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 4; ++j) img.data(i, j) = cplx(i * 0.5, -j * 0.25);
    img.annotation.ambiguity_eliminated = true;
    img.annotation.autofocused = true;
    img.annotation.clipped_samples = 17;

    const fs::path p = dir.path / "img.bin";
    io::write_complex_image(p, img);
    const ComplexImage rt = io::read_complex_image(p);
    CHECK(rt.grid.center_m.x == 1.5);
    CHECK(rt.grid.dy_m == 0.05);
    CHECK(rt.grid.nx == 8);
    CHECK(rt.annotation.ambiguity_eliminated);
    CHECK_FALSE(rt.annotation.aligned);
    CHECK(rt.annotation.autofocused);
    CHECK(rt.annotation.clipped_samples == 17);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 4; ++j) CHECK(rt.data(i, j) == img.data(i, j));
}

TEST_CASE("corrupt magic is rejected") {
    TempDir dir;
    const fs::path p = write_file(dir, "junk.bin", "NOTMAGIC plus junk");
    CHECK_THROWS_AS(io::read_phase_history(p), std::runtime_error);
    CHECK_THROWS_AS(io::read_complex_image(p), std::runtime_error);
}

TEST_CASE("pgm export writes a valid header and full payload") {
    TempDir dir;
    Array2D data(4, 6);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 6; ++j) data(i, j) = cplx(0.1 * (i + 1) * (j + 1), 0.0);
    const fs::path p = dir.path / "img.pgm";
    io::write_magnitude_pgm(p, data, 40.0);
    std::ifstream in(p, std::ios::binary);
    std::string magic, dims1, dims2, maxval;
    in >> magic >> dims1 >> dims2 >> maxval;
    CHECK(magic == "P5");
    CHECK(dims1 == "6");
    CHECK(dims2 == "4");
    CHECK(maxval == "255");
    in.get();  // single whitespace after header
    std::vector<char> pix(24);
    in.read(pix.data(), 24);
    CHECK(in.gcount() == 24);
    // peak maps to 255
    CHECK(static_cast<unsigned char>(pix[23]) == 255);
}

TEST_CASE("profile csv matches axis/value pairs") {
    TempDir dir;
    const fs::path p = dir.path / "prof.csv";
    io::write_profile_csv(p, "k", "v", {1.0, 2.0}, {0.5, -0.25});
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    CHECK(line == "k,v");
    std::getline(in, line);
    CHECK(line == "1,0.5");
    std::getline(in, line);
    CHECK(line == "2,-0.25");

    CHECK_THROWS_AS(io::write_profile_csv(p, "k", "v", {1.0}, {1.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("file_fnv1a matches the reference value") {
    TempDir dir;
    const fs::path p = write_file(dir, "abc.txt", "abc");
    CHECK(file_fnv1a(p) == 0xe71fa2190541574bull);
}
