#include "sarfbp/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "sarfbp/autofocus.hpp"
#include "sarfbp/echo_simulator.hpp"
#include "sarfbp/fbp_imager.hpp"
#include "sarfbp/io.hpp"
#include "sarfbp/metrics.hpp"
#include "sarfbp/scenario.hpp"
#include "sarfbp/spectrum_tools.hpp"

namespace sarfbp::cli {

namespace {

constexpr const char* kVersion = "sarfbp 1.0.0";

namespace fs = std::filesystem;

/// Lazily materialized pipeline state. Every ensure_* step prefers the
/// persisted artifact so stages can be re-run independently.
struct RunContext {
    const RunOptions& opts;
    Scenario scenario;
    std::uint64_t seed = 0;
    fs::path out;
    std::vector<std::string> artifacts;

    std::optional<PhaseHistory> ph;
    std::optional<ComplexImage> raw_image;
    std::optional<ComplexImage> preprocessed;  // baseband + aligned
    std::optional<AutofocusResult> focus;

    explicit RunContext(const RunOptions& o) : opts(o) {}

    fs::path artifact(const std::string& name) {
        artifacts.push_back(name);
        return out / name;
    }

    Trajectory nominal() const { return scenario.nominal_trajectory.build(scenario.radar); }

    Trajectory true_trajectory() const {
        PerturbationSpec spec = scenario.perturbation;
        if (spec.kind == PerturbationKind::RandomWalk && spec.seed == 0) spec.seed = seed;
        return perturb_trajectory(nominal(), spec);
    }

    void ensure_phase_history() {
        if (ph) return;
        const fs::path path = out / "phase_history.bin";
        if (fs::exists(path)) {
            ph = io::read_phase_history(path);
            ph->params = scenario.radar;  // restore fields the header does not carry
            return;
        }
        SimulationOptions sim;
        sim.noise_sigma = scenario.noise_sigma;
        sim.noise_seed = seed;
        ph = simulate_phase_history(scenario.radar, true_trajectory(), scenario.scene, sim);
        io::write_phase_history(artifact("phase_history.bin"), *ph);

        const auto err = range_error(nominal(), true_trajectory(), scenario.grid.center_m);
        std::vector<double> times = nominal().times_s;
        io::write_profile_csv(artifact("range_error.csv"), "time_s", "range_error_m", times, err);
    }

    void ensure_image() {
        if (raw_image) return;
        const fs::path path = out / "image_raw.bin";
        if (fs::exists(path)) {
            raw_image = io::read_complex_image(path);
            return;
        }
        ensure_phase_history();
        BackprojectOptions bp;
        bp.ramp_filter = opts.ramp_filter;
        raw_image = backproject(*ph, nominal(), scenario.grid, bp);
        io::write_complex_image(artifact("image_raw.bin"), *raw_image);
        io::write_magnitude_pgm(artifact("image_raw.pgm"), raw_image->data, opts.export_db_range);
    }

    void ensure_spectrum_stage() {
        if (preprocessed) return;
        const fs::path path = out / "image_aligned.bin";
        if (fs::exists(path)) {
            preprocessed = io::read_complex_image(path);
            return;
        }
        ensure_image();
        const double k_yc = scenario.k_yc();
        Spectrum raw_spec = to_spectrum(*raw_image);
        io::write_magnitude_pgm(artifact("spectrum_raw.pgm"), raw_spec.data, opts.export_db_range);

        ComplexImage baseband = eliminate_ambiguity(*raw_image, k_yc);
        Spectrum bb_spec = to_spectrum(baseband);
        io::write_magnitude_pgm(artifact("spectrum_baseband.pgm"), bb_spec.data,
                                opts.export_db_range);

        preprocessed = align_spectrum(baseband, scenario.standoff_m(), k_yc);
        Spectrum al_spec = to_spectrum(*preprocessed);
        io::write_magnitude_pgm(artifact("spectrum_aligned.pgm"), al_spec.data,
                                opts.export_db_range);
        io::write_complex_image(artifact("image_aligned.bin"), *preprocessed);

        // k_y marginal profiles for the ambiguity figures
        auto marginal = [](const Spectrum& s) {
            std::vector<double> m(s.data.cols(), 0.0);
            for (std::size_t ix = 0; ix < s.data.rows(); ++ix)
                for (std::size_t iy = 0; iy < s.data.cols(); ++iy)
                    m[iy] += std::norm(s.data(ix, iy));
            return m;
        };
        io::write_profile_csv(artifact("spectrum_ky_marginal_raw.csv"), "k_y_radpm", "power",
                              raw_spec.k_y_axis, marginal(raw_spec));
        io::write_profile_csv(artifact("spectrum_ky_marginal_baseband.csv"), "k_y_radpm", "power",
                              bb_spec.k_y_axis, marginal(bb_spec));
    }

    void ensure_autofocus() {
        if (focus) return;
        ensure_image();
        AutofocusConfig cfg = scenario.autofocus;
        if (opts.iterations_override) cfg.max_iterations = *opts.iterations_override;
        SceneGeometryHint geom{scenario.k_yc(), scenario.standoff_m()};
        focus = autofocus_pipeline(*raw_image, geom, cfg);

        io::write_complex_image(artifact("image_refocused.bin"), focus->refocused);
        io::write_magnitude_pgm(artifact("image_refocused.pgm"), focus->refocused.data,
                                opts.export_db_range);
        for (std::size_t i = 0; i < focus->ape_history.size(); ++i) {
            const auto& ape = focus->ape_history[i];
            io::write_profile_csv(artifact("ape_iter" + std::to_string(i) + ".csv"), "k_x_radpm",
                                  "phase_rad", ape.k_x_axis, ape.phase_rad);
            const auto& field = focus->field_history[i];
            Array2D mag(field.phase.rows(), field.phase.cols());
            for (std::size_t r = 0; r < mag.rows(); ++r)
                for (std::size_t c = 0; c < mag.cols(); ++c)
                    mag(r, c) = cplx(field.phase(r, c), 0.0);
            io::write_magnitude_pgm(artifact("field_iter" + std::to_string(i) + ".pgm"), mag,
                                    opts.export_db_range);
        }
    }

    void ensure_metrics() {
        ensure_image();
        std::ofstream log(out / "metrics.log", std::ios::app);
        const std::string id = opts.scenario_path.stem().string();
        auto emit = [&](const std::string& name, double value) {
            log << name << " " << value << " " << id << "\n";
        };
        emit("contrast_defocused", contrast(*raw_image));
        emit("entropy_defocused_nats", entropy(*raw_image));
        const fs::path refocused = out / "image_refocused.bin";
        if (focus) {
            emit("contrast_refocused", contrast(focus->refocused));
            emit("entropy_refocused_nats", entropy(focus->refocused));
        } else if (fs::exists(refocused)) {
            const ComplexImage img = io::read_complex_image(refocused);
            emit("contrast_refocused", contrast(img));
            emit("entropy_refocused_nats", entropy(img));
        }
        artifacts.push_back("metrics.log");
    }

    void write_manifest() {
        nlohmann::ordered_json m;
        m["version"] = kVersion;
        m["subcommand"] = opts.subcommand;
        m["scenario"] = opts.scenario_path.string();
        std::ostringstream hash;
        hash << std::hex << file_fnv1a(opts.scenario_path);
        m["scenario_fnv1a"] = hash.str();
        m["seed"] = seed;
        m["ramp_filter"] = opts.ramp_filter;
        m["export_db_range"] = opts.export_db_range;
        if (opts.iterations_override) m["iterations"] = *opts.iterations_override;
        m["artifacts"] = artifacts;
        std::ofstream out_file(out / "run_manifest.json");
        out_file << m.dump(2) << "\n";
    }
};

}  // namespace

int run(const RunOptions& opts) {
    RunContext ctx(opts);
    try {
        ctx.scenario = load_scenario(opts.scenario_path);
    } catch (const std::exception& e) {
        std::cerr << "scenario validation failed: " << e.what() << "\n";
        return kExitValidation;
    }
    ctx.seed = opts.seed_override ? *opts.seed_override : ctx.scenario.seed;
    ctx.out = opts.out_dir;

    try {
        std::filesystem::create_directories(ctx.out);
        if (opts.subcommand == "simulate") {
            ctx.ensure_phase_history();
        } else if (opts.subcommand == "image") {
            ctx.ensure_image();
        } else if (opts.subcommand == "spectrum") {
            ctx.ensure_spectrum_stage();
        } else if (opts.subcommand == "autofocus") {
            ctx.ensure_autofocus();
        } else if (opts.subcommand == "metrics") {
            ctx.ensure_metrics();
        } else if (opts.subcommand == "all") {
            ctx.ensure_phase_history();
            ctx.ensure_image();
            ctx.ensure_spectrum_stage();
            ctx.ensure_autofocus();
            ctx.ensure_metrics();
        } else {
            std::cerr << "unknown subcommand: " << opts.subcommand << "\n";
            return kExitValidation;
        }
        ctx.write_manifest();
    } catch (const std::exception& e) {
        std::cerr << "stage failed: " << e.what() << "\n";
        std::ofstream marker(ctx.out / "FAILED");
        marker << e.what() << "\n";
        return kExitStageFailure;
    }
    return kExitOk;
}

}  // namespace sarfbp::cli
