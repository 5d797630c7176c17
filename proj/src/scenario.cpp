#include "sarfbp/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace sarfbp {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

struct Entry {
    std::string value;
    int line = 0;
};

struct ParsedFile {
    // section -> key -> entries (repeated keys keep every occurrence)
    std::map<std::string, std::map<std::string, std::vector<Entry>>> sections;
    std::string path;

    [[noreturn]] void fail(int line, const std::string& msg) const {
        throw ScenarioError(path + ":" + std::to_string(line) + ": " + msg);
    }

    const Entry* find(const std::string& section, const std::string& key) const {
        auto s = sections.find(section);
        if (s == sections.end()) return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        return &k->second.front();
    }

    std::string require(const std::string& section, const std::string& key) const {
        const Entry* e = find(section, key);
        if (!e)
            throw ScenarioError(path + ": missing required key [" + section + "] " + key);
        return e->value;
    }

    double number(const std::string& section, const std::string& key) const {
        const Entry* e = find(section, key);
        if (!e)
            throw ScenarioError(path + ": missing required key [" + section + "] " + key);
        return parse_number(*e, section, key);
    }

    double number_or(const std::string& section, const std::string& key, double fallback) const {
        const Entry* e = find(section, key);
        return e ? parse_number(*e, section, key) : fallback;
    }

    double parse_number(const Entry& e, const std::string& section, const std::string& key) const {
        try {
            std::size_t used = 0;
            const double v = std::stod(e.value, &used);
            if (used != e.value.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            fail(e.line, "invalid number for [" + section + "] " + key + ": '" + e.value + "'");
        }
    }
};

ParsedFile parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path.string());
    ParsedFile pf;
    pf.path = path.string();
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') pf.fail(lineno, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) pf.fail(lineno, "empty section name");
            pf.sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) pf.fail(lineno, "expected key = value");
        if (section.empty()) pf.fail(lineno, "key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) pf.fail(lineno, "empty key");
        pf.sections[section][key].push_back({value, lineno});
    }
    return pf;
}

std::vector<double> split_numbers(const ParsedFile& pf, const Entry& e) {
    std::vector<double> out;
    std::istringstream ss(e.value);
    std::string tok;
    while (ss >> tok) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            pf.fail(e.line, "invalid number '" + tok + "'");
        }
    }
    return out;
}

}  // namespace

Trajectory TrajectorySpec::build(const RadarParams& params) const {
    if (kind == TrajectoryKind::Linear)
        return make_linear_trajectory(params, velocity_mps, standoff_m);
    Trajectory t = explicit_samples;
    t.validate();
    return t;
}

double Scenario::standoff_m() const {
    if (nominal_trajectory.kind == TrajectoryKind::Linear) return nominal_trajectory.standoff_m;
    const auto& pos = nominal_trajectory.explicit_samples.positions_m;
    return pos[pos.size() / 2].y;
}

void Scenario::validate() const {
    radar.validate();
    scene.validate();
    autofocus.validate();
    const Trajectory nominal = nominal_trajectory.build(radar);
    try {
        check_grid_nyquist(grid, radar, nominal);
    } catch (const std::exception& e) {
        throw ScenarioError(std::string("scenario grid check failed: ") + e.what());
    }
    if (grid.ny % autofocus.range_collapse_factor != 0)
        throw ScenarioError("scenario: range_collapse_factor must divide grid ny");
    Vec2 lo, hi;
    scene.extent(lo, hi);
    const double half_x = grid.nx / 2 * grid.dx_m;
    const double half_y = grid.ny / 2 * grid.dy_m;
    if (lo.x < grid.center_m.x - half_x || hi.x > grid.center_m.x + half_x ||
        lo.y < grid.center_m.y - half_y || hi.y > grid.center_m.y + half_y)
        throw ScenarioError("scenario: targets fall outside the image grid");
}

Scenario load_scenario(const std::filesystem::path& path) {
    const ParsedFile pf = parse_file(path);
    Scenario sc;

    sc.radar.carrier_frequency_hz = pf.number("radar", "carrier_frequency_hz");
    sc.radar.bandwidth_hz = pf.number("radar", "bandwidth_hz");
    sc.radar.fast_time_sample_count = static_cast<int>(pf.number("radar", "fast_time_sample_count"));
    sc.radar.fast_time_spacing_s = pf.number("radar", "fast_time_spacing_s");
    sc.radar.pulse_count = static_cast<int>(pf.number("radar", "pulse_count"));
    sc.radar.pulse_interval_s = pf.number("radar", "pulse_interval_s");
    sc.radar.propagation_speed_mps =
        pf.number_or("radar", "propagation_speed_mps", kSpeedOfLight);

    const std::string tkind = pf.require("trajectory", "kind");
    if (tkind == "linear") {
        sc.nominal_trajectory.kind = TrajectoryKind::Linear;
        sc.nominal_trajectory.velocity_mps = pf.number("trajectory", "velocity_mps");
        sc.nominal_trajectory.standoff_m = pf.number("trajectory", "standoff_m");
    } else if (tkind == "explicit") {
        sc.nominal_trajectory.kind = TrajectoryKind::Explicit;
        const auto& entries = pf.sections.at("trajectory");
        auto it = entries.find("sample");
        if (it == entries.end())
            throw ScenarioError(pf.path + ": explicit trajectory needs 'sample = t x y' lines");
        for (const Entry& e : it->second) {
            const auto v = split_numbers(pf, e);
            if (v.size() != 3) pf.fail(e.line, "trajectory sample must be 't x y'");
            sc.nominal_trajectory.explicit_samples.times_s.push_back(v[0]);
            sc.nominal_trajectory.explicit_samples.positions_m.push_back({v[1], v[2]});
        }
    } else {
        throw ScenarioError(pf.path + ": unknown trajectory kind '" + tkind + "'");
    }

    if (pf.sections.count("perturbation")) {
        const std::string pkind = pf.require("perturbation", "kind");
        auto& p = sc.perturbation;
        if (pkind == "none") {
            p.kind = PerturbationKind::None;
        } else if (pkind == "sinusoidal") {
            p.kind = PerturbationKind::Sinusoidal;
            p.amplitude_m = pf.number("perturbation", "amplitude_m");
            p.cycles_per_aperture = pf.number("perturbation", "cycles_per_aperture");
            p.phase_rad = pf.number_or("perturbation", "phase_rad", 0.0);
        } else if (pkind == "polynomial") {
            p.kind = PerturbationKind::Polynomial;
            const Entry* e = pf.find("perturbation", "coefficients");
            if (!e) throw ScenarioError(pf.path + ": polynomial perturbation needs coefficients");
            p.coefficients = split_numbers(pf, *e);
            p.amplitude_m = pf.number_or("perturbation", "amplitude_m", 0.0);
            p.rescale_to_amplitude = p.amplitude_m > 0.0;
        } else if (pkind == "random_walk") {
            p.kind = PerturbationKind::RandomWalk;
            p.amplitude_m = pf.number("perturbation", "amplitude_m");
            p.seed = static_cast<std::uint64_t>(pf.number_or("perturbation", "seed", 0.0));
        } else {
            throw ScenarioError(pf.path + ": unknown perturbation kind '" + pkind + "'");
        }
        if (p.kind != PerturbationKind::None) {
            const std::string axis = pf.find("perturbation", "axis")
                                         ? pf.find("perturbation", "axis")->value
                                         : "y";
            if (axis == "x") p.axis = PerturbationAxis::X;
            else if (axis == "y") p.axis = PerturbationAxis::Y;
            else if (axis == "both") p.axis = PerturbationAxis::Both;
            else pf.fail(pf.find("perturbation", "axis")->line, "axis must be x, y, or both");
        }
    }

    {
        auto s = pf.sections.find("targets");
        if (s == pf.sections.end())
            throw ScenarioError(pf.path + ": missing [targets] section");
        auto it = s->second.find("target");
        if (it == s->second.end())
            throw ScenarioError(pf.path + ": [targets] needs 'target = x y re im' lines");
        for (const Entry& e : it->second) {
            const auto v = split_numbers(pf, e);
            if (v.size() != 3 && v.size() != 4) pf.fail(e.line, "target must be 'x y re [im]'");
            Target t;
            t.x_m = v[0];
            t.y_m = v[1];
            t.reflectivity = cplx(v[2], v.size() == 4 ? v[3] : 0.0);
            sc.scene.targets.push_back(t);
        }
    }

    sc.grid.center_m.x = pf.number_or("grid", "center_x_m", 0.0);
    sc.grid.center_m.y = pf.number_or("grid", "center_y_m", 0.0);
    sc.grid.dx_m = pf.number("grid", "dx_m");
    sc.grid.dy_m = pf.number("grid", "dy_m");
    sc.grid.nx = static_cast<int>(pf.number("grid", "nx"));
    sc.grid.ny = static_cast<int>(pf.number("grid", "ny"));

    if (pf.sections.count("autofocus")) {
        auto& a = sc.autofocus;
        a.max_iterations = static_cast<int>(pf.number_or("autofocus", "max_iterations", 2));
        a.pga_iterations = static_cast<int>(pf.number_or("autofocus", "pga_iterations", 6));
        a.range_collapse_factor =
            static_cast<int>(pf.number_or("autofocus", "range_collapse_factor", 4));
        a.subaperture_count = static_cast<int>(pf.number_or("autofocus", "subaperture_count", 1));
        a.convergence_rms_rad = pf.number_or("autofocus", "convergence_rms_rad", 0.05);
    }

    sc.seed = static_cast<std::uint64_t>(pf.number_or("run", "seed", 0.0));
    sc.noise_sigma = pf.number_or("run", "noise_sigma", 0.0);

    sc.validate();
    return sc;
}

std::uint64_t file_fnv1a(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    std::uint64_t h = 14695981039346656037ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace sarfbp
