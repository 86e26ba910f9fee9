#pragma once

#include "pwabc/diagnostics.hpp"
#include "pwabc/stepper.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwabc {

/// Beam and domain of a named benchmark.
struct Preset {
    std::string name;
    GaussianBeamParams beam;
    double x_max;
    double y_min;
    double y_max;
    std::vector<std::size_t> default_grids;
};

/// a = 1/16, p = 40 on [0, 0.15] x [-2, 2]; a = 2, p = 5 on [0, 3] x [-5, 5].
inline const std::vector<Preset>& presets()
{
    static const std::vector<Preset> table{
        {"narrow-beam", {1.0 / 16.0, 40.0}, 0.15, -2.0, 2.0, {513, 1025}},
        {"wide-beam", {2.0, 5.0}, 3.0, -5.0, 5.0, {1025}},
    };
    return table;
}

inline const Preset& find_preset(const std::string& name)
{
    for (const auto& p : presets()) {
        if (p.name == name) return p;
    }
    throw std::invalid_argument("unknown preset '" + name + "' (expected narrow-beam|wide-beam)");
}

/// Schema or value error in an experiment description; `path()` names the
/// offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path))
    {
    }
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

struct CoefficientSpec {
    std::string type = "zero-potential"; // zero-potential | constant | tabulated
    double beta = 1.0;
    double nu = 0.0;
    std::string beta_csv;
    std::string nu_csv;
    bool operator==(const CoefficientSpec&) const = default;
};

struct PhaseSpec {
    std::string type = "plane";    // plane | hopf-lax
    std::string initial = "linear"; // linear | quadratic (hopf-lax only)
    double c = 1.0;
    double xi_min = -20.0;
    double xi_max = 20.0;
    std::size_t n_coarse = 801;
    bool operator==(const PhaseSpec&) const = default;
};

/// Fully resolved, serializable description of one simulation.
struct ExperimentConfig {
    std::string preset = "custom";
    BcKind bc_lower = BcKind::zeroth_order;
    BcKind bc_upper = BcKind::zeroth_order;
    BoundaryStencil stencil = BoundaryStencil::half_cell;
    std::size_t nx = 1025;
    std::size_t ny = 1025;
    double x_max = 1.0;
    double y_min = -1.0;
    double y_max = 1.0;
    GaussianBeamParams beam;
    CoefficientSpec coefficients;
    PhaseSpec phase;
    std::size_t snapshot_every = 0;
    bool record_norms = false;
    double widen = 0.0;

    bool operator==(const ExperimentConfig&) const = default;
};

inline ExperimentConfig from_preset(const std::string& name, BcKind bc)
{
    const Preset& p = find_preset(name);
    ExperimentConfig cfg;
    cfg.preset = p.name;
    cfg.bc_lower = cfg.bc_upper = bc;
    cfg.nx = cfg.ny = p.default_grids.back();
    cfg.x_max = p.x_max;
    cfg.y_min = p.y_min;
    cfg.y_max = p.y_max;
    cfg.beam = p.beam;
    return cfg;
}

inline Grid2D make_grid(const ExperimentConfig& cfg)
{
    try {
        return Grid2D{make_axis(0.0, cfg.x_max, cfg.nx), make_axis(cfg.y_min, cfg.y_max, cfg.ny)};
    } catch (const std::invalid_argument& e) {
        throw ConfigError("grid", e.what());
    }
}

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix)
{
    if (!obj.is_object()) throw ConfigError(prefix.empty() ? "<root>" : prefix, "expected an object");
    for (const auto& item : obj.items()) {
        if (allowed.count(item.key()) == 0) {
            throw ConfigError(prefix.empty() ? item.key() : prefix + "." + item.key(), "unknown key");
        }
    }
}

template <class T>
void read_field(const json& obj, const char* key, T& out, const std::string& prefix)
{
    if (!obj.contains(key)) return;
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    const json& v = obj.at(key);
    if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ConfigError(path, "expected a boolean");
    } else if constexpr (std::is_same_v<T, std::size_t>) {
        if (!v.is_number_unsigned()) throw ConfigError(path, "expected a non-negative integer");
    } else if constexpr (std::is_arithmetic_v<T>) {
        if (!v.is_number()) throw ConfigError(path, "expected a number");
    } else {
        if (!v.is_string()) throw ConfigError(path, "expected a string");
    }
    out = v.get<T>();
}

template <class Parse>
auto read_enum(const json& obj, const char* key, const std::string& prefix, Parse parse)
    -> std::optional<decltype(parse(std::string{}))>
{
    if (!obj.contains(key)) return std::nullopt;
    std::string name;
    read_field(obj, key, name, prefix);
    try {
        return parse(name);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(prefix.empty() ? key : prefix + "." + key, e.what());
    }
}

} // namespace detail

/// Parses a JSON experiment description. A `preset` key expands first and
/// the remaining keys override it; unknown keys are rejected.
inline ExperimentConfig parse_config_json(const nlohmann::json& doc)
{
    using detail::read_field;
    detail::reject_unknown(doc,
                           {"preset", "bc", "bc_lower", "bc_upper", "stencil", "nx", "ny", "x_max", "y_min", "y_max",
                            "beam", "coefficients", "phase", "snapshot_every", "record_norms", "widen"},
                           "");
    ExperimentConfig cfg;
    std::string preset = "custom";
    read_field(doc, "preset", preset, "");
    if (preset != "custom") {
        try {
            cfg = from_preset(preset, BcKind::zeroth_order);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("preset", e.what());
        }
    }
    if (auto bc = detail::read_enum(doc, "bc", "", parse_bc_kind)) cfg.bc_lower = cfg.bc_upper = *bc;
    if (auto bc = detail::read_enum(doc, "bc_lower", "", parse_bc_kind)) cfg.bc_lower = *bc;
    if (auto bc = detail::read_enum(doc, "bc_upper", "", parse_bc_kind)) cfg.bc_upper = *bc;
    if (auto s = detail::read_enum(doc, "stencil", "", parse_boundary_stencil)) cfg.stencil = *s;
    read_field(doc, "nx", cfg.nx, "");
    read_field(doc, "ny", cfg.ny, "");
    read_field(doc, "x_max", cfg.x_max, "");
    read_field(doc, "y_min", cfg.y_min, "");
    read_field(doc, "y_max", cfg.y_max, "");
    read_field(doc, "snapshot_every", cfg.snapshot_every, "");
    read_field(doc, "record_norms", cfg.record_norms, "");
    read_field(doc, "widen", cfg.widen, "");

    if (doc.contains("beam")) {
        const auto& b = doc.at("beam");
        detail::reject_unknown(b, {"a", "p"}, "beam");
        read_field(b, "a", cfg.beam.a, "beam");
        read_field(b, "p", cfg.beam.p, "beam");
    }
    if (doc.contains("coefficients")) {
        const auto& c = doc.at("coefficients");
        detail::reject_unknown(c, {"type", "beta", "nu", "beta_csv", "nu_csv"}, "coefficients");
        read_field(c, "type", cfg.coefficients.type, "coefficients");
        read_field(c, "beta", cfg.coefficients.beta, "coefficients");
        read_field(c, "nu", cfg.coefficients.nu, "coefficients");
        read_field(c, "beta_csv", cfg.coefficients.beta_csv, "coefficients");
        read_field(c, "nu_csv", cfg.coefficients.nu_csv, "coefficients");
    }
    if (doc.contains("phase")) {
        const auto& p = doc.at("phase");
        detail::reject_unknown(p, {"type", "initial", "c", "xi_min", "xi_max", "n_coarse"}, "phase");
        read_field(p, "type", cfg.phase.type, "phase");
        read_field(p, "initial", cfg.phase.initial, "phase");
        read_field(p, "c", cfg.phase.c, "phase");
        read_field(p, "xi_min", cfg.phase.xi_min, "phase");
        read_field(p, "xi_max", cfg.phase.xi_max, "phase");
        read_field(p, "n_coarse", cfg.phase.n_coarse, "phase");
    }
    cfg.preset = preset;

    // Value checks.
    make_grid(cfg);
    if (!(cfg.beam.a > 0.0)) throw ConfigError("beam.a", "must be positive");
    const auto& ct = cfg.coefficients.type;
    if (ct != "zero-potential" && ct != "constant" && ct != "tabulated") {
        throw ConfigError("coefficients.type", "expected zero-potential|constant|tabulated");
    }
    if (!(cfg.coefficients.beta > 0.0)) throw ConfigError("coefficients.beta", "must be positive");
    if (ct == "tabulated" && (cfg.coefficients.beta_csv.empty() || cfg.coefficients.nu_csv.empty())) {
        throw ConfigError("coefficients", "tabulated coefficients need beta_csv and nu_csv");
    }
    if (cfg.phase.type != "plane" && cfg.phase.type != "hopf-lax") {
        throw ConfigError("phase.type", "expected plane|hopf-lax");
    }
    if (cfg.phase.initial != "linear" && cfg.phase.initial != "quadratic") {
        throw ConfigError("phase.initial", "expected linear|quadratic");
    }
    if (cfg.phase.n_coarse < 3) throw ConfigError("phase.n_coarse", "must be at least 3");
    if (!(cfg.phase.xi_max > cfg.phase.xi_min)) throw ConfigError("phase.xi_max", "must exceed phase.xi_min");
    if (cfg.widen != 0.0 && !(cfg.widen >= 2.0)) throw ConfigError("widen", "must be 0 (off) or >= 2");
    return cfg;
}

inline ExperimentConfig parse_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", path.string() + ": invalid JSON: " + e.what());
    }
    return parse_config_json(doc);
}

/// Serializes every field, so parse_config_json(to_json(c)) == c.
inline nlohmann::json to_json(const ExperimentConfig& cfg)
{
    nlohmann::json doc;
    doc["preset"] = cfg.preset;
    doc["bc_lower"] = to_string(cfg.bc_lower);
    doc["bc_upper"] = to_string(cfg.bc_upper);
    doc["stencil"] = to_string(cfg.stencil);
    doc["nx"] = cfg.nx;
    doc["ny"] = cfg.ny;
    doc["x_max"] = cfg.x_max;
    doc["y_min"] = cfg.y_min;
    doc["y_max"] = cfg.y_max;
    doc["beam"] = {{"a", cfg.beam.a}, {"p", cfg.beam.p}};
    doc["coefficients"] = {{"type", cfg.coefficients.type},
                           {"beta", cfg.coefficients.beta},
                           {"nu", cfg.coefficients.nu},
                           {"beta_csv", cfg.coefficients.beta_csv},
                           {"nu_csv", cfg.coefficients.nu_csv}};
    doc["phase"] = {{"type", cfg.phase.type},       {"initial", cfg.phase.initial}, {"c", cfg.phase.c},
                    {"xi_min", cfg.phase.xi_min},   {"xi_max", cfg.phase.xi_max}, {"n_coarse", cfg.phase.n_coarse}};
    doc["snapshot_every"] = cfg.snapshot_every;
    doc["record_norms"] = cfg.record_norms;
    doc["widen"] = cfg.widen;
    return doc;
}

/// Builds the runnable configuration: Gaussian-beam initial data, the
/// requested medium, and a phase model for the boundary wavenumbers.
inline SimulationConfig to_simulation_config(const ExperimentConfig& cfg)
{
    SimulationConfig sim;
    sim.grid = make_grid(cfg);
    sim.bc_lower = cfg.bc_lower;
    sim.bc_upper = cfg.bc_upper;
    sim.stencil = cfg.stencil;
    sim.snapshot_every = cfg.snapshot_every;
    sim.record_norms = cfg.record_norms;
    sim.preset = cfg.preset;
    const GaussianBeamParams beam = cfg.beam;
    sim.initial = [beam](double y) { return initial_condition(y, beam); };

    double beta0 = 1.0;
    double nu0 = 0.0;
    const auto& c = cfg.coefficients;
    if (c.type == "zero-potential") {
        sim.coeffs = zero_potential();
    } else if (c.type == "constant") {
        sim.coeffs = constant_coefficients(c.beta, c.nu);
        beta0 = c.beta;
        nu0 = c.nu;
    } else {
        sim.coeffs = tabulated_coefficients(TabulatedCoefficients::from_csv(c.beta_csv, c.nu_csv));
        beta0 = sim.coeffs.beta(0.0);
        nu0 = sim.coeffs.nu(0.0, cfg.y_min);
    }

    if (cfg.phase.type == "plane") {
        sim.phase = plane_phase(cfg.beam.p, beta0, nu0);
    } else {
        InitialPhase initial =
            cfg.phase.initial == "linear" ? linear_initial_phase(cfg.beam.p) : quadratic_initial_phase(cfg.phase.c);
        HopfLaxSearch search{cfg.phase.xi_min, cfg.phase.xi_max, cfg.phase.n_coarse, true};
        sim.phase = hopf_lax_model(std::move(initial), beta0, search, sim.grid.y_axis.step());
    }
    return sim;
}

inline std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_energy_csv(const std::filesystem::path& path, const std::vector<EnergyReport>& reports)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << kEnergyCsvHeader << '\n';
    for (const auto& r : reports) out << to_csv_row(r) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline std::string snapshot_file_name(std::size_t x_index)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "snapshot_%06zu.csv", x_index);
    return buf;
}

inline constexpr const char* kLogMatrixFile = "log10_abs_u.txt";

/// Writes one `x,y,re,im` CSV per snapshot plus a matrix of
/// log10(|u| + 1e-300) with one row per snapshot and one column per y node.
inline std::vector<std::filesystem::path> write_field_csv(const std::vector<Snapshot>& snapshots, const Axis& y_axis,
                                                          const std::filesystem::path& out_dir)
{
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    for (const auto& snap : snapshots) {
        if (snap.field.size() != y_axis.size()) throw std::invalid_argument("write_field_csv: snapshot/axis mismatch");
        const auto path = out_dir / snapshot_file_name(snap.field.x_index);
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << "x,y,re,im\n";
        const std::string xs = format_double(snap.x);
        for (std::size_t j = 0; j < y_axis.size(); ++j) {
            const auto& v = snap.field.values[j];
            out << xs << ',' << format_double(y_axis.point(j)) << ',' << format_double(v.real()) << ','
                << format_double(v.imag()) << '\n';
        }
        if (!out) throw std::runtime_error("write failed: " + path.string());
        written.push_back(path);
    }

    const auto matrix_path = out_dir / kLogMatrixFile;
    std::ofstream out(matrix_path);
    if (!out) throw std::runtime_error("cannot write " + matrix_path.string());
    char buf[32];
    for (const auto& snap : snapshots) {
        for (std::size_t j = 0; j < snap.field.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.6e", std::log10(std::abs(snap.field.values[j]) + 1e-300));
            if (j > 0) out << ' ';
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + matrix_path.string());
    written.push_back(matrix_path);
    return written;
}

inline void write_real_grid(const std::filesystem::path& path, const RealGrid& grid)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    char buf[32];
    for (const auto& row : grid) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.6e", row[j]);
            if (j > 0) out << ' ';
            out << buf;
        }
        out << '\n';
    }
}

} // namespace pwabc
