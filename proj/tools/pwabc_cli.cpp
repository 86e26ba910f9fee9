// Command-line driver: single runs, reference runs and E/E0 comparison tables.

#include "pwabc/diagnostics.hpp"
#include "pwabc/experiment.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct RunOptions {
    std::string preset;
    std::string config;
    std::string bc;
    std::string stencil;
    std::optional<std::size_t> nx;
    std::optional<std::size_t> ny;
    std::optional<std::size_t> snapshot_every;
    std::optional<double> widen;
    std::string out;
};

struct TableOptions {
    std::string preset = "narrow-beam";
    std::vector<std::size_t> grids;
    std::vector<std::string> bcs{"abc0", "abc1"};
    std::string stencil;
    std::string out;
};

pwabc::ExperimentConfig resolve(const RunOptions& opt)
{
    pwabc::ExperimentConfig cfg;
    if (!opt.config.empty()) {
        cfg = pwabc::parse_config(opt.config);
    } else if (!opt.preset.empty()) {
        cfg = pwabc::from_preset(opt.preset, pwabc::BcKind::zeroth_order);
    } else {
        throw pwabc::ConfigError("", "either --preset or --config is required");
    }
    if (!opt.preset.empty() && !opt.config.empty() && opt.preset != cfg.preset) {
        throw pwabc::ConfigError("preset", "--preset disagrees with the config file");
    }
    if (!opt.bc.empty()) cfg.bc_lower = cfg.bc_upper = pwabc::parse_bc_kind(opt.bc);
    if (!opt.stencil.empty()) cfg.stencil = pwabc::parse_boundary_stencil(opt.stencil);
    if (opt.nx) cfg.nx = *opt.nx;
    if (opt.ny) cfg.ny = *opt.ny;
    if (opt.snapshot_every) cfg.snapshot_every = *opt.snapshot_every;
    if (opt.widen) cfg.widen = *opt.widen;
    // Re-validate the merged result.
    return pwabc::parse_config_json(pwabc::to_json(cfg));
}

int cmd_run(const RunOptions& opt)
{
    const auto cfg = resolve(opt);
    const auto sim = pwabc::to_simulation_config(cfg);
    const auto result = pwabc::run(sim);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

    std::vector<pwabc::EnergyReport> reports{result.energy};
    std::optional<pwabc::SimulationResult> reference;
    if (cfg.widen > 0.0) {
        reference = pwabc::reference_run(sim, cfg.widen);
        reports.push_back(reference->energy);
    }

    std::cout << pwabc::kEnergyCsvHeader << '\n';
    for (const auto& r : reports) std::cout << pwabc::to_csv_row(r) << '\n';

    if (!opt.out.empty()) {
        const std::filesystem::path dir(opt.out);
        std::filesystem::create_directories(dir);
        pwabc::write_energy_csv(dir / "energy.csv", reports);
        pwabc::write_field_csv(result.snapshots, sim.grid.y_axis, dir / "snapshots");
        {
            std::ofstream cfg_out(dir / "config.json");
            cfg_out << pwabc::to_json(cfg).dump(2) << '\n';
        }
        if (reference) {
            pwabc::write_field_csv(reference->snapshots, sim.grid.y_axis, dir / "reference");
            pwabc::write_real_grid(dir / "error_map.txt", pwabc::error_map(result, *reference));
        }
    }
    return kExitOk;
}

int cmd_table(const TableOptions& opt)
{
    const pwabc::Preset& preset = pwabc::find_preset(opt.preset);
    const auto grids = opt.grids.empty() ? preset.default_grids : opt.grids;

    std::vector<pwabc::ExperimentConfig> cells;
    for (std::size_t n : grids) {
        for (const auto& bc : opt.bcs) {
            auto cfg = pwabc::from_preset(opt.preset, pwabc::parse_bc_kind(bc));
            cfg.nx = cfg.ny = n;
            if (!opt.stencil.empty()) cfg.stencil = pwabc::parse_boundary_stencil(opt.stencil);
            pwabc::make_grid(cfg);
            cells.push_back(cfg);
        }
    }

    std::vector<std::future<pwabc::EnergyReport>> jobs;
    jobs.reserve(cells.size());
    for (const auto& cfg : cells) {
        jobs.push_back(std::async(std::launch::async, [cfg] {
            return pwabc::run(pwabc::to_simulation_config(cfg)).energy;
        }));
    }
    std::vector<pwabc::EnergyReport> reports;
    for (auto& j : jobs) reports.push_back(j.get());

    std::cout << pwabc::kEnergyCsvHeader << '\n';
    for (const auto& r : reports) std::cout << pwabc::to_csv_row(r) << '\n';
    if (!opt.out.empty()) pwabc::write_energy_csv(opt.out, reports);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Crank-Nicolson solver for i u_x + beta u_yy + nu u = 0 with absorbing boundary conditions"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "run one simulation and report E/E0");
    run->add_option("--preset", run_opt.preset, "narrow-beam | wide-beam");
    run->add_option("--config", run_opt.config, "JSON experiment file");
    run->add_option("--bc", run_opt.bc, "dirichlet | abc0 | abc1 | kuska | pade-linear");
    run->add_option("--stencil", run_opt.stencil, "node | half-cell | box | three-point");
    run->add_option("--nx", run_opt.nx, "range grid points (including both ends)");
    run->add_option("--ny", run_opt.ny, "transverse grid points (including both ends)");
    run->add_option("--snapshot-every", run_opt.snapshot_every, "store a slice every N steps");
    run->add_option("--widen", run_opt.widen, "also run an enlarged-domain reference with this factor");
    run->add_option("--out", run_opt.out, "output directory");

    TableOptions table_opt;
    auto* table = app.add_subcommand("table", "E/E0 for every grid x boundary-condition pair");
    table->add_option("--preset", table_opt.preset, "narrow-beam | wide-beam");
    table->add_option("--grids", table_opt.grids, "comma-separated grid sizes (n x n)")->delimiter(',');
    table->add_option("--bcs", table_opt.bcs, "comma-separated boundary conditions")->delimiter(',');
    table->add_option("--stencil", table_opt.stencil, "node | half-cell | box | three-point");
    table->add_option("--out", table_opt.out, "CSV output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) return cmd_run(run_opt);
        return cmd_table(table_opt);
    } catch (const pwabc::NumericalAbort& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const pwabc::SingularSystemError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const pwabc::ReferenceDomainTooSmall& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
