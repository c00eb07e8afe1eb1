#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ura/analysis.hpp"
#include "ura/config.hpp"
#include "ura/harness.hpp"
#include "ura/validate.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    uint64_t seed = 0;
    bool seed_set = false;
    int trials = 0;
    int threads = 0;
    bool verbose = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "configuration file (key = value lines)");
    cmd->add_option("--seed", o.seed, "master seed override")->each([&](const std::string&) {
        o.seed_set = true;
    });
    cmd->add_option("--trials", o.trials, "Monte Carlo trials per point");
    cmd->add_option("--threads", o.threads, "worker threads");
    cmd->add_option("--out", o.out_path, "output file (stdout when omitted)");
    cmd->add_option("--format", o.format, "output format: csv | ndtext")
        ->check(CLI::IsMember({"csv", "ndtext"}));
    cmd->add_flag("--verbose", o.verbose, "verbose logging");
}

ura::SystemConfig resolve_config(const CommonOpts& o) {
    ura::SystemConfig cfg;
    if (!o.config_path.empty()) cfg = ura::load_config(o.config_path);
    if (o.seed_set) cfg.seed = o.seed;
    if (o.trials > 0) cfg.trials = o.trials;
    if (o.threads > 0) cfg.threads = o.threads;
    if (o.verbose) cfg.verbose = true;
    cfg.validate();
    // Every run logs the fully resolved configuration.
    std::cerr << ura::format_config(cfg);
    return cfg;
}

std::vector<double> make_grid(double start, double stop, double step, double fallback) {
    std::vector<double> grid;
    if (stop < start) return {fallback};
    if (step <= 0.0) return {start};
    for (double e = start; e <= stop + 1e-9; e += step) grid.push_back(e);
    return grid;
}

void write_rows(const std::vector<ura::ResultRow>& rows, const CommonOpts& o) {
    if (o.out_path.empty())
        std::cout << ura::format_results(rows, o.format);
    else
        ura::emit_results(rows, o.out_path, o.format);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unsourced random access link-level simulator and analytical toolkit"};
    app.require_subcommand(1);

    CommonOpts sim_o, search_o, pred_o, val_o;
    double grid_start = 0.0, grid_stop = -1.0, grid_step = 0.5;
    double target_pe = 0.05, lo_db = -5.0, hi_db = 20.0;
    double pred_start = 0.0, pred_stop = -1.0, pred_step = 0.5;

    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo sweep over an Eb/N0 grid");
    add_common(sim, sim_o);
    sim->add_option("--ebn0-start", grid_start, "grid start (dB)");
    sim->add_option("--ebn0-stop", grid_stop, "grid stop (dB); single point when omitted");
    sim->add_option("--ebn0-step", grid_step, "grid step (dB)");

    CLI::App* search = app.add_subcommand("search", "bisection for the target-P_e Eb/N0");
    add_common(search, search_o);
    search->add_option("--target", target_pe, "target P_e (CI upper bound)");
    search->add_option("--lo", lo_db, "lower search bound (dB)");
    search->add_option("--hi", hi_db, "upper search bound (dB)");

    CLI::App* pred = app.add_subcommand("predict", "closed-form performance predictions");
    add_common(pred, pred_o);
    pred->add_option("--ebn0-start", pred_start, "grid start (dB)");
    pred->add_option("--ebn0-stop", pred_stop, "grid stop (dB); single point when omitted");
    pred->add_option("--ebn0-step", pred_step, "grid step (dB)");

    CLI::App* val = app.add_subcommand("validate", "quick statistical self-checks");
    add_common(val, val_o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            ura::SystemConfig cfg = resolve_config(sim_o);
            auto grid = make_grid(grid_start, grid_stop, grid_step, cfg.ebn0_db);
            if (grid_stop < grid_start && sim->count("--ebn0-start") == 0)
                grid = {cfg.ebn0_db};
            ura::SweepResult res = ura::run_sweep(cfg, grid);
            write_rows(res.rows, sim_o);
        } else if (search->parsed()) {
            ura::SystemConfig cfg = resolve_config(search_o);
            ura::SweepResult res = ura::run_search(cfg, target_pe, lo_db, hi_db);
            write_rows(res.rows, search_o);
            if (!res.attained) {
                std::cerr << "target P_e " << target_pe << " not attained within [" << lo_db
                          << ", " << hi_db << "] dB\n";
                return 2;
            }
            std::cerr << "target attained at " << res.attained_ebn0_db << " dB\n";
        } else if (pred->parsed()) {
            ura::SystemConfig cfg = resolve_config(pred_o);
            auto grid = make_grid(pred_start, pred_stop, pred_step, cfg.ebn0_db);
            if (pred_stop < pred_start && pred->count("--ebn0-start") == 0)
                grid = {cfg.ebn0_db};
            write_rows(ura::predict_rows(cfg, grid), pred_o);
        } else if (val->parsed()) {
            uint64_t seed = val_o.seed_set ? val_o.seed : 1;
            bool all_pass = true;
            for (const auto& c : ura::validate::run_all(seed)) {
                std::cout << (c.pass ? "PASS" : "FAIL") << " " << c.name;
                if (val_o.verbose || !c.pass) std::cout << "  (" << c.detail << ")";
                std::cout << "\n";
                all_pass = all_pass && c.pass;
            }
            return all_pass ? 0 : 3;
        }
    } catch (const ura::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
