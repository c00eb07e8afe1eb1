#ifndef URA_HARNESS_HPP
#define URA_HARNESS_HPP

#include <string>
#include <vector>

#include "ura/scheme.hpp"

namespace ura {

// Outcome of one Monte Carlo trial (one frame: Ka users, S slots).
struct TrialMetrics {
    int missed = 0;       // transmitted messages not in the decoded list
    int false_alarms = 0; // decoded messages never transmitted
    int decoded = 0;      // decoded-list size
    double p_md = 0.0;
    double p_fa = 0.0;
    double wall_ms = 0.0;
};

// Runs one trial with randomness derived entirely from trial_seed: message
// bits, slot and group assignments, fading and noise. decoded_out, when
// given, receives the sorted decoded list.
TrialMetrics run_trial(const SchemeContext& ctx, uint64_t trial_seed,
                       std::vector<std::vector<uint8_t>>* decoded_out = nullptr);

// One measured or predicted operating point. cfg carries the scheme
// parameters with ebn0_db set to the point's value.
struct ResultRow {
    SystemConfig cfg;
    double pe = 0.0;
    double pmd = 0.0;
    double pfa = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    int trials = 0;
    std::string source = "simulated";
};

struct SweepResult {
    std::vector<ResultRow> rows;
    bool target_mode = false;
    bool attained = false;
    double attained_ebn0_db = 0.0;
    // When the target is unattainable within bounds, the bracketing values.
    double bracket_lo_db = 0.0;
    double bracket_hi_db = 0.0;
};

// cfg.trials trials at one Eb/N0 point, parallel over cfg.threads workers.
// Aggregation is order-independent; per-trial seeds come from
// derive_seed(cfg.seed, trial index). The 95% interval uses the normal
// approximation and requires at least 100 trials.
ResultRow run_point(const SystemConfig& cfg, double ebn0_db);

SweepResult run_sweep(const SystemConfig& cfg, const std::vector<double>& grid_db);

// Bisection over [lo_db, hi_db] to 0.25 dB resolution; a point qualifies when
// the upper confidence bound of its measured P_e is <= target_pe.
SweepResult run_search(const SystemConfig& cfg, double target_pe, double lo_db, double hi_db);

// Closed-form predictions on the same schema (source = "analytic").
std::vector<ResultRow> predict_rows(const SystemConfig& cfg, const std::vector<double>& grid_db);

// "csv" (fixed header) or "ndtext" (one key=value record per line).
std::string format_results(const std::vector<ResultRow>& rows, const std::string& format);
void emit_results(const std::vector<ResultRow>& rows, const std::string& path,
                  const std::string& format);

}  // namespace ura

#endif
