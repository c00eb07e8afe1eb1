#include "ura/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "ura/analysis.hpp"
#include "ura/channel.hpp"
#include "ura/rng.hpp"
#include "ura/rxchain.hpp"

namespace ura {

TrialMetrics run_trial(const SchemeContext& ctx, uint64_t trial_seed,
                       std::vector<std::vector<uint8_t>>* decoded_out) {
    const SystemConfig& cfg = ctx.cfg;
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(trial_seed);

    // Distinct B-bit messages; duplicates are resampled (vanishingly rare at
    // realistic B, but the error metrics presume distinct payloads).
    std::set<std::vector<uint8_t>> tx_set;
    std::vector<std::vector<uint8_t>> messages;
    while (static_cast<int>(messages.size()) < cfg.Ka) {
        std::vector<uint8_t> m(cfg.B);
        for (auto& b : m) b = static_cast<uint8_t>(rng() & 1);
        if (tx_set.insert(m).second) messages.push_back(m);
    }
    std::vector<int> slot_of(cfg.Ka), group_of(cfg.Ka);
    for (int k = 0; k < cfg.Ka; ++k) {
        slot_of[k] = static_cast<int>(rng() % static_cast<uint64_t>(cfg.S));
        group_of[k] = static_cast<int>(rng() % static_cast<uint64_t>(cfg.G));
    }

    std::set<std::vector<uint8_t>> decoded_set;
    for (int s = 0; s < cfg.S; ++s) {
        std::vector<TxSignal> signals;
        for (int k = 0; k < cfg.Ka; ++k)
            if (slot_of[k] == s)
                signals.push_back(ctx.encode_user(messages[k], s, group_of[k], k));
        // Sub-frame repetitions behave as extra receive antennas with
        // independent fading, so SRA variants run with M*V rows.
        SlotObservation obs = transmit_slot(signals, cfg.antennas_effective(), cfg.sigma2, rng,
                                            cfg.J, cfg.np(), cfg.nc);
        for (auto& msg : decode_slot(obs, ctx)) decoded_set.insert(std::move(msg));
    }

    if (decoded_out) decoded_out->assign(decoded_set.begin(), decoded_set.end());
    TrialMetrics m;
    m.decoded = static_cast<int>(decoded_set.size());
    for (const auto& msg : messages)
        if (!decoded_set.count(msg)) ++m.missed;
    for (const auto& msg : decoded_set)
        if (!tx_set.count(msg)) ++m.false_alarms;
    m.p_md = cfg.Ka > 0 ? static_cast<double>(m.missed) / cfg.Ka : 0.0;
    m.p_fa = m.decoded > 0 ? static_cast<double>(m.false_alarms) / m.decoded : 0.0;
    m.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    return m;
}

ResultRow run_point(const SystemConfig& cfg_in, double ebn0_db) {
    SystemConfig cfg = cfg_in;
    cfg.ebn0_db = ebn0_db;
    cfg.validate();
    if (cfg.trials < 100)
        throw ConfigError("at least 100 trials are required for confidence intervals");
    SchemeContext ctx = SchemeContext::make(cfg);

    const int T = cfg.trials;
    std::vector<double> pe(T), pmd(T), pfa(T);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= T) break;
            TrialMetrics m = run_trial(ctx, derive_seed(cfg.seed, static_cast<uint64_t>(i)));
            pmd[i] = m.p_md;
            pfa[i] = m.p_fa;
            pe[i] = m.p_md + m.p_fa;
        }
    };
    int W = std::max(1, cfg.threads);
    if (W == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < W; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    ResultRow row;
    row.cfg = cfg;
    row.trials = T;
    double sum = 0.0;
    for (int i = 0; i < T; ++i) {
        sum += pe[i];
        row.pmd += pmd[i];
        row.pfa += pfa[i];
    }
    row.pe = sum / T;
    row.pmd /= T;
    row.pfa /= T;
    double var = 0.0;
    for (int i = 0; i < T; ++i) var += (pe[i] - row.pe) * (pe[i] - row.pe);
    var /= (T - 1);
    double half = 1.959963984540054 * std::sqrt(var / T);
    row.ci_lo = std::max(0.0, row.pe - half);
    row.ci_hi = std::min(1.0, row.pe + half);
    return row;
}

SweepResult run_sweep(const SystemConfig& cfg, const std::vector<double>& grid_db) {
    if (grid_db.empty()) throw ConfigError("empty Eb/N0 grid");
    SweepResult out;
    for (double e : grid_db) out.rows.push_back(run_point(cfg, e));
    return out;
}

SweepResult run_search(const SystemConfig& cfg, double target_pe, double lo_db, double hi_db) {
    if (!(target_pe > 0.0 && target_pe < 1.0)) throw ConfigError("target P_e must be in (0,1)");
    if (!(hi_db > lo_db)) throw ConfigError("search bounds must satisfy lo < hi");
    SweepResult out;
    out.target_mode = true;

    ResultRow hi = run_point(cfg, hi_db);
    out.rows.push_back(hi);
    if (hi.ci_hi > target_pe) {
        // Target unattainable within bounds; report the bracket.
        out.attained = false;
        out.rows.insert(out.rows.begin(), run_point(cfg, lo_db));
        out.bracket_lo_db = lo_db;
        out.bracket_hi_db = hi_db;
        return out;
    }
    double lo = lo_db, best = hi_db;
    while (best - lo > 0.25) {
        double mid = 0.5 * (lo + best);
        ResultRow r = run_point(cfg, mid);
        out.rows.push_back(r);
        if (r.ci_hi <= target_pe)
            best = mid;
        else
            lo = mid;
    }
    out.attained = true;
    out.attained_ebn0_db = best;
    out.bracket_lo_db = lo;
    out.bracket_hi_db = best;
    std::sort(out.rows.begin(), out.rows.end(),
              [](const ResultRow& a, const ResultRow& b) { return a.cfg.ebn0_db < b.cfg.ebn0_db; });
    return out;
}

std::vector<ResultRow> predict_rows(const SystemConfig& cfg_in, const std::vector<double>& grid_db) {
    std::vector<ResultRow> rows;
    for (double e : grid_db) {
        SystemConfig cfg = cfg_in;
        cfg.ebn0_db = e;
        cfg.validate();
        analysis::AnalyticConfig a;
        a.Ka = cfg.Ka;
        a.S = cfg.S;
        a.M = cfg.antennas_effective();
        a.J = cfg.J;
        a.np = cfg.np();
        a.nc = cfg.nc;
        a.B = cfg.B;
        a.r = cfg.r;
        a.sigma2 = cfg.sigma2;
        a.gamma = cfg.gamma;
        double pc = cfg.power() * cfg.L() / (cfg.J * cfg.np() * cfg.phi + cfg.nc);
        a.Pc = pc;
        a.Pp = cfg.phi * pc;
        ResultRow row;
        row.cfg = cfg;
        row.pe = analysis::pupe_analytic(a);
        row.pmd = row.pe;
        row.pfa = 0.0;
        row.ci_lo = row.pe;
        row.ci_hi = row.pe;
        row.trials = 0;
        row.source = "analytic";
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::vector<std::pair<std::string, std::string>> row_fields(const ResultRow& r) {
    const SystemConfig& c = r.cfg;
    return {{"variant", variant_name(c.variant)},
            {"Ka", std::to_string(c.Ka)},
            {"M", std::to_string(c.M)},
            {"S", std::to_string(c.S)},
            {"J", std::to_string(c.J)},
            {"np", std::to_string(c.np())},
            {"nc", std::to_string(c.nc)},
            {"G", std::to_string(c.G)},
            {"V", std::to_string(c.V)},
            {"ebn0_db", fmt_double(c.ebn0_db)},
            {"pe", fmt_double(r.pe)},
            {"pmd", fmt_double(r.pmd)},
            {"pfa", fmt_double(r.pfa)},
            {"ci_lo", fmt_double(r.ci_lo)},
            {"ci_hi", fmt_double(r.ci_hi)},
            {"trials", std::to_string(r.trials)},
            {"source", r.source},
            {"seed", std::to_string(c.seed)}};
}

}  // namespace

std::string format_results(const std::vector<ResultRow>& rows, const std::string& format) {
    std::ostringstream os;
    if (format == "csv") {
        os << "variant,Ka,M,S,J,np,nc,G,V,ebn0_db,pe,pmd,pfa,ci_lo,ci_hi,trials,source,seed\n";
        for (const auto& r : rows) {
            auto fields = row_fields(r);
            for (size_t i = 0; i < fields.size(); ++i)
                os << fields[i].second << (i + 1 < fields.size() ? "," : "\n");
        }
    } else if (format == "ndtext") {
        for (const auto& r : rows) {
            auto fields = row_fields(r);
            for (size_t i = 0; i < fields.size(); ++i)
                os << fields[i].first << '=' << fields[i].second
                   << (i + 1 < fields.size() ? " " : "\n");
        }
    } else {
        throw ConfigError("unknown output format: " + format);
    }
    return os.str();
}

void emit_results(const std::vector<ResultRow>& rows, const std::string& path,
                  const std::string& format) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << format_results(rows, format);
    if (!f) throw std::runtime_error("write failure: " + path);
}

}  // namespace ura
