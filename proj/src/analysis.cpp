#include "ura/analysis.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "ura/stats.hpp"

namespace ura::analysis {

namespace {

// Adaptive Simpson quadrature, relative tolerance ~1e-8.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

constexpr double kLog2E = 1.4426950408889634;

}  // namespace

double detection_probability(double gamma, int M, int np, double Pp, double sigma2) {
    if (gamma <= 0.0 || gamma >= 1.0)
        throw std::invalid_argument("detection_probability: gamma out of (0,1)");
    double thr = sigma2 * stats::chi2_inv(2 * M, 1.0 - gamma);
    return 1.0 - stats::chi2_cdf(2 * M, thr / (sigma2 + np * Pp));
}

double trunc_moment(int k, int Ks, int M, int m) {
    if (k < 1 || k > Ks) throw std::invalid_argument("trunc_moment: k out of [1,Ks]");
    if (m != 1 && m != 2) throw std::invalid_argument("trunc_moment: m must be 1 or 2");
    if (k == Ks) {
        // untruncated moments of ||h||^2 with h ~ CN(0, I_M)
        return m == 1 ? static_cast<double>(M) : static_cast<double>(M) * (M + 1);
    }
    double xbar = 0.5 * stats::chi2_inv(2 * M, static_cast<double>(k) / Ks);
    auto integrand = [&](double eta) {
        return std::pow(eta, m) * stats::chi2_pdf(2 * M, 2.0 * eta);
    };
    double num = integrate(integrand, 0.0, xbar, 1e-10);
    // denominator in closed form: 0.5 * Gamma_{2M}(2*xbar) = 0.5 * k/Ks
    double den = 0.5 * stats::chi2_cdf(2 * M, 2.0 * xbar);
    return num / den;
}

double sinr_alpha(int Ks, int t, const AnalyticConfig& cfg) {
    const int k = Ks - t + 1;  // remaining users
    double mu1 = trunc_moment(k, Ks, cfg.M, 1);
    double mu2 = trunc_moment(k, Ks, cfg.M, 2);
    double Ex = cfg.Ex();
    double sp = 1.0 - cfg.Pp * (t - 1) / Ex;
    double sc = 1.0 - cfg.Pc * (t - 1) / Ex;
    double noise_ratio = cfg.sigma2 / (cfg.np * cfg.Pp);
    double num = sc * cfg.Pc * (sp * mu2 + noise_ratio * mu1);
    double den = (cfg.Pc * (Ks - t) + cfg.sigma2) * (sp * mu1 + cfg.M * noise_ratio);
    return num / den;
}

double sinr_alpha_first(int Ks, const AnalyticConfig& cfg) {
    return cfg.Pc * cfg.M /
           ((cfg.sigma2 + cfg.Pc * Ks) * (1.0 + cfg.sigma2 / (cfg.np * cfg.Pp)));
}

double dec_error_prob(double alpha, int B, int r, int nc) {
    if (alpha <= 0.0) throw std::invalid_argument("dec_error_prob: alpha must be positive");
    double rate = static_cast<double>(B + r) / (2.0 * nc);
    double cap = 0.5 * std::log2(1.0 + alpha);
    double disp = alpha * (alpha + 2.0) * kLog2E * kLog2E / (2.0 * (alpha + 1.0) * (alpha + 1.0));
    return stats::q_func((cap - rate) / std::sqrt(disp / (2.0 * nc)));
}

CollisionProfile collision_model(int Ks, int np, int J) {
    if (Ks < 1) throw std::invalid_argument("collision_model: Ks must be >= 1");
    const double a = static_cast<double>(Ks) / np;
    // Poisson initialization, truncated where the PMF drops below 1e-12.
    std::vector<double> init;
    double pmf = std::exp(-a);  // i = 0 (unused but starts the recurrence)
    for (int i = 1;; ++i) {
        pmf *= a / i;
        if (pmf < 1e-12 && i > a) break;
        init.push_back(np * pmf);
        if (i > Ks + 10) break;
    }
    const int imax = std::max<int>(1, static_cast<int>(init.size()));
    init.resize(imax, 0.0);

    CollisionProfile prof;
    prof.i_max = imax;
    prof.counts.assign(Ks, std::vector<double>(imax, 0.0));
    prof.counts[0] = init;
    for (int k = 1; k < Ks; ++k) {
        const auto& cur = prof.counts[k - 1];
        auto& nxt = prof.counts[k];
        double kappa = (J > 0) ? static_cast<double>(J - 1) / (J * (Ks - k + 1)) : 0.0;
        for (int i = 1; i <= imax; ++i) {
            double above = (i < imax) ? cur[i] : 0.0;
            double delta;
            if (i >= 2)
                delta = kappa * ((i + 1) * above - i * cur[i - 1]);
            else
                delta = kappa * (2.0 * above - cur[0]) - 1.0 / J;
            nxt[i - 1] = cur[i - 1] + delta;
        }
    }
    prof.p_col.resize(Ks);
    for (int t = 1; t <= Ks; ++t) {
        double p = 1.0 - prof.counts[t - 1][0] / (Ks - t + 1);
        prof.p_col[t - 1] = std::min(1.0, std::max(0.0, p));
    }
    return prof;
}

double pupe_analytic(const AnalyticConfig& cfg) {
    if (cfg.Ka < 1) return 0.0;
    const double pd = detection_probability(cfg.gamma, cfg.M, cfg.np, cfg.Pp, cfg.sigma2);
    const double log_s = std::log(1.0 / cfg.S);
    const double log_1ms = (cfg.S > 1) ? std::log(1.0 - 1.0 / cfg.S) : 0.0;

    double sum = 0.0;
    for (int r = 1; r <= cfg.Ka; ++r) {
        CollisionProfile col = collision_model(r, cfg.np, cfg.J);
        // per-iteration failure probabilities e_{t,r}
        std::vector<double> e(r);
        for (int t = 1; t <= r; ++t) {
            double alpha = sinr_alpha(r, t, cfg);
            double pdec = alpha > 0.0 ? dec_error_prob(alpha, cfg.B, cfg.r, cfg.nc) : 1.0;
            double v = 1.0 - pd * (1.0 - pdec) * (1.0 - col.p_col[t - 1]);
            e[t - 1] = std::min(1.0, std::max(0.0, v));
        }
        double eps = 0.0;
        double prefix = 1.0;  // prod_{f<j} (1 - e_f^{r-f+1})
        for (int j = 1; j <= r; ++j) {
            double ej = std::pow(e[j - 1], r - j + 1);
            double pjr = ej * prefix;
            eps += (static_cast<double>(r - j + 1) / r) * pjr;
            prefix *= (1.0 - ej);
        }
        eps = std::min(1.0, eps);
        // binomial weight for r users sharing the tagged user's slot
        double logw = std::lgamma(cfg.Ka) - std::lgamma(static_cast<double>(r)) -
                      std::lgamma(static_cast<double>(cfg.Ka - r + 1)) +
                      (r - 1) * log_s + (cfg.Ka - r) * log_1ms;
        sum += (1.0 - eps) * std::exp(logw);
    }
    return 1.0 - sum;
}

namespace {

// Average per-sample power fraction of an interleaved signal relative to its
// coded-part power: zeta = (J*phi*np + nc)/L.
double zeta_factor(double phi, int np, int J, int L) {
    const int nc = L - J * np;
    return (J * phi * np + nc) / static_cast<double>(L);
}

// Powers of all G groups for a common SINR target beta, solved lowest power
// first (delta_g accumulates interference from lower-power groups). Returns
// an empty vector when no positive real solution exists.
std::vector<double> solve_groups(double beta, int G, double phi, double K0, int M, int L,
                                 int np, int J, double sigma2) {
    const double np_phi = phi * np;
    const double zeta = zeta_factor(phi, np, J, L);
    std::vector<double> powers;
    powers.reserve(G);
    double lower_sum = 0.0;
    for (int g = 1; g <= G; ++g) {
        double rho = 1.0 - K0 * (G - g) / L;
        if (rho <= 0.0) return {};
        double delta = zeta * K0 * lower_sum + sigma2;
        double c1 = (K0 - 1.0) - rho * M / beta;
        double c2 = delta * (1.0 + (K0 - 1.0) / (np_phi * rho) - 1.0 / (np_phi * beta));
        double c3 = delta * delta / (np_phi * rho);
        double P;
        if (std::fabs(c1) < 1e-14 * (1.0 + rho * M / beta)) {
            if (c2 >= 0.0) return {};
            P = -c3 / c2;
        } else {
            double disc = c2 * c2 - 4.0 * c1 * c3;
            if (disc < 0.0) return {};
            // the positive branch of the root pair
            P = (c1 > 0.0) ? (-c2 + std::sqrt(disc)) / (2.0 * c1)
                           : (-c2 - std::sqrt(disc)) / (2.0 * c1);
        }
        if (!(P > 0.0) || !std::isfinite(P)) return {};
        powers.push_back(P);
        lower_sum += P;
    }
    return powers;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / v.size();
}

}  // namespace

std::vector<double> msug_powers(int G, double P, double phi, double K0, int M, int L, int np,
                                int J, double sigma2) {
    if (G < 1) throw std::invalid_argument("msug_powers: G must be >= 1");
    if (P <= 0.0) throw std::invalid_argument("msug_powers: P must be positive");
    if (G == 1) return {P};

    auto mean_at = [&](double beta) -> double {
        std::vector<double> p = solve_groups(beta, G, phi, K0, M, L, np, J, sigma2);
        if (p.empty()) return -1.0;  // infeasible
        return mean_of(p);
    };

    // Bracket: mean power grows with the SINR target.
    double lo = 1e-9;
    while (mean_at(lo) < 0.0 && lo < 1.0) lo *= 10.0;
    if (mean_at(lo) < 0.0 || mean_at(lo) > P)
        throw std::runtime_error("msug_powers: no feasible SINR target below the power budget");
    double hi = lo;
    for (int it = 0; it < 200 && mean_at(hi) >= 0.0 && mean_at(hi) < P; ++it) hi *= 2.0;
    if (mean_at(hi) >= 0.0 && mean_at(hi) < P)
        throw std::runtime_error("msug_powers: power budget unreachable (beta bracket "
                                 "[" + std::to_string(lo) + "," + std::to_string(hi) + "])");

    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double m = mean_at(mid);
        if (m >= 0.0 && m < P)
            lo = mid;
        else
            hi = mid;
    }
    std::vector<double> powers = solve_groups(lo, G, phi, K0, M, L, np, J, sigma2);
    if (powers.empty())
        throw std::runtime_error("msug_powers: solver lost feasibility near the root");
    for (int g = 1; g < G; ++g)
        if (powers[g] < powers[g - 1])
            throw std::runtime_error("msug_powers: non-ascending power solution");
    // Pin the average-power constraint exactly; the common-SINR deviation this
    // introduces is far below the bisection tolerance.
    double scale = P / mean_of(powers);
    for (double& p : powers) p *= scale;
    return powers;
}

double msug_beta_prime(int g, const std::vector<double>& powers, double phi, double K0, int M,
                       int L, int np, int J, double sigma2) {
    const int G = static_cast<int>(powers.size());
    if (g < 1 || g > G) throw std::invalid_argument("msug_beta_prime: g out of range");
    const double zeta = zeta_factor(phi, np, J, L);
    double lower_sum = 0.0;
    for (int i = 0; i < g - 1; ++i) lower_sum += powers[i];
    double delta = zeta * K0 * lower_sum + sigma2;
    double rho = 1.0 - K0 * (G - g) / L;
    double P = powers[g - 1];
    double num = rho * M * P * P + delta / (np * phi) * P;
    double den = (P * (K0 - 1.0) + delta) * (P + delta / (rho * np * phi));
    return num / den;
}

}  // namespace ura::analysis
