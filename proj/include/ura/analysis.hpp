#ifndef URA_ANALYSIS_HPP
#define URA_ANALYSIS_HPP

#include <vector>

namespace ura::analysis {

// Parameters of the closed-form predictors.
struct AnalyticConfig {
    int Ka = 0;
    int S = 1;
    int M = 1;
    int J = 1;
    int np = 2;
    int nc = 2;
    int B = 1;
    int r = 0;
    double Pp = 1.0;
    double Pc = 1.0;
    double sigma2 = 1.0;
    double gamma = 0.1;

    double Ex() const { return J * np * Pp + nc * Pc; }
};

// Probability that a non-colliding user's pilot passes the gamma-level
// Neyman-Pearson energy test.
double detection_probability(double gamma, int M, int np, double Pp, double sigma2);

// Conditional moment of ||h||^2 for a user that survives to the point where
// k of K_s users remain, strongest decoded first. m in {1,2}.
double trunc_moment(int k, int Ks, int M, int m);

// Post-MRC SINR of a non-colliding user in iteration t of a slot with Ks users.
double sinr_alpha(int Ks, int t, const AnalyticConfig& cfg);

// Simplified first-iteration SINR.
double sinr_alpha_first(int Ks, const AnalyticConfig& cfg);

// Normal-approximation decoding error probability at SINR alpha for a
// (2*nc, B+r) code.
double dec_error_prob(double alpha, int B, int r, int nc);

// Expected count of i-collision pilots across SIC iterations, plus the
// per-iteration collision probability of a remaining user.
struct CollisionProfile {
    // counts[k-1][i-1] = N_i^{(k)}, k = 1..Ks, i = 1..i_max
    std::vector<std::vector<double>> counts;
    // p_col[t-1] = P^{col}_{Ks,t}, t = 1..Ks
    std::vector<double> p_col;
    int i_max = 0;
};

CollisionProfile collision_model(int Ks, int np, int J);

// Slot-occupancy binomial mixture of per-slot error probabilities.
double pupe_analytic(const AnalyticConfig& cfg);

// Equal-SINR power allocation across G interleaver-power groups. Returns
// ascending positive coded-part powers averaging exactly P. L = J*np + nc.
std::vector<double> msug_powers(int G, double P, double phi, double K0, int M, int L, int np,
                                int J, double sigma2);

// SINR of a user in group g (1-based, ascending power order) under the given
// allocation; used to verify the equal-SINR property.
double msug_beta_prime(int g, const std::vector<double>& powers, double phi, double K0, int M,
                       int L, int np, int J, double sigma2);

}  // namespace ura::analysis

#endif
