#ifndef URA_STATS_HPP
#define URA_STATS_HPP

// Chi-square / incomplete-gamma numerics used by the detector thresholds and
// the analytical predictors.

namespace ura::stats {

// Regularized lower incomplete gamma P(a,x), tolerance ~1e-14.
double gamma_p(double a, double x);

// Inverse of gamma_p in x for fixed a (Wilson-Hilferty start + Newton).
double gamma_p_inv(double a, double p);

// CDF of the chi-squared distribution with k degrees of freedom.
double chi2_cdf(int k, double x);

// Inverse CDF (quantile) of chi-squared with k degrees of freedom.
double chi2_inv(int k, double p);

// PDF of chi-squared with k degrees of freedom.
double chi2_pdf(int k, double x);

// Gaussian tail function Q(x) = P(N(0,1) > x).
double q_func(double x);

}  // namespace ura::stats

#endif
