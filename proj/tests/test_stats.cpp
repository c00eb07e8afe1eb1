#include <cmath>
#include <initializer_list>

#include <doctest.h>

#include "ura/stats.hpp"

using namespace ura;

TEST_CASE("regularized incomplete gamma against exponential closed forms") {
    // P(1, x) = 1 - e^{-x}
    for (double x : {0.01, 0.5, 1.0, 3.0, 10.0})
        CHECK(stats::gamma_p(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
    // P(2, x) = 1 - (1+x) e^{-x}
    for (double x : {0.1, 1.0, 4.0})
        CHECK(stats::gamma_p(2.0, x) ==
              doctest::Approx(1.0 - (1.0 + x) * std::exp(-x)).epsilon(1e-12));
    CHECK(stats::gamma_p(3.5, 0.0) == doctest::Approx(0.0));
    CHECK(stats::gamma_p(0.5, 200.0) == doctest::Approx(1.0));
}

TEST_CASE("chi-squared CDF with 2 degrees of freedom is 1 - exp(-x/2)") {
    for (double x : {0.2, 1.0, 2.0, 7.0})
        CHECK(stats::chi2_cdf(2, x) == doctest::Approx(1.0 - std::exp(-x / 2)).epsilon(1e-12));
}

TEST_CASE("chi-squared quantile inverts the CDF") {
    for (int k : {1, 2, 4, 16, 32, 64}) {
        for (double p : {0.001, 0.05, 0.25, 0.5, 0.9, 0.99, 0.9999}) {
            double x = stats::chi2_inv(k, p);
            CHECK(stats::chi2_cdf(k, x) == doctest::Approx(p).epsilon(1e-9));
        }
    }
    // closed form for 2 dof: -2 ln(1-p)
    CHECK(stats::chi2_inv(2, 0.9) == doctest::Approx(-2.0 * std::log(0.1)).epsilon(1e-10));
    CHECK(stats::chi2_inv(2, 0.1) == doctest::Approx(-2.0 * std::log(0.9)).epsilon(1e-10));
}

TEST_CASE("chi-squared PDF integrates to the CDF") {
    // midpoint rule oracle, independent of the incomplete-gamma series
    for (int k : {2, 6, 10}) {
        double upper = 8.0;
        int steps = 200000;
        double h = upper / steps, acc = 0.0;
        for (int i = 0; i < steps; ++i) acc += stats::chi2_pdf(k, (i + 0.5) * h) * h;
        CHECK(acc == doctest::Approx(stats::chi2_cdf(k, upper)).epsilon(1e-6));
    }
}

TEST_CASE("Gaussian tail function reference points") {
    CHECK(stats::q_func(0.0) == doctest::Approx(0.5));
    CHECK(stats::q_func(1.0) == doctest::Approx(0.158655253931457).epsilon(1e-12));
    CHECK(stats::q_func(-1.0) == doctest::Approx(1.0 - 0.158655253931457).epsilon(1e-12));
    CHECK(stats::q_func(1.6448536269514722) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(stats::q_func(6.0) == doctest::Approx(9.865876450377018e-10).epsilon(1e-6));
}
