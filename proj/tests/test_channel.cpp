#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <doctest.h>

#include "ura/channel.hpp"

using namespace ura;

namespace {

TxSignal constant_signal(int L, cplx value) {
    TxSignal x;
    x.samples.assign(L, value);
    return x;
}

}  // namespace

TEST_CASE("complex Gaussian samples have the right moments") {
    std::mt19937_64 rng(101);
    const int N = 200000;
    cplx mean = 0.0;
    double var = 0.0, re_var = 0.0, im_var = 0.0;
    double cross = 0.0;
    for (int i = 0; i < N; ++i) {
        cplx z = complex_gaussian(rng);
        mean += z;
        var += std::norm(z);
        re_var += z.real() * z.real();
        im_var += z.imag() * z.imag();
        cross += z.real() * z.imag();
    }
    mean /= double(N);
    CHECK(std::abs(mean) < 0.01);
    CHECK(var / N == doctest::Approx(1.0).epsilon(0.01));
    CHECK(re_var / N == doctest::Approx(0.5).epsilon(0.02));
    CHECK(im_var / N == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::abs(cross / N) < 0.01);
}

TEST_CASE("slot observation has the right shape and exposes its segments") {
    std::mt19937_64 rng(7);
    const int M = 4, J = 2, np = 8, nc = 16, L = J * np + nc;
    std::vector<TxSignal> sigs = {constant_signal(L, cplx(1.0, 0.0))};
    SlotObservation obs = transmit_slot(sigs, M, 1.0, rng, J, np, nc);
    CHECK(obs.Y.rows() == M);
    CHECK(obs.Y.cols() == L);
    CHECK(obs.residual == obs.Y);
    CHECK(obs.pilot_part(1) == obs.Y.block(0, np, M, np));
    CHECK(obs.coded_part() == obs.Y.block(0, J * np, M, nc));
}

TEST_CASE("Y = H X + Z exactly, given the exposed channel draw") {
    std::mt19937_64 rng(11);
    const int M = 3, J = 1, np = 4, nc = 8, L = J * np + nc;
    std::mt19937_64 sig_rng(5);
    std::vector<TxSignal> sigs;
    for (int k = 0; k < 2; ++k) {
        TxSignal x;
        for (int t = 0; t < L; ++t) x.samples.push_back(complex_gaussian(sig_rng));
        sigs.push_back(x);
    }
    ChannelDraw draw;
    SlotObservation obs = transmit_slot(sigs, M, 1.0, rng, J, np, nc, &draw);
    REQUIRE(draw.H.rows() == M);
    REQUIRE(draw.H.cols() == 2);
    Eigen::MatrixXcd X(2, L);
    for (int k = 0; k < 2; ++k)
        for (int t = 0; t < L; ++t) X(k, t) = sigs[k].samples[t];
    Eigen::MatrixXcd Z = obs.Y - draw.H * X;
    // residual after removing H*X is the additive noise: zero-mean, unit power
    CHECK(Z.squaredNorm() / double(M * L) == doctest::Approx(1.0).epsilon(0.7));
    // and the reconstruction is consistent: re-adding H*X restores Y exactly
    CHECK(((draw.H * X + Z) - obs.Y).norm() < 1e-12);
}

TEST_CASE("received energy matches signal plus noise accounting on average") {
    std::mt19937_64 rng(13);
    const int M = 4, J = 2, np = 16, nc = 32, L = J * np + nc;
    const double sigma2 = 0.5;
    std::mt19937_64 sig_rng(17);
    std::vector<TxSignal> sigs;
    double energy_sum = 0.0;
    for (int k = 0; k < 3; ++k) {
        TxSignal x;
        for (int t = 0; t < L; ++t) x.samples.push_back(0.3 * complex_gaussian(sig_rng));
        energy_sum += signal_energy(x);
        sigs.push_back(x);
    }
    // E||Y||^2 = M * sum_k ||x_k||^2 + M * L * sigma2 for i.i.d. CN(0,1) fading
    double expect = M * energy_sum + M * L * sigma2;
    double acc = 0.0;
    const int reps = 3000;
    for (int r = 0; r < reps; ++r)
        acc += transmit_slot(sigs, M, sigma2, rng, J, np, nc).Y.squaredNorm();
    CHECK(acc / reps == doctest::Approx(expect).epsilon(0.05));
}

TEST_CASE("noise-only observation is white across antennas and samples") {
    std::mt19937_64 rng(19);
    const int M = 2, J = 1, np = 4, nc = 60, L = np + nc;
    std::vector<TxSignal> none;
    cplx corr = 0.0;
    double power = 0.0;
    int count = 0;
    for (int r = 0; r < 2000; ++r) {
        SlotObservation obs = transmit_slot(none, M, 1.0, rng, J, np, nc);
        for (int t = 0; t + 1 < L; ++t) {
            corr += obs.Y(0, t) * std::conj(obs.Y(0, t + 1));
            corr += obs.Y(0, t) * std::conj(obs.Y(1, t));
            power += std::norm(obs.Y(0, t));
            ++count;
        }
    }
    CHECK(power / count == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(corr) / count < 0.01);
}

TEST_CASE("transmit_slot is reproducible for equal seeds") {
    const int M = 2, J = 1, np = 4, nc = 4, L = np + nc;
    std::vector<TxSignal> sigs = {constant_signal(L, cplx(0.5, -0.5))};
    std::mt19937_64 a(99), b(99), c(100);
    SlotObservation oa = transmit_slot(sigs, M, 1.0, a, J, np, nc);
    SlotObservation ob = transmit_slot(sigs, M, 1.0, b, J, np, nc);
    SlotObservation oc = transmit_slot(sigs, M, 1.0, c, J, np, nc);
    CHECK(oa.Y == ob.Y);
    CHECK(oa.Y != oc.Y);
}

TEST_CASE("Eb/N0 conversion matches its closed form and inverts power()") {
    CHECK(ebn0_of(1.0, 100, 100, 1.0, 1) == doctest::Approx(0.0));
    CHECK(ebn0_of(2.0, 100, 100, 1.0, 1) == doctest::Approx(10.0 * std::log10(2.0)));
    CHECK(ebn0_of(1.0, 100, 100, 1.0, 4) == doctest::Approx(10.0 * std::log10(4.0)));
    SystemConfig cfg;
    cfg.ebn0_db = 3.7;
    cfg.V = 2;
    CHECK(ebn0_of(cfg.power(), cfg.L(), cfg.B, cfg.sigma2, cfg.V) ==
          doctest::Approx(3.7).epsilon(1e-12));
}
