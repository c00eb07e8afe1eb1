#ifndef URA_CHANNEL_HPP
#define URA_CHANNEL_HPP

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "ura/txchain.hpp"

namespace ura {

// Per-slot Rayleigh block-fading draw: H is M x K_s with i.i.d. CN(0,1)
// entries, constant over the slot.
struct ChannelDraw {
    Eigen::MatrixXcd H;
    double sigma2 = 1.0;
};

// M x L received matrix plus the running SIC residual.
struct SlotObservation {
    Eigen::MatrixXcd Y;
    Eigen::MatrixXcd residual;
    int J = 0;
    int np = 0;
    int nc = 0;

    Eigen::Block<const Eigen::MatrixXcd> pilot_part(int j) const {
        return Y.block(0, j * np, Y.rows(), np);
    }
    Eigen::Block<const Eigen::MatrixXcd> coded_part() const {
        return Y.block(0, J * np, Y.rows(), nc);
    }
};

// Y = H * X + Z with X stacking the signals row-wise and Z i.i.d. complex
// Gaussian with per-sample variance sigma2. Optionally exposes the channel
// draw for oracle tests.
SlotObservation transmit_slot(const std::vector<TxSignal>& signals, int M, double sigma2,
                              std::mt19937_64& rng, int J, int np, int nc,
                              ChannelDraw* draw = nullptr);

// Eb/N0 in dB: 10*log10(V*L*P / (sigma2*B)).
double ebn0_of(double P, int L, int B, double sigma2, int V);

// One CN(0,1) sample (unit total variance, Re/Im each 0.5). Polar form keeps
// the draw count per sample fixed, so streams are reproducible bit for bit.
inline cplx complex_gaussian(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double u1 = 1.0 - u(rng);  // in (0,1]
    double u2 = u(rng);
    double mag = std::sqrt(-std::log(u1));
    return {mag * std::cos(2.0 * M_PI * u2), mag * std::sin(2.0 * M_PI * u2)};
}

}  // namespace ura

#endif
