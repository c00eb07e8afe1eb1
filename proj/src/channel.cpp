#include "ura/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ura {

SlotObservation transmit_slot(const std::vector<TxSignal>& signals, int M, double sigma2,
                              std::mt19937_64& rng, int J, int np, int nc,
                              ChannelDraw* draw) {
    const int L = J * np + nc;
    for (const auto& s : signals)
        if (static_cast<int>(s.samples.size()) != L)
            throw std::invalid_argument("transmit_slot: signal length mismatch");
    const int K = static_cast<int>(signals.size());

    Eigen::MatrixXcd H(M, K);
    for (int k = 0; k < K; ++k)
        for (int m = 0; m < M; ++m) H(m, k) = complex_gaussian(rng);

    SlotObservation obs;
    obs.J = J;
    obs.np = np;
    obs.nc = nc;
    obs.Y = Eigen::MatrixXcd::Zero(M, L);
    for (int k = 0; k < K; ++k) {
        Eigen::Map<const Eigen::RowVectorXcd> x(signals[k].samples.data(), L);
        obs.Y += H.col(k) * x;
    }
    if (sigma2 > 0.0) {
        const double s = std::sqrt(sigma2);
        for (int m = 0; m < M; ++m)
            for (int l = 0; l < L; ++l) obs.Y(m, l) += s * complex_gaussian(rng);
    }
    obs.residual = obs.Y;
    if (draw) {
        draw->H = H;
        draw->sigma2 = sigma2;
    }
    return obs;
}

double ebn0_of(double P, int L, int B, double sigma2, int V) {
    if (P <= 0.0 || L <= 0 || B <= 0 || sigma2 <= 0.0 || V < 1)
        throw std::invalid_argument("ebn0_of: non-positive input");
    return 10.0 * std::log10(static_cast<double>(V) * L * P / (sigma2 * B));
}

}  // namespace ura
