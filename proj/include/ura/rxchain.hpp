#ifndef URA_RXCHAIN_HPP
#define URA_RXCHAIN_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "ura/channel.hpp"
#include "ura/scheme.hpp"

namespace ura {

// Pilot rows whose correlator energy passes the gamma-level Neyman-Pearson
// threshold, ordered by descending energy.
struct DetectedPilot {
    int row = 0;
    double energy = 0.0;
};

std::vector<DetectedPilot> detect_pilots(const Eigen::Ref<const Eigen::MatrixXcd>& Yp,
                                         const PilotCodebook& cb, double noise_level,
                                         double gamma);

// Correlation channel estimate h_hat = Yp * b^T / (n_p * sqrt(Pp)).
Eigen::VectorXcd estimate_channel(const Eigen::Ref<const Eigen::MatrixXcd>& Yp,
                                  const PilotCodebook& cb, int row, double Pp);

// MRC, demodulation, and LLR generation for one detected user. `others` are
// the channel estimates of the other detected pilots in this iteration.
// Returns an empty vector for a degenerate (zero-norm) estimate.
std::vector<double> mrc_demod_llr(const Eigen::VectorXcd& h_hat,
                                  const Eigen::Ref<const Eigen::MatrixXcd>& Yc,
                                  const std::vector<Eigen::VectorXcd>& others, double Pc,
                                  double noise_level);

// Acceptance rule for a decode attempt: CRC pass plus pilot-consistency for
// MS-MRA/MSUG, double CRC for WOPBE; duplicates always rejected.
bool success_check(const std::vector<uint8_t>& message_bits, bool crc_pass, int detected_row,
                   int part_j, const SchemeContext& ctx,
                   const std::vector<std::vector<uint8_t>>& already_decoded);

// LS channel estimate of the decoded signals and projection residual:
// Y' = Y (I - X^H (X X^H)^{-1} X). Regularizes the Gram solve when it is
// numerically singular and reports it via `regularized`.
Eigen::MatrixXcd ls_sic(const Eigen::Ref<const Eigen::MatrixXcd>& Y,
                        const Eigen::MatrixXcd& X, bool* regularized = nullptr);

// Full slot decoder: Algorithm-style iteration over pilot parts (and groups,
// highest power first), with IISD for the WOPBE variant. Returns the decoded
// B-bit messages. Optional newline-delimited per-iteration trace.
std::vector<std::vector<uint8_t>> decode_slot(const SlotObservation& obs,
                                              const SchemeContext& ctx,
                                              std::ostream* trace = nullptr);

// Iterative inter-symbol decoding for MS-MRA-WOPBE at pilot part j. Exposed
// for unit tests; decode_slot drives it internally.
std::vector<std::vector<uint8_t>> iisd(const Eigen::MatrixXcd& Yres,
                                       const std::vector<DetectedPilot>& detected, int part_j,
                                       const SchemeContext& ctx, int group, double noise_level,
                                       const std::vector<std::vector<uint8_t>>& already_decoded);

}  // namespace ura

#endif
