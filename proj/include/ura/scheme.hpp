#ifndef URA_SCHEME_HPP
#define URA_SCHEME_HPP

#include <cstdint>
#include <vector>

#include "ura/config.hpp"
#include "ura/pilots.hpp"
#include "ura/polar.hpp"
#include "ura/txchain.hpp"

namespace ura {

// Everything derived from a SystemConfig that encoder and decoder share:
// codebook, polar/CRC specs, group power levels and interleavers.
struct SchemeContext {
    SystemConfig cfg;
    PilotCodebook codebook;
    PolarCodeSpec polar;
    CrcChain crc;
    double P = 1.0;                          // average power per channel use
    std::vector<double> group_pc;            // ascending coded-part powers, size G
    std::vector<std::vector<int>> interleavers;  // per group; identity when G == 1

    static SchemeContext make(const SystemConfig& cfg);

    double group_pp(int g) const { return cfg.phi * group_pc[g]; }

    // Effective noise level seen while group g (0-based, ascending power) is
    // dominant: lower-power groups modeled as Gaussian interference.
    double group_noise_level(int g) const;

    // Full encode of one user: split, CRC, polar, QPSK, pilots, group
    // interleave. Deterministic in (bits, slot, group).
    TxSignal encode_user(const std::vector<uint8_t>& bits, int slot, int group,
                         int user_id = -1) const;
};

}  // namespace ura

#endif
