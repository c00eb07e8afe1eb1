#ifndef URA_TXCHAIN_HPP
#define URA_TXCHAIN_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "ura/config.hpp"
#include "ura/crc.hpp"
#include "ura/pilots.hpp"
#include "ura/polar.hpp"

namespace ura {

using cplx = std::complex<double>;

// A user's B message bits split into J pilot parts (Bp bits each, in order)
// followed by the coded part.
struct UserMessage {
    std::vector<uint8_t> bits;                      // all B bits
    std::vector<std::vector<uint8_t>> pilot_parts;  // J parts, Bp bits each
    std::vector<uint8_t> coded_part;                // remaining B - J*Bp bits
};

UserMessage split_message(const std::vector<uint8_t>& bits, int J, int Bp);

// One user's length-L baseband slot signal.
struct TxSignal {
    std::vector<cplx> samples;  // length L = J*n_p + n_c
    int slot = 0;
    int group = 0;
    int user_id = -1;  // trial bookkeeping only, never visible to the decoder
};

// Gray-mapped QPSK, bit pair (b_{2t} -> imaginary, b_{2t+1} -> real),
// 0 -> +sqrt(Pc/2), 1 -> -sqrt(Pc/2).
std::vector<cplx> qpsk_modulate(const std::vector<uint8_t>& coded_bits, double Pc);

struct TxPowers {
    double Pp = 1.0;  // pilot segment per-sample power
    double Pc = 1.0;  // coded segment per-symbol power
};

// CRC configuration: `single` for MS-MRA-style encoding (payload = all B bits),
// `outer`/`inner` for the WOPBE chain c2 = CRC(w), c1 = CRC(w_c || c2).
struct CrcChain {
    CrcSpec single;  // degree r
    CrcSpec inner;   // degree r1, checked by the list decoder
    CrcSpec outer;   // degree r2, covers the full message
};

// Polar payload for the given variant: MS-MRA encodes w || CRC(w); WOPBE
// encodes w_c || c2 || c1 and leaves pilot bits uncoded.
std::vector<uint8_t> polar_payload(const UserMessage& msg, Variant variant, const CrcChain& crc);

TxSignal assemble_signal(const UserMessage& msg, Variant variant, const PilotCodebook& cb,
                         const PolarCodeSpec& polar, const CrcChain& crc, TxPowers powers);

// Fixed pseudo-random permutation of [0,L) for group g, identical at both
// ends. Group 0 of a single-group system is the identity.
std::vector<int> make_interleaver(uint64_t master_seed, int group, int L, bool identity);

// out[perm[i]] = in[i]
TxSignal msug_transform(const TxSignal& x, int group, const std::vector<int>& perm);
std::vector<cplx> interleave(const std::vector<cplx>& in, const std::vector<int>& perm);
std::vector<cplx> deinterleave(const std::vector<cplx>& in, const std::vector<int>& perm);

// Placement of one slot signal over the V sub-frames of an SRA frame: the
// same signal occupies slot `slot` of every sub-frame.
struct SraPlacement {
    int slot = 0;
    int copies = 1;                 // V
    std::vector<int> subframe_offsets;  // sample offset of each copy in the frame
};

SraPlacement sra_layout(const TxSignal& x, int V, int S, int slot);

double signal_energy(const TxSignal& x);

}  // namespace ura

#endif
