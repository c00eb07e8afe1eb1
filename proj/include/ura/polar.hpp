#ifndef URA_POLAR_HPP
#define URA_POLAR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ura/crc.hpp"

namespace ura {

// (block_length, info_length) polar code with a fixed frozen set and an SCL
// decoder list size.
struct PolarCodeSpec {
    int block_length = 0;            // power of two
    int info_length = 0;             // payload + CRC bits
    std::vector<int> frozen_set;     // sorted, size block_length - info_length
    int list_size = 64;

    static PolarCodeSpec make(int block_length, int info_length, int list_size = 64);
};

// Indices 0..block_length-1 ordered from most to least reliable, computed by
// Gaussian-approximation density evolution at the given design Es/N0.
std::vector<int> reliability_order(int block_length, double design_snr_db = 2.0);

// Frozen positions: the info_length most reliable indices carry information,
// the rest are frozen to zero. Deterministic; identical at encoder and decoder.
std::vector<int> build_frozen_set(int block_length, int info_length);

// Reliability table I/O (plain text, one index per line, most reliable first).
std::vector<int> load_reliability_table(const std::string& path);
void save_reliability_table(const std::string& path, const std::vector<int>& order);

// codeword = u * F^{(x)m}, info bits in non-frozen positions (ascending), zeros
// in frozen positions.
std::vector<uint8_t> polar_encode(const std::vector<uint8_t>& info, const PolarCodeSpec& spec);

struct SclResult {
    std::vector<uint8_t> info;  // full info vector (payload plus CRC field)
    bool crc_pass = false;
    double path_metric = 0.0;
};

// CRC-aided successive-cancellation list decoding. LLR sign convention:
// positive means bit 0 is more likely. Returns the most likely CRC-passing
// path when one exists, otherwise the most likely path with crc_pass=false.
SclResult scl_decode(const std::vector<double>& llr, const PolarCodeSpec& spec,
                     const CrcSpec& crc);

}  // namespace ura

#endif
