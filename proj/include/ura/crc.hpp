#ifndef URA_CRC_HPP
#define URA_CRC_HPP

#include <cstdint>
#include <vector>

namespace ura {

// Cyclic redundancy check over bit vectors (MSB-first long division,
// zero initial register, no final xor).
struct CrcSpec {
    int degree = 0;           // number of CRC bits
    uint32_t polynomial = 0;  // taps below x^degree, e.g. 0x385 for degree 11

    // A documented default polynomial for the given degree.
    static CrcSpec standard(int degree);
};

// Remainder bits (length spec.degree) of payload * x^degree mod polynomial.
std::vector<uint8_t> crc_compute(const std::vector<uint8_t>& payload, const CrcSpec& spec);

// payload with its CRC field appended.
std::vector<uint8_t> crc_attach(const std::vector<uint8_t>& payload, const CrcSpec& spec);

// True iff the trailing spec.degree bits match the CRC of the leading bits.
bool crc_check(const std::vector<uint8_t>& frame, const CrcSpec& spec);

}  // namespace ura

#endif
