#include "ura/crc.hpp"

#include <stdexcept>

namespace ura {

CrcSpec CrcSpec::standard(int degree) {
    // Generator taps below the leading x^degree term.
    switch (degree) {
        case 4: return {4, 0x3};        // x^4+x+1 (ITU)
        case 5: return {5, 0x05};       // x^5+x^2+1 (USB)
        case 6: return {6, 0x03};       // x^6+x+1 (ITU)
        case 7: return {7, 0x09};       // x^7+x^3+1 (MMC)
        case 8: return {8, 0x07};       // x^8+x^2+x+1 (ATM)
        case 10: return {10, 0x233};    // x^10+x^9+x^5+x^4+x+1
        case 11: return {11, 0x385};    // x^11+x^9+x^8+x^7+x^2+1 (FlexRay)
        case 12: return {12, 0x80F};    // x^12+x^11+x^3+x^2+x+1
        case 16: return {16, 0x1021};   // CCITT
        default:
            throw std::invalid_argument("CrcSpec::standard: no default polynomial for this degree");
    }
}

std::vector<uint8_t> crc_compute(const std::vector<uint8_t>& payload, const CrcSpec& spec) {
    if (spec.degree <= 0 || spec.degree > 31)
        throw std::invalid_argument("crc_compute: bad degree");
    uint32_t reg = 0;
    const uint32_t top = 1u << (spec.degree - 1);
    const uint32_t mask = (1u << spec.degree) - 1;
    for (uint8_t bit : payload) {
        uint32_t fb = ((reg >> (spec.degree - 1)) ^ (bit & 1)) & 1;
        reg = (reg << 1) & mask;
        if (fb) reg ^= spec.polynomial;
        (void)top;
    }
    std::vector<uint8_t> out(spec.degree);
    for (int i = 0; i < spec.degree; ++i)
        out[i] = static_cast<uint8_t>((reg >> (spec.degree - 1 - i)) & 1);
    return out;
}

std::vector<uint8_t> crc_attach(const std::vector<uint8_t>& payload, const CrcSpec& spec) {
    std::vector<uint8_t> out = payload;
    std::vector<uint8_t> crc = crc_compute(payload, spec);
    out.insert(out.end(), crc.begin(), crc.end());
    return out;
}

bool crc_check(const std::vector<uint8_t>& frame, const CrcSpec& spec) {
    if (static_cast<int>(frame.size()) <= spec.degree) return false;
    std::vector<uint8_t> payload(frame.begin(), frame.end() - spec.degree);
    std::vector<uint8_t> crc = crc_compute(payload, spec);
    for (int i = 0; i < spec.degree; ++i)
        if (crc[i] != frame[frame.size() - spec.degree + i]) return false;
    return true;
}

}  // namespace ura
