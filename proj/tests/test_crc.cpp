#include <random>
#include <vector>

#include <doctest.h>

#include "ura/crc.hpp"

using namespace ura;

namespace {

// Independent oracle: full GF(2) polynomial long division on the message
// polynomial times x^degree, working on the whole coefficient vector at once
// rather than through a shift register.
std::vector<uint8_t> poly_remainder(const std::vector<uint8_t>& payload, int degree,
                                    uint32_t poly_taps) {
    std::vector<uint8_t> work = payload;
    work.resize(payload.size() + degree, 0);
    std::vector<uint8_t> gen(degree + 1);
    gen[0] = 1;
    for (int i = 0; i < degree; ++i) gen[degree - i] = (poly_taps >> i) & 1;
    for (size_t i = 0; i + degree < work.size(); ++i)
        if (work[i])
            for (int j = 0; j <= degree; ++j) work[i + j] ^= gen[j];
    return std::vector<uint8_t>(work.end() - degree, work.end());
}

std::vector<uint8_t> ascii_bits(const char* s) {
    std::vector<uint8_t> bits;
    for (const char* p = s; *p; ++p)
        for (int b = 7; b >= 0; --b) bits.push_back((*p >> b) & 1);
    return bits;
}

}  // namespace

TEST_CASE("shift-register CRC equals polynomial long division") {
    std::mt19937_64 rng(7);
    for (int degree : {4, 5, 6, 7, 8, 10, 11, 12, 16}) {
        CrcSpec spec = CrcSpec::standard(degree);
        for (int trial = 0; trial < 50; ++trial) {
            int len = 1 + int(rng() % 120);
            std::vector<uint8_t> payload(len);
            for (auto& b : payload) b = rng() & 1;
            CHECK(crc_compute(payload, spec) == poly_remainder(payload, degree, spec.polynomial));
        }
    }
}

TEST_CASE("degree-16 CRC reproduces the published XMODEM check value") {
    // CRC-16/XMODEM: poly 0x1021, zero init, no reflection, check 0x31C3
    auto crc = crc_compute(ascii_bits("123456789"), CrcSpec::standard(16));
    uint32_t value = 0;
    for (uint8_t b : crc) value = (value << 1) | b;
    CHECK(value == 0x31C3);
}

TEST_CASE("attach then check round-trips") {
    std::mt19937_64 rng(9);
    CrcSpec spec = CrcSpec::standard(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<uint8_t> payload(100);
        for (auto& b : payload) b = rng() & 1;
        auto frame = crc_attach(payload, spec);
        REQUIRE(frame.size() == payload.size() + 11);
        CHECK(crc_check(frame, spec));
    }
}

TEST_CASE("any single-bit flip is detected") {
    std::mt19937_64 rng(11);
    CrcSpec spec = CrcSpec::standard(11);
    std::vector<uint8_t> payload(60);
    for (auto& b : payload) b = rng() & 1;
    auto frame = crc_attach(payload, spec);
    for (size_t i = 0; i < frame.size(); ++i) {
        auto corrupted = frame;
        corrupted[i] ^= 1;
        CHECK_FALSE(crc_check(corrupted, spec));
    }
}

TEST_CASE("frames shorter than the CRC field fail the check") {
    CrcSpec spec = CrcSpec::standard(8);
    CHECK_FALSE(crc_check({1, 0, 1}, spec));
}

TEST_CASE("unsupported degree is rejected") {
    CHECK_THROWS(CrcSpec::standard(3));
}
