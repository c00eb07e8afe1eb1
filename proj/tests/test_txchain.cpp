#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "ura/txchain.hpp"

using namespace ura;

namespace {

std::vector<uint8_t> random_bits(std::mt19937_64& rng, int n) {
    std::vector<uint8_t> v(n);
    for (auto& b : v) b = rng() & 1;
    return v;
}

CrcChain default_chain() {
    CrcChain crc;
    crc.single = CrcSpec::standard(11);
    crc.inner = CrcSpec::standard(6);
    crc.outer = CrcSpec::standard(5);
    return crc;
}

}  // namespace

TEST_CASE("split_message partitions the bits in order") {
    std::mt19937_64 rng(5);
    auto bits = random_bits(rng, 100);
    UserMessage msg = split_message(bits, 2, 5);
    REQUIRE(msg.pilot_parts.size() == 2);
    CHECK(msg.bits == bits);
    CHECK(msg.pilot_parts[0] == std::vector<uint8_t>(bits.begin(), bits.begin() + 5));
    CHECK(msg.pilot_parts[1] == std::vector<uint8_t>(bits.begin() + 5, bits.begin() + 10));
    CHECK(msg.coded_part == std::vector<uint8_t>(bits.begin() + 10, bits.end()));
    CHECK(int(msg.coded_part.size()) == 90);
}

TEST_CASE("QPSK maps bit pairs with the documented sign convention") {
    double Pc = 2.0;
    double a = std::sqrt(Pc / 2.0);
    auto sym = qpsk_modulate({0, 0, 0, 1, 1, 0, 1, 1}, Pc);
    REQUIRE(sym.size() == 4);
    // even bit -> imaginary, odd bit -> real, 0 -> +a, 1 -> -a
    CHECK(sym[0] == cplx(a, a));
    CHECK(sym[1] == cplx(-a, a));
    CHECK(sym[2] == cplx(a, -a));
    CHECK(sym[3] == cplx(-a, -a));
    for (auto s : sym) CHECK(std::norm(s) == doctest::Approx(Pc));
}

TEST_CASE("assembled slot signal has the expected layout and energy") {
    std::mt19937_64 rng(13);
    PilotCodebook cb(5);
    PolarCodeSpec polar = PolarCodeSpec::make(256, 100 + 11, 8);
    CrcChain crc = default_chain();
    TxPowers powers{0.7, 0.3};
    auto bits = random_bits(rng, 100);
    UserMessage msg = split_message(bits, 2, 5);
    TxSignal x = assemble_signal(msg, Variant::MsMra, cb, polar, crc, powers);
    const int np = 32, nc = 128, L = 2 * np + nc;
    REQUIRE(int(x.samples.size()) == L);
    // pilot segments: real +/- sqrt(Pp) scaled Hadamard rows, zero imaginary
    for (int j = 0; j < 2; ++j) {
        const auto& row = cb.pilot_row(msg.pilot_parts[j]);
        for (int t = 0; t < np; ++t) {
            cplx s = x.samples[j * np + t];
            CHECK(s.real() == doctest::Approx(std::sqrt(powers.Pp) * row[t]));
            CHECK(s.imag() == doctest::Approx(0.0));
        }
    }
    // coded segment is QPSK of the polar codeword
    auto cw = polar_encode(polar_payload(msg, Variant::MsMra, crc), polar);
    auto sym = qpsk_modulate(cw, powers.Pc);
    REQUIRE(int(sym.size()) == nc);
    for (int t = 0; t < nc; ++t) CHECK(std::abs(x.samples[2 * np + t] - sym[t]) < 1e-12);
    // total energy matches the closed form J*np*Pp + nc*Pc
    CHECK(signal_energy(x) ==
          doctest::Approx(2 * np * powers.Pp + nc * powers.Pc).epsilon(1e-12));
}

TEST_CASE("single-CRC payload protects all message bits") {
    std::mt19937_64 rng(19);
    CrcChain crc = default_chain();
    auto bits = random_bits(rng, 100);
    UserMessage msg = split_message(bits, 2, 5);
    auto payload = polar_payload(msg, Variant::MsMra, crc);
    REQUIRE(int(payload.size()) == 100 + 11);
    CHECK(std::equal(bits.begin(), bits.end(), payload.begin()));
    CHECK(crc_check(payload, crc.single));
}

TEST_CASE("two-stage CRC payload carries only the coded bits plus both checks") {
    std::mt19937_64 rng(19);
    CrcChain crc = default_chain();
    auto bits = random_bits(rng, 100);
    UserMessage msg = split_message(bits, 2, 5);
    auto payload = polar_payload(msg, Variant::MsMraWopbe, crc);
    REQUIRE(int(payload.size()) == 90 + 5 + 6);
    // leading bits are the coded part
    CHECK(std::equal(msg.coded_part.begin(), msg.coded_part.end(), payload.begin()));
    // c2 covers the full message, c1 covers coded part || c2
    auto c2 = crc_compute(bits, crc.outer);
    CHECK(std::equal(c2.begin(), c2.end(), payload.begin() + 90));
    CHECK(crc_check(payload, crc.inner));
}

TEST_CASE("interleave and deinterleave are inverse maps") {
    std::mt19937_64 rng(31);
    auto perm = make_interleaver(42, 3, 192, false);
    REQUIRE(int(perm.size()) == 192);
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 192; ++i) CHECK(sorted[i] == i);
    std::vector<cplx> in(192);
    for (auto& s : in) s = cplx(std::normal_distribution<>()(rng), std::normal_distribution<>()(rng));
    auto mixed = interleave(in, perm);
    CHECK(mixed[perm[7]] == in[7]);
    auto back = deinterleave(mixed, perm);
    for (int i = 0; i < 192; ++i) CHECK(std::abs(back[i] - in[i]) < 1e-15);
    // different groups get different permutations under the same seed
    CHECK(make_interleaver(42, 0, 192, false) != make_interleaver(42, 1, 192, false));
}

TEST_CASE("identity interleaver leaves the signal untouched") {
    auto perm = make_interleaver(42, 0, 64, true);
    for (int i = 0; i < 64; ++i) CHECK(perm[i] == i);
    TxSignal x;
    x.samples.assign(64, cplx(1.0, -2.0));
    x.samples[5] = cplx(3.0, 4.0);
    TxSignal y = msug_transform(x, 0, perm);
    CHECK(y.samples == x.samples);
    CHECK(y.group == 0);
}

TEST_CASE("SRA layout repeats the slot at each sub-frame offset") {
    TxSignal x;
    x.samples.assign(192, cplx(1.0, 0.0));
    const int V = 4, S = 2, slot = 1, L = 192;
    SraPlacement p = sra_layout(x, V, S, slot);
    CHECK(p.copies == V);
    CHECK(p.slot == slot);
    REQUIRE(int(p.subframe_offsets.size()) == V);
    for (int v = 0; v < V; ++v) CHECK(p.subframe_offsets[v] == (v * S + slot) * L);
}
