#include <algorithm>
#include <cstdio>
#include <random>
#include <vector>

#include <doctest.h>

#include "ura/crc.hpp"
#include "ura/polar.hpp"

using namespace ura;

namespace {

// Oracle: u * F^{(x)m} over GF(2) with F = [[1,0],[1,1]], built explicitly by
// Kronecker products.
std::vector<std::vector<uint8_t>> kron_matrix(int n) {
    std::vector<std::vector<uint8_t>> F = {{1, 0}, {1, 1}};
    std::vector<std::vector<uint8_t>> A = {{1}};
    int size = 1;
    while (size < n) {
        std::vector<std::vector<uint8_t>> B(2 * size, std::vector<uint8_t>(2 * size, 0));
        for (int bi = 0; bi < 2; ++bi)
            for (int bj = 0; bj < 2; ++bj)
                if (F[bi][bj])
                    for (int i = 0; i < size; ++i)
                        for (int j = 0; j < size; ++j)
                            B[bi * size + i][bj * size + j] = A[i][j];
        A.swap(B);
        size *= 2;
    }
    return A;
}

std::vector<uint8_t> encode_oracle(const std::vector<uint8_t>& info, const PolarCodeSpec& spec) {
    std::vector<uint8_t> u(spec.block_length, 0);
    std::vector<bool> frozen(spec.block_length, false);
    for (int f : spec.frozen_set) frozen[f] = true;
    size_t pos = 0;
    for (int i = 0; i < spec.block_length; ++i)
        if (!frozen[i]) u[i] = info[pos++];
    auto A = kron_matrix(spec.block_length);
    std::vector<uint8_t> cw(spec.block_length, 0);
    for (int j = 0; j < spec.block_length; ++j) {
        uint8_t acc = 0;
        for (int i = 0; i < spec.block_length; ++i) acc ^= u[i] & A[i][j];
        cw[j] = acc;
    }
    return cw;
}

std::vector<uint8_t> random_bits(std::mt19937_64& rng, int n) {
    std::vector<uint8_t> v(n);
    for (auto& b : v) b = rng() & 1;
    return v;
}

}  // namespace

TEST_CASE("encoder matches the GF(2) generator-matrix oracle") {
    std::mt19937_64 rng(3);
    for (int N : {2, 8, 32, 256}) {
        PolarCodeSpec spec = PolarCodeSpec::make(N, std::max(1, N / 2 + 1), 4);
        for (int t = 0; t < 20; ++t) {
            auto info = random_bits(rng, spec.info_length);
            CHECK(polar_encode(info, spec) == encode_oracle(info, spec));
        }
    }
}

TEST_CASE("frozen set construction is deterministic and well-formed") {
    auto a = build_frozen_set(256, 111);
    auto b = build_frozen_set(256, 111);
    CHECK(a == b);
    CHECK(int(a.size()) == 256 - 111);
    CHECK(std::is_sorted(a.begin(), a.end()));
    CHECK(std::adjacent_find(a.begin(), a.end()) == a.end());
    // index 0 is the least reliable synthetic channel and must be frozen
    CHECK(std::find(a.begin(), a.end(), 0) != a.end());
}

TEST_CASE("reliability order is a permutation and the all-ones index is most reliable") {
    for (int N : {64, 256}) {
        auto order = reliability_order(N);
        REQUIRE(int(order.size()) == N);
        std::vector<int> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < N; ++i) CHECK(sorted[i] == i);
        CHECK(order.front() == N - 1);
        CHECK(order.back() == 0);
    }
}

TEST_CASE("reliability table round-trips through the text format") {
    auto order = reliability_order(64);
    std::string path = "reliability_roundtrip.tmp";
    save_reliability_table(path, order);
    CHECK(load_reliability_table(path) == order);
    std::remove(path.c_str());
}

TEST_CASE("shipped reliability tables match the in-code construction") {
    for (int N : {256, 1024}) {
        std::string path = std::string(URA_DATA_DIR) + "/reliability_n" + std::to_string(N) +
                           ".txt";
        CHECK(load_reliability_table(path) == reliability_order(N));
    }
}

TEST_CASE("list decoding with a full list is maximum likelihood on a tiny code") {
    // N=16, 4 payload bits plus a 4-bit CRC, list 256 covers every info
    // pattern, so the decoder must return the most likely CRC-passing
    // codeword: the one maximizing the LLR score among all 16 valid payloads.
    PolarCodeSpec spec = PolarCodeSpec::make(16, 8, 256);
    CrcSpec crc = CrcSpec::standard(4);
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        auto payload = random_bits(rng, 4);
        auto cw = polar_encode(crc_attach(payload, crc), spec);
        std::vector<double> llr(16);
        for (int i = 0; i < 16; ++i) llr[i] = (cw[i] ? -1.0 : 1.0) * 1.2 + gauss(rng);
        SclResult res = scl_decode(llr, spec, crc);
        REQUIRE(res.crc_pass);
        // brute-force ML oracle over the 16 CRC-consistent codewords:
        // maximize the sum of llr over bits decoded as 0
        double best = -1e300;
        std::vector<uint8_t> best_info;
        for (int pattern = 0; pattern < 16; ++pattern) {
            std::vector<uint8_t> cand(4);
            for (int b = 0; b < 4; ++b) cand[b] = (pattern >> (3 - b)) & 1;
            auto info = crc_attach(cand, crc);
            auto ccw = polar_encode(info, spec);
            double score = 0.0;
            for (int i = 0; i < 16; ++i) score += (ccw[i] ? -llr[i] : llr[i]);
            if (score > best) {
                best = score;
                best_info = info;
            }
        }
        CHECK(res.info == best_info);
    }
}

TEST_CASE("noiseless loopback recovers every payload with the CRC satisfied") {
    PolarCodeSpec spec = PolarCodeSpec::make(128, 60, 8);
    CrcSpec crc = CrcSpec::standard(6);
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        auto payload = random_bits(rng, 54);
        auto info = crc_attach(payload, crc);
        auto cw = polar_encode(info, spec);
        std::vector<double> llr(cw.size());
        for (size_t i = 0; i < cw.size(); ++i) llr[i] = cw[i] ? -9.0 : 9.0;
        SclResult res = scl_decode(llr, spec, crc);
        CHECK(res.crc_pass);
        CHECK(res.info == info);
    }
}

TEST_CASE("pure-noise input rarely passes an 11-bit CRC") {
    // With list 64 the chance of any path satisfying a random 11-bit CRC is
    // about 64/2048 = 3%; bound the observed rate loosely.
    PolarCodeSpec spec = PolarCodeSpec::make(256, 111, 64);
    CrcSpec crc = CrcSpec::standard(11);
    std::mt19937_64 rng(29);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int passes = 0;
    const int rounds = 400;
    for (int t = 0; t < rounds; ++t) {
        std::vector<double> llr(256);
        for (auto& l : llr) l = 3.0 * gauss(rng);
        if (scl_decode(llr, spec, crc).crc_pass) ++passes;
    }
    CHECK(passes <= rounds / 10);
}

TEST_CASE("non-finite input is rejected") {
    PolarCodeSpec spec = PolarCodeSpec::make(8, 4, 2);
    std::vector<double> llr(8, 1.0);
    llr[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS(scl_decode(llr, spec, CrcSpec::standard(4)));
}
