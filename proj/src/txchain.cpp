#include "ura/txchain.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ura/rng.hpp"

namespace ura {

UserMessage split_message(const std::vector<uint8_t>& bits, int J, int Bp) {
    const int B = static_cast<int>(bits.size());
    if (B < J * Bp) throw ConfigError("split_message: B < J*Bp");
    UserMessage msg;
    msg.bits = bits;
    msg.pilot_parts.resize(J);
    for (int j = 0; j < J; ++j)
        msg.pilot_parts[j].assign(bits.begin() + j * Bp, bits.begin() + (j + 1) * Bp);
    msg.coded_part.assign(bits.begin() + J * Bp, bits.end());
    return msg;
}

std::vector<cplx> qpsk_modulate(const std::vector<uint8_t>& coded_bits, double Pc) {
    if (coded_bits.size() % 2 != 0)
        throw std::invalid_argument("qpsk_modulate: odd bit count");
    const double a = std::sqrt(Pc / 2.0);
    std::vector<cplx> out(coded_bits.size() / 2);
    for (size_t t = 0; t < out.size(); ++t) {
        double im = coded_bits[2 * t] ? -a : a;
        double re = coded_bits[2 * t + 1] ? -a : a;
        out[t] = cplx(re, im);
    }
    return out;
}

std::vector<uint8_t> polar_payload(const UserMessage& msg, Variant variant, const CrcChain& crc) {
    if (is_wopbe(variant)) {
        std::vector<uint8_t> c2 = crc_compute(msg.bits, crc.outer);
        std::vector<uint8_t> inner_payload = msg.coded_part;
        inner_payload.insert(inner_payload.end(), c2.begin(), c2.end());
        return crc_attach(inner_payload, crc.inner);  // w_c || c2 || c1
    }
    return crc_attach(msg.bits, crc.single);  // w || CRC
}

TxSignal assemble_signal(const UserMessage& msg, Variant variant, const PilotCodebook& cb,
                         const PolarCodeSpec& polar, const CrcChain& crc, TxPowers powers) {
    const int J = static_cast<int>(msg.pilot_parts.size());
    const int np = cb.dimension();

    std::vector<uint8_t> payload = polar_payload(msg, variant, crc);
    if (static_cast<int>(payload.size()) != polar.info_length)
        throw ConfigError("assemble_signal: polar payload length mismatch");
    std::vector<uint8_t> codeword = polar_encode(payload, polar);
    std::vector<cplx> coded = qpsk_modulate(codeword, powers.Pc);

    TxSignal x;
    x.samples.reserve(J * np + coded.size());
    const double sp = std::sqrt(powers.Pp);
    for (int j = 0; j < J; ++j) {
        const auto& row = cb.pilot_row(msg.pilot_parts[j]);
        for (int8_t v : row) x.samples.emplace_back(sp * v, 0.0);
    }
    x.samples.insert(x.samples.end(), coded.begin(), coded.end());
    return x;
}

std::vector<int> make_interleaver(uint64_t master_seed, int group, int L, bool identity) {
    std::vector<int> perm(L);
    std::iota(perm.begin(), perm.end(), 0);
    if (identity) return perm;
    std::mt19937_64 rng(derive_seed(master_seed, 0x1eaf0000ULL + static_cast<uint64_t>(group)));
    for (int i = L - 1; i > 0; --i) {
        std::uniform_int_distribution<int> d(0, i);
        std::swap(perm[i], perm[d(rng)]);
    }
    return perm;
}

std::vector<cplx> interleave(const std::vector<cplx>& in, const std::vector<int>& perm) {
    std::vector<cplx> out(in.size());
    for (size_t i = 0; i < in.size(); ++i) out[perm[i]] = in[i];
    return out;
}

std::vector<cplx> deinterleave(const std::vector<cplx>& in, const std::vector<int>& perm) {
    std::vector<cplx> out(in.size());
    for (size_t i = 0; i < in.size(); ++i) out[i] = in[perm[i]];
    return out;
}

TxSignal msug_transform(const TxSignal& x, int group, const std::vector<int>& perm) {
    if (perm.size() != x.samples.size())
        throw std::invalid_argument("msug_transform: permutation length mismatch");
    TxSignal out = x;
    out.group = group;
    out.samples = interleave(x.samples, perm);
    return out;
}

SraPlacement sra_layout(const TxSignal& x, int V, int S, int slot) {
    const int L = static_cast<int>(x.samples.size());
    if (V < 1 || S < 1 || slot < 0 || slot >= S)
        throw ConfigError("sra_layout: inconsistent frame geometry");
    SraPlacement plan;
    plan.slot = slot;
    plan.copies = V;
    plan.subframe_offsets.resize(V);
    for (int v = 0; v < V; ++v) plan.subframe_offsets[v] = (v * S + slot) * L;
    return plan;
}

double signal_energy(const TxSignal& x) {
    double e = 0.0;
    for (const cplx& s : x.samples) e += std::norm(s);
    return e;
}

}  // namespace ura
