#include "ura/scheme.hpp"

#include "ura/analysis.hpp"

namespace ura {

SchemeContext SchemeContext::make(const SystemConfig& cfg) {
    cfg.validate();
    int info_len = is_wopbe(cfg.variant) ? cfg.Bc() + cfg.r1 + cfg.r2 : cfg.B + cfg.r;
    SchemeContext ctx{cfg,
                      PilotCodebook(cfg.Bp),
                      PolarCodeSpec::make(2 * cfg.nc, info_len, cfg.list_size),
                      CrcChain{},
                      0.0,
                      {},
                      {}};
    ctx.crc.single = CrcSpec::standard(cfg.r);
    if (is_wopbe(cfg.variant)) {
        ctx.crc.inner = CrcSpec::standard(cfg.r1);
        ctx.crc.outer = CrcSpec::standard(cfg.r2);
    }
    ctx.P = cfg.power();
    // Coded-part power of the MS-MRA-equivalent single group; MSUG splits it
    // across G levels with the same average.
    double pc_avg = ctx.P * cfg.L() / (cfg.J * cfg.np() * cfg.phi + cfg.nc);
    double K0 = static_cast<double>(cfg.Ka) / (cfg.S * cfg.G);
    ctx.group_pc = analysis::msug_powers(cfg.G, pc_avg, cfg.phi, K0, cfg.antennas_effective(),
                                         cfg.L(), cfg.np(), cfg.J, cfg.sigma2);
    ctx.interleavers.resize(cfg.G);
    for (int g = 0; g < cfg.G; ++g)
        ctx.interleavers[g] = make_interleaver(cfg.seed, g, cfg.L(), cfg.G == 1);
    return ctx;
}

double SchemeContext::group_noise_level(int g) const {
    double zeta = (cfg.J * cfg.phi * cfg.np() + cfg.nc) / static_cast<double>(cfg.L());
    double k0 = static_cast<double>(cfg.Ka) / (cfg.S * cfg.G);
    double lower = 0.0;
    for (int i = 0; i < g; ++i) lower += group_pc[i];
    return zeta * k0 * lower + cfg.sigma2;
}

TxSignal SchemeContext::encode_user(const std::vector<uint8_t>& bits, int slot, int group,
                                    int user_id) const {
    UserMessage msg = split_message(bits, cfg.J, cfg.Bp);
    TxPowers powers{group_pp(group), group_pc[group]};
    TxSignal x = assemble_signal(msg, cfg.variant, codebook, polar, crc, powers);
    x.slot = slot;
    x.user_id = user_id;
    x = msug_transform(x, group, interleavers[group]);
    return x;
}

}  // namespace ura
