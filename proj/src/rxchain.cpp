#include "ura/rxchain.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ura/stats.hpp"

namespace ura {

namespace {

// Residual columns mapped back through the group permutation: out[i] = in[perm[i]].
Eigen::MatrixXcd deinterleave_cols(const Eigen::Ref<const Eigen::MatrixXcd>& Y,
                                   const std::vector<int>& perm) {
    Eigen::MatrixXcd out(Y.rows(), Y.cols());
    for (int i = 0; i < Y.cols(); ++i) out.col(i) = Y.col(perm[i]);
    return out;
}

std::vector<uint8_t> message_of_info(const std::vector<uint8_t>& info, int B) {
    return std::vector<uint8_t>(info.begin(), info.begin() + B);
}

// +/-1 QPSK remodulation of a codeword at power Pc (same mapping as the
// transmit chain: even bit -> imaginary, odd bit -> real, 0 -> +).
Eigen::RowVectorXcd remodulate(const std::vector<uint8_t>& codeword, double Pc) {
    const double a = std::sqrt(Pc / 2.0);
    Eigen::RowVectorXcd v(static_cast<int>(codeword.size() / 2));
    for (int t = 0; t < v.size(); ++t) {
        double im = codeword[2 * t] ? -a : a;
        double re = codeword[2 * t + 1] ? -a : a;
        v(t) = cplx(re, im);
    }
    return v;
}

Eigen::RowVectorXcd pilot_row_vec(const PilotCodebook& cb, int row, double scale) {
    const auto& b = cb.row(row);
    Eigen::RowVectorXcd out(cb.dimension());
    for (int i = 0; i < cb.dimension(); ++i) out(i) = cplx(scale * b[i], 0.0);
    return out;
}

}  // namespace

std::vector<DetectedPilot> detect_pilots(const Eigen::Ref<const Eigen::MatrixXcd>& Yp,
                                         const PilotCodebook& cb, double noise_level,
                                         double gamma) {
    const int np = cb.dimension();
    const int M = static_cast<int>(Yp.rows());
    const double tau = 0.5 * noise_level * stats::chi2_inv(2 * M, 1.0 - gamma);
    std::vector<DetectedPilot> out;
    for (int l = 0; l < np; ++l) {
        // u_l = Yp b_l^T / sqrt(n_p); the codebook rows are real, so the
        // conjugate is free.
        Eigen::VectorXcd u = Eigen::VectorXcd::Zero(M);
        const auto& b = cb.row(l);
        for (int t = 0; t < np; ++t) u += static_cast<double>(b[t]) * Yp.col(t);
        u /= std::sqrt(static_cast<double>(np));
        double energy = u.squaredNorm();
        if (energy >= tau) out.push_back({l, energy});
    }
    std::sort(out.begin(), out.end(),
              [](const DetectedPilot& a, const DetectedPilot& b) { return a.energy > b.energy; });
    return out;
}

Eigen::VectorXcd estimate_channel(const Eigen::Ref<const Eigen::MatrixXcd>& Yp,
                                  const PilotCodebook& cb, int row, double Pp) {
    const int np = cb.dimension();
    Eigen::VectorXcd h = Eigen::VectorXcd::Zero(Yp.rows());
    const auto& b = cb.row(row);
    for (int t = 0; t < np; ++t) h += static_cast<double>(b[t]) * Yp.col(t);
    h /= np * std::sqrt(Pp);
    return h;
}

std::vector<double> mrc_demod_llr(const Eigen::VectorXcd& h_hat,
                                  const Eigen::Ref<const Eigen::MatrixXcd>& Yc,
                                  const std::vector<Eigen::VectorXcd>& others, double Pc,
                                  double noise_level) {
    const double h2 = h_hat.squaredNorm();
    if (!(h2 > 0.0)) return {};
    double interf = 0.0;
    for (const auto& hk : others) interf += std::norm(h_hat.dot(hk));
    const double sigma2_o = Pc * interf + noise_level * h2;
    if (!(sigma2_o > 0.0)) return {};
    const double scale = 2.0 * std::sqrt(2.0 * Pc) * h2 / sigma2_o;
    Eigen::RowVectorXcd v = h_hat.adjoint() * Yc;
    std::vector<double> llr(2 * v.size());
    for (int t = 0; t < v.size(); ++t) {
        llr[2 * t] = scale * v(t).imag();
        llr[2 * t + 1] = scale * v(t).real();
    }
    return llr;
}

bool success_check(const std::vector<uint8_t>& message_bits, bool crc_pass, int detected_row,
                   int part_j, const SchemeContext& ctx,
                   const std::vector<std::vector<uint8_t>>& already_decoded) {
    if (!crc_pass) return false;
    std::vector<uint8_t> part(message_bits.begin() + part_j * ctx.cfg.Bp,
                              message_bits.begin() + (part_j + 1) * ctx.cfg.Bp);
    if (ctx.codebook.row_index(part) != detected_row) return false;
    for (const auto& m : already_decoded)
        if (m == message_bits) return false;
    return true;
}

Eigen::MatrixXcd ls_sic(const Eigen::Ref<const Eigen::MatrixXcd>& Y,
                        const Eigen::MatrixXcd& X, bool* regularized) {
    if (regularized) *regularized = false;
    if (X.rows() == 0) return Y;
    Eigen::MatrixXcd gram = X * X.adjoint();
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
    auto ill = [&]() {
        if (ldlt.info() != Eigen::Success) return true;
        Eigen::VectorXd d = ldlt.vectorD().real();
        double dmin = d.minCoeff(), dmax = d.maxCoeff();
        return !(dmax > 0.0) || dmin <= 0.0 || dmin / dmax < 1e-12;
    };
    if (ill()) {
        double eps = 1e-9 * gram.trace().real() / static_cast<double>(X.rows());
        gram += eps * Eigen::MatrixXcd::Identity(X.rows(), X.rows());
        ldlt.compute(gram);
        if (regularized) *regularized = true;
    }
    // H_hat = Y X^H gram^{-1}; the projection residual is Y - H_hat X.
    Eigen::MatrixXcd h_hat = ldlt.solve(X * Y.adjoint()).adjoint();
    return Y - h_hat * X;
}

std::vector<std::vector<uint8_t>> iisd(const Eigen::MatrixXcd& Yres,
                                       const std::vector<DetectedPilot>& detected, int part_j,
                                       const SchemeContext& ctx, int group, double noise_level,
                                       const std::vector<std::vector<uint8_t>>& already_decoded) {
    if (detected.empty()) return {};
    const SystemConfig& cfg = ctx.cfg;
    const int np = cfg.np(), nc = cfg.nc, J = cfg.J, Bp = cfg.Bp;
    const int M = static_cast<int>(Yres.rows());
    const int K = static_cast<int>(detected.size());
    const double Pc = ctx.group_pc[group];
    const double Pp = ctx.group_pp(group);
    const auto Yp = Yres.block(0, part_j * np, M, np);
    const auto Yc = Yres.block(0, J * np, M, nc);

    // Per-part correlation channel estimates for the pilot matching step,
    // computed once: s_ft for every row t of every other part f.
    std::vector<Eigen::MatrixXcd> s_f(J);
    for (int f = 0; f < J; ++f) {
        if (f == part_j) continue;
        s_f[f].resize(M, np);
        const auto Ypf = Yres.block(0, f * np, M, np);
        for (int t = 0; t < np; ++t) s_f[f].col(t) = estimate_channel(Ypf, ctx.codebook, t, Pp);
    }

    std::vector<Eigen::VectorXcd> h(K);
    for (int i = 0; i < K; ++i) h[i] = estimate_channel(Yp, ctx.codebook, detected[i].row, Pp);

    std::vector<std::vector<uint8_t>> info(K);      // decoded [w_c, c2, c1]
    std::vector<uint8_t> crc1(K, 0);
    std::vector<std::vector<int>> pilot_rows(K, std::vector<int>(J, 0));
    for (int i = 0; i < K; ++i) pilot_rows[i][part_j] = detected[i].row;

    int prev_pass = -1;
    const int max_iters = 8;
    for (int iter = 0; iter < max_iters; ++iter) {
        // Step 1: MMSE-weighted MRC and list decoding of the polar part.
        Eigen::MatrixXcd Rh = noise_level * Eigen::MatrixXcd::Identity(M, M);
        for (int i = 0; i < K; ++i) Rh += Pc * (h[i] * h[i].adjoint());
        Eigen::LDLT<Eigen::MatrixXcd> rh_ldlt(Rh);
        for (int i = 0; i < K; ++i) {
            Eigen::VectorXcd w = rh_ldlt.solve(h[i]);
            double denom = 1.0 - Pc * h[i].dot(w).real();
            if (denom < 1e-9) denom = 1e-9;
            const double scale = 2.0 * std::sqrt(2.0 * Pc) / denom;
            Eigen::RowVectorXcd v = w.adjoint() * Yc;
            std::vector<double> llr(2 * nc);
            for (int t = 0; t < nc; ++t) {
                llr[2 * t] = scale * v(t).imag();
                llr[2 * t + 1] = scale * v(t).real();
            }
            SclResult res = scl_decode(llr, ctx.polar, ctx.crc.inner);
            info[i] = res.info;
            crc1[i] = res.crc_pass ? 1 : 0;
        }

        // Step 2: extended-pilot MMSE channel refinement over [Yp, Yc].
        std::vector<Eigen::RowVectorXcd> q(K);
        for (int i = 0; i < K; ++i) {
            Eigen::RowVectorXcd qi(np + nc);
            qi.head(np) = pilot_row_vec(ctx.codebook, detected[i].row, std::sqrt(Pp));
            qi.tail(nc) = remodulate(polar_encode(info[i], ctx.polar), Pc);
            q[i] = qi;
        }
        Eigen::MatrixXcd Rq = noise_level * Eigen::MatrixXcd::Identity(np + nc, np + nc);
        for (int i = 0; i < K; ++i) Rq += q[i].adjoint() * q[i];
        Eigen::MatrixXcd Yq(M, np + nc);
        Yq.leftCols(np) = Yp;
        Yq.rightCols(nc) = Yc;
        Eigen::LDLT<Eigen::MatrixXcd> rq_ldlt(Rq);
        for (int i = 0; i < K; ++i) h[i] = Yq * rq_ldlt.solve(q[i].adjoint());

        // Step 3: match each remaining pilot part to the row whose channel
        // estimate best aligns with h_i.
        for (int i = 0; i < K; ++i) {
            for (int f = 0; f < J; ++f) {
                if (f == part_j) continue;
                int best_t = 0;
                double best = -1.0;
                for (int t = 0; t < np; ++t) {
                    double denom = s_f[f].col(t).squaredNorm();
                    if (!(denom > 0.0)) continue;
                    double corr = std::norm(h[i].dot(s_f[f].col(t))) / denom;
                    if (corr > best) {
                        best = corr;
                        best_t = t;
                    }
                }
                pilot_rows[i][f] = best_t;
            }
        }

        // Step 4: full-signal MMSE refinement, then check the stop rule.
        const int L = cfg.L();
        std::vector<Eigen::RowVectorXcd> x(K);
        for (int i = 0; i < K; ++i) {
            Eigen::RowVectorXcd xi(L);
            for (int f = 0; f < J; ++f)
                xi.segment(f * np, np) =
                    pilot_row_vec(ctx.codebook, pilot_rows[i][f], std::sqrt(Pp));
            xi.tail(nc) = remodulate(polar_encode(info[i], ctx.polar), Pc);
            x[i] = xi;
        }
        Eigen::MatrixXcd R = noise_level * Eigen::MatrixXcd::Identity(L, L);
        for (int i = 0; i < K; ++i) R += x[i].adjoint() * x[i];
        Eigen::LDLT<Eigen::MatrixXcd> r_ldlt(R);
        for (int i = 0; i < K; ++i) h[i] = Yres * r_ldlt.solve(x[i].adjoint());

        int pass = 0;
        for (int i = 0; i < K; ++i) pass += crc1[i];
        if (pass == prev_pass) break;
        prev_pass = pass;
    }

    // Accept users whose inner and outer CRCs both check out.
    std::vector<std::vector<uint8_t>> out;
    const int Bc = cfg.Bc();
    for (int i = 0; i < K; ++i) {
        if (!crc1[i]) continue;
        std::vector<uint8_t> msg;
        msg.reserve(cfg.B);
        for (int f = 0; f < J; ++f) {
            auto bits = ctx.codebook.index_bits(pilot_rows[i][f]);
            msg.insert(msg.end(), bits.begin(), bits.end());
        }
        msg.insert(msg.end(), info[i].begin(), info[i].begin() + Bc);
        std::vector<uint8_t> c2(info[i].begin() + Bc, info[i].begin() + Bc + cfg.r2);
        bool outer_ok = crc_compute(msg, ctx.crc.outer) == c2;
        std::vector<std::vector<uint8_t>> seen = already_decoded;
        seen.insert(seen.end(), out.begin(), out.end());
        if (success_check(msg, outer_ok, detected[i].row, part_j, ctx, seen)) out.push_back(msg);
    }
    return out;
}

std::vector<std::vector<uint8_t>> decode_slot(const SlotObservation& obs,
                                              const SchemeContext& ctx, std::ostream* trace) {
    const SystemConfig& cfg = ctx.cfg;
    const int G = cfg.G, J = cfg.J, np = cfg.np(), nc = cfg.nc;
    const int M = static_cast<int>(obs.Y.rows());
    Eigen::MatrixXcd residual = obs.Y;
    std::vector<std::vector<uint8_t>> decoded;
    std::vector<TxSignal> signals;

    int consec_fail = 0;
    const int max_iters = 64 * G * J;
    for (int t = 0; t < max_iters && consec_fail < G * J; ++t) {
        const int g = G - 1 - ((t / J) % G);  // highest-power group first
        const int j = t % J;
        const double delta = ctx.group_noise_level(g);

        Eigen::MatrixXcd Yd = deinterleave_cols(residual, ctx.interleavers[g]);
        auto Yp = Yd.block(0, j * np, M, np);
        auto Yc = Yd.block(0, J * np, M, nc);
        std::vector<DetectedPilot> detected = detect_pilots(Yp, ctx.codebook, delta, cfg.gamma);

        std::vector<std::vector<uint8_t>> fresh;
        if (is_wopbe(cfg.variant)) {
            fresh = iisd(Yd, detected, j, ctx, g, delta, decoded);
        } else {
            std::vector<Eigen::VectorXcd> ests(detected.size());
            for (size_t i = 0; i < detected.size(); ++i)
                ests[i] = estimate_channel(Yp, ctx.codebook, detected[i].row, ctx.group_pp(g));
            for (size_t i = 0; i < detected.size(); ++i) {
                std::vector<Eigen::VectorXcd> others;
                for (size_t k = 0; k < ests.size(); ++k)
                    if (k != i) others.push_back(ests[k]);
                std::vector<double> llr =
                    mrc_demod_llr(ests[i], Yc, others, ctx.group_pc[g], delta);
                if (llr.empty()) continue;
                SclResult res = scl_decode(llr, ctx.polar, ctx.crc.single);
                std::vector<uint8_t> msg = message_of_info(res.info, cfg.B);
                std::vector<std::vector<uint8_t>> seen = decoded;
                seen.insert(seen.end(), fresh.begin(), fresh.end());
                if (success_check(msg, res.crc_pass, detected[i].row, j, ctx, seen))
                    fresh.push_back(msg);
            }
        }

        for (const auto& msg : fresh) {
            decoded.push_back(msg);
            signals.push_back(ctx.encode_user(msg, 0, g));
        }
        if (!fresh.empty()) {
            Eigen::MatrixXcd X(signals.size(), cfg.L());
            for (size_t k = 0; k < signals.size(); ++k)
                for (int c = 0; c < cfg.L(); ++c) X(k, c) = signals[k].samples[c];
            residual = ls_sic(obs.Y, X);
            consec_fail = 0;
        } else {
            ++consec_fail;
        }
        if (trace) {
            *trace << "iter=" << t << " group=" << g << " part=" << j
                   << " detected=" << detected.size() << " new=" << fresh.size()
                   << " total=" << decoded.size()
                   << " residual_energy=" << residual.squaredNorm() << '\n';
        }
    }
    return decoded;
}

}  // namespace ura
