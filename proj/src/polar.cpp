#include "ura/polar.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ura {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_int(int n) {
    int m = 0;
    while ((1 << m) < n) ++m;
    return m;
}

// log of phi(x) = E[tanh(w/2)] proxy used in Gaussian-approximation density
// evolution (Chung et al. fit for x<10, asymptotic tail beyond).
double log_phi(double x) {
    if (x <= 0.0) return 0.0;
    if (x < 10.0) return 0.0218 - 0.4527 * std::pow(x, 0.86);
    return 0.5 * std::log(M_PI / x) - 0.25 * x + std::log1p(-10.0 / (7.0 * x));
}

// Inverse of log_phi (monotone decreasing) by bisection.
double log_phi_inv(double target) {
    if (target >= 0.0) return 0.0;
    double lo = 1e-12, hi = 1.0;
    while (log_phi(hi) > target) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (log_phi(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Mean update for the "minus" (check) branch: phi_out = 1 - (1 - phi_in)^2.
double ga_minus(double m) {
    double lphi = log_phi(m);
    double phi = std::exp(lphi);
    // log(phi * (2 - phi)) stays accurate when phi underflows to ~0.
    double lout = lphi + std::log(2.0 - phi);
    return log_phi_inv(lout);
}

double f_op(double a, double b) {
    double s = (a < 0) == (b < 0) ? 1.0 : -1.0;
    return s * std::min(std::fabs(a), std::fabs(b));
}

double g_op(double a, double b, uint8_t u) { return u ? b - a : b + a; }

}  // namespace

std::vector<int> reliability_order(int block_length, double design_snr_db) {
    if (!is_pow2(block_length)) throw std::invalid_argument("reliability_order: block_length not a power of two");
    const int m = log2_int(block_length);
    // BPSK channel LLR mean at the design point, unit-energy symbols.
    const double snr = std::pow(10.0, design_snr_db / 10.0);
    const double m0 = 4.0 * snr;
    std::vector<double> means{m0};
    for (int s = 0; s < m; ++s) {
        std::vector<double> next(means.size() * 2);
        for (size_t j = 0; j < means.size(); ++j) {
            next[2 * j] = ga_minus(means[j]);
            next[2 * j + 1] = 2.0 * means[j];
        }
        means.swap(next);
    }
    std::vector<int> order(block_length);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return means[a] > means[b]; });
    return order;
}

std::vector<int> build_frozen_set(int block_length, int info_length) {
    if (info_length > block_length || info_length < 0)
        throw std::invalid_argument("build_frozen_set: info_length out of range");
    std::vector<int> order = reliability_order(block_length);
    std::vector<int> frozen(order.begin() + info_length, order.end());
    std::sort(frozen.begin(), frozen.end());
    return frozen;
}

std::vector<int> load_reliability_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_reliability_table: cannot open " + path);
    std::vector<int> order;
    int idx;
    while (in >> idx) order.push_back(idx);
    return order;
}

void save_reliability_table(const std::string& path, const std::vector<int>& order) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_reliability_table: cannot open " + path);
    for (int idx : order) out << idx << "\n";
}

PolarCodeSpec PolarCodeSpec::make(int block_length, int info_length, int list_size) {
    PolarCodeSpec spec;
    spec.block_length = block_length;
    spec.info_length = info_length;
    spec.frozen_set = build_frozen_set(block_length, info_length);
    spec.list_size = list_size;
    return spec;
}

std::vector<uint8_t> polar_encode(const std::vector<uint8_t>& info, const PolarCodeSpec& spec) {
    const int n = spec.block_length;
    if (!is_pow2(n)) throw std::invalid_argument("polar_encode: block_length not a power of two");
    if (static_cast<int>(info.size()) != spec.info_length)
        throw std::invalid_argument("polar_encode: info length mismatch");
    if (static_cast<int>(spec.frozen_set.size()) + spec.info_length != n)
        throw std::invalid_argument("polar_encode: inconsistent frozen set");

    std::vector<uint8_t> u(n, 0);
    std::vector<uint8_t> frozen_mask(n, 0);
    for (int idx : spec.frozen_set) frozen_mask[idx] = 1;
    int k = 0;
    for (int i = 0; i < n; ++i)
        if (!frozen_mask[i]) u[i] = info[k++] & 1;

    // x = u * F^{(x)m}: butterfly over contiguous halves.
    for (int half = n / 2; half >= 1; half /= 2) {
        for (int start = 0; start < n; start += 2 * half)
            for (int i = 0; i < half; ++i)
                u[start + i] ^= u[start + half + i];
    }
    return u;
}

namespace {

// One SCL decoding path. Layer 0 holds the channel LLRs (size n); layer d
// holds size n>>d arrays. cs[d] caches the left-child codeword awaiting the
// right child at that layer.
struct Path {
    std::vector<std::vector<double>> llr;
    std::vector<std::vector<uint8_t>> cs;
    std::vector<uint8_t> u;  // all n decisions, natural order
    double metric = 0.0;
    bool active = false;
};

class SclDecoder {
public:
    SclDecoder(const std::vector<double>& channel_llr, const PolarCodeSpec& spec)
        : n_(spec.block_length), m_(log2_int(spec.block_length)), spec_(spec) {
        frozen_mask_.assign(n_, 0);
        for (int idx : spec.frozen_set) frozen_mask_[idx] = 1;
        paths_.resize(spec.list_size);
        for (auto& p : paths_) {
            p.llr.resize(m_ + 1);
            p.cs.resize(m_ + 1);
            for (int d = 0; d <= m_; ++d) {
                p.llr[d].assign(n_ >> d, 0.0);
                p.cs[d].assign(n_ >> d, 0);
            }
            p.u.assign(n_, 0);
        }
        paths_[0].llr[0] = channel_llr;
        paths_[0].active = true;
    }

    std::vector<Path> run() {
        for (int phi = 0; phi < n_; ++phi) {
            compute_leaf_llr(phi);
            if (frozen_mask_[phi])
                extend_frozen();
            else
                extend_info();
            propagate_sums(phi);
        }
        std::vector<Path> out;
        for (auto& p : paths_)
            if (p.active) out.push_back(std::move(p));
        std::sort(out.begin(), out.end(),
                  [](const Path& a, const Path& b) { return a.metric < b.metric; });
        return out;
    }

private:
    // Recompute the LLR chain down to the leaf for bit phi, on every path.
    // The f/g schedule depends only on phi, so it is shared across paths.
    void compute_leaf_llr(int phi) { calc_layer(m_, phi); }

    void calc_layer(int d, int phase) {
        if (d == 0) return;
        if ((phase & 1) == 0) calc_layer(d - 1, phase >> 1);
        const int half = n_ >> d;
        for (auto& p : paths_) {
            if (!p.active) continue;
            const auto& src = p.llr[d - 1];
            auto& dst = p.llr[d];
            if ((phase & 1) == 0) {
                for (int i = 0; i < half; ++i) dst[i] = f_op(src[i], src[i + half]);
            } else {
                const auto& left = p.cs[d];
                for (int i = 0; i < half; ++i) dst[i] = g_op(src[i], src[i + half], left[i]);
            }
        }
    }

    void extend_frozen() {
        for (auto& p : paths_) {
            if (!p.active) continue;
            double l = p.llr[m_][0];
            if (l < 0) p.metric += -l;
            leaf_bit_[&p - paths_.data()] = 0;
        }
    }

    void extend_info() {
        struct Cand {
            int path;
            uint8_t bit;
            double metric;
        };
        std::vector<Cand> cands;
        for (int l = 0; l < static_cast<int>(paths_.size()); ++l) {
            if (!paths_[l].active) continue;
            double llr = paths_[l].llr[m_][0];
            double pen = std::fabs(llr);
            uint8_t fav = llr < 0 ? 1 : 0;
            cands.push_back({l, fav, paths_[l].metric});
            cands.push_back({l, static_cast<uint8_t>(1 - fav), paths_[l].metric + pen});
        }
        const size_t keep = std::min<size_t>(spec_.list_size, cands.size());
        std::partial_sort(cands.begin(), cands.begin() + keep, cands.end(),
                          [](const Cand& a, const Cand& b) { return a.metric < b.metric; });
        cands.resize(keep);

        std::vector<int> uses(paths_.size(), 0);
        for (const auto& c : cands) ++uses[c.path];
        // Paths with no surviving candidate become clone targets.
        std::vector<int> free_slots;
        for (int l = 0; l < static_cast<int>(paths_.size()); ++l) {
            if (paths_[l].active && uses[l] == 0) {
                paths_[l].active = false;
                free_slots.push_back(l);
            } else if (!paths_[l].active) {
                free_slots.push_back(l);
            }
        }
        for (const auto& c : cands) {
            if (uses[c.path] == 1 || leaf_assigned_.count(c.path) == 0) {
                // keep in place (first use of this source path)
                leaf_bit_[c.path] = c.bit;
                paths_[c.path].metric = c.metric;
                leaf_assigned_.insert(c.path);
            } else {
                int slot = free_slots.back();
                free_slots.pop_back();
                paths_[slot] = paths_[c.path];  // deep copy
                paths_[slot].active = true;
                paths_[slot].metric = c.metric;
                leaf_bit_[slot] = c.bit;
            }
        }
        leaf_assigned_.clear();
    }

    void propagate_sums(int phi) {
        for (int l = 0; l < static_cast<int>(paths_.size()); ++l) {
            auto& p = paths_[l];
            if (!p.active) continue;
            uint8_t bit = leaf_bit_[l];
            p.u[phi] = bit;
            // push the completed single-bit codeword up the tree
            scratch_.assign(1, bit);
            int d = m_;
            int phase = phi;
            while (d > 0 && (phase & 1)) {
                const int half = n_ >> d;
                auto& left = p.cs[d];
                merged_.resize(2 * half);
                for (int i = 0; i < half; ++i) {
                    merged_[i] = left[i] ^ scratch_[i];
                    merged_[i + half] = scratch_[i];
                }
                scratch_.swap(merged_);
                --d;
                phase >>= 1;
            }
            if (d > 0) p.cs[d] = scratch_;
        }
    }

    int n_;
    int m_;
    const PolarCodeSpec& spec_;
    std::vector<uint8_t> frozen_mask_;
    std::vector<Path> paths_;
    std::vector<uint8_t> leaf_bit_ = std::vector<uint8_t>(1024, 0);
    std::set<int> leaf_assigned_;
    std::vector<uint8_t> scratch_, merged_;
};

}  // namespace

SclResult scl_decode(const std::vector<double>& llr, const PolarCodeSpec& spec,
                     const CrcSpec& crc) {
    if (static_cast<int>(llr.size()) != spec.block_length)
        throw std::invalid_argument("scl_decode: llr length mismatch");
    for (double v : llr)
        if (!std::isfinite(v)) throw std::invalid_argument("scl_decode: non-finite LLR");
    if (spec.list_size < 1) throw std::invalid_argument("scl_decode: list_size < 1");

    SclDecoder dec(llr, spec);
    std::vector<Path> finals = dec.run();

    std::vector<uint8_t> frozen_mask(spec.block_length, 0);
    for (int idx : spec.frozen_set) frozen_mask[idx] = 1;

    auto extract = [&](const Path& p) {
        std::vector<uint8_t> info;
        info.reserve(spec.info_length);
        for (int i = 0; i < spec.block_length; ++i)
            if (!frozen_mask[i]) info.push_back(p.u[i]);
        return info;
    };

    // Most likely CRC-passing path, else most likely overall.
    for (const auto& p : finals) {
        std::vector<uint8_t> info = extract(p);
        if (crc_check(info, crc)) return {std::move(info), true, p.metric};
    }
    return {extract(finals.front()), false, finals.front().metric};
}

}  // namespace ura
