#include "ura/pilots.hpp"

#include <stdexcept>

namespace ura {

PilotCodebook::PilotCodebook(int bit_count) : bit_count_(bit_count) {
    if (bit_count < 1 || bit_count > 16)
        throw std::invalid_argument("PilotCodebook: bit_count must be in [1,16]");
    n_p_ = 1 << bit_count;
    rows_.assign(n_p_, std::vector<int8_t>(n_p_));
    // entry(i,j) = (-1)^{popcount(i & j)}
    for (int i = 0; i < n_p_; ++i)
        for (int j = 0; j < n_p_; ++j)
            rows_[i][j] = (__builtin_popcount(static_cast<unsigned>(i & j)) & 1) ? -1 : 1;
}

int PilotCodebook::row_index(const std::vector<uint8_t>& bits) const {
    if (static_cast<int>(bits.size()) != bit_count_)
        throw std::invalid_argument("PilotCodebook: wrong bit length");
    int idx = 0;
    for (uint8_t b : bits) idx = (idx << 1) | (b & 1);
    return idx;
}

const std::vector<int8_t>& PilotCodebook::pilot_row(const std::vector<uint8_t>& bits) const {
    return rows_[row_index(bits)];
}

std::vector<uint8_t> PilotCodebook::index_bits(int index) const {
    std::vector<uint8_t> bits(bit_count_);
    for (int k = 0; k < bit_count_; ++k)
        bits[k] = static_cast<uint8_t>((index >> (bit_count_ - 1 - k)) & 1);
    return bits;
}

}  // namespace ura
