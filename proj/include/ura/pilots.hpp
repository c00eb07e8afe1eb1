#ifndef URA_PILOTS_HPP
#define URA_PILOTS_HPP

#include <cstdint>
#include <vector>

namespace ura {

// Sylvester-Hadamard pilot codebook. Rows are the n_p orthogonal +/-1 pilot
// sequences; a B_p-bit message segment selects a row. Entries are kept as
// integers so orthogonality checks are exact; power scaling happens in the
// transmit chain.
class PilotCodebook {
public:
    // Builds the order-2^bit_count Sylvester matrix. bit_count in [1,16].
    explicit PilotCodebook(int bit_count);

    int bit_count() const { return bit_count_; }
    int dimension() const { return n_p_; }

    // Row with the given index, entries in {+1,-1}.
    const std::vector<int8_t>& row(int index) const { return rows_[index]; }

    // Maps a B_p-bit segment to its pilot row. Big-endian: first bit is the
    // most significant. Throws if bits.size() != bit_count().
    const std::vector<int8_t>& pilot_row(const std::vector<uint8_t>& bits) const;

    // Big-endian integer value of a B_p-bit segment (the row index).
    int row_index(const std::vector<uint8_t>& bits) const;

    // Inverse of row_index: the B_p bits selecting a given row.
    std::vector<uint8_t> index_bits(int index) const;

private:
    int bit_count_;
    int n_p_;
    std::vector<std::vector<int8_t>> rows_;
};

}  // namespace ura

#endif
