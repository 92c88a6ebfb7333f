// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef BLOCKPRESS_IBLT_HPP
#define BLOCKPRESS_IBLT_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace blockpress {

// Invertible Bloom lookup table over 8-byte ids. Each of the k=3 hash
// functions maps an item into its own third of the cell array, so the k
// cells of an item are always distinct. Cells are 16 bytes on the wire:
// count i32 | id_sum u64 | check_sum u32.
class Iblt {
public:
    static constexpr std::uint32_t kHashes = 3;
    static constexpr std::size_t kCellBytes = 16;
    static constexpr std::size_t kHeaderBytes = 4 + 8;
    static constexpr double kDefaultOverhead = 1.5;

    Iblt(std::uint32_t cell_count, std::uint64_t salt);

    // ceil(overhead * expected_diff) rounded up to a multiple of kHashes.
    static std::uint32_t cells_for(std::uint64_t expected_diff,
                                   double overhead = kDefaultOverhead);
    // Cell count sized so that decoding a symmetric difference of up to
    // `diff` items succeeds with probability >= 239/240. Uses a calibrated
    // per-size overhead that tapers to the default 1.5 for large diffs.
    static std::uint32_t cells_for_assured(std::uint64_t diff);

    void insert(std::uint64_t id) { bump(id, +1); }
    void erase(std::uint64_t id) { bump(id, -1); }

    Iblt subtract(const Iblt &other) const;

    struct DecodeResult {
        bool ok = false;
        std::vector<std::uint64_t> left_only;  // positive-count peels
        std::vector<std::uint64_t> right_only; // negative-count peels
    };
    DecodeResult decode() const;

    bool all_zero() const;
    std::uint32_t cell_count() const { return static_cast<std::uint32_t>(cells_.size()); }
    std::uint64_t salt() const { return salt_; }

    // Wire layout: cell_count u32 | salt u64 | cells (16 bytes each, LE).
    std::vector<std::uint8_t> serialize() const;
    static Iblt deserialize(std::span<const std::uint8_t> data);
    std::size_t serialized_bytes() const { return kHeaderBytes + cells_.size() * kCellBytes; }

private:
    struct Cell {
        std::int32_t count = 0;
        std::uint64_t id_sum = 0;
        std::uint32_t check_sum = 0;
    };

    void bump(std::uint64_t id, int dir);
    std::uint32_t check_digest(std::uint64_t id) const;

    std::vector<Cell> cells_;
    std::uint64_t salt_ = 0;
};

} // namespace blockpress

#endif // BLOCKPRESS_IBLT_HPP
