// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef BLOCKPRESS_BLOOM_HPP
#define BLOCKPRESS_BLOOM_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace blockpress {

// Plain Bloom filter over 8-byte ids. Sized with the optimal-parameter
// formulas: m = ceil(-n ln f / ln^2 2), k = max(1, round((m/n) ln 2)).
class BloomFilter {
public:
    BloomFilter(std::uint64_t n_target, double f_target, std::uint64_t salt);

    void insert(std::uint64_t id);
    bool contains(std::uint64_t id) const;

    std::uint64_t bit_count() const { return m_bits_; }
    std::uint32_t hash_count() const { return k_; }
    std::uint64_t salt() const { return salt_; }
    double f_target() const { return f_target_; }

    // Wire layout: m_bits u32 | k u8 | salt u64 | bit array (LSB-first bytes).
    std::vector<std::uint8_t> serialize() const;
    static BloomFilter deserialize(std::span<const std::uint8_t> data);
    std::size_t serialized_bytes() const { return kHeaderBytes + bits_.size(); }

    static std::uint64_t bits_for(std::uint64_t n_target, double f_target);
    static std::uint32_t hashes_for(std::uint64_t m_bits, std::uint64_t n_target);

    static constexpr std::size_t kHeaderBytes = 4 + 1 + 8;

private:
    BloomFilter() = default;

    std::uint64_t m_bits_ = 0;
    std::uint32_t k_ = 1;
    std::uint64_t salt_ = 0;
    double f_target_ = 0.0;
    std::vector<std::uint8_t> bits_;
};

} // namespace blockpress

#endif // BLOCKPRESS_BLOOM_HPP
