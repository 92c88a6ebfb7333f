// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "blockpress/bloom.hpp"

#include "blockpress/core.hpp"
#include "blockpress/hash.hpp"
#include "blockpress/serialize.hpp"

#include <cmath>

namespace blockpress {

namespace {
constexpr double kLn2 = 0.6931471805599453;
constexpr double kLn2Sq = kLn2 * kLn2;
} // namespace

std::uint64_t BloomFilter::bits_for(std::uint64_t n_target, double f_target)
{
    return static_cast<std::uint64_t>(
        std::ceil(-static_cast<double>(n_target) * std::log(f_target) / kLn2Sq));
}

std::uint32_t BloomFilter::hashes_for(std::uint64_t m_bits, std::uint64_t n_target)
{
    const double k = std::round(static_cast<double>(m_bits) / static_cast<double>(n_target) * kLn2);
    return k < 1.0 ? 1u : static_cast<std::uint32_t>(k);
}

BloomFilter::BloomFilter(std::uint64_t n_target, double f_target, std::uint64_t salt)
    : salt_(salt), f_target_(f_target)
{
    if (n_target < 1)
        throw InfeasibleParameter("bloom: n_target must be >= 1");
    if (!(f_target > 0.0) || !(f_target < 1.0))
        throw InfeasibleParameter("bloom: f_target must be in (0, 1)");
    m_bits_ = bits_for(n_target, f_target);
    k_ = hashes_for(m_bits_, n_target);
    bits_.assign((m_bits_ + 7) / 8, 0);
}

void BloomFilter::insert(std::uint64_t id)
{
    const std::uint64_t h = keyed64(salt_, id);
    const std::uint64_t g = keyed64(salt_ ^ 0x62663272ULL, id) | 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        const std::uint64_t bit = (h + i * g) % m_bits_;
        bits_[bit >> 3] |= static_cast<std::uint8_t>(1u << (bit & 7));
    }
}

bool BloomFilter::contains(std::uint64_t id) const
{
    const std::uint64_t h = keyed64(salt_, id);
    const std::uint64_t g = keyed64(salt_ ^ 0x62663272ULL, id) | 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        const std::uint64_t bit = (h + i * g) % m_bits_;
        if (!(bits_[bit >> 3] & (1u << (bit & 7))))
            return false;
    }
    return true;
}

std::vector<std::uint8_t> BloomFilter::serialize() const
{
    ByteWriter w;
    w.u32(static_cast<std::uint32_t>(m_bits_));
    w.u8(static_cast<std::uint8_t>(k_));
    w.u64(salt_);
    w.bytes(bits_);
    return w.take();
}

BloomFilter BloomFilter::deserialize(std::span<const std::uint8_t> data)
{
    ByteReader r(data);
    BloomFilter bf;
    bf.m_bits_ = r.u32();
    bf.k_ = r.u8();
    bf.salt_ = r.u64();
    auto body = r.bytes((bf.m_bits_ + 7) / 8);
    bf.bits_.assign(body.begin(), body.end());
    return bf;
}

} // namespace blockpress
