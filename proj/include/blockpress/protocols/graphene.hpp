// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef BLOCKPRESS_PROTOCOLS_GRAPHENE_HPP
#define BLOCKPRESS_PROTOCOLS_GRAPHENE_HPP

#include "blockpress/bloom.hpp"
#include "blockpress/core.hpp"
#include "blockpress/iblt.hpp"

#include <optional>
#include <vector>

namespace blockpress {

struct GrapheneConfig {
    double tau = 24.0;           // bytes charged per recoverable IBLT item
    double beta = 239.0 / 240.0; // decode assurance
    std::uint64_t salt = 0;
};

// Minimizer of n*(-ln(a/(m-n)))/(8 ln^2 2) + a*tau over a, clamped to
// [1, m-n]. Closed form: a* = n / (8 tau ln^2 2).
double graphene_optimal_a(std::uint64_t n, std::uint64_t m, double tau);

// Transmission bytes predicted by the size formula at parameter a.
double graphene_cost(std::uint64_t n, std::uint64_t m, double a, double tau);

// IBLT recovery target: the optimal a padded with a one-sided binomial
// quantile so the realized false-positive count stays within the sizing
// with probability beta.
std::uint64_t graphene_iblt_items(std::uint64_t n, std::uint64_t m, const GrapheneConfig &cfg);

struct GrapheneBody {
    std::uint64_t n = 0; // block transaction count
    std::optional<BloomFilter> filter;
    std::optional<Iblt> iblt;
    std::uint64_t salt = 0;
    double filter_fpr = 0.0;

    // n u64 | flag u8 | [filter] | iblt
    std::size_t payload_bytes() const;
    std::size_t total_bytes() const { return kHeaderBytes + kCoinbaseBytes + payload_bytes(); }
    std::vector<std::uint8_t> serialize() const;
};

// Protocol 1 sender message. Requires m >= n; at m == n the filter is
// omitted and the IBLT is sized for a minimal difference.
GrapheneBody graphene_encode(const BlockTemplate &block, std::uint64_t receiver_pool_size,
                             const GrapheneConfig &cfg);

struct GrapheneDecodeResult {
    bool ok = false;                    // false means fall back to protocol 2
    BlockTemplate block;                // canonical (ascending txid) order
    std::vector<std::size_t> candidate; // receiver pool indices passing the filter
};

// Protocol 1 receiver side. Validates the reconstruction against the
// sender's Merkle root (computed over ascending-txid order).
GrapheneDecodeResult graphene_decode(const GrapheneBody &body, const Mempool &pool,
                                     const Digest32 &sender_root);

struct GrapheneExchange {
    BlockTemplate block;      // canonical order
    std::uint64_t total_bytes = 0;
    bool protocol2_used = false;
    bool full_fallback_used = false;
};

// Protocol 2: second-round repair after a protocol 1 failure. Exact by
// construction; a second decode failure ships the whole block.
GrapheneExchange graphene_protocol2(const BlockTemplate &block, const Mempool &pool,
                                    const GrapheneBody &body,
                                    const std::vector<std::size_t> &candidate,
                                    const GrapheneConfig &cfg);

// Full relay round trip with both protocols and the terminal full-block
// fallback; reconstruction always matches the sender's canonical root.
GrapheneExchange graphene_exchange(const BlockTemplate &block, const Mempool &receiver_pool,
                                   const GrapheneConfig &cfg);

// Receiver-side estimators for protocol 2. Returns {x_star, y_star} with
// x* <= x and y* >= y by quantile construction.
std::pair<std::uint64_t, std::uint64_t> graphene_estimators(std::uint64_t z, std::uint64_t n,
                                                            std::uint64_t m, double filter_fpr);

} // namespace blockpress

#endif // BLOCKPRESS_PROTOCOLS_GRAPHENE_HPP
