// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "blockpress/size_model.hpp"

#include "blockpress/bloom.hpp"
#include "blockpress/hash.hpp"
#include "blockpress/iblt.hpp"
#include "blockpress/protocols/compact.hpp"
#include "blockpress/protocols/dino.hpp"
#include "blockpress/protocols/graphene.hpp"
#include "blockpress/protocols/ipfs.hpp"
#include "blockpress/protocols/xthin.hpp"
#include "blockpress/protocols/xthinner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iterator>
#include <random>

namespace blockpress {

namespace {

// Fixed overhead and closed-form slope per transaction. The IPFS model
// counts only the 80-byte header against the block limit because every
// transaction, the coinbase included, is reduced to a 32-byte id.
constexpr std::uint64_t kCompactOverhead = kHeaderBytes + kCoinbaseBytes + CompactBody::kConstantBytes;
constexpr std::uint64_t kXthinOverhead = kHeaderBytes + kCoinbaseBytes;
constexpr std::uint64_t kIpfsOverhead = kHeaderBytes;

// Mean XThinner message size over a few seeded synthetic pools. Block ids
// are a uniform subset of the pool ids, which matches fee-priority
// selection because ids and fees are independent.
double xthinner_trial_mean(std::uint64_t n, double multiplier, int trials = 3)
{
    const auto m = static_cast<std::uint64_t>(
        std::floor(multiplier * static_cast<double>(n) + 0.5));
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        Rng rng(splitmix64(0x7874686eULL ^ n ^ (static_cast<std::uint64_t>(t) << 40)));
        std::vector<std::uint64_t> pool(m);
        for (auto &id : pool)
            id = rng();
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

        std::vector<std::uint64_t> block;
        block.reserve(n);
        std::sample(pool.begin(), pool.end(), std::back_inserter(block),
                    std::min<std::uint64_t>(n, pool.size()), rng);
        sum += static_cast<double>(xthinner_encode(block, pool, 0).total_bytes());
    }
    return sum / trials;
}

} // namespace

Protocol protocol_from_name(const std::string &name)
{
    std::string s;
    for (char c : name)
        s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "compact")
        return Protocol::Compact;
    if (s == "xthin")
        return Protocol::XThin;
    if (s == "graphene")
        return Protocol::Graphene;
    if (s == "xthinner")
        return Protocol::XThinner;
    if (s == "ipfs")
        return Protocol::Ipfs;
    if (s == "dino")
        return Protocol::Dino;
    throw RejectedInput("unknown protocol '" + name +
                        "' (valid: compact, xthin, graphene, xthinner, ipfs, dino)");
}

std::string protocol_name(Protocol p)
{
    switch (p) {
    case Protocol::Compact:
        return "compact";
    case Protocol::XThin:
        return "xthin";
    case Protocol::Graphene:
        return "graphene";
    case Protocol::XThinner:
        return "xthinner";
    case Protocol::Ipfs:
        return "ipfs";
    case Protocol::Dino:
        return "dino";
    }
    return "?";
}

std::uint64_t graphene_message_bytes(std::uint64_t n, std::uint64_t m, double tau)
{
    GrapheneConfig cfg;
    cfg.tau = tau;
    std::size_t bytes = kHeaderBytes + kCoinbaseBytes + 8 + 1;
    if (m > n) {
        const double a = graphene_optimal_a(n, m, tau);
        const double f = a / static_cast<double>(m - n);
        bytes += BloomFilter::kHeaderBytes + (BloomFilter::bits_for(n, f) + 7) / 8;
    }
    bytes += Iblt::kHeaderBytes +
             Iblt::kCellBytes * Iblt::cells_for_assured(graphene_iblt_items(n, m, cfg));
    return bytes;
}

double SizeModel::evaluate(std::uint64_t n) const
{
    switch (protocol) {
    case Protocol::Compact:
        return static_cast<double>(kCompactOverhead + 6 * n);
    case Protocol::XThin:
        return static_cast<double>(kXthinOverhead + 8 * n);
    case Protocol::Ipfs:
        return static_cast<double>(kIpfsOverhead + 32 * n);
    case Protocol::Graphene: {
        const auto m = static_cast<std::uint64_t>(
            std::floor(multiplier * static_cast<double>(n) + 0.5));
        return static_cast<double>(graphene_message_bytes(n, std::max(m, n), tau));
    }
    case Protocol::XThinner:
        return xthinner_trial_mean(n, multiplier);
    case Protocol::Dino:
        // constant-size model: anchors, interval and counts only
        return static_cast<double>(kHeaderBytes + kCoinbaseBytes + 36);
    }
    return 0.0;
}

std::uint64_t SizeModel::block_capacity(std::uint64_t max_block_bytes) const
{
    switch (protocol) {
    case Protocol::Compact:
        if (max_block_bytes <= kCompactOverhead)
            throw InfeasibleParameter("block size does not cover the Compact overhead");
        return (max_block_bytes - kCompactOverhead) / 6;
    case Protocol::XThin:
        if (max_block_bytes <= kXthinOverhead)
            throw InfeasibleParameter("block size does not cover the XThin overhead");
        return (max_block_bytes - kXthinOverhead) / 8;
    case Protocol::Ipfs:
        if (max_block_bytes <= kIpfsOverhead)
            throw InfeasibleParameter("block size does not cover the IPFS overhead");
        return (max_block_bytes - kIpfsOverhead) / 32;
    case Protocol::Dino:
        throw InfeasibleParameter("dino: constant-size model defines no capacity");
    default:
        break;
    }
    // Monotone bisection for the empirical models.
    if (evaluate(1) > static_cast<double>(max_block_bytes))
        throw InfeasibleParameter("block size does not cover the protocol overhead");
    std::uint64_t lo = 1, hi = max_block_bytes; // BPT >= 1 bounds n by the byte budget
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (evaluate(mid) <= static_cast<double>(max_block_bytes))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

std::uint64_t block_capacity(Protocol p, std::uint64_t max_block_bytes)
{
    SizeModel model;
    model.protocol = p;
    return model.block_capacity(max_block_bytes);
}

double bytes_per_tx(Protocol p)
{
    switch (p) {
    case Protocol::Compact:
        return 6.0;
    case Protocol::XThin:
        return 8.0;
    case Protocol::Ipfs:
        return 32.0;
    case Protocol::Dino:
        return std::nan("");
    default:
        break;
    }
    SizeModel model;
    model.protocol = p;
    const std::uint64_t cap = model.block_capacity(kMebibyte);
    return model.evaluate(cap) / static_cast<double>(cap);
}

std::uint64_t measure_size(Protocol p, const BlockTemplate &block, const Mempool *pool,
                           std::uint64_t salt)
{
    const std::uint64_t n = block.txs.size();
    switch (p) {
    case Protocol::Compact:
        return compact_encode(block, salt).total_bytes();
    case Protocol::XThin:
        if (pool)
            return xthin_exchange(block, *pool, {0.001, salt}).total_bytes;
        return kXthinOverhead + 8 * n;
    case Protocol::Ipfs:
        return ipfs_encode(block).total_bytes();
    case Protocol::Graphene: {
        const std::uint64_t m = pool ? pool->size()
                                     : static_cast<std::uint64_t>(std::floor(
                                           kDefaultMultiplier * static_cast<double>(n) + 0.5));
        GrapheneConfig cfg;
        cfg.salt = salt;
        return graphene_encode(block, std::max(m, n), cfg).total_bytes();
    }
    case Protocol::XThinner: {
        if (!pool)
            throw RejectedInput("xthinner: measure_size needs the receiver pool");
        std::vector<std::uint64_t> pool_ids;
        pool_ids.reserve(pool->size());
        for (const auto &tx : pool->entries())
            pool_ids.push_back(sketch_id(salt, tx.txid));
        std::sort(pool_ids.begin(), pool_ids.end());
        std::vector<std::uint64_t> block_ids;
        block_ids.reserve(n);
        for (const auto &tx : block.txs)
            block_ids.push_back(sketch_id(salt, tx.txid));
        std::sort(block_ids.begin(), block_ids.end());
        return xthinner_encode(block_ids, pool_ids, salt).total_bytes();
    }
    case Protocol::Dino:
        // both peers hold the block's txs in their synchronized lists
        return dino_encode(block, block.txs, {}).total_bytes();
    }
    return 0;
}

} // namespace blockpress
