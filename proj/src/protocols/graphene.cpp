// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "blockpress/protocols/graphene.hpp"

#include "blockpress/hash.hpp"
#include "blockpress/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace blockpress {

namespace {
constexpr double kLn2 = 0.6931471805599453;
constexpr double kEightLn2Sq = 8.0 * kLn2 * kLn2;
} // namespace

double graphene_optimal_a(std::uint64_t n, std::uint64_t m, double tau)
{
    if (m <= n || n < 1)
        throw InfeasibleParameter("graphene: requires m > n >= 1");
    if (tau <= 0.0)
        throw InfeasibleParameter("graphene: tau must be positive");
    const double a = static_cast<double>(n) / (tau * kEightLn2Sq);
    return std::clamp(a, 1.0, static_cast<double>(m - n));
}

double graphene_cost(std::uint64_t n, std::uint64_t m, double a, double tau)
{
    const double f = a / static_cast<double>(m - n);
    return static_cast<double>(n) * (-std::log(f)) / kEightLn2Sq + a * tau;
}

std::uint64_t graphene_iblt_items(std::uint64_t n, std::uint64_t m, const GrapheneConfig &cfg)
{
    if (m == n)
        return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(
                                              std::ceil(0.01 * static_cast<double>(n))));
    const double a = graphene_optimal_a(n, m, cfg.tau);
    // one-sided normal quantile; 2.9 sigma leaves the bulk of the 1 - beta
    // failure budget to the IBLT decode itself
    return static_cast<std::uint64_t>(std::ceil(a + 2.9 * std::sqrt(a) + 1.0));
}

std::size_t GrapheneBody::payload_bytes() const
{
    std::size_t bytes = 8 + 1;
    if (filter)
        bytes += filter->serialized_bytes();
    if (iblt)
        bytes += iblt->serialized_bytes();
    return bytes;
}

std::vector<std::uint8_t> GrapheneBody::serialize() const
{
    ByteWriter w;
    w.u64(n);
    w.u8(filter ? 1 : 0);
    if (filter)
        w.bytes(filter->serialize());
    if (iblt)
        w.bytes(iblt->serialize());
    return w.take();
}

GrapheneBody graphene_encode(const BlockTemplate &block, std::uint64_t receiver_pool_size,
                             const GrapheneConfig &cfg)
{
    const std::uint64_t n = block.txs.size();
    const std::uint64_t m = receiver_pool_size;
    if (m < n)
        throw InfeasibleParameter("graphene: protocol 1 requires m >= n");
    if (n == 0)
        throw InfeasibleParameter("graphene: empty block");

    GrapheneBody body;
    body.n = n;
    body.salt = cfg.salt;

    if (m > n) {
        const double a = graphene_optimal_a(n, m, cfg.tau);
        body.filter_fpr = a / static_cast<double>(m - n);
        body.filter.emplace(n, body.filter_fpr, cfg.salt);
    }
    body.iblt.emplace(Iblt::cells_for_assured(graphene_iblt_items(n, m, cfg)), cfg.salt);

    for (const auto &tx : block.txs) {
        const std::uint64_t id = sketch_id(cfg.salt, tx.txid);
        if (body.filter)
            body.filter->insert(id);
        body.iblt->insert(id);
    }
    return body;
}

GrapheneDecodeResult graphene_decode(const GrapheneBody &body, const Mempool &pool,
                                     const Digest32 &sender_root)
{
    GrapheneDecodeResult result;

    Iblt mine(body.iblt->cell_count(), body.iblt->salt());
    const auto &entries = pool.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::uint64_t id = sketch_id(body.salt, entries[i].txid);
        if (body.filter && !body.filter->contains(id))
            continue;
        result.candidate.push_back(i);
        mine.insert(id);
    }

    const auto diff = body.iblt->subtract(mine).decode();
    if (!diff.ok)
        return result;
    if (!diff.left_only.empty())
        return result; // block transactions missing from the pool

    std::unordered_set<std::uint64_t> drop(diff.right_only.begin(), diff.right_only.end());
    BlockTemplate block;
    block.txs.reserve(result.candidate.size() - drop.size());
    for (std::size_t i : result.candidate) {
        if (!drop.contains(sketch_id(body.salt, entries[i].txid)))
            block.txs.push_back(entries[i]);
    }
    std::sort(block.txs.begin(), block.txs.end(),
              [](const Transaction &a, const Transaction &b) { return a.txid < b.txid; });

    if (block.txs.size() != body.n || block.root() != sender_root)
        return result;

    result.ok = true;
    result.block = std::move(block);
    return result;
}

std::pair<std::uint64_t, std::uint64_t> graphene_estimators(std::uint64_t z, std::uint64_t n,
                                                            std::uint64_t m, double filter_fpr)
{
    const double mean_fp = filter_fpr * static_cast<double>(m > n ? m - n : 0);
    auto y_star = static_cast<std::uint64_t>(std::ceil(mean_fp + 3.0 * std::sqrt(mean_fp) + 1.0));
    y_star = std::min<std::uint64_t>(y_star, z);
    const std::uint64_t x_star = z - y_star;
    return {x_star, y_star};
}

namespace {

GrapheneExchange full_fallback(const BlockTemplate &block, GrapheneExchange out)
{
    out.full_fallback_used = true;
    out.block.txs = block.txs;
    std::sort(out.block.txs.begin(), out.block.txs.end(),
              [](const Transaction &a, const Transaction &b) { return a.txid < b.txid; });
    for (const auto &tx : block.txs)
        out.total_bytes += static_cast<std::uint64_t>(tx.size_bytes);
    return out;
}

} // namespace

GrapheneExchange graphene_protocol2(const BlockTemplate &block, const Mempool &pool,
                                    const GrapheneBody &body,
                                    const std::vector<std::size_t> &candidate,
                                    const GrapheneConfig &cfg)
{
    GrapheneExchange out;
    out.protocol2_used = true;

    const std::uint64_t n = block.txs.size();
    const std::uint64_t m = pool.size();
    const std::uint64_t z = candidate.size();
    const auto &entries = pool.entries();
    const std::uint64_t salt2 = splitmix64(cfg.salt ^ 0x703200ULL);

    const auto [x_star, y_star] = graphene_estimators(z, n, m, body.filter_fpr);
    const std::uint64_t denom = n > x_star ? n - x_star : 1;
    const std::uint64_t b = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(
                                                           std::ceil(0.01 * static_cast<double>(denom))));
    const double f2 = std::clamp(static_cast<double>(b) / static_cast<double>(denom), 1e-9, 0.999);

    // Receiver -> sender: BF' over the candidate ids, plus y* and b.
    BloomFilter bf2(std::max<std::uint64_t>(1, z), f2, salt2);
    std::unordered_map<std::uint64_t, std::size_t> union_ids; // id -> pool index or npos
    for (std::size_t i : candidate) {
        const std::uint64_t id = sketch_id(body.salt, entries[i].txid);
        bf2.insert(id);
        union_ids.emplace(id, i);
    }
    out.total_bytes += bf2.serialized_bytes() + 16;

    // Sender -> receiver: transactions not matched by BF', plus IBLT L.
    std::vector<const Transaction *> shipped;
    Iblt sender_iblt(Iblt::cells_for_assured(b + y_star), salt2);
    std::unordered_map<std::uint64_t, const Transaction *> block_by_id;
    for (const auto &tx : block.txs) {
        const std::uint64_t id = sketch_id(body.salt, tx.txid);
        sender_iblt.insert(id);
        block_by_id.emplace(id, &tx);
        if (z == 0 || !bf2.contains(id))
            shipped.push_back(&tx);
    }
    out.total_bytes += sender_iblt.serialized_bytes() + 4;
    for (const Transaction *tx : shipped)
        out.total_bytes += static_cast<std::uint64_t>(tx->size_bytes);

    // Receiver: L' over candidate plus newly shipped ids, then peel.
    Iblt mine(sender_iblt.cell_count(), salt2);
    std::unordered_map<std::uint64_t, const Transaction *> have;
    for (const auto &[id, idx] : union_ids)
        have.emplace(id, &entries[idx]);
    for (const Transaction *tx : shipped)
        have.emplace(sketch_id(body.salt, tx->txid), tx);
    for (const auto &[id, tx] : have)
        mine.insert(id);

    const auto diff = sender_iblt.subtract(mine).decode();
    if (!diff.ok)
        return full_fallback(block, std::move(out));

    // Ids in the block but not held yet are the BF' false positives; fetch
    // their contents directly (8-byte request plus the transaction).
    BlockTemplate rebuilt;
    for (const std::uint64_t id : diff.left_only) {
        const auto it = block_by_id.find(id);
        if (it == block_by_id.end())
            return full_fallback(block, std::move(out));
        out.total_bytes += 8 + static_cast<std::uint64_t>(it->second->size_bytes);
        have.emplace(id, it->second);
    }
    std::unordered_set<std::uint64_t> drop(diff.right_only.begin(), diff.right_only.end());
    rebuilt.txs.reserve(have.size());
    for (const auto &[id, tx] : have)
        if (!drop.contains(id))
            rebuilt.txs.push_back(*tx);
    std::sort(rebuilt.txs.begin(), rebuilt.txs.end(),
              [](const Transaction &a, const Transaction &b) { return a.txid < b.txid; });

    BlockTemplate canonical;
    canonical.txs = block.txs;
    std::sort(canonical.txs.begin(), canonical.txs.end(),
              [](const Transaction &a, const Transaction &b) { return a.txid < b.txid; });
    if (rebuilt.txs.size() != n || rebuilt.root() != canonical.root())
        return full_fallback(block, std::move(out));

    out.block = std::move(rebuilt);
    return out;
}

GrapheneExchange graphene_exchange(const BlockTemplate &block, const Mempool &receiver_pool,
                                   const GrapheneConfig &cfg)
{
    const GrapheneBody body = graphene_encode(block, receiver_pool.size(), cfg);

    BlockTemplate canonical;
    canonical.txs = block.txs;
    std::sort(canonical.txs.begin(), canonical.txs.end(),
              [](const Transaction &a, const Transaction &b) { return a.txid < b.txid; });
    const Digest32 root = canonical.root();

    GrapheneDecodeResult first = graphene_decode(body, receiver_pool, root);
    if (first.ok) {
        GrapheneExchange out;
        out.total_bytes = body.total_bytes();
        out.block = std::move(first.block);
        return out;
    }

    GrapheneExchange out =
        graphene_protocol2(block, receiver_pool, body, first.candidate, cfg);
    out.total_bytes += body.total_bytes();
    return out;
}

} // namespace blockpress
