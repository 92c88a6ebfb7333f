// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "blockpress/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace blockpress {

std::int64_t fee_for(std::int64_t value, double fee_rate)
{
    if (value < 0)
        throw RejectedInput("transaction value must be non-negative");
    if (fee_rate < 0.0 || fee_rate >= 1.0)
        throw RejectedInput("fee_rate must be in [0, 1)");
    // round half up
    return static_cast<std::int64_t>(std::floor(static_cast<double>(value) * fee_rate + 0.5));
}

Transaction TxFactory::make(std::int64_t value, double fee_rate, std::int32_t size_bytes,
                            std::int64_t arrival_ms)
{
    if (size_bytes <= 0)
        throw RejectedInput("size_bytes must be positive");
    Transaction tx;
    tx.txid = make_txid(seed_, counter_++);
    tx.value = value;
    tx.size_bytes = size_bytes;
    tx.fee = fee_for(value, fee_rate);
    tx.arrival_ms = arrival_ms;
    return tx;
}

std::vector<TxId> BlockTemplate::txids() const
{
    std::vector<TxId> ids;
    ids.reserve(txs.size());
    for (const auto &tx : txs)
        ids.push_back(tx.txid);
    return ids;
}

std::int64_t BlockTemplate::total_fees() const
{
    std::int64_t sum = 0;
    for (const auto &tx : txs)
        sum += tx.fee;
    return sum;
}

std::vector<std::size_t> Mempool::sorted_ids() const
{
    std::vector<std::size_t> idx(entries_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return entries_[a].txid < entries_[b].txid; });
    return idx;
}

std::vector<std::size_t> Mempool::fee_order() const
{
    std::vector<std::size_t> idx(entries_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (entries_[a].fee != entries_[b].fee)
            return entries_[a].fee > entries_[b].fee;
        return entries_[a].txid < entries_[b].txid;
    });
    return idx;
}

void Mempool::remove(std::vector<std::size_t> indices)
{
    std::sort(indices.begin(), indices.end());
    std::vector<Transaction> kept;
    kept.reserve(entries_.size() - indices.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (j < indices.size() && indices[j] == i) {
            ++j;
            continue;
        }
        kept.push_back(std::move(entries_[i]));
    }
    entries_ = std::move(kept);
}

Mempool generate_mempool(std::uint64_t capacity, double multiplier, const ValueSource &sampler,
                         std::uint64_t seed, double fee_rate)
{
    if (capacity < 1)
        throw RejectedInput("capacity must be >= 1");
    if (multiplier <= 0.0)
        throw RejectedInput("multiplier must be positive");

    const auto count = static_cast<std::uint64_t>(
        std::floor(multiplier * static_cast<double>(capacity) + 0.5));
    constexpr std::uint64_t kMaxEntries = 64ull * 1000 * 1000;
    if (count > kMaxEntries)
        throw ResourceError("requested mempool exceeds the configured memory budget");

    Mempool pool(seed);
    TxFactory factory(seed);
    Rng rng(splitmix64(seed ^ 0x6d656d706f6f6cULL));
    for (std::uint64_t i = 0; i < count; ++i)
        pool.add(factory.make(sampler.sample(rng), fee_rate));
    return pool;
}

BlockTemplate select_block(Mempool &pool, std::uint64_t capacity)
{
    BlockTemplate block;
    const std::size_t take = std::min<std::size_t>(capacity, pool.size());
    if (take == 0)
        return block;

    std::vector<std::size_t> idx(pool.size());
    std::iota(idx.begin(), idx.end(), 0);
    const auto &entries = pool.entries();
    auto better = [&](std::size_t a, std::size_t b) {
        if (entries[a].fee != entries[b].fee)
            return entries[a].fee > entries[b].fee;
        return entries[a].txid < entries[b].txid;
    };
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end(), better);
    idx.resize(take);

    block.txs.reserve(take);
    for (std::size_t i : idx)
        block.txs.push_back(entries[i]);
    pool.remove(std::move(idx));
    return block;
}

} // namespace blockpress
