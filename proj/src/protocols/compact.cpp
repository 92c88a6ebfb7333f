// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "blockpress/protocols/compact.hpp"

#include "blockpress/serialize.hpp"

#include <unordered_map>

namespace blockpress {

std::vector<std::uint8_t> CompactBody::serialize() const
{
    ByteWriter w;
    w.u64(nonce);
    w.u24(static_cast<std::uint32_t>(short_ids.size()));
    w.u24(1); // prefilledtxn length: coinbase only
    for (std::uint64_t id : short_ids)
        w.u48(id);
    return w.take();
}

CompactBody compact_encode(const BlockTemplate &block, std::uint64_t salt)
{
    CompactBody body;
    body.salt = salt;
    body.nonce = keyed64(salt, 0xcb);
    body.short_ids.reserve(block.txs.size());
    for (const auto &tx : block.txs)
        body.short_ids.push_back(short_id48(salt, tx.txid));
    return body;
}

CompactDecodeResult compact_decode(const CompactBody &msg, const Mempool &pool)
{
    std::unordered_map<std::uint64_t, std::size_t> counts;
    std::unordered_map<std::uint64_t, std::size_t> where;
    counts.reserve(pool.size());
    const auto &entries = pool.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::uint64_t sid = short_id48(msg.salt, entries[i].txid);
        counts[sid]++;
        where[sid] = i;
    }

    CompactDecodeResult result;
    result.block.txs.resize(msg.short_ids.size());
    for (std::size_t i = 0; i < msg.short_ids.size(); ++i) {
        const auto it = counts.find(msg.short_ids[i]);
        if (it == counts.end() || it->second != 1) {
            result.missing.push_back(i);
            continue;
        }
        result.block.txs[i] = entries[where[msg.short_ids[i]]];
    }
    return result;
}

ExchangeResult compact_exchange(const BlockTemplate &block, const Mempool &receiver_pool,
                                std::uint64_t salt)
{
    const CompactBody body = compact_encode(block, salt);
    CompactDecodeResult decoded = compact_decode(body, receiver_pool);

    ExchangeResult out;
    out.total_bytes = body.total_bytes();
    if (!decoded.missing.empty()) {
        out.rounds = 2;
        for (std::size_t idx : decoded.missing) {
            decoded.block.txs[idx] = block.txs[idx];
            out.total_bytes += static_cast<std::uint64_t>(block.txs[idx].size_bytes);
        }
    }
    out.block = std::move(decoded.block);
    return out;
}

} // namespace blockpress
