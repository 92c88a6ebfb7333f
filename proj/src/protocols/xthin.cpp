// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "blockpress/protocols/xthin.hpp"

#include "blockpress/bloom.hpp"
#include "blockpress/hash.hpp"

#include <unordered_map>

namespace blockpress {

XthinResult xthin_exchange(const BlockTemplate &block, const Mempool &receiver_pool,
                           const XthinConfig &cfg)
{
    // Receiver side: Bloom filter over the mempool's 8-byte ids.
    const std::uint64_t n_target = receiver_pool.size() == 0 ? 1 : receiver_pool.size();
    BloomFilter filter(n_target, cfg.filter_fpr, cfg.salt);
    std::unordered_map<std::uint64_t, const Transaction *> by_id;
    by_id.reserve(receiver_pool.size());
    for (const auto &tx : receiver_pool.entries()) {
        const std::uint64_t id = sketch_id(cfg.salt, tx.txid);
        filter.insert(id);
        by_id.emplace(id, &tx);
    }

    XthinResult out;
    out.block.txs.resize(block.txs.size());
    out.total_bytes = kHeaderBytes + kCoinbaseBytes;

    for (std::size_t i = 0; i < block.txs.size(); ++i) {
        const Transaction &tx = block.txs[i];
        const std::uint64_t id = sketch_id(cfg.salt, tx.txid);
        if (!filter.contains(id)) {
            // Sender knows the receiver lacks it; ship it whole.
            out.total_bytes += static_cast<std::uint64_t>(tx.size_bytes);
            out.block.txs[i] = tx;
            ++out.sent_full;
            continue;
        }
        out.total_bytes += 8; // shortened transaction id
        const auto it = by_id.find(id);
        if (it != by_id.end() && it->second->txid == tx.txid) {
            out.block.txs[i] = *it->second;
        } else {
            // Filter false positive on a transaction the receiver lacks.
            out.rounds = 2;
            out.total_bytes += static_cast<std::uint64_t>(tx.size_bytes);
            out.block.txs[i] = tx;
            ++out.repaired;
        }
    }
    return out;
}

} // namespace blockpress
