// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "blockpress/protocols/dino.hpp"

#include "blockpress/serialize.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace blockpress {

namespace {

// A shipped transaction is modeled at its declared byte size, but never
// below the 60 bytes its fields occupy on this wire.
constexpr std::int32_t kTxFieldBytes = 32 + 8 + 4 + 8 + 8;

std::size_t shipped_bytes(const Transaction &tx)
{
    return static_cast<std::size_t>(std::max(kTxFieldBytes, tx.size_bytes));
}

void write_tx(ByteWriter &w, const Transaction &tx)
{
    w.bytes(tx.txid);
    w.i64(tx.value);
    w.u32(static_cast<std::uint32_t>(tx.size_bytes));
    w.i64(tx.fee);
    w.i64(tx.arrival_ms);
    for (std::size_t i = kTxFieldBytes; i < shipped_bytes(tx); ++i)
        w.u8(0);
}

std::int64_t last_anchor(const std::vector<Transaction> &list, const std::set<TxId> &block_ids)
{
    for (std::size_t i = list.size(); i > 0; --i)
        if (block_ids.contains(list[i - 1].txid))
            return static_cast<std::int64_t>(i - 1);
    return -1;
}

std::vector<Transaction> union_pool(const std::vector<Transaction> &missing,
                                    const std::vector<Transaction> &recv_set,
                                    std::int64_t recv_anchor,
                                    const std::vector<Transaction> &send_set,
                                    std::int64_t send_anchor)
{
    std::vector<Transaction> pool;
    std::set<TxId> seen;
    auto take = [&](const Transaction &tx) {
        if (seen.insert(tx.txid).second)
            pool.push_back(tx);
    };
    for (const auto &tx : missing)
        take(tx);
    for (std::int64_t i = 0; i <= recv_anchor; ++i)
        take(recv_set[static_cast<std::size_t>(i)]);
    for (std::int64_t i = 0; i <= send_anchor; ++i)
        take(send_set[static_cast<std::size_t>(i)]);
    return pool;
}

} // namespace

std::vector<Transaction> dino_generate(std::vector<Transaction> pool)
{
    std::sort(pool.begin(), pool.end(), [](const Transaction &a, const Transaction &b) {
        if (a.fee != b.fee)
            return a.fee > b.fee;
        return a.txid < b.txid;
    });
    return pool;
}

std::size_t DinoBody::payload_bytes() const
{
    std::size_t bytes = 8 + 8 + 4 + 4 + 4 + 4 + 4; // anchors, interval, three counts
    for (const auto &tx : missing)
        bytes += shipped_bytes(tx);
    bytes += 4 * deletions.size();
    bytes += 4 * reorder.size();
    return bytes;
}

std::vector<std::uint8_t> DinoBody::serialize() const
{
    ByteWriter w;
    w.i64(recv_anchor);
    w.i64(send_anchor);
    w.u32(interval_lo);
    w.u32(interval_hi);
    w.u32(static_cast<std::uint32_t>(missing.size()));
    w.u32(static_cast<std::uint32_t>(deletions.size()));
    w.u32(static_cast<std::uint32_t>(reorder.size()));
    for (const auto &tx : missing)
        write_tx(w, tx);
    for (std::uint32_t d : deletions)
        w.u32(d);
    for (std::uint32_t r : reorder)
        w.u32(r);
    return w.take();
}

DinoBody dino_encode(const BlockTemplate &block, const std::vector<Transaction> &recv_set,
                     const std::vector<Transaction> &send_set)
{
    std::set<TxId> block_ids;
    for (const auto &tx : block.txs)
        block_ids.insert(tx.txid);

    std::set<TxId> known;
    for (const auto &tx : recv_set)
        known.insert(tx.txid);
    for (const auto &tx : send_set)
        known.insert(tx.txid);

    DinoBody body;
    for (const auto &tx : block.txs)
        if (!known.contains(tx.txid))
            body.missing.push_back(tx);

    body.recv_anchor = last_anchor(recv_set, block_ids);
    body.send_anchor = last_anchor(send_set, block_ids);

    const std::vector<Transaction> pblk = dino_generate(
        union_pool(body.missing, recv_set, body.recv_anchor, send_set, body.send_anchor));

    std::map<TxId, std::uint32_t> pos;
    for (std::uint32_t i = 0; i < pblk.size(); ++i)
        pos.emplace(pblk[i].txid, i);

    if (!block.txs.empty()) {
        std::uint32_t lo = static_cast<std::uint32_t>(pblk.size());
        std::uint32_t hi = 0;
        for (const auto &tx : block.txs) {
            const std::uint32_t p = pos.at(tx.txid);
            lo = std::min(lo, p);
            hi = std::max(hi, p + 1);
        }
        body.interval_lo = lo;
        body.interval_hi = hi;

        std::vector<std::uint32_t> kept; // interval positions surviving deletion
        for (std::uint32_t p = lo; p < hi; ++p) {
            if (block_ids.contains(pblk[p].txid))
                kept.push_back(p);
            else
                body.deletions.push_back(p - lo);
        }

        std::map<TxId, std::uint32_t> kept_pos;
        for (std::uint32_t i = 0; i < kept.size(); ++i)
            kept_pos.emplace(pblk[kept[i]].txid, i);
        bool identity = true;
        std::vector<std::uint32_t> perm;
        perm.reserve(block.txs.size());
        for (std::uint32_t i = 0; i < block.txs.size(); ++i) {
            const std::uint32_t j = kept_pos.at(block.txs[i].txid);
            identity = identity && j == i;
            perm.push_back(j);
        }
        if (!identity)
            body.reorder = std::move(perm);
    }
    return body;
}

BlockTemplate dino_decode(const DinoBody &body, const std::vector<Transaction> &recv_set,
                          const std::vector<Transaction> &send_set)
{
    const std::vector<Transaction> pblk = dino_generate(
        union_pool(body.missing, recv_set, body.recv_anchor, send_set, body.send_anchor));
    if (body.interval_hi > pblk.size() || body.interval_lo > body.interval_hi)
        throw RejectedInput("dino: interval outside the prediction block");

    std::vector<bool> drop(body.interval_hi - body.interval_lo, false);
    for (std::uint32_t d : body.deletions) {
        if (d >= drop.size())
            throw RejectedInput("dino: deletion outside the interval");
        drop[d] = true;
    }

    std::vector<Transaction> kept;
    for (std::uint32_t p = body.interval_lo; p < body.interval_hi; ++p)
        if (!drop[p - body.interval_lo])
            kept.push_back(pblk[p]);

    BlockTemplate block;
    if (body.reorder.empty()) {
        block.txs = std::move(kept);
    } else {
        if (body.reorder.size() != kept.size())
            throw RejectedInput("dino: reorder length mismatch");
        block.txs.reserve(kept.size());
        for (std::uint32_t j : body.reorder)
            block.txs.push_back(kept.at(j));
    }
    return block;
}

} // namespace blockpress
