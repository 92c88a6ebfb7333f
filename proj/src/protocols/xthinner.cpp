// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "blockpress/protocols/xthinner.hpp"

#include "blockpress/hash.hpp"
#include "blockpress/serialize.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace blockpress {

namespace {

enum Op : std::uint8_t { kPop1 = 0, kPop2 = 1, kPush = 2, kEnd = 3 };

inline int lcp_bytes(std::uint64_t a, std::uint64_t b)
{
    return a == b ? 8 : std::countl_zero(a ^ b) / 8;
}

inline std::uint8_t byte_at(std::uint64_t id, int i)
{
    return static_cast<std::uint8_t>(id >> (56 - 8 * i));
}

inline std::uint8_t checksum_byte(std::uint64_t salt, std::uint64_t id)
{
    return static_cast<std::uint8_t>(keyed64(salt ^ 0x78636b73ULL, id));
}

class OpWriter {
public:
    explicit OpWriter(std::vector<std::uint8_t> &out) : out_(out) {}
    void emit(Op op)
    {
        if (shift_ == 0)
            out_.push_back(0);
        out_.back() |= static_cast<std::uint8_t>(op << shift_);
        shift_ = (shift_ + 2) % 8;
    }

private:
    std::vector<std::uint8_t> &out_;
    int shift_ = 0;
};

class OpReader {
public:
    explicit OpReader(const std::vector<std::uint8_t> &in) : in_(in) {}
    Op next()
    {
        if (pos_ >= in_.size())
            return kEnd; // truncated stream decodes as no-ops
        const Op op = static_cast<Op>((in_[pos_] >> shift_) & 3);
        shift_ += 2;
        if (shift_ == 8) {
            shift_ = 0;
            ++pos_;
        }
        return op;
    }

private:
    const std::vector<std::uint8_t> &in_;
    std::size_t pos_ = 0;
    int shift_ = 0;
};

} // namespace

std::vector<std::uint8_t> XthinnerBody::serialize() const
{
    ByteWriter w;
    w.u32(n);
    w.u64(salt);
    w.u32(static_cast<std::uint32_t>(commands.size()));
    w.u32(static_cast<std::uint32_t>(pushed.size()));
    w.bytes(commands);
    w.bytes(pushed);
    w.bytes(checksums);
    return w.take();
}

XthinnerBody xthinner_encode(const std::vector<std::uint64_t> &block_ids_sorted,
                             const std::vector<std::uint64_t> &pool_ids_sorted,
                             std::uint64_t salt)
{
    XthinnerBody body;
    body.n = static_cast<std::uint32_t>(block_ids_sorted.size());
    body.salt = salt;
    OpWriter ops(body.commands);

    int stack_len = 0;
    std::uint64_t prev = 0;
    bool have_prev = false;
    std::uint8_t group_cs = 0;
    int group_n = 0;

    for (const std::uint64_t id : block_ids_sorted) {
        // Shortest prefix that separates this id from its mempool neighbours.
        const auto pos = std::lower_bound(pool_ids_sorted.begin(), pool_ids_sorted.end(), id);
        int need = 0;
        if (pos != pool_ids_sorted.begin())
            need = std::max(need, lcp_bytes(id, *(pos - 1)));
        if (pos != pool_ids_sorted.end()) {
            auto next = (*pos == id) ? pos + 1 : pos;
            if (next != pool_ids_sorted.end())
                need = std::max(need, lcp_bytes(id, *next));
        }
        int target = std::min(need + 1, 8);

        const int keep = have_prev ? std::min(lcp_bytes(prev, id), stack_len) : 0;
        if (target <= keep)
            target = std::min(keep + 1, 8);

        int pops = stack_len - keep;
        for (; pops >= 2; pops -= 2)
            ops.emit(kPop2);
        if (pops == 1)
            ops.emit(kPop1);
        for (int j = keep; j < target; ++j) {
            ops.emit(kPush);
            body.pushed.push_back(byte_at(id, j));
        }
        ops.emit(kEnd);

        stack_len = target;
        prev = id;
        have_prev = true;

        group_cs ^= checksum_byte(salt, id);
        if (++group_n == 8) {
            body.checksums.push_back(group_cs);
            group_cs = 0;
            group_n = 0;
        }
    }
    if (group_n > 0)
        body.checksums.push_back(group_cs);
    return body;
}

XthinnerDecodeResult xthinner_decode(const XthinnerBody &body,
                                     const std::vector<std::uint64_t> &pool_ids_sorted)
{
    XthinnerDecodeResult result;
    result.ids.assign(body.n, 0);
    std::vector<bool> resolved(body.n, false);

    OpReader ops(body.commands);
    std::size_t push_pos = 0;
    std::uint64_t stack = 0; // high-order prefix bytes
    int stack_len = 0;

    for (std::uint32_t i = 0; i < body.n; ++i) {
        for (;;) {
            const Op op = ops.next();
            if (op == kEnd)
                break;
            if (op == kPop1) {
                stack_len = std::max(0, stack_len - 1);
            } else if (op == kPop2) {
                stack_len = std::max(0, stack_len - 2);
            } else {
                const std::uint8_t b = push_pos < body.pushed.size() ? body.pushed[push_pos++] : 0;
                if (stack_len < 8) {
                    ++stack_len;
                    const int shift = 64 - 8 * stack_len;
                    stack = (stack & ~(0xffULL << shift)) | (static_cast<std::uint64_t>(b) << shift);
                }
            }
        }
        // Range of pool ids sharing the current prefix.
        const std::uint64_t mask = stack_len == 0 ? 0 : (~0ULL << (64 - 8 * stack_len));
        const std::uint64_t lo_key = stack & mask;
        const std::uint64_t hi_key = lo_key | ~mask;
        const auto lo = std::lower_bound(pool_ids_sorted.begin(), pool_ids_sorted.end(), lo_key);
        const auto hi = std::upper_bound(lo, pool_ids_sorted.end(), hi_key);
        if (hi - lo == 1) {
            result.ids[i] = *lo;
            resolved[i] = true;
        }
    }

    // Verify per-group checksums; a failing group marks all its members.
    for (std::uint32_t i = 0; i < body.n; ++i) {
        const std::size_t group = i / 8;
        if (group >= body.checksums.size()) {
            resolved[i] = false;
            continue;
        }
        std::uint8_t cs = 0;
        bool whole = true;
        const std::uint32_t hi_idx = std::min<std::uint32_t>(body.n, (static_cast<std::uint32_t>(group) + 1) * 8);
        for (std::uint32_t j = static_cast<std::uint32_t>(group) * 8; j < hi_idx; ++j) {
            whole = whole && resolved[j];
            cs ^= checksum_byte(body.salt, result.ids[j]);
        }
        if (!whole || cs != body.checksums[group])
            resolved[i] = false;
    }
    for (std::uint32_t i = 0; i < body.n; ++i)
        if (!resolved[i])
            result.missing.push_back(i);
    return result;
}

XthinnerExchange xthinner_exchange(const BlockTemplate &block, const Mempool &receiver_pool,
                                   std::uint64_t salt)
{
    std::vector<std::uint64_t> block_ids;
    std::unordered_map<std::uint64_t, const Transaction *> block_by_id;
    block_ids.reserve(block.txs.size());
    for (const auto &tx : block.txs) {
        const std::uint64_t id = sketch_id(salt, tx.txid);
        block_ids.push_back(id);
        block_by_id.emplace(id, &tx);
    }
    std::sort(block_ids.begin(), block_ids.end());

    std::vector<std::uint64_t> pool_ids;
    std::unordered_map<std::uint64_t, const Transaction *> pool_by_id;
    pool_ids.reserve(receiver_pool.size());
    for (const auto &tx : receiver_pool.entries()) {
        const std::uint64_t id = sketch_id(salt, tx.txid);
        pool_ids.push_back(id);
        pool_by_id.emplace(id, &tx);
    }
    std::sort(pool_ids.begin(), pool_ids.end());

    const XthinnerBody body = xthinner_encode(block_ids, pool_ids, salt);
    const XthinnerDecodeResult decoded = xthinner_decode(body, pool_ids);

    XthinnerExchange out;
    out.total_bytes = body.total_bytes();
    out.block.txs.reserve(block_ids.size());
    std::vector<bool> is_missing(block_ids.size(), false);
    for (std::size_t idx : decoded.missing)
        is_missing[idx] = true;
    for (std::size_t i = 0; i < block_ids.size(); ++i) {
        if (!is_missing[i]) {
            const auto it = pool_by_id.find(decoded.ids[i]);
            if (it != pool_by_id.end()) {
                out.block.txs.push_back(*it->second);
                continue;
            }
        }
        // Repair round: fetch the transaction at this position from the sender.
        const auto it = block_by_id.find(block_ids[i]);
        out.block.txs.push_back(*it->second);
        out.total_bytes += 8 + static_cast<std::uint64_t>(it->second->size_bytes);
        ++out.repaired;
    }
    std::sort(out.block.txs.begin(), out.block.txs.end(),
              [](const Transaction &a, const Transaction &b) { return a.txid < b.txid; });
    return out;
}

} // namespace blockpress
