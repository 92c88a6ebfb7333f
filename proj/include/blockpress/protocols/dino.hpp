// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef BLOCKPRESS_PROTOCOLS_DINO_HPP
#define BLOCKPRESS_PROTOCOLS_DINO_HPP

#include "blockpress/core.hpp"

#include <cstdint>
#include <vector>

namespace blockpress {

// Dino body. Both peers hold identical received/sent transaction lists
// (synchronized out of band), so the sender ships only the transactions
// unknown to both lists plus the rules that turn the shared prediction
// block into the real one.
struct DinoBody {
    std::vector<Transaction> missing; // block txs absent from both lists
    std::int64_t recv_anchor = -1;    // last recv index still in the block
    std::int64_t send_anchor = -1;
    std::uint32_t interval_lo = 0; // block span inside the prediction block
    std::uint32_t interval_hi = 0; // exclusive
    std::vector<std::uint32_t> deletions; // offsets from interval_lo to drop
    std::vector<std::uint32_t> reorder;   // permutation; empty means identity

    std::size_t payload_bytes() const;
    std::size_t total_bytes() const { return kHeaderBytes + kCoinbaseBytes + payload_bytes(); }
    std::vector<std::uint8_t> serialize() const;
};

// Prediction block generator F: block selection with unbounded capacity
// over the union pool (fee priority, ties by ascending txid).
std::vector<Transaction> dino_generate(std::vector<Transaction> pool);

DinoBody dino_encode(const BlockTemplate &block, const std::vector<Transaction> &recv_set,
                     const std::vector<Transaction> &send_set);

// Rebuilds the prediction block from the shared lists and the shipped
// missing transactions, then applies the interval, deletion, and
// reordering rules. Exact reconstruction in block order.
BlockTemplate dino_decode(const DinoBody &body, const std::vector<Transaction> &recv_set,
                          const std::vector<Transaction> &send_set);

} // namespace blockpress

#endif // BLOCKPRESS_PROTOCOLS_DINO_HPP
