// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef BLOCKPRESS_PROTOCOLS_XTHINNER_HPP
#define BLOCKPRESS_PROTOCOLS_XTHINNER_HPP

#include "blockpress/core.hpp"

#include <cstdint>
#include <vector>

namespace blockpress {

// XThinner command stream. Opcodes are packed four per byte:
//   0 pop1  - drop one byte from the prefix stack
//   1 pop2  - drop two bytes
//   2 push  - push the next byte of the raw push stream
//   3 end   - the stack now disambiguates one transaction
// A 1-byte checksum covers each run of 8 transactions (plus a final
// partial group) so a mismatched mempool is detected.
struct XthinnerBody {
    std::uint32_t n = 0;
    std::uint64_t salt = 0;
    std::vector<std::uint8_t> commands;
    std::vector<std::uint8_t> pushed;
    std::vector<std::uint8_t> checksums;

    // n u32 | salt u64 | cmd bytes u32 | push bytes u32 | commands | pushed | checksums
    std::size_t payload_bytes() const
    {
        return 4 + 8 + 4 + 4 + commands.size() + pushed.size() + checksums.size();
    }
    std::size_t total_bytes() const { return kHeaderBytes + kCoinbaseBytes + payload_bytes(); }
    std::vector<std::uint8_t> serialize() const;
};

// Encodes the block's 8-byte ids (ascending) against the sender's sorted
// mempool ids. Each transaction keeps the longest usable common prefix
// with its predecessor and pushes just enough bytes to be unambiguous
// among the mempool neighbours.
XthinnerBody xthinner_encode(const std::vector<std::uint64_t> &block_ids_sorted,
                             const std::vector<std::uint64_t> &pool_ids_sorted,
                             std::uint64_t salt);

struct XthinnerDecodeResult {
    std::vector<std::uint64_t> ids;     // resolved ids, block order; 0 where missing
    std::vector<std::size_t> missing;   // unresolved or checksum-failing positions
};

XthinnerDecodeResult xthinner_decode(const XthinnerBody &body,
                                     const std::vector<std::uint64_t> &pool_ids_sorted);

struct XthinnerExchange {
    BlockTemplate block; // canonical (ascending txid) order
    std::uint64_t total_bytes = 0;
    std::size_t repaired = 0;
};

// Round trip against a receiver mempool, repairing missing positions from
// the sender (full transactions).
XthinnerExchange xthinner_exchange(const BlockTemplate &block, const Mempool &receiver_pool,
                                   std::uint64_t salt);

} // namespace blockpress

#endif // BLOCKPRESS_PROTOCOLS_XTHINNER_HPP
