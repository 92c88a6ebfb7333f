// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef BLOCKPRESS_PROTOCOLS_COMPACT_HPP
#define BLOCKPRESS_PROTOCOLS_COMPACT_HPP

#include "blockpress/core.hpp"

#include <cstdint>
#include <vector>

namespace blockpress {

// Compact block body: nonce (8 B), shortids length (3 B), prefilledtxn
// length (3 B), then one 6-byte keyed short id per non-coinbase
// transaction. Only the coinbase is prefilled.
struct CompactBody {
    std::uint64_t nonce = 0;
    std::uint64_t salt = 0;
    std::vector<std::uint64_t> short_ids; // low 48 bits significant

    static constexpr std::size_t kConstantBytes = 8 + 3 + 3;
    std::size_t payload_bytes() const { return kConstantBytes + 6 * short_ids.size(); }
    // header + coinbase + constants + 6n
    std::size_t total_bytes() const
    {
        return kHeaderBytes + kCoinbaseBytes + payload_bytes();
    }
    std::vector<std::uint8_t> serialize() const;
};

CompactBody compact_encode(const BlockTemplate &block, std::uint64_t salt);

struct CompactDecodeResult {
    BlockTemplate block;               // resolved slots; missing slots left empty
    std::vector<std::size_t> missing;  // indices with no or ambiguous match
};

// Matches each short id against the pool under the sender's salt. Indices
// that match no pool entry, or more than one, are reported missing.
CompactDecodeResult compact_decode(const CompactBody &msg, const Mempool &pool);

struct ExchangeResult {
    BlockTemplate block;
    std::size_t rounds = 1;
    std::uint64_t total_bytes = 0;
};

// Full relay round trip: encode, decode against the receiver pool, then fill
// missing indices from the sender block (simulated getblocktxn, 500 B each).
ExchangeResult compact_exchange(const BlockTemplate &block, const Mempool &receiver_pool,
                                std::uint64_t salt);

} // namespace blockpress

#endif // BLOCKPRESS_PROTOCOLS_COMPACT_HPP
