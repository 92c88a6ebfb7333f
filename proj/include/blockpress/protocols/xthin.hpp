// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef BLOCKPRESS_PROTOCOLS_XTHIN_HPP
#define BLOCKPRESS_PROTOCOLS_XTHIN_HPP

#include "blockpress/core.hpp"

#include <cstdint>

namespace blockpress {

struct XthinConfig {
    double filter_fpr = 0.001;
    std::uint64_t salt = 0;
};

struct XthinResult {
    BlockTemplate block;
    std::size_t rounds = 1;
    std::uint64_t total_bytes = 0; // thin message + any repair round
    std::size_t sent_full = 0;     // transactions shipped whole in round 1
    std::size_t repaired = 0;      // filter false positives fixed in round 2
};

// XThin exchange: the receiver advertises a Bloom filter over its mempool
// ids; the sender ships an 8-byte hash for filter matches and the full
// transaction otherwise. False positives on transactions the receiver
// actually lacks are repaired in a second round.
XthinResult xthin_exchange(const BlockTemplate &block, const Mempool &receiver_pool,
                           const XthinConfig &cfg = {});

} // namespace blockpress

#endif // BLOCKPRESS_PROTOCOLS_XTHIN_HPP
