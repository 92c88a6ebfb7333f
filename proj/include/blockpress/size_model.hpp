// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef BLOCKPRESS_SIZE_MODEL_HPP
#define BLOCKPRESS_SIZE_MODEL_HPP

#include "blockpress/core.hpp"

#include <cstdint>
#include <string>

namespace blockpress {

enum class Protocol { Compact, XThin, Graphene, XThinner, Ipfs, Dino };

Protocol protocol_from_name(const std::string &name); // throws RejectedInput
std::string protocol_name(Protocol p);

// Per-protocol compressed-size model. Closed forms for Compact, XThin and
// the IPFS model; the Graphene size is an analytic function of (n, m); the
// XThinner size is a trial mean over seeded mempools. All models are
// monotone in n, so capacity is found by bisection where no closed form
// exists.
struct SizeModel {
    Protocol protocol = Protocol::Compact;
    double multiplier = kDefaultMultiplier; // mempool size m = round(multiplier * n)
    double tau = 24.0;

    // Expected compressed block bytes at n transactions, header and
    // coinbase included.
    double evaluate(std::uint64_t n) const;

    // Largest n whose evaluated size fits in max_block_bytes.
    std::uint64_t block_capacity(std::uint64_t max_block_bytes) const;
};

// Capacity at the given block size with experiment defaults.
std::uint64_t block_capacity(Protocol p, std::uint64_t max_block_bytes);

// Closed-form bytes-per-transaction slopes (Table 6 column); Graphene and
// XThinner report the measured ratio at the protocol's 1 MiB capacity.
double bytes_per_tx(Protocol p);

// Sender's first-message size for a concrete block against a receiver
// mempool that contains the block. The pool is required for Graphene and
// XThinner; the others ignore it.
std::uint64_t measure_size(Protocol p, const BlockTemplate &block, const Mempool *pool,
                           std::uint64_t salt = 0);

// Analytic Graphene first-message size for n block txs against an m-entry
// pool (deterministic; every trial at fixed n and m has this exact size).
std::uint64_t graphene_message_bytes(std::uint64_t n, std::uint64_t m, double tau = 24.0);

} // namespace blockpress

#endif // BLOCKPRESS_SIZE_MODEL_HPP
