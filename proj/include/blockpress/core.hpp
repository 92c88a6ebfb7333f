// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef BLOCKPRESS_CORE_HPP
#define BLOCKPRESS_CORE_HPP

#include "blockpress/hash.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace blockpress {

using Rng = std::mt19937_64;

constexpr int kHeaderBytes = 80;
constexpr int kCoinbaseBytes = 500;
constexpr int kDefaultTxBytes = 500;
constexpr double kDefaultFeeRate = 0.002;
constexpr double kDefaultMultiplier = 2.92;
constexpr std::uint64_t kMebibyte = 1048576;

struct RejectedInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InfeasibleParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Transaction {
    TxId txid{};
    std::int64_t value = 0;      // satoshi
    std::int32_t size_bytes = kDefaultTxBytes;
    std::int64_t fee = 0;        // satoshi, round(value * fee_rate)
    std::int64_t arrival_ms = 0; // milliseconds since simulation start
};

// Deterministic transaction source: txid is a keyed digest of (seed, counter).
class TxFactory {
public:
    explicit TxFactory(std::uint64_t seed) : seed_(seed) {}

    Transaction make(std::int64_t value, double fee_rate = kDefaultFeeRate,
                     std::int32_t size_bytes = kDefaultTxBytes, std::int64_t arrival_ms = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

std::int64_t fee_for(std::int64_t value, double fee_rate);

struct BlockTemplate {
    int header_bytes = kHeaderBytes;
    int coinbase_bytes = kCoinbaseBytes;
    std::vector<Transaction> txs;

    std::vector<TxId> txids() const;
    Digest32 root() const { return merkle_root(txids()); }
    std::int64_t total_fees() const;
};

// Transaction value sampler used when generating synthetic mempools.
class ValueSource {
public:
    virtual ~ValueSource() = default;
    virtual std::int64_t sample(Rng &rng) const = 0;
};

class UniformValueSource final : public ValueSource {
public:
    UniformValueSource(std::int64_t lo, std::int64_t hi) : lo_(lo), hi_(hi) {}
    std::int64_t sample(Rng &rng) const override
    {
        return std::uniform_int_distribution<std::int64_t>(lo_, hi_)(rng);
    }

private:
    std::int64_t lo_, hi_;
};

class Mempool {
public:
    Mempool() = default;
    explicit Mempool(std::uint64_t seed) : seed_(seed) {}

    void add(Transaction tx) { entries_.push_back(std::move(tx)); }
    const std::vector<Transaction> &entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    std::uint64_t seed() const { return seed_; }

    // Ascending-txid view (indices into entries()).
    std::vector<std::size_t> sorted_ids() const;
    // Descending-fee view, ties broken by ascending txid.
    std::vector<std::size_t> fee_order() const;

    // Removes the given entry indices from the pool.
    void remove(std::vector<std::size_t> indices);

private:
    std::vector<Transaction> entries_;
    std::uint64_t seed_ = 0;
};

// |entries| = round(multiplier * capacity); identical seed gives an
// identical pool. Values come from the sampler.
Mempool generate_mempool(std::uint64_t capacity, double multiplier, const ValueSource &sampler,
                         std::uint64_t seed, double fee_rate = kDefaultFeeRate);

// Takes the min(capacity, |pool|) highest-fee transactions out of the pool,
// ties broken by ascending txid.
BlockTemplate select_block(Mempool &pool, std::uint64_t capacity);

} // namespace blockpress

#endif // BLOCKPRESS_CORE_HPP
