// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef BLOCKPRESS_PROTOCOLS_IPFS_HPP
#define BLOCKPRESS_PROTOCOLS_IPFS_HPP

#include "blockpress/core.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace blockpress {

struct MissingContent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simulated content-addressed store mapping 32-byte ids to transactions.
class ContentStore {
public:
    void put(const Transaction &tx) { store_[tx.txid] = tx; }
    const Transaction *get(const TxId &id) const
    {
        const auto it = store_.find(id);
        return it == store_.end() ? nullptr : &it->second;
    }
    std::size_t size() const { return store_.size(); }

private:
    std::map<TxId, Transaction> store_;
};

// IPFS model body: one 32-byte content id per transaction.
struct IpfsBody {
    std::vector<TxId> ids;

    std::size_t payload_bytes() const { return 32 * ids.size(); }
    std::size_t total_bytes() const { return kHeaderBytes + kCoinbaseBytes + payload_bytes(); }
    std::vector<std::uint8_t> serialize() const;
};

IpfsBody ipfs_encode(const BlockTemplate &block);

// Fetches every id from the store; throws MissingContent naming the first
// unknown id when the store is incomplete.
BlockTemplate ipfs_decode(const IpfsBody &body, const ContentStore &store);

} // namespace blockpress

#endif // BLOCKPRESS_PROTOCOLS_IPFS_HPP
