// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "blockpress/protocols/ipfs.hpp"

#include "blockpress/serialize.hpp"

#include <string>

namespace blockpress {

std::vector<std::uint8_t> IpfsBody::serialize() const
{
    ByteWriter w;
    for (const TxId &id : ids)
        w.bytes(id);
    return w.take();
}

IpfsBody ipfs_encode(const BlockTemplate &block)
{
    IpfsBody body;
    body.ids.reserve(block.txs.size());
    for (const auto &tx : block.txs)
        body.ids.push_back(tx.txid);
    return body;
}

BlockTemplate ipfs_decode(const IpfsBody &body, const ContentStore &store)
{
    BlockTemplate block;
    block.txs.reserve(body.ids.size());
    for (std::size_t i = 0; i < body.ids.size(); ++i) {
        const Transaction *tx = store.get(body.ids[i]);
        if (tx == nullptr)
            throw MissingContent("ipfs: no content for id at index " + std::to_string(i));
        block.txs.push_back(*tx);
    }
    return block;
}

} // namespace blockpress
