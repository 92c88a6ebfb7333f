// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef BLOCKPRESS_HASH_HPP
#define BLOCKPRESS_HASH_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

namespace blockpress {

using TxId = std::array<std::uint8_t, 32>;
using Digest32 = std::array<std::uint8_t, 32>;

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Single keyed 64-bit digest; all short ids and sketch hashes derive from it.
inline std::uint64_t keyed64(std::uint64_t key, std::uint64_t x)
{
    return splitmix64(splitmix64(x) ^ key);
}

// Deterministic 32-byte transaction id from (seed, counter).
TxId make_txid(std::uint64_t seed, std::uint64_t counter);

// 8-byte sketch id: keyed truncation of the full txid.
std::uint64_t sketch_id(std::uint64_t salt, const TxId &txid);

// 6-byte Compact short id (low 48 bits set, high 16 bits zero).
std::uint64_t short_id48(std::uint64_t salt, const TxId &txid);

// SHA-256, used for Merkle tree nodes.
Digest32 sha256(std::span<const std::uint8_t> data);

// Merkle root over an ordered txid list. Leaves are the txids themselves;
// an odd node at any level (including a single leaf) is paired with itself.
// The empty list maps to the all-zero digest.
Digest32 merkle_root(const std::vector<TxId> &txids);

} // namespace blockpress

#endif // BLOCKPRESS_HASH_HPP
