// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "blockpress/hash.hpp"

namespace blockpress {

TxId make_txid(std::uint64_t seed, std::uint64_t counter)
{
    TxId id;
    const std::uint64_t base = splitmix64(seed ^ splitmix64(counter));
    for (int lane = 0; lane < 4; ++lane) {
        const std::uint64_t w = splitmix64(base + static_cast<std::uint64_t>(lane) * 0x9e3779b97f4a7c15ULL);
        for (int b = 0; b < 8; ++b)
            id[static_cast<std::size_t>(lane * 8 + b)] = static_cast<std::uint8_t>(w >> (8 * b));
    }
    return id;
}

namespace {

std::uint64_t fold_txid(std::uint64_t salt, const TxId &txid)
{
    std::uint64_t h = salt;
    for (int i = 0; i < 4; ++i) {
        std::uint64_t w;
        std::memcpy(&w, txid.data() + i * 8, 8);
        h = splitmix64(h ^ w);
    }
    return h;
}

} // namespace

std::uint64_t sketch_id(std::uint64_t salt, const TxId &txid)
{
    return fold_txid(salt ^ 0x736b65746368ULL, txid);
}

std::uint64_t short_id48(std::uint64_t salt, const TxId &txid)
{
    return fold_txid(salt ^ 0x636d706374ULL, txid) & 0xffffffffffffULL;
}

// --- SHA-256 ------------------------------------------------------------

namespace {

constexpr std::uint32_t kSha256K[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
    0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
    0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
    0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
    0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

inline std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

void sha256_block(std::uint32_t state[8], const std::uint8_t block[64])
{
    std::uint32_t w[64];
    for (int i = 0; i < 16; ++i)
        w[i] = (std::uint32_t(block[i * 4]) << 24) | (std::uint32_t(block[i * 4 + 1]) << 16) |
               (std::uint32_t(block[i * 4 + 2]) << 8) | std::uint32_t(block[i * 4 + 3]);
    for (int i = 16; i < 64; ++i) {
        const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
        const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
        w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    std::uint32_t a = state[0], b = state[1], c = state[2], d = state[3];
    std::uint32_t e = state[4], f = state[5], g = state[6], h = state[7];
    for (int i = 0; i < 64; ++i) {
        const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
        const std::uint32_t ch = (e & f) ^ (~e & g);
        const std::uint32_t t1 = h + s1 + ch + kSha256K[i] + w[i];
        const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
        const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
        const std::uint32_t t2 = s0 + maj;
        h = g;
        g = f;
        f = e;
        e = d + t1;
        d = c;
        c = b;
        b = a;
        a = t1 + t2;
    }
    state[0] += a;
    state[1] += b;
    state[2] += c;
    state[3] += d;
    state[4] += e;
    state[5] += f;
    state[6] += g;
    state[7] += h;
}

} // namespace

Digest32 sha256(std::span<const std::uint8_t> data)
{
    std::uint32_t state[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                              0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    std::size_t off = 0;
    while (data.size() - off >= 64) {
        sha256_block(state, data.data() + off);
        off += 64;
    }
    std::uint8_t tail[128] = {0};
    const std::size_t rem = data.size() - off;
    std::memcpy(tail, data.data() + off, rem);
    tail[rem] = 0x80;
    const std::size_t tail_len = (rem + 9 <= 64) ? 64 : 128;
    const std::uint64_t bit_len = static_cast<std::uint64_t>(data.size()) * 8;
    for (int i = 0; i < 8; ++i)
        tail[tail_len - 1 - i] = static_cast<std::uint8_t>(bit_len >> (8 * i));
    sha256_block(state, tail);
    if (tail_len == 128)
        sha256_block(state, tail + 64);

    Digest32 out;
    for (int i = 0; i < 8; ++i)
        for (int b = 0; b < 4; ++b)
            out[static_cast<std::size_t>(i * 4 + b)] = static_cast<std::uint8_t>(state[i] >> (24 - 8 * b));
    return out;
}

Digest32 merkle_root(const std::vector<TxId> &txids)
{
    if (txids.empty())
        return Digest32{};

    std::vector<Digest32> level(txids.begin(), txids.end());
    do {
        if (level.size() % 2 != 0)
            level.push_back(level.back());
        std::vector<Digest32> next;
        next.reserve(level.size() / 2);
        std::uint8_t buf[64];
        for (std::size_t i = 0; i < level.size(); i += 2) {
            std::memcpy(buf, level[i].data(), 32);
            std::memcpy(buf + 32, level[i + 1].data(), 32);
            next.push_back(sha256(std::span<const std::uint8_t>(buf, 64)));
        }
        level = std::move(next);
    } while (level.size() > 1);
    return level.front();
}

} // namespace blockpress
