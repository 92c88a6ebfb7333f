// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "blockpress/bloom.hpp"
#include "blockpress/core.hpp"
#include "blockpress/iblt.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

using namespace blockpress;

TEST_CASE("bloom sizing matches the optimal-parameter formulas")
{
    // m = ceil(-n ln f / ln^2 2), k = max(1, round((m/n) ln 2))
    CHECK(BloomFilter::bits_for(1000, 0.001) == 14378);
    CHECK(BloomFilter::hashes_for(14378, 1000) == 10);
    CHECK(BloomFilter::bits_for(1, 0.5) == 2);
    CHECK(BloomFilter::hashes_for(2, 1) == 1);
    CHECK(BloomFilter::bits_for(100, 0.01) == 959);
    CHECK(BloomFilter::hashes_for(959, 100) == 7);

    const BloomFilter bf(1000, 0.001, 3);
    CHECK(bf.bit_count() == 14378);
    CHECK(bf.hash_count() == 10);
    CHECK(bf.serialized_bytes() == BloomFilter::kHeaderBytes + (14378 + 7) / 8);
}

TEST_CASE("bloom has no false negatives")
{
    BloomFilter bf(50000, 0.01, 17);
    std::mt19937_64 rng(1);
    std::vector<std::uint64_t> ids(50000);
    for (auto &id : ids) {
        id = rng();
        bf.insert(id);
    }
    for (std::uint64_t id : ids)
        CHECK(bf.contains(id));
}

TEST_CASE("bloom false positive rate stays near the target")
{
    for (double target : {0.1, 0.01, 0.001}) {
        BloomFilter bf(20000, target, 99);
        std::mt19937_64 rng(2);
        std::set<std::uint64_t> inserted;
        while (inserted.size() < 20000) {
            const std::uint64_t id = rng();
            if (inserted.insert(id).second)
                bf.insert(id);
        }
        int fp = 0;
        const int queries = 200000;
        for (int i = 0; i < queries; ++i) {
            const std::uint64_t id = rng();
            if (!inserted.contains(id) && bf.contains(id))
                ++fp;
        }
        const double rate = static_cast<double>(fp) / queries;
        CHECK(rate >= 0.5 * target);
        CHECK(rate <= 2.0 * target);
    }
}

TEST_CASE("bloom wire roundtrip")
{
    BloomFilter bf(500, 0.01, 1234);
    std::mt19937_64 rng(3);
    std::vector<std::uint64_t> ids(500);
    for (auto &id : ids) {
        id = rng();
        bf.insert(id);
    }
    const auto wire = bf.serialize();
    CHECK(wire.size() == bf.serialized_bytes());

    const BloomFilter back = BloomFilter::deserialize(wire);
    CHECK(back.bit_count() == bf.bit_count());
    CHECK(back.hash_count() == bf.hash_count());
    CHECK(back.salt() == bf.salt());
    for (std::uint64_t id : ids)
        CHECK(back.contains(id));
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t id = rng();
        CHECK(back.contains(id) == bf.contains(id));
    }

    CHECK_THROWS_AS(BloomFilter::deserialize(std::vector<std::uint8_t>(5)), RejectedInput);
}

TEST_CASE("iblt cell counts")
{
    CHECK(Iblt::cells_for(0) == 3);
    CHECK(Iblt::cells_for(1) == 3);
    CHECK(Iblt::cells_for(10) == 15);         // ceil(15) up to a multiple of 3
    CHECK(Iblt::cells_for(100, 2.0) == 201);  // 200 -> 201
    CHECK(Iblt::cells_for_assured(0) == Iblt::cells_for_assured(1));
    // assured sizing is monotone and tapers towards the asymptotic 1.5
    std::uint32_t prev = 0;
    for (std::uint64_t d : {1, 2, 5, 20, 100, 1000, 10000}) {
        const std::uint32_t cells = Iblt::cells_for_assured(d);
        CHECK(cells >= prev);
        CHECK(cells % Iblt::kHashes == 0);
        prev = cells;
    }
    CHECK(Iblt::cells_for_assured(100000) == Iblt::cells_for(100000, 1.5));
    CHECK_THROWS_AS(Iblt(0, 0), InfeasibleParameter);
    CHECK_THROWS_AS(Iblt(4, 0), InfeasibleParameter);
}

TEST_CASE("iblt decode equals the brute-force symmetric difference")
{
    std::mt19937_64 rng(4);
    int decoded = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t shared = trial % 50;
        const std::size_t d_left = 1 + static_cast<std::size_t>(rng() % 32);
        const std::size_t d_right = static_cast<std::size_t>(rng() % 32);

        std::set<std::uint64_t> left_only, right_only;
        const std::uint32_t cells = Iblt::cells_for_assured(d_left + d_right);
        Iblt a(cells, trial), b(cells, trial);
        for (std::size_t i = 0; i < shared; ++i) {
            const std::uint64_t id = rng();
            a.insert(id);
            b.insert(id);
        }
        while (left_only.size() < d_left) {
            const std::uint64_t id = rng();
            if (left_only.insert(id).second)
                a.insert(id);
        }
        while (right_only.size() < d_right) {
            const std::uint64_t id = rng();
            if (right_only.insert(id).second)
                b.insert(id);
        }

        const auto result = a.subtract(b).decode();
        if (!result.ok)
            continue; // rare by construction; counted below
        ++decoded;
        CHECK(std::set<std::uint64_t>(result.left_only.begin(), result.left_only.end()) ==
              left_only);
        CHECK(std::set<std::uint64_t>(result.right_only.begin(), result.right_only.end()) ==
              right_only);
    }
    // at 239/240 assurance nearly all 400 trials must decode
    CHECK(decoded >= 390);
}

TEST_CASE("iblt assured sizing meets the decode budget")
{
    // spot check two table sizes; the acceptance run covers the 1e4-trial
    // criterion with binomial slack
    for (std::uint64_t d : {12ULL, 200ULL}) {
        const std::uint32_t cells = Iblt::cells_for_assured(d);
        std::mt19937_64 rng(d);
        int fails = 0;
        const int trials = 1500;
        for (int t = 0; t < trials; ++t) {
            Iblt a(cells, t), b(cells, t);
            for (std::uint64_t i = 0; i < d; ++i) {
                const std::uint64_t id = rng();
                if (i % 2 == 0)
                    a.insert(id);
                else
                    b.insert(id);
            }
            if (!a.subtract(b).decode().ok)
                ++fails;
        }
        // budget 1/240 plus a 99% one-sided binomial allowance
        const double p = 1.0 / 240.0;
        const double slack = 2.33 * std::sqrt(p * (1.0 - p) / trials);
        CHECK(static_cast<double>(fails) / trials <= p + slack);
    }
}

TEST_CASE("iblt insert and erase cancel")
{
    Iblt a(30, 5);
    std::mt19937_64 rng(6);
    std::vector<std::uint64_t> ids(100);
    for (auto &id : ids) {
        id = rng();
        a.insert(id);
    }
    CHECK_FALSE(a.all_zero());
    for (std::uint64_t id : ids)
        a.erase(id);
    CHECK(a.all_zero());
    CHECK(a.decode().ok);
    CHECK(a.decode().left_only.empty());
}

TEST_CASE("iblt wire roundtrip")
{
    Iblt a(Iblt::cells_for_assured(10), 77);
    std::mt19937_64 rng(7);
    std::set<std::uint64_t> ids;
    while (ids.size() < 10) {
        const std::uint64_t id = rng();
        if (ids.insert(id).second)
            a.insert(id);
    }
    const auto wire = a.serialize();
    CHECK(wire.size() == a.serialized_bytes());
    CHECK(wire.size() == Iblt::kHeaderBytes + a.cell_count() * Iblt::kCellBytes);

    const Iblt back = Iblt::deserialize(wire);
    CHECK(back.cell_count() == a.cell_count());
    CHECK(back.salt() == a.salt());
    const auto result = back.decode();
    REQUIRE(result.ok);
    CHECK(std::set<std::uint64_t>(result.left_only.begin(), result.left_only.end()) == ids);
    CHECK(result.right_only.empty());

    CHECK_THROWS_AS(Iblt::deserialize(std::vector<std::uint8_t>(3)), RejectedInput);
}

TEST_CASE("iblt subtraction requires matching shapes")
{
    const Iblt a(30, 1);
    CHECK_THROWS_AS(a.subtract(Iblt(33, 1)), InfeasibleParameter);
    CHECK_THROWS_AS(a.subtract(Iblt(30, 2)), InfeasibleParameter);
}
