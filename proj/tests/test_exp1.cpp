// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "blockpress/exp1.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using namespace blockpress;

TEST_CASE("default capacity grid is log spaced and strictly increasing")
{
    const auto grid = default_capacity_grid();
    REQUIRE(grid.size() == 40);
    CHECK(grid.front() == 1000);
    CHECK(grid.back() == 1000000);
    for (std::size_t i = 1; i < grid.size(); ++i)
        CHECK(grid[i] > grid[i - 1]);
    // roughly constant ratio between consecutive points
    const double step = std::pow(1000.0, 1.0 / 39.0);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double ratio = static_cast<double>(grid[i]) / static_cast<double>(grid[i - 1]);
        CHECK(ratio == doctest::Approx(step).epsilon(0.02));
    }
}

TEST_CASE("sweep config validation")
{
    SweepConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.trials = 29; // spec floor: 30 is the accepted minimum sample size
    CHECK_THROWS_AS(cfg.validate(), RejectedInput);
    cfg = {};
    cfg.multiplier = 0.0;
    CHECK_THROWS_AS(cfg.validate(), RejectedInput);
    cfg = {};
    cfg.capacities = {2000, 1000};
    CHECK_THROWS_AS(cfg.validate(), RejectedInput);
}

TEST_CASE("run_trial is deterministic per (seed, capacity, trial)")
{
    SweepConfig cfg;
    cfg.seed = 3;
    for (Protocol p : {Protocol::Compact, Protocol::Graphene, Protocol::XThinner}) {
        const std::uint64_t a = run_trial(p, 2000, cfg, 4);
        CHECK(a == run_trial(p, 2000, cfg, 4));
        CHECK(a > 580);
    }
    // trials of the closed-form protocols are all identical
    CHECK(run_trial(Protocol::Compact, 2000, cfg, 0) == run_trial(Protocol::Compact, 2000, cfg, 1));
}

TEST_CASE("graphene trials equal the analytic message size")
{
    SweepConfig cfg;
    cfg.seed = 9;
    const std::uint64_t n = 5000;
    const auto m = static_cast<std::uint64_t>(std::llround(cfg.multiplier * n));
    CHECK(run_trial(Protocol::Graphene, n, cfg, 0) == graphene_message_bytes(n, m));
    CHECK(run_trial(Protocol::Graphene, n, cfg, 1) == graphene_message_bytes(n, m));
}

TEST_CASE("closed-form trials match the size model")
{
    SweepConfig cfg;
    for (std::uint64_t n : {1000ULL, 10000ULL}) {
        CHECK(run_trial(Protocol::Compact, n, cfg, 0) == 594 + 6 * n);
        CHECK(run_trial(Protocol::XThin, n, cfg, 0) == 580 + 8 * n);
        // ipfs ships the coinbase as a content id, not a 500-byte prefill
        CHECK(run_trial(Protocol::Ipfs, n, cfg, 0) == 80 + 32 * n);
    }
}

TEST_CASE("sweep statistics agree with the raw samples")
{
    SweepConfig cfg;
    cfg.capacities = {1000, 3000};
    cfg.trials = 30;
    cfg.seed = 5;
    cfg.jobs = 2;

    const SweepResult result = sweep(Protocol::XThinner, cfg);
    REQUIRE(result.per_capacity.size() == 2);
    for (const CapacityStats &stats : result.per_capacity) {
        REQUIRE(stats.raw.size() == 30);
        double sum = 0.0;
        std::uint64_t lo = stats.raw[0], hi = stats.raw[0];
        for (std::uint64_t b : stats.raw) {
            sum += static_cast<double>(b);
            lo = std::min(lo, b);
            hi = std::max(hi, b);
        }
        const double mean = sum / 30.0;
        double sq = 0.0;
        for (std::uint64_t b : stats.raw)
            sq += (static_cast<double>(b) - mean) * (static_cast<double>(b) - mean);
        CHECK(stats.mean == doctest::Approx(mean).epsilon(1e-12));
        CHECK(stats.stddev == doctest::Approx(std::sqrt(sq / 29.0)).epsilon(1e-9));
        CHECK(stats.min == lo);
        CHECK(stats.mean >= static_cast<double>(stats.min));
        CHECK(stats.mean <= static_cast<double>(stats.max));
        CHECK(stats.max == hi);

        std::uint32_t binned = 0;
        for (std::uint32_t c : stats.histogram)
            binned += c;
        CHECK(binned == 30);
    }
}

TEST_CASE("sweep is deterministic and independent of the job count")
{
    SweepConfig cfg;
    cfg.capacities = {1000, 2000, 4000};
    cfg.trials = 30;
    cfg.seed = 11;

    cfg.jobs = 1;
    const SweepResult serial = sweep(Protocol::XThinner, cfg);
    cfg.jobs = 3;
    const SweepResult parallel = sweep(Protocol::XThinner, cfg);

    REQUIRE(serial.per_capacity.size() == parallel.per_capacity.size());
    for (std::size_t i = 0; i < serial.per_capacity.size(); ++i)
        CHECK(serial.per_capacity[i].raw == parallel.per_capacity[i].raw);
}

TEST_CASE("csv writers emit one row per sample")
{
    SweepConfig cfg;
    cfg.capacities = {1000, 2000};
    cfg.trials = 30;
    cfg.seed = 1;
    cfg.jobs = 1;
    const SweepResult result = sweep(Protocol::Compact, cfg);

    std::ostringstream raw;
    write_raw_csv(raw, result);
    std::istringstream raw_in(raw.str());
    std::string line;
    std::getline(raw_in, line);
    CHECK(line == "protocol,capacity,trial,bytes");
    int rows = 0;
    while (std::getline(raw_in, line)) {
        CHECK(line.rfind("compact,", 0) == 0);
        ++rows;
    }
    CHECK(rows == 60);

    std::ostringstream summary;
    write_summary_csv(summary, result);
    std::istringstream summary_in(summary.str());
    std::getline(summary_in, line);
    CHECK(line == "protocol,capacity,mean,std,min,max");
    rows = 0;
    while (std::getline(summary_in, line))
        ++rows;
    CHECK(rows == 2);
}

TEST_CASE("xthinner sizes scale sublinearly with capacity")
{
    SweepConfig cfg;
    cfg.seed = 2;
    const std::uint64_t small = run_trial(Protocol::XThinner, 2000, cfg, 0);
    const std::uint64_t large = run_trial(Protocol::XThinner, 20000, cfg, 0);
    CHECK(large > small);
    // well under the 6-byte compact slope
    CHECK(large - small < 4 * 18000);
}
