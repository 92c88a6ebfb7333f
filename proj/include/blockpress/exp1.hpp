// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef BLOCKPRESS_EXP1_HPP
#define BLOCKPRESS_EXP1_HPP

#include "blockpress/core.hpp"
#include "blockpress/size_model.hpp"

#include <array>
#include <cstdint>
#include <ostream>
#include <vector>

namespace blockpress {

// Experiment 1: Monte Carlo sweep of compressed block size over a capacity
// grid. Graphene and XThinner are simulated against fresh seeded mempools;
// the closed-form protocols are evaluated analytically.
struct SweepConfig {
    std::vector<std::uint64_t> capacities; // empty means the default grid
    int trials = 100;
    double multiplier = kDefaultMultiplier;
    double fee_rate = kDefaultFeeRate;
    std::uint64_t seed = 0;
    int jobs = 0; // 0 means hardware concurrency

    void validate() const; // throws RejectedInput
};

// 40 log-spaced capacities in [1,000, 1,000,000], strictly increasing.
std::vector<std::uint64_t> default_capacity_grid(std::size_t points = 40,
                                                 std::uint64_t lo = 1000,
                                                 std::uint64_t hi = 1000000);

struct CapacityStats {
    std::uint64_t capacity = 0;
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation (n-1)
    std::uint64_t min = 0;
    std::uint64_t max = 0;
    std::array<std::uint32_t, 20> histogram{};
    std::vector<std::uint64_t> raw; // bytes per trial, trial order
};

struct SweepResult {
    Protocol protocol = Protocol::Graphene;
    SweepConfig config;
    std::vector<CapacityStats> per_capacity;
};

// One Monte Carlo sample: fresh mempool from (seed, capacity, trial), a
// capacity-sized block of the highest-fee transactions, measured bytes.
std::uint64_t run_trial(Protocol p, std::uint64_t capacity, const SweepConfig &cfg,
                        int trial_index);

SweepResult sweep(Protocol p, const SweepConfig &cfg);

// protocol,capacity,trial,bytes
void write_raw_csv(std::ostream &out, const SweepResult &result);
// protocol,capacity,mean,std,min,max
void write_summary_csv(std::ostream &out, const SweepResult &result);

} // namespace blockpress

#endif // BLOCKPRESS_EXP1_HPP
