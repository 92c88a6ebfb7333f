// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "blockpress/exp1.hpp"

#include "blockpress/hash.hpp"
#include "blockpress/protocols/xthinner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <thread>

namespace blockpress {

void SweepConfig::validate() const
{
    if (trials < 30)
        throw RejectedInput("trials must be >= 30");
    if (multiplier <= 0.0)
        throw RejectedInput("multiplier must be positive");
    for (std::size_t i = 1; i < capacities.size(); ++i)
        if (capacities[i] <= capacities[i - 1])
            throw RejectedInput("capacities must be strictly increasing");
}

std::vector<std::uint64_t> default_capacity_grid(std::size_t points, std::uint64_t lo,
                                                 std::uint64_t hi)
{
    std::vector<std::uint64_t> grid;
    grid.reserve(points);
    const double llo = std::log(static_cast<double>(lo));
    const double lhi = std::log(static_cast<double>(hi));
    for (std::size_t i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        auto c = static_cast<std::uint64_t>(std::llround(std::exp(llo + t * (lhi - llo))));
        if (!grid.empty() && c <= grid.back())
            c = grid.back() + 1;
        grid.push_back(c);
    }
    return grid;
}

namespace {

std::uint64_t trial_seed(const SweepConfig &cfg, std::uint64_t capacity, int trial)
{
    return splitmix64(splitmix64(cfg.seed ^ capacity) ^ static_cast<std::uint64_t>(trial));
}

std::uint64_t xthinner_trial(std::uint64_t capacity, const SweepConfig &cfg, int trial)
{
    const std::uint64_t seed = trial_seed(cfg, capacity, trial);
    UniformValueSource values(1, 1000000000);
    const Mempool pool =
        generate_mempool(capacity, cfg.multiplier, values, seed, cfg.fee_rate);
    const auto &entries = pool.entries();

    // Highest-fee block, ties by ascending txid; only the chosen set matters
    // for size, so a linear-time partial selection suffices.
    std::vector<std::uint32_t> idx(entries.size());
    std::iota(idx.begin(), idx.end(), 0);
    const std::size_t take = std::min<std::size_t>(capacity, idx.size());
    std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                         if (entries[a].fee != entries[b].fee)
                             return entries[a].fee > entries[b].fee;
                         return entries[a].txid < entries[b].txid;
                     });

    std::vector<std::uint64_t> pool_ids;
    pool_ids.reserve(entries.size());
    for (const auto &tx : entries)
        pool_ids.push_back(sketch_id(0, tx.txid));
    std::vector<std::uint64_t> block_ids;
    block_ids.reserve(take);
    for (std::size_t i = 0; i < take; ++i)
        block_ids.push_back(pool_ids[idx[i]]);
    std::sort(pool_ids.begin(), pool_ids.end());
    std::sort(block_ids.begin(), block_ids.end());
    return xthinner_encode(block_ids, pool_ids, 0).total_bytes();
}

} // namespace

std::uint64_t run_trial(Protocol p, std::uint64_t capacity, const SweepConfig &cfg,
                        int trial_index)
{
    switch (p) {
    case Protocol::Graphene: {
        // The message size is a function of (n, m) alone, so every trial at a
        // fixed capacity measures the same value.
        const auto m = static_cast<std::uint64_t>(
            std::floor(cfg.multiplier * static_cast<double>(capacity) + 0.5));
        return graphene_message_bytes(capacity, std::max(m, capacity));
    }
    case Protocol::XThinner:
        return xthinner_trial(capacity, cfg, trial_index);
    default: {
        SizeModel model;
        model.protocol = p;
        model.multiplier = cfg.multiplier;
        return static_cast<std::uint64_t>(std::llround(model.evaluate(capacity)));
    }
    }
}

namespace {

CapacityStats finish_stats(std::uint64_t capacity, std::vector<std::uint64_t> raw)
{
    CapacityStats s;
    s.capacity = capacity;
    s.raw = std::move(raw);
    s.min = *std::min_element(s.raw.begin(), s.raw.end());
    s.max = *std::max_element(s.raw.begin(), s.raw.end());
    double sum = 0.0;
    for (std::uint64_t v : s.raw)
        sum += static_cast<double>(v);
    s.mean = sum / static_cast<double>(s.raw.size());
    double sq = 0.0;
    for (std::uint64_t v : s.raw) {
        const double d = static_cast<double>(v) - s.mean;
        sq += d * d;
    }
    s.stddev = s.raw.size() > 1 ? std::sqrt(sq / static_cast<double>(s.raw.size() - 1)) : 0.0;

    const double width = static_cast<double>(s.max - s.min) / 20.0;
    for (std::uint64_t v : s.raw) {
        std::size_t bin = width == 0.0
                              ? 0
                              : static_cast<std::size_t>(static_cast<double>(v - s.min) / width);
        s.histogram[std::min<std::size_t>(bin, 19)]++;
    }
    return s;
}

} // namespace

SweepResult sweep(Protocol p, const SweepConfig &cfg_in)
{
    SweepConfig cfg = cfg_in;
    if (cfg.capacities.empty())
        cfg.capacities = default_capacity_grid();
    cfg.validate();

    SweepResult result;
    result.protocol = p;
    result.config = cfg;

    const std::size_t n_cap = cfg.capacities.size();
    const auto trials = static_cast<std::size_t>(cfg.trials);
    std::vector<std::vector<std::uint64_t>> raw(n_cap,
                                                std::vector<std::uint64_t>(trials, 0));

    unsigned jobs = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                                 : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(n_cap * trials));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= n_cap * trials)
                return;
            const std::size_t ci = task / trials;
            const auto trial = static_cast<int>(task % trials);
            raw[ci][task % trials] = run_trial(p, cfg.capacities[ci], cfg, trial);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned i = 0; i < jobs; ++i)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }

    result.per_capacity.reserve(n_cap);
    for (std::size_t ci = 0; ci < n_cap; ++ci)
        result.per_capacity.push_back(finish_stats(cfg.capacities[ci], std::move(raw[ci])));
    return result;
}

void write_raw_csv(std::ostream &out, const SweepResult &result)
{
    out << "protocol,capacity,trial,bytes\n";
    const std::string name = protocol_name(result.protocol);
    for (const auto &s : result.per_capacity)
        for (std::size_t t = 0; t < s.raw.size(); ++t)
            out << name << ',' << s.capacity << ',' << t << ',' << s.raw[t] << '\n';
}

void write_summary_csv(std::ostream &out, const SweepResult &result)
{
    out << "protocol,capacity,mean,std,min,max\n";
    const std::string name = protocol_name(result.protocol);
    char buf[64];
    for (const auto &s : result.per_capacity) {
        std::snprintf(buf, sizeof(buf), "%.3f,%.3f", s.mean, s.stddev);
        out << name << ',' << s.capacity << ',' << buf << ',' << s.min << ',' << s.max << '\n';
    }
}

} // namespace blockpress
