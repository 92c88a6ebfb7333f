// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef BLOCKPRESS_EXP2_HPP
#define BLOCKPRESS_EXP2_HPP

#include "blockpress/core.hpp"
#include "blockpress/size_model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace blockpress {

// Experiment 2: pure fee-regime mining. Per-block miner revenue series,
// historical volatility (HV) of its log returns, throughput (TPS), the
// HV-vs-TPS curve with its critical point, and the acceptable block size
// table.

// Reference HVs of yearly miner rewards (Table 5), bitcoin 2012 to 2021.
const std::map<int, double> &reference_volatility();
constexpr double kReferenceHvMin = 0.037647; // 2019
constexpr double kReferenceHvMax = 0.238111; // 2012

struct FitTargets {
    double mean = 612542247.0;
    double median = 1782395.0;
    double tail_x = 5e11;
    double tail_fraction = 0.000463; // P(value > tail_x)
};

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Log-normal body with a truncated Pareto tail. The truncation keeps the
// sample mean of large draws stable; the untruncated alpha=2 tail has
// infinite variance.
class MixtureValueSource final : public ValueSource {
public:
    MixtureValueSource(double mu, double sigma, double alpha, double x_min, double x_max,
                       double tail_weight);

    std::int64_t sample(Rng &rng) const override;

    double mu() const { return mu_; }
    double sigma() const { return sigma_; }
    double tail_weight() const { return tail_weight_; }
    double body_mean() const; // exp(mu + sigma^2/2)
    double tail_mean() const;

private:
    double mu_, sigma_, alpha_, x_min_, x_max_, tail_weight_;
};

// Solves sigma and the tail weight so the mixture hits the target mean and
// tail fraction with the body median pinned at the target median.
MixtureValueSource fit_value_sampler(const FitTargets &targets = {});

struct RevenueConfig {
    int blocks = 2000;
    int block_interval_s = 600;
    double multiplier = kDefaultMultiplier;
    double fee_rate = kDefaultFeeRate;
    std::uint64_t seed = 0;
};

struct RevenueSeries {
    std::vector<std::int64_t> revenues; // satoshi per block
    std::uint64_t capacity = 0;
    bool degenerate = false; // some block earned zero and was floored at 1
};

// Poisson arrivals with mean = capacity per 600 s interval on top of an
// initial pool of multiplier * capacity; each block takes the highest-fee
// transactions. Fees alone determine revenue, so only fees are simulated.
RevenueSeries simulate_revenue(std::uint64_t capacity, const ValueSource &values,
                               const RevenueConfig &cfg);

struct HvResult {
    double hv = 0.0;
    bool degenerate = false;
};

// Sample standard deviation of log returns, centered on their mean.
// Revenues of zero are floored at 1 satoshi and flagged.
HvResult historical_volatility(const std::vector<std::int64_t> &revenues);

double tps(std::uint64_t capacity, int block_interval_s);

// TPS to two decimals with exact half-to-even rounding of the rational
// capacity/interval (printf rounds the nearest double instead, which gets
// exact halves like 174663/600 wrong).
std::string tps_string(std::uint64_t capacity, int block_interval_s);

struct CurvePoint {
    std::uint64_t capacity = 0;
    double tps = 0.0;
    double hv = 0.0;
    bool degenerate = false;
};

struct VolatilityCurve {
    std::vector<CurvePoint> points; // ascending tps
    int jobs = 0;
};

VolatilityCurve volatility_curve(const std::vector<std::uint64_t> &capacity_grid,
                                 const ValueSource &values, const RevenueConfig &cfg,
                                 int jobs = 0);

struct CriticalPoint {
    std::size_t index = 0;
    double tps = 0.0;
    double hv = 0.0; // unsmoothed value at the smoothed argmin
    bool interior = false;
};

CriticalPoint find_critical_point(const VolatilityCurve &curve, int smoothing_window = 5);

struct BlockSizeLimits {
    double acceptable_kb = 0.0;
    double max_kb = 0.0;
};

// Acceptable size at the scaling limit (default 1,350 TPS) and the 4 MB
// clamped maximum.
BlockSizeLimits acceptable_block_size(Protocol p, double tps_limit = 1350.0,
                                      double hard_cap_kb = 4096.0);

struct DatasetRow {
    std::int64_t timestamp_unix = 0;
    std::int64_t value_satoshi = 0;
    std::int32_t size_bytes = kDefaultTxBytes;
};

struct DatasetStats {
    std::size_t count = 0;
    double mean = 0.0;
    double median = 0.0;
    double tail_fraction = 0.0; // P(value > 5e11)
};

struct Dataset {
    std::vector<DatasetRow> rows;
    DatasetStats stats;
};

// CSV with header timestamp_unix,value_satoshi,size_bytes. Malformed rows
// raise RejectedInput naming the line.
Dataset load_dataset(const std::string &path);

// Replays dataset values in chronological order, wrapping around.
class DatasetValueSource final : public ValueSource {
public:
    explicit DatasetValueSource(std::vector<std::int64_t> values);
    std::int64_t sample(Rng &rng) const override;

private:
    std::vector<std::int64_t> values_;
    mutable std::size_t pos_ = 0;
};

// capacity,tps,hv,degenerate_flag
void write_curve_csv(std::ostream &out, const VolatilityCurve &curve);
// critical point with the Table 5 reference band
std::string critical_point_json(const VolatilityCurve &curve, const CriticalPoint &cp);
// Table 6 style report: per protocol bpt, capacity at 1 MiB, tps and size
// limits, plus the Table 5 reference constants.
std::string table6_json(double tps_limit = 1350.0);

} // namespace blockpress

#endif // BLOCKPRESS_EXP2_HPP
