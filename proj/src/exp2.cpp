// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "blockpress/exp2.hpp"

#include "blockpress/hash.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace blockpress {

const std::map<int, double> &reference_volatility()
{
    static const std::map<int, double> table = {
        {2012, 0.238111}, {2013, 0.200857}, {2014, 0.218010}, {2015, 0.180948},
        {2016, 0.073051}, {2017, 0.063965}, {2018, 0.045616}, {2019, 0.037647},
        {2020, 0.059485}, {2021, 0.044932}};
    return table;
}

MixtureValueSource::MixtureValueSource(double mu, double sigma, double alpha, double x_min,
                                       double x_max, double tail_weight)
    : mu_(mu), sigma_(sigma), alpha_(alpha), x_min_(x_min), x_max_(x_max),
      tail_weight_(tail_weight)
{
    if (sigma <= 0.0 || alpha <= 1.0 || x_min <= 0.0 || x_max <= x_min || tail_weight < 0.0 ||
        tail_weight >= 1.0)
        throw FitError("mixture parameters out of range");
}

double MixtureValueSource::body_mean() const { return std::exp(mu_ + sigma_ * sigma_ / 2.0); }

double MixtureValueSource::tail_mean() const
{
    const double r = x_min_ / x_max_;
    return alpha_ / (alpha_ - 1.0) * x_min_ * (1.0 - std::pow(r, alpha_ - 1.0)) /
           (1.0 - std::pow(r, alpha_));
}

std::int64_t MixtureValueSource::sample(Rng &rng) const
{
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    double v;
    if (uniform(rng) < tail_weight_) {
        // inverse CDF of the truncated Pareto
        const double u = uniform(rng);
        const double r = std::pow(x_min_ / x_max_, alpha_);
        v = x_min_ * std::pow(1.0 - u * (1.0 - r), -1.0 / alpha_);
    } else {
        std::normal_distribution<double> normal(0.0, 1.0);
        v = std::exp(mu_ + sigma_ * normal(rng));
    }
    if (v < 1.0)
        v = 1.0;
    if (v > 9e18)
        v = 9e18;
    return static_cast<std::int64_t>(v);
}

MixtureValueSource fit_value_sampler(const FitTargets &t)
{
    if (t.mean <= 0.0 || t.median <= 0.0 || t.median >= t.mean)
        throw FitError("fit targets require 0 < median < mean");

    constexpr double kAlpha = 2.0;
    constexpr double kTailCap = 1e14; // keeps the sample mean of the tail stable
    const double mu = std::log(t.median);
    const double r = t.tail_x / kTailCap;
    const double tail_mean = kAlpha / (kAlpha - 1.0) * t.tail_x *
                             (1.0 - std::pow(r, kAlpha - 1.0)) / (1.0 - std::pow(r, kAlpha));

    // Fixed point over (sigma, w): the body contributes its own mass above
    // tail_x, and the remainder of the mean once the tail share is set.
    double sigma = 2.5;
    double w = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double z = (std::log(t.tail_x) - mu) / sigma;
        const double body_tail = 0.5 * std::erfc(z / std::sqrt(2.0));
        w = (t.tail_fraction - body_tail) / (1.0 - body_tail);
        if (w <= 0.0)
            throw FitError("tail target already exceeded by the log-normal body; residual " +
                           std::to_string(body_tail - t.tail_fraction));
        const double body_mean = (t.mean - w * tail_mean) / (1.0 - w);
        if (body_mean <= t.median)
            throw FitError("mean target infeasible: tail alone overshoots; residual " +
                           std::to_string(t.median - body_mean));
        const double next = std::sqrt(2.0 * std::log(body_mean / t.median));
        if (std::abs(next - sigma) < 1e-12) {
            sigma = next;
            return MixtureValueSource(mu, sigma, kAlpha, t.tail_x, kTailCap, w);
        }
        sigma = next;
    }
    throw FitError("sampler fit did not converge");
}

RevenueSeries simulate_revenue(std::uint64_t capacity, const ValueSource &values,
                               const RevenueConfig &cfg)
{
    if (capacity < 1)
        throw RejectedInput("capacity must be >= 1");
    if (cfg.blocks < 1)
        throw RejectedInput("blocks must be >= 1");

    RevenueSeries series;
    series.capacity = capacity;
    series.revenues.reserve(static_cast<std::size_t>(cfg.blocks));

    Rng rng(splitmix64(cfg.seed ^ splitmix64(capacity)));
    std::poisson_distribution<long long> arrivals(static_cast<double>(capacity));

    // Only fees matter for revenue; ties in fee order cannot change the sum.
    std::vector<std::int64_t> fees;
    const auto initial = static_cast<std::uint64_t>(
        std::floor(cfg.multiplier * static_cast<double>(capacity) + 0.5));
    fees.reserve(initial + 2 * capacity);
    for (std::uint64_t i = 0; i < initial; ++i)
        fees.push_back(fee_for(values.sample(rng), cfg.fee_rate));

    for (int b = 0; b < cfg.blocks; ++b) {
        const auto fresh = static_cast<std::uint64_t>(arrivals(rng));
        for (std::uint64_t i = 0; i < fresh; ++i)
            fees.push_back(fee_for(values.sample(rng), cfg.fee_rate));

        // Partition the top fees to the tail so removal is a plain resize.
        const std::size_t take = std::min<std::size_t>(capacity, fees.size());
        const std::size_t keep = fees.size() - take;
        std::nth_element(fees.begin(), fees.begin() + static_cast<std::ptrdiff_t>(keep),
                         fees.end());
        std::int64_t revenue = 0;
        for (std::size_t i = keep; i < fees.size(); ++i)
            revenue += fees[i];
        fees.resize(keep);

        if (revenue <= 0)
            series.degenerate = true;
        series.revenues.push_back(revenue);
    }
    return series;
}

HvResult historical_volatility(const std::vector<std::int64_t> &revenues)
{
    if (revenues.size() < 3)
        throw RejectedInput("historical volatility needs at least 3 revenues");

    HvResult out;
    std::vector<double> returns;
    returns.reserve(revenues.size() - 1);
    auto floored = [&](std::int64_t v) {
        if (v < 1) {
            out.degenerate = true;
            return 1.0;
        }
        return static_cast<double>(v);
    };
    for (std::size_t i = 1; i < revenues.size(); ++i)
        returns.push_back(std::log(floored(revenues[i]) / floored(revenues[i - 1])));

    double mean = 0.0;
    for (double r : returns)
        mean += r;
    mean /= static_cast<double>(returns.size());
    double sq = 0.0;
    for (double r : returns)
        sq += (r - mean) * (r - mean);
    out.hv = std::sqrt(sq / static_cast<double>(returns.size() - 1));
    return out;
}

double tps(std::uint64_t capacity, int block_interval_s)
{
    if (block_interval_s <= 0)
        throw RejectedInput("block interval must be positive");
    return static_cast<double>(capacity) / block_interval_s;
}

std::string tps_string(std::uint64_t capacity, int block_interval_s)
{
    if (block_interval_s <= 0)
        throw RejectedInput("block interval must be positive");
    const std::uint64_t scaled = capacity * 100;
    const std::uint64_t interval = static_cast<std::uint64_t>(block_interval_s);
    std::uint64_t q = scaled / interval;
    const std::uint64_t r = scaled % interval;
    if (2 * r > interval || (2 * r == interval && q % 2 == 1))
        ++q;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%llu.%02llu",
                  static_cast<unsigned long long>(q / 100),
                  static_cast<unsigned long long>(q % 100));
    return buf;
}

VolatilityCurve volatility_curve(const std::vector<std::uint64_t> &capacity_grid,
                                 const ValueSource &values, const RevenueConfig &cfg, int jobs)
{
    for (std::size_t i = 1; i < capacity_grid.size(); ++i)
        if (capacity_grid[i] <= capacity_grid[i - 1])
            throw RejectedInput("capacity grid must be strictly increasing");

    VolatilityCurve curve;
    curve.points.resize(capacity_grid.size());

    unsigned n_jobs = jobs > 0 ? static_cast<unsigned>(jobs)
                               : std::max(1u, std::thread::hardware_concurrency());
    n_jobs = std::min<unsigned>(n_jobs, static_cast<unsigned>(capacity_grid.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= capacity_grid.size())
                return;
            const std::uint64_t cap = capacity_grid[i];
            const RevenueSeries series = simulate_revenue(cap, values, cfg);
            const HvResult hv = historical_volatility(series.revenues);
            curve.points[i] = {cap, tps(cap, cfg.block_interval_s), hv.hv,
                               hv.degenerate || series.degenerate};
        }
    };
    if (n_jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_jobs);
        for (unsigned i = 0; i < n_jobs; ++i)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }
    return curve;
}

CriticalPoint find_critical_point(const VolatilityCurve &curve, int smoothing_window)
{
    const auto &pts = curve.points;
    if (pts.size() < 5)
        throw RejectedInput("critical point detection needs at least 5 points");
    if (smoothing_window < 1)
        throw RejectedInput("smoothing window must be >= 1");

    const int half = smoothing_window / 2;
    std::vector<double> smoothed(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::size_t lo = i >= static_cast<std::size_t>(half) ? i - half : 0;
        const std::size_t hi = std::min(pts.size() - 1, i + half);
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j)
            sum += pts[j].hv;
        smoothed[i] = sum / static_cast<double>(hi - lo + 1);
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < smoothed.size(); ++i)
        if (smoothed[i] < smoothed[best])
            best = i;

    CriticalPoint cp;
    cp.index = best;
    cp.tps = pts[best].tps;
    cp.hv = pts[best].hv;
    cp.interior = best > 0 && best + 1 < pts.size();
    return cp;
}

BlockSizeLimits acceptable_block_size(Protocol p, double tps_limit, double hard_cap_kb)
{
    if (tps_limit <= 0.0)
        throw RejectedInput("tps limit must be positive");
    const double tx_limit = tps_limit * 600.0;

    BlockSizeLimits out;
    switch (p) {
    case Protocol::Compact:
        out.acceptable_kb = tx_limit * 6.0 / 1024.0;
        break;
    case Protocol::XThin:
        out.acceptable_kb = tx_limit * 8.0 / 1024.0;
        break;
    case Protocol::Ipfs:
        out.acceptable_kb = tx_limit * 32.0 / 1024.0;
        break;
    case Protocol::Dino:
        throw InfeasibleParameter("dino: constant-size model defines no acceptable size");
    default: {
        SizeModel model;
        model.protocol = p;
        out.acceptable_kb =
            model.evaluate(static_cast<std::uint64_t>(std::llround(tx_limit))) / 1024.0;
        break;
    }
    }
    out.max_kb = std::min(out.acceptable_kb, hard_cap_kb);
    return out;
}

Dataset load_dataset(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ResourceError("cannot open dataset: " + path);

    Dataset ds;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line_no == 1) {
            if (line != "timestamp_unix,value_satoshi,size_bytes")
                throw RejectedInput("line 1: expected header timestamp_unix,value_satoshi,size_bytes");
            continue;
        }
        if (line.empty())
            continue;

        DatasetRow row;
        char extra;
        long long ts, value;
        long size;
        const int got = std::sscanf(line.c_str(), "%lld,%lld,%ld%c", &ts, &value, &size, &extra);
        if (got != 3)
            throw RejectedInput("line " + std::to_string(line_no) + ": malformed row");
        if (value < 0)
            throw RejectedInput("line " + std::to_string(line_no) + ": negative value");
        if (size <= 0)
            throw RejectedInput("line " + std::to_string(line_no) + ": non-positive size");
        row.timestamp_unix = ts;
        row.value_satoshi = value;
        row.size_bytes = static_cast<std::int32_t>(size);
        ds.rows.push_back(row);
    }

    std::stable_sort(ds.rows.begin(), ds.rows.end(),
                     [](const DatasetRow &a, const DatasetRow &b) {
                         return a.timestamp_unix < b.timestamp_unix;
                     });

    ds.stats.count = ds.rows.size();
    if (!ds.rows.empty()) {
        double sum = 0.0;
        std::size_t tail = 0;
        std::vector<std::int64_t> values;
        values.reserve(ds.rows.size());
        for (const auto &row : ds.rows) {
            sum += static_cast<double>(row.value_satoshi);
            if (static_cast<double>(row.value_satoshi) > 5e11)
                ++tail;
            values.push_back(row.value_satoshi);
        }
        ds.stats.mean = sum / static_cast<double>(values.size());
        std::sort(values.begin(), values.end());
        const std::size_t mid = values.size() / 2;
        ds.stats.median = values.size() % 2 == 1
                              ? static_cast<double>(values[mid])
                              : (static_cast<double>(values[mid - 1]) +
                                 static_cast<double>(values[mid])) / 2.0;
        ds.stats.tail_fraction = static_cast<double>(tail) / static_cast<double>(values.size());
    }
    return ds;
}

DatasetValueSource::DatasetValueSource(std::vector<std::int64_t> values)
    : values_(std::move(values))
{
    if (values_.empty())
        throw RejectedInput("dataset replay needs at least one value");
}

std::int64_t DatasetValueSource::sample(Rng &) const
{
    const std::int64_t v = values_[pos_];
    pos_ = (pos_ + 1) % values_.size();
    return v;
}

void write_curve_csv(std::ostream &out, const VolatilityCurve &curve)
{
    out << "capacity,tps,hv,degenerate_flag\n";
    char buf[96];
    for (const auto &p : curve.points) {
        std::snprintf(buf, sizeof(buf), "%.6f,%.9f", p.tps, p.hv);
        out << p.capacity << ',' << buf << ',' << (p.degenerate ? 1 : 0) << '\n';
    }
}

std::string critical_point_json(const VolatilityCurve &curve, const CriticalPoint &cp)
{
    nlohmann::json j;
    j["index"] = cp.index;
    j["capacity"] = curve.points[cp.index].capacity;
    j["tps"] = cp.tps;
    j["hv"] = cp.hv;
    j["interior_minimum"] = cp.interior;
    j["reference_hv_band"] = {kReferenceHvMin, kReferenceHvMax};
    return j.dump(2) + "\n";
}

std::string table6_json(double tps_limit)
{
    nlohmann::json j;
    j["tps_limit"] = tps_limit;
    j["hard_cap_kb"] = 4096.0;

    nlohmann::json ref;
    for (const auto &[year, hv] : reference_volatility())
        ref[std::to_string(year)] = hv;
    j["reference_hv"] = ref;

    for (Protocol p : {Protocol::Compact, Protocol::XThin, Protocol::Graphene,
                       Protocol::XThinner, Protocol::Ipfs, Protocol::Dino}) {
        nlohmann::json row;
        if (p == Protocol::Dino) {
            row["bpt"] = "NA";
            row["capacity_at_1MiB"] = "NA";
            row["tps"] = "NA";
            row["acceptable_kb"] = "NA";
            row["max_kb"] = "NA";
        } else {
            const std::uint64_t cap = block_capacity(p, kMebibyte);
            row["bpt"] = bytes_per_tx(p);
            row["capacity_at_1MiB"] = cap;
            row["tps"] = tps_string(cap, 600);
            const BlockSizeLimits limits = acceptable_block_size(p, tps_limit);
            row["acceptable_kb"] = limits.acceptable_kb;
            row["max_kb"] = limits.max_kb;
        }
        j["protocols"][protocol_name(p)] = row;
    }
    return j.dump(2) + "\n";
}

} // namespace blockpress
