// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "blockpress/exp2.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace blockpress;

TEST_CASE("reference volatility table")
{
    const auto &ref = reference_volatility();
    REQUIRE(ref.size() == 10);
    CHECK(ref.at(2012) == 0.238111);
    CHECK(ref.at(2019) == 0.037647);
    CHECK(ref.at(2021) == 0.044932);
    double lo = 1.0, hi = 0.0;
    for (const auto &[year, hv] : ref) {
        lo = std::min(lo, hv);
        hi = std::max(hi, hv);
    }
    CHECK(lo == kReferenceHvMin);
    CHECK(hi == kReferenceHvMax);
}

TEST_CASE("historical volatility oracles")
{
    CHECK(historical_volatility({5, 5, 5, 5, 5}).hv == 0.0);

    // revenues (1, e, 1) scaled up: log returns are (1, -1), mean 0,
    // sample variance 2
    const auto e12 = static_cast<std::int64_t>(std::llround(std::exp(1.0) * 1e12));
    const double hv = historical_volatility({1000000000000, e12, 1000000000000}).hv;
    CHECK(hv == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

    // scale invariance: integer multiplication keeps the ratios exact
    std::vector<std::int64_t> base{123456789, 987654321, 555555555, 111111111};
    std::vector<std::int64_t> scaled;
    for (std::int64_t v : base)
        scaled.push_back(v * 7);
    CHECK(historical_volatility(base).hv ==
          doctest::Approx(historical_volatility(scaled).hv).epsilon(1e-12));

    CHECK_THROWS_AS(historical_volatility({1, 2}), RejectedInput);

    const HvResult floored = historical_volatility({100, 0, 100});
    CHECK(floored.degenerate);
    CHECK(std::isfinite(floored.hv));
    CHECK_FALSE(historical_volatility({100, 50, 100}).degenerate);
}

TEST_CASE("tps and its exact decimal formatting")
{
    CHECK(tps(174663, 600) == doctest::Approx(291.105).epsilon(1e-12));
    CHECK(tps(600, 600) == 1.0);
    CHECK_THROWS_AS(tps(1, 0), RejectedInput);

    // 174663/600 = 291.105 exactly; half-to-even gives the paper's 291.10
    // where printf on the nearest double would give 291.11
    CHECK(tps_string(174663, 600) == "291.10");
    CHECK(tps_string(130999, 600) == "218.33");
    CHECK(tps_string(543379, 600) == "905.63");
    CHECK(tps_string(447913, 600) == "746.52");
    CHECK(tps_string(32765, 600) == "54.61");
    CHECK(tps_string(600, 600) == "1.00");
}

TEST_CASE("fitted sampler hits the paper targets approximately")
{
    const MixtureValueSource sampler = fit_value_sampler();
    CHECK(std::exp(sampler.mu()) == doctest::Approx(1782395.0).epsilon(1e-9));
    CHECK(sampler.tail_weight() > 0.0);
    CHECK(sampler.tail_weight() < 0.01);

    Rng rng(1);
    const int draws = 300000;
    std::vector<std::int64_t> sample(draws);
    double sum = 0.0;
    int tail = 0;
    for (auto &v : sample) {
        v = sampler.sample(rng);
        CHECK(v >= 1);
        sum += static_cast<double>(v);
        if (v > 5e11)
            ++tail;
    }
    std::nth_element(sample.begin(), sample.begin() + draws / 2, sample.end());
    const double median = static_cast<double>(sample[draws / 2]);
    CHECK(median == doctest::Approx(1782395.0).epsilon(0.10));
    const double tail_frac = static_cast<double>(tail) / draws;
    CHECK(tail_frac > 0.000463 / 3);
    CHECK(tail_frac < 0.000463 * 3);
    // the mean is tail dominated, so only a loose band is meaningful here;
    // the acceptance run checks the 1e7-draw tolerances
    CHECK(sum / draws > 0.3 * 612542247.0);
    CHECK(sum / draws < 3.0 * 612542247.0);
}

TEST_CASE("fit rejects impossible targets")
{
    FitTargets bad;
    bad.median = bad.mean + 1;
    CHECK_THROWS_AS(fit_value_sampler(bad), FitError);
}

TEST_CASE("simulate_revenue is deterministic and validates input")
{
    const UniformValueSource values(1000, 1000000);
    RevenueConfig cfg;
    cfg.blocks = 40;
    cfg.seed = 6;
    const RevenueSeries a = simulate_revenue(2000, values, cfg);
    const RevenueSeries b = simulate_revenue(2000, values, cfg);
    REQUIRE(a.revenues.size() == 40);
    CHECK(a.revenues == b.revenues);
    CHECK(a.capacity == 2000);

    cfg.seed = 7;
    CHECK(simulate_revenue(2000, values, cfg).revenues != a.revenues);

    CHECK_THROWS_AS(simulate_revenue(0, values, cfg), RejectedInput);
    cfg.blocks = 0;
    CHECK_THROWS_AS(simulate_revenue(2000, values, cfg), RejectedInput);
}

TEST_CASE("constant transaction values give zero volatility")
{
    const UniformValueSource constant(500000, 500000);
    RevenueConfig cfg;
    cfg.blocks = 50;
    const RevenueSeries series = simulate_revenue(1000, constant, cfg);
    // full blocks of identical fees every interval
    for (std::int64_t r : series.revenues)
        CHECK(r == 1000 * 1000);
    CHECK(historical_volatility(series.revenues).hv == 0.0);
}

TEST_CASE("volatility_curve is ordered and job-count independent")
{
    const UniformValueSource values(1000, 100000000);
    RevenueConfig cfg;
    cfg.blocks = 40;
    cfg.seed = 3;
    const std::vector<std::uint64_t> grid{1000, 2000, 4000, 8000};

    const VolatilityCurve serial = volatility_curve(grid, values, cfg, 1);
    const VolatilityCurve parallel = volatility_curve(grid, values, cfg, 3);
    REQUIRE(serial.points.size() == 4);
    REQUIRE(parallel.points.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(serial.points[i].capacity == grid[i]);
        CHECK(serial.points[i].tps == parallel.points[i].tps);
        CHECK(serial.points[i].hv == parallel.points[i].hv);
        if (i > 0)
            CHECK(serial.points[i].tps > serial.points[i - 1].tps);
    }

    CHECK_THROWS_AS(volatility_curve({2000, 1000}, values, cfg, 1), RejectedInput);
}

TEST_CASE("critical point detection on a synthetic vee")
{
    VolatilityCurve curve;
    for (int i = 0; i < 20; ++i) {
        CurvePoint p;
        p.tps = 50.0 * (i + 1);
        p.hv = std::abs(p.tps - 300.0) / 1000.0 + 0.15;
        p.capacity = static_cast<std::uint64_t>(p.tps * 600);
        curve.points.push_back(p);
    }
    const CriticalPoint cp = find_critical_point(curve);
    CHECK(cp.interior);
    CHECK(cp.tps == 300.0);
    CHECK(cp.hv == doctest::Approx(0.15));
    CHECK(cp.index == 5);
}

TEST_CASE("monotone curves have no interior minimum")
{
    VolatilityCurve curve;
    for (int i = 0; i < 10; ++i) {
        CurvePoint p;
        p.tps = 10.0 * (i + 1);
        p.hv = 1.0 / (i + 1);
        curve.points.push_back(p);
    }
    const CriticalPoint cp = find_critical_point(curve);
    CHECK_FALSE(cp.interior);
    CHECK(cp.index == 9);

    curve.points.resize(4);
    CHECK_THROWS_AS(find_critical_point(curve), RejectedInput);
}

TEST_CASE("acceptable block sizes reproduce Table 6")
{
    const BlockSizeLimits compact = acceptable_block_size(Protocol::Compact);
    CHECK(compact.acceptable_kb == doctest::Approx(4746.09).epsilon(0.0001));
    CHECK(compact.max_kb == 4096.0);

    const BlockSizeLimits xthin = acceptable_block_size(Protocol::XThin);
    CHECK(xthin.acceptable_kb == doctest::Approx(6328.15).epsilon(0.001));
    CHECK(xthin.max_kb == 4096.0);

    const BlockSizeLimits ipfs = acceptable_block_size(Protocol::Ipfs);
    CHECK(ipfs.acceptable_kb == doctest::Approx(25312.50).epsilon(0.0001));
    CHECK(ipfs.max_kb == 4096.0);

    CHECK_THROWS_AS(acceptable_block_size(Protocol::Dino), InfeasibleParameter);
    CHECK_THROWS_AS(acceptable_block_size(Protocol::Compact, 0.0), RejectedInput);
}

TEST_CASE("dataset loading, ordering and stats")
{
    const std::string path = "test_dataset_fixture.csv";
    {
        std::ofstream out(path);
        out << "timestamp_unix,value_satoshi,size_bytes\n";
        out << "300,1000,250\n";
        out << "100,2000,500\n";
        out << "200,600000000000,400\n";
        out << "400,3000,300\n";
    }
    const Dataset data = load_dataset(path);
    REQUIRE(data.rows.size() == 4);
    // chronological after the stable sort
    CHECK(data.rows[0].timestamp_unix == 100);
    CHECK(data.rows[3].timestamp_unix == 400);
    CHECK(data.rows[0].value_satoshi == 2000);
    CHECK(data.stats.count == 4);
    CHECK(data.stats.mean == doctest::Approx((1000.0 + 2000.0 + 6e11 + 3000.0) / 4.0));
    CHECK(data.stats.median == doctest::Approx(2500.0));
    CHECK(data.stats.tail_fraction == doctest::Approx(0.25));
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_dataset("does_not_exist.csv"), ResourceError);
}

TEST_CASE("malformed dataset rows are rejected with a line number")
{
    const std::string path = "test_dataset_bad.csv";
    {
        std::ofstream out(path);
        out << "timestamp_unix,value_satoshi,size_bytes\n";
        out << "100,1000,250\n";
        out << "oops\n";
    }
    try {
        load_dataset(path);
        FAIL("expected RejectedInput");
    } catch (const RejectedInput &e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::remove(path.c_str());

    {
        std::ofstream out(path);
        out << "wrong,header\n";
    }
    CHECK_THROWS_AS(load_dataset(path), RejectedInput);
    std::remove(path.c_str());
}

TEST_CASE("dataset replay wraps chronologically")
{
    DatasetValueSource source({10, 20, 30});
    Rng rng(0);
    CHECK(source.sample(rng) == 10);
    CHECK(source.sample(rng) == 20);
    CHECK(source.sample(rng) == 30);
    CHECK(source.sample(rng) == 10);
    CHECK_THROWS_AS(DatasetValueSource({}), RejectedInput);
}

TEST_CASE("curve csv layout")
{
    VolatilityCurve curve;
    CurvePoint p;
    p.capacity = 1000;
    p.tps = 1000.0 / 600.0;
    p.hv = 0.5;
    curve.points.push_back(p);
    std::ostringstream out;
    write_curve_csv(out, curve);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "capacity,tps,hv,degenerate_flag");
    std::getline(in, line);
    CHECK(line.rfind("1000,1.666667,0.5", 0) == 0);
}

TEST_CASE("report json schemas")
{
    VolatilityCurve curve;
    for (int i = 0; i < 6; ++i) {
        CurvePoint p;
        p.capacity = static_cast<std::uint64_t>(600 * (i + 1));
        p.tps = i + 1.0;
        p.hv = std::abs(i - 3.0) / 10.0 + 0.1;
        curve.points.push_back(p);
    }
    const CriticalPoint cp = find_critical_point(curve);
    const auto j = nlohmann::json::parse(critical_point_json(curve, cp));
    CHECK(j["interior_minimum"] == true);
    CHECK(j["tps"] == cp.tps);
    CHECK(j["reference_hv_band"][0] == kReferenceHvMin);
    CHECK(j["reference_hv_band"][1] == kReferenceHvMax);

    const auto t = nlohmann::json::parse(table6_json());
    CHECK(t["tps_limit"] == 1350.0);
    CHECK(t["protocols"]["compact"]["capacity_at_1MiB"] == 174663);
    CHECK(t["protocols"]["compact"]["tps"] == "291.10");
    CHECK(t["protocols"]["compact"]["bpt"] == 6.0);
    CHECK(t["protocols"]["xthin"]["tps"] == "218.33");
    CHECK(t["protocols"]["ipfs"]["max_kb"] == 4096.0);
    CHECK(t["protocols"]["dino"]["bpt"] == "NA");
    CHECK(t["reference_hv"]["2012"] == 0.238111);
}
