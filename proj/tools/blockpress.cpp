// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "blockpress/exp1.hpp"
#include "blockpress/exp2.hpp"
#include "blockpress/protocols/compact.hpp"
#include "blockpress/protocols/dino.hpp"
#include "blockpress/protocols/graphene.hpp"
#include "blockpress/protocols/ipfs.hpp"
#include "blockpress/protocols/xthinner.hpp"
#include "blockpress/size_model.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace {

using namespace blockpress;

std::vector<Protocol> parse_protocols(const std::string &csv)
{
    std::vector<Protocol> out;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ','))
        if (!token.empty())
            out.push_back(protocol_from_name(token));
    if (out.empty())
        throw RejectedInput("no protocols given");
    return out;
}

void write_file(const std::string &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ResourceError("cannot write " + path);
    out << content;
    if (!out)
        throw ResourceError("write failed: " + path);
}

int cmd_capacity(const std::string &protocols, std::uint64_t block_bytes)
{
    for (Protocol p : parse_protocols(protocols)) {
        const std::uint64_t capacity = block_capacity(p, block_bytes);
        std::cout << protocol_name(p) << ' ' << capacity << '\n';
    }
    return 0;
}

int cmd_sweep(const std::string &protocols, const SweepConfig &cfg, const std::string &out_dir)
{
    std::filesystem::create_directories(out_dir);
    for (Protocol p : parse_protocols(protocols)) {
        const SweepResult result = sweep(p, cfg);
        std::ostringstream raw, summary;
        write_raw_csv(raw, result);
        write_summary_csv(summary, result);
        write_file(out_dir + "/" + protocol_name(p) + "_raw.csv", raw.str());
        write_file(out_dir + "/" + protocol_name(p) + "_summary.csv", summary.str());
    }
    return 0;
}

int cmd_curve(std::size_t points, std::uint64_t cap_min, std::uint64_t cap_max,
              const RevenueConfig &cfg, int jobs, double tps_limit,
              const std::string &dataset_path, std::int64_t constant_value,
              const std::string &out_dir)
{
    std::unique_ptr<ValueSource> sampler;
    if (!dataset_path.empty()) {
        const Dataset ds = load_dataset(dataset_path);
        std::fprintf(stderr, "dataset: %zu rows, mean %.1f, median %.1f, tail %.6f\n",
                     ds.stats.count, ds.stats.mean, ds.stats.median, ds.stats.tail_fraction);
        std::vector<std::int64_t> values;
        values.reserve(ds.rows.size());
        for (const auto &row : ds.rows)
            values.push_back(row.value_satoshi);
        sampler = std::make_unique<DatasetValueSource>(std::move(values));
    } else if (constant_value > 0) {
        sampler = std::make_unique<UniformValueSource>(constant_value, constant_value);
    } else {
        sampler = std::make_unique<MixtureValueSource>(fit_value_sampler());
    }

    const std::vector<std::uint64_t> grid = default_capacity_grid(points, cap_min, cap_max);
    const VolatilityCurve curve = volatility_curve(grid, *sampler, cfg, jobs);
    const CriticalPoint cp = find_critical_point(curve);

    std::filesystem::create_directories(out_dir);
    std::ostringstream csv;
    write_curve_csv(csv, curve);
    write_file(out_dir + "/curve.csv", csv.str());
    write_file(out_dir + "/critical_point.json", critical_point_json(curve, cp));
    write_file(out_dir + "/table6.json", table6_json(tps_limit));
    if (!cp.interior)
        std::cout << "no interior minimum\n";
    else
        std::cout << "critical point: tps " << cp.tps << " hv " << cp.hv << '\n';
    return 0;
}

int cmd_dump_hex(const std::string &protocol, std::uint64_t txs, double multiplier,
                 std::uint64_t seed)
{
    const Protocol p = protocol_from_name(protocol);
    UniformValueSource values(1, 1000000000);
    Mempool pool = generate_mempool(std::max<std::uint64_t>(txs, 1), multiplier, values, seed);
    const std::uint64_t m = pool.size();
    const BlockTemplate block = select_block(pool, txs);

    std::vector<std::uint8_t> payload;
    switch (p) {
    case Protocol::Compact:
        payload = compact_encode(block, seed).serialize();
        break;
    case Protocol::Ipfs:
        payload = ipfs_encode(block).serialize();
        break;
    case Protocol::Graphene: {
        GrapheneConfig cfg;
        cfg.salt = seed;
        payload = graphene_encode(block, m, cfg).serialize();
        break;
    }
    case Protocol::XThinner: {
        std::vector<std::uint64_t> pool_ids, block_ids;
        for (const auto &tx : pool.entries())
            pool_ids.push_back(sketch_id(seed, tx.txid));
        for (const auto &tx : block.txs) {
            pool_ids.push_back(sketch_id(seed, tx.txid));
            block_ids.push_back(sketch_id(seed, tx.txid));
        }
        std::sort(pool_ids.begin(), pool_ids.end());
        std::sort(block_ids.begin(), block_ids.end());
        payload = xthinner_encode(block_ids, pool_ids, seed).serialize();
        break;
    }
    case Protocol::Dino:
        payload = dino_encode(block, block.txs, {}).serialize();
        break;
    case Protocol::XThin:
        throw RejectedInput("xthin has no standalone sender payload; its filter is receiver-side");
    }

    static const char *hex = "0123456789abcdef";
    std::string line;
    line.reserve(payload.size() * 2 + 1);
    for (std::uint8_t b : payload) {
        line.push_back(hex[b >> 4]);
        line.push_back(hex[b & 15]);
    }
    std::cout << line << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"block compression protocols and experiments"};
    app.require_subcommand(1);
    app.set_config("--config")->description("INI config; keys mirror flag names");

    std::uint64_t seed = 0;
    int jobs = 0;
    app.add_option("--seed", seed, "master RNG seed")->envname("BLOCKPRESS_SEED");
    app.add_option("--jobs", jobs, "worker threads, 0 = all cores");

    // capacity
    auto *cap_cmd = app.add_subcommand("capacity", "block capacity at a given size (Eq. 1)");
    cap_cmd->fallthrough();
    std::string cap_protocols = "compact,xthin,graphene,xthinner,ipfs";
    std::uint64_t cap_bytes = kMebibyte;
    cap_cmd->add_option("--protocols", cap_protocols, "comma separated protocol names");
    cap_cmd->add_option("--block-bytes", cap_bytes, "maximum block size in bytes");

    // sweep
    auto *sweep_cmd = app.add_subcommand("sweep", "experiment 1: size vs capacity Monte Carlo");
    sweep_cmd->fallthrough();
    std::string sweep_protocols = "graphene,xthinner";
    int trials = 100;
    std::size_t sweep_points = 40;
    std::uint64_t sweep_min = 1000, sweep_max = 1000000;
    double multiplier = kDefaultMultiplier;
    std::string sweep_out = "out";
    sweep_cmd->add_option("--protocols", sweep_protocols, "comma separated protocol names");
    sweep_cmd->add_option("--trials", trials, "Monte Carlo trials per capacity (>= 30)");
    sweep_cmd->add_option("--points", sweep_points, "log-spaced capacity grid points");
    sweep_cmd->add_option("--cap-min", sweep_min, "smallest capacity");
    sweep_cmd->add_option("--cap-max", sweep_max, "largest capacity");
    sweep_cmd->add_option("--multiplier", multiplier, "mempool multiplier");
    sweep_cmd->add_option("--out-dir", sweep_out, "output directory");

    // curve
    auto *curve_cmd = app.add_subcommand("curve", "experiment 2: HV vs TPS curve");
    curve_cmd->fallthrough();
    std::size_t curve_points = 30;
    std::uint64_t curve_min = 1000, curve_max = 1000000;
    int blocks = 2000;
    double fee_rate = kDefaultFeeRate;
    double curve_multiplier = kDefaultMultiplier;
    double tps_limit = 1350.0;
    std::string dataset_path;
    std::int64_t constant_value = 0;
    std::string curve_out = "out";
    curve_cmd->add_option("--points", curve_points, "capacity grid points");
    curve_cmd->add_option("--cap-min", curve_min, "smallest capacity");
    curve_cmd->add_option("--cap-max", curve_max, "largest capacity");
    curve_cmd->add_option("--blocks", blocks, "blocks per capacity point");
    curve_cmd->add_option("--fee-rate", fee_rate, "transaction fee fraction");
    curve_cmd->add_option("--multiplier", curve_multiplier, "mempool multiplier");
    curve_cmd->add_option("--tps-limit", tps_limit, "scaling limit for the size table");
    curve_cmd->add_option("--dataset", dataset_path, "transaction CSV replayed in time order");
    curve_cmd->add_option("--constant-value", constant_value,
                          "use a fixed transaction value (dispersion ablation)");
    curve_cmd->add_option("--out-dir", curve_out, "output directory");

    // dump-hex
    auto *dump_cmd = app.add_subcommand("dump-hex", "hex of one protocol payload (golden tests)");
    dump_cmd->fallthrough();
    std::string dump_protocol = "compact";
    std::uint64_t dump_txs = 16;
    double dump_multiplier = kDefaultMultiplier;
    dump_cmd->add_option("--protocol", dump_protocol, "protocol name");
    dump_cmd->add_option("--txs", dump_txs, "block transaction count");
    dump_cmd->add_option("--multiplier", dump_multiplier, "mempool multiplier");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cap_cmd->parsed())
            return cmd_capacity(cap_protocols, cap_bytes);
        if (sweep_cmd->parsed()) {
            SweepConfig cfg;
            cfg.capacities = default_capacity_grid(sweep_points, sweep_min, sweep_max);
            cfg.trials = trials;
            cfg.multiplier = multiplier;
            cfg.seed = seed;
            cfg.jobs = jobs;
            return cmd_sweep(sweep_protocols, cfg, sweep_out);
        }
        if (curve_cmd->parsed()) {
            RevenueConfig cfg;
            cfg.blocks = blocks;
            cfg.multiplier = curve_multiplier;
            cfg.fee_rate = fee_rate;
            cfg.seed = seed;
            return cmd_curve(curve_points, curve_min, curve_max, cfg, jobs, tps_limit,
                             dataset_path, constant_value, curve_out);
        }
        if (dump_cmd->parsed())
            return cmd_dump_hex(dump_protocol, dump_txs, dump_multiplier, seed);
    } catch (const InfeasibleParameter &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const ResourceError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
