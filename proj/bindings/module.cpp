// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "blockpress/exp1.hpp"
#include "blockpress/exp2.hpp"
#include "blockpress/protocols/compact.hpp"
#include "blockpress/protocols/graphene.hpp"
#include "blockpress/size_model.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace blockpress;

namespace {

std::uint64_t py_capacity(const std::string &protocol, std::uint64_t block_bytes)
{
    return block_capacity(protocol_from_name(protocol), block_bytes);
}

double py_bpt(const std::string &protocol) { return bytes_per_tx(protocol_from_name(protocol)); }

double py_hv(const std::vector<std::int64_t> &revenues)
{
    return historical_volatility(revenues).hv;
}

std::uint64_t py_measure(const std::string &protocol, std::uint64_t capacity,
                         double multiplier, std::uint64_t seed)
{
    SweepConfig cfg;
    cfg.multiplier = multiplier;
    cfg.seed = seed;
    return run_trial(protocol_from_name(protocol), capacity, cfg, 0);
}

py::dict py_limits(const std::string &protocol, double tps_limit)
{
    const BlockSizeLimits limits = acceptable_block_size(protocol_from_name(protocol), tps_limit);
    py::dict out;
    out["acceptable_kb"] = limits.acceptable_kb;
    out["max_kb"] = limits.max_kb;
    return out;
}

py::list py_curve(const std::vector<std::uint64_t> &capacities, int blocks, std::uint64_t seed)
{
    const MixtureValueSource sampler = fit_value_sampler();
    RevenueConfig cfg;
    cfg.blocks = blocks;
    cfg.seed = seed;
    py::list out;
    for (const auto &p : volatility_curve(capacities, sampler, cfg, 1).points) {
        py::dict d;
        d["capacity"] = p.capacity;
        d["tps"] = p.tps;
        d["hv"] = p.hv;
        out.append(d);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_blockpress, m)
{
    m.doc() = "block compression protocols and fee-regime experiments";

    m.def("capacity", &py_capacity, py::arg("protocol"), py::arg("block_bytes") = kMebibyte,
          "maximum transactions per block under a protocol's size model");
    m.def("bytes_per_tx", &py_bpt, py::arg("protocol"));
    m.def("measure_size", &py_measure, py::arg("protocol"), py::arg("capacity"),
          py::arg("multiplier") = kDefaultMultiplier, py::arg("seed") = 0,
          "compressed block bytes for one seeded trial");
    m.def("historical_volatility", &py_hv, py::arg("revenues"),
          "sample standard deviation of log returns");
    m.def("tps", &tps, py::arg("capacity"), py::arg("block_interval_s") = 600);
    m.def("graphene_optimal_a", &graphene_optimal_a, py::arg("n"), py::arg("m"),
          py::arg("tau") = 24.0);
    m.def("acceptable_block_size", &py_limits, py::arg("protocol"),
          py::arg("tps_limit") = 1350.0);
    m.def("volatility_curve", &py_curve, py::arg("capacities"), py::arg("blocks") = 2000,
          py::arg("seed") = 0);

    py::register_exception<RejectedInput>(m, "RejectedInput", PyExc_ValueError);
    py::register_exception<InfeasibleParameter>(m, "InfeasibleParameter", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
}
