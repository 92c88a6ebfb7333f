import math

import pytest

import blockpress as bp


def test_capacities_at_one_mebibyte():
    assert bp.capacity("compact") == 174663
    assert bp.capacity("xthin") == 130999
    assert bp.capacity("ipfs") == 32765


def test_unknown_protocol():
    with pytest.raises(ValueError):
        bp.capacity("zstd")


def test_infeasible_block_size():
    with pytest.raises(ValueError):
        bp.capacity("compact", 100)


def test_tps():
    assert bp.tps(174663) == pytest.approx(291.105)
    assert bp.tps(600) == 1.0


def test_historical_volatility():
    assert bp.historical_volatility([5, 5, 5, 5]) == 0.0
    e = math.e
    assert bp.historical_volatility([10**9, round(e * 10**9), 10**9]) == pytest.approx(
        math.sqrt(2), rel=1e-6
    )


def test_graphene_optimal_a():
    a = bp.graphene_optimal_a(2100, 6132)
    assert a == pytest.approx(2100 / (8 * 24 * math.log(2) ** 2), rel=1e-12)


def test_acceptable_block_size_clamps():
    limits = bp.acceptable_block_size("compact")
    assert limits["acceptable_kb"] == pytest.approx(4746.09, abs=0.01)
    assert limits["max_kb"] == 4096.0


def test_measure_size_deterministic():
    a = bp.measure_size("xthinner", 2000, seed=7)
    b = bp.measure_size("xthinner", 2000, seed=7)
    assert a == b
    assert a > 580
