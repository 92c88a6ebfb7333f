"""Block compression protocols and fee-regime mining experiments."""

from ._blockpress import (
    InfeasibleParameter,
    RejectedInput,
    ResourceError,
    acceptable_block_size,
    bytes_per_tx,
    capacity,
    graphene_optimal_a,
    historical_volatility,
    measure_size,
    tps,
    volatility_curve,
)

__all__ = [
    "InfeasibleParameter",
    "RejectedInput",
    "ResourceError",
    "acceptable_block_size",
    "bytes_per_tx",
    "capacity",
    "graphene_optimal_a",
    "historical_volatility",
    "measure_size",
    "tps",
    "volatility_curve",
]
