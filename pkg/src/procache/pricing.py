"""Congestion-price dynamics for cache storage.

A cache's price rises when the demand for caching exceeds its storage
and falls (projected at zero) otherwise:

    p(t+1) = max(0, p(t) + gamma * (demand(t) - capacity))

The same dynamics serve both the full-object model (demand counts whole
object sizes) and the partial-object model (demand sums fractional
prefetch amounts).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .model import CacheNode, Decision


@dataclass
class PriceState:
    """Price, update factor, and storage limit of one cache."""

    price: float = 0.0
    gamma: float = 0.5
    capacity: float = 0.0

    def __post_init__(self):
        if self.gamma <= 0:
            raise ValueError("gamma must be > 0")
        if self.price < 0:
            raise ValueError("price must be >= 0")

    def apply(self, aggregate_demand: float) -> float:
        self.price = update_price_full(self, aggregate_demand)
        return self.price


def update_price_full(state: PriceState, aggregate_demand: float) -> float:
    """One price step under full-object demand (storage units)."""
    if aggregate_demand < 0:
        raise ValueError("aggregate demand must be >= 0")
    return max(0.0, state.price + state.gamma * (aggregate_demand - state.capacity))


def update_price_partial(state: PriceState, aggregate_partial_demand: float) -> float:
    """One price step under continuous partial-object demand.

    Same projection dynamics as the full-object update; the demand is
    the sum of fractional prefetch amounts requested at the cache.
    """
    return update_price_full(state, aggregate_partial_demand)


def measure_demand(cache: CacheNode, pending_decisions: Iterable[Decision]) -> float:
    """Aggregate storage demand at a cache.

    Committed occupancy plus the storage that the pending would-cache
    decisions ask for at the current price. Demand may exceed capacity:
    admission is capped by free space, the demand signal is not.
    """
    demand = cache.occupied
    for decision in pending_decisions:
        if decision.wants_storage:
            demand += decision.amount
    return demand
