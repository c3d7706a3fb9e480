"""Core domain types: requests, caches, delay models, placement decisions.

Delays are dimensionless ratios normalized to the local-cache delay
(d_local = 1 by convention), since only delay ratios matter for the
admission rules. Storage is measured in abstract units where one
equal-size object occupies 1 unit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional

PROB_TOL = 1e-9


class CacheLevel(Enum):
    LEAF = "leaf"
    MID = "mid"


class Action(Enum):
    FULL = "full"
    SKIP = "skip"
    PARTIAL = "partial"


@dataclass(frozen=True)
class ObjectRequest:
    """One mobile's pending request for a data object.

    ``trans_probs`` maps attachment-point (cache) id to the probability
    that the owning mobile next attaches there; the probabilities must
    sum to one. ``popularity`` is an additive bonus applied on top of the
    transition probability wherever an effective weight is formed
    (default 0, i.e. pure mobility-driven behavior).
    """

    id: int
    mobile_id: int
    trans_probs: Mapping[int, float]
    size: float = 1.0
    popularity: float = 0.0
    issued_at: int = 0

    def __post_init__(self):
        if self.size <= 0:
            raise ValueError(f"request {self.id}: size must be > 0, got {self.size}")
        if self.popularity < 0:
            raise ValueError(f"request {self.id}: popularity must be >= 0")
        total = sum(self.trans_probs.values())
        if abs(total - 1.0) > PROB_TOL:
            raise ValueError(
                f"request {self.id}: transition probabilities sum to {total!r}, not 1"
            )
        if any(q < 0 for q in self.trans_probs.values()):
            raise ValueError(f"request {self.id}: negative transition probability")

    def weight_at(self, cache_id: int) -> float:
        """Effective placement weight at a cache: q + popularity."""
        return self.trans_probs.get(cache_id, 0.0) + self.popularity


@dataclass
class CacheNode:
    """A leaf or mid-level cache with a congestion price.

    ``cached_set`` maps request id to the committed amount; ``occupied``
    is kept equal to its sum. Prices are projected at zero and never go
    negative. Admission never evicts: a full cache simply rejects.
    """

    id: int
    capacity: float
    level: CacheLevel = CacheLevel.LEAF
    parent: Optional[int] = None
    price: float = 0.0
    gamma: float = 0.5
    occupied: float = 0.0
    cached_set: dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.capacity < 0:
            raise ValueError("capacity must be >= 0")
        if self.gamma <= 0:
            raise ValueError("gamma must be > 0")
        if self.price < 0:
            raise ValueError("price must be >= 0")
        if self.level is CacheLevel.MID and self.parent is not None:
            raise ValueError("mid-level caches cannot have a parent")

    @property
    def free(self) -> float:
        return self.capacity - self.occupied

    def add(self, request_id: int, amount: float) -> None:
        if amount > self.free + 1e-12:
            raise ValueError(
                f"cache {self.id}: admitting {amount} exceeds free space {self.free}"
            )
        if request_id in self.cached_set:
            raise ValueError(f"cache {self.id}: request {request_id} already cached")
        self.cached_set[request_id] = amount
        self.occupied += amount

    def release(self, request_id: int) -> float:
        amount = self.cached_set.pop(request_id, 0.0)
        self.occupied -= amount
        if self.occupied < 0:
            self.occupied = 0.0
        return amount


@dataclass(frozen=True)
class SizeIndependentDelays:
    """Fixed per-fetch delays: local < mid < remote (ratios to d_local).

    ``remote_overrides`` optionally gives a per-(request, cache) remote
    delay, for scenarios where the distance to the object source differs
    per mobile and attachment point.
    """

    d_local: float = 1.0
    d_mid: Optional[float] = None
    d_remote: float = 10.0
    remote_overrides: Optional[Mapping[tuple[int, int], float]] = None

    def __post_init__(self):
        if self.d_mid is not None and not (self.d_local < self.d_mid < self.d_remote):
            raise ValueError("need d_local < d_mid < d_remote")
        if self.d_mid is None and not (self.d_local < self.d_remote):
            raise ValueError("need d_local < d_remote")

    def remote(self, request_id: int, cache_id: int) -> float:
        if self.remote_overrides is not None:
            return self.remote_overrides.get((request_id, cache_id), self.d_remote)
        return self.d_remote


@dataclass(frozen=True)
class SizeDependentRates:
    """Transfer rates for the partial-caching model: remote < local."""

    rate_local: float
    rate_remote: float

    def __post_init__(self):
        if not (0 < self.rate_remote < self.rate_local):
            raise ValueError("need 0 < rate_remote < rate_local")


DelayModel = SizeIndependentDelays | SizeDependentRates


@dataclass(frozen=True)
class Decision:
    """Outcome of a placement rule for one (request, cache) pair.

    ``amount`` is the storage the decision would commit: the request size
    for FULL, the partial prefetch amount for PARTIAL, 0 for SKIP.
    """

    request_id: int
    cache_id: int
    action: Action
    amount: float = 0.0

    def __post_init__(self):
        if self.action is Action.SKIP and self.amount != 0.0:
            raise ValueError("skip decisions carry no storage")
        if self.action is not Action.SKIP and self.amount <= 0:
            raise ValueError("non-skip decisions must commit positive storage")

    @property
    def wants_storage(self) -> bool:
        return self.action is not Action.SKIP


def expected_delay(
    request: ObjectRequest,
    placements: Mapping[int, Decision],
    model: SizeIndependentDelays,
    parents: Optional[Mapping[int, Optional[int]]] = None,
) -> float:
    """Expected object-transfer delay under a placement.

    Sums, over every attachment point the mobile can move to, the
    transition probability times the delay implied by the placement
    there: local delay if cached at the leaf, mid delay if only the
    leaf's parent holds it, else the remote delay. ``placements`` may
    also contain an entry for a mid cache (keyed by its id); ``parents``
    maps leaf id to mid id for two-level structures.
    """
    if not isinstance(model, SizeIndependentDelays):
        raise TypeError("expected_delay is defined for size-independent delays")
    total = 0.0
    for cache_id, q in request.trans_probs.items():
        if q == 0.0:
            continue
        if cache_id not in placements:
            raise KeyError(f"placements missing cache {cache_id} with q > 0")
        decision = placements[cache_id]
        d_remote = model.remote(request.id, cache_id)
        if decision.action is Action.FULL:
            d = model.d_local
        else:
            mid_id = parents.get(cache_id) if parents else None
            mid_cached = (
                mid_id is not None
                and mid_id in placements
                and placements[mid_id].action is Action.FULL
            )
            if mid_cached and model.d_mid is not None:
                d = min(model.d_mid, d_remote)
            else:
                d = d_remote
        total += q * d
    return total


def gain(avg_delay_scheme: float, avg_delay_nocache: float) -> float:
    """Relative delay reduction versus fetching everything remotely."""
    if avg_delay_nocache <= 0:
        raise ValueError("no-cache delay must be > 0")
    if avg_delay_scheme < 0:
        raise ValueError("scheme delay must be >= 0")
    if avg_delay_scheme > avg_delay_nocache + 1e-12:
        raise ValueError("scheme delay exceeds the no-cache delay")
    return 1.0 - avg_delay_scheme / avg_delay_nocache
