"""Per-step dynamic resource exchange.

Facilities broadcast requests, suppliers answer with bids, and an allocator
resolves which transfers happen. The allocator here is a deterministic greedy
pass in descending request preference; unfilled demand is a legal outcome
(it is the phenomenon under study, not an error).

Bids may only offer inventory held at the start of the step; material a
supplier receives during a step is biddable the following step. That
information lag is enforced by the kernel's snapshot discipline, not here:
``resolve`` is a pure function of the book it is handed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from fuelcycle.core import Material

LOT_EPS = 1e-9


@dataclass
class Request:
    requester: str
    commodity: str
    quantity: float
    lot_size: float
    divisible: bool = True
    preference: float = 1.0
    #: submission order within the step; assigned by the book
    seq: int = -1

    def __post_init__(self) -> None:
        if self.quantity <= 0:
            raise ValueError(f"request quantity must be > 0, got {self.quantity}")
        if self.lot_size <= 0:
            raise ValueError(f"lot size must be > 0, got {self.lot_size}")


@dataclass
class Bid:
    supplier: str
    request_seq: int
    available: float

    def __post_init__(self) -> None:
        if self.available < 0:
            raise ValueError("bid availability must be >= 0")


@dataclass
class Allocation:
    supplier: str
    requester: str
    commodity: str
    mass: float
    request_seq: int
    payload: Optional[Material] = None


@dataclass
class ExchangeBook:
    """One step's requests, bids, and resolved allocations."""

    requests: list[Request] = field(default_factory=list)
    bids: list[Bid] = field(default_factory=list)

    def submit(self, request: Request) -> Request:
        request.seq = len(self.requests)
        self.requests.append(request)
        return request

    def offer(self, bid: Bid) -> None:
        if not 0 <= bid.request_seq < len(self.requests):
            raise ValueError(f"bid references unknown request {bid.request_seq}")
        self.bids.append(bid)


def fuel_sharing_preference(base_pref: float, lots_needed: int) -> float:
    """Preference for a fresh fuel request, discounted by lots still needed.

    Requesters that need fewer lots to reach a full core rank higher, so
    constrained fuel goes where it can actually bring a reactor online.
    Identity at one lot; strictly decreasing in lots_needed.
    """
    if lots_needed < 1:
        raise ValueError(f"lots_needed must be >= 1, got {lots_needed}")
    return base_pref / lots_needed


def _lot_floor(mass: float, lot_size: float) -> float:
    lots = math.floor(mass / lot_size + LOT_EPS)
    return lots * lot_size


def resolve(
    requests: list[Request],
    bids: list[Bid],
    supplier_caps: Optional[dict[str, float]] = None,
) -> list[Allocation]:
    """Greedy allocation in strictly non-increasing preference order.

    Ties break by requester id ascending, then submission order. Indivisible
    requests are filled in whole multiples of their lot size (partial fills
    in lot multiples are allowed). Suppliers are never committed beyond their
    stated availability or per-step cap.
    """
    supplier_caps = supplier_caps or {}
    cap_left = dict(supplier_caps)
    avail_left = {id(b): b.available for b in bids}

    bids_by_request: dict[int, list[Bid]] = {}
    for b in bids:
        bids_by_request.setdefault(b.request_seq, []).append(b)

    order = sorted(requests, key=lambda r: (-r.preference, r.requester, r.seq))
    allocations: list[Allocation] = []
    for req in order:
        remaining = req.quantity
        for bid in bids_by_request.get(req.seq, []):
            if remaining <= LOT_EPS:
                break
            offer = avail_left[id(bid)]
            if bid.supplier in cap_left:
                offer = min(offer, cap_left[bid.supplier])
            grant = min(remaining, offer)
            if not req.divisible:
                grant = _lot_floor(grant, req.lot_size)
            if grant <= LOT_EPS:
                continue
            avail_left[id(bid)] -= grant
            if bid.supplier in cap_left:
                cap_left[bid.supplier] -= grant
            remaining -= grant
            allocations.append(
                Allocation(bid.supplier, req.requester, req.commodity, grant, req.seq)
            )
    return allocations
