"""Exhaustive existence search for temporally fair allocations.

Small instances only: the assignment space is every way to hand each good
to an agent (and, in scheduling mode, every legal placement round for it).
Depth-first with prefix pruning: once all goods arriving by round t are
decided, the bundle prefix at t is final, so a violation there kills the
whole branch.  Prefixes whose bundles did not change inherit the previous
verdict and are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .errors import TempfairError
from .fairness import Concept, prefix_violation
from .model import Schedule, TemporalAllocation, TemporalInstance, good_key


class SearchCapExceeded(TempfairError):
    """Instance too large for exhaustive existence search."""


# 3^14 assignments is the reference budget; caps for other agent counts
# are chosen so n^m stays within it (two agents get the larger 2^18).
_BUDGET = 3**14


def goods_cap(n_agents: int) -> int:
    """Largest good count search accepts for this many agents."""
    if n_agents <= 2:
        return 18
    if n_agents == 3:
        return 14
    m = 1
    while n_agents ** (m + 1) <= _BUDGET:
        m += 1
    return m


@dataclass(frozen=True)
class SearchOutcome:
    """Result of an existence search.

    ``exists`` with a witness allocation, or a proof by exhaustion: every
    assignment in the pruned space was covered.  ``space_bound`` is the raw
    assignment count before pruning and symmetry reduction;
    ``nodes_visited`` counts attempted single-good decisions.
    """

    exists: bool
    witness: TemporalAllocation | None
    nodes_visited: int
    space_bound: int

    def to_json(self) -> dict:
        from .model import allocation_to_json

        return {
            "exists": self.exists,
            "witness": (
                allocation_to_json(self.witness) if self.witness else None
            ),
            "nodes_visited": self.nodes_visited,
            "space_bound": self.space_bound,
        }


def search(
    instance: TemporalInstance,
    concept: Concept,
    use_scheduling: bool = False,
    share_cap: int | None = 16,
) -> SearchOutcome:
    """Decide whether any allocation satisfies the concept at every prefix.

    Goods are decided in arrival order (id order within a round); each
    decision is a placement round (arrival only, unless ``use_scheduling``)
    and an owner.  Placements enumerate in increasing round order and
    owners in increasing index, so the first witness found is the
    lexicographically least one.  Among agents whose bundles are still
    empty, those with identical valuation rows are interchangeable, so only
    the lowest-indexed one of each group is tried; this loses no outcomes
    and returns the same first witness the unreduced order would.
    """
    goods = sorted(instance.goods, key=lambda g: (g.arrival, good_key(g.id)))
    m = len(goods)
    n = instance.n_agents
    cap = goods_cap(n)
    if m > cap:
        raise SearchCapExceeded(
            f"{m} goods with {n} agents exceeds the search cap of {cap}"
        )

    horizon = instance.horizon
    windows: list[range] = []
    for g in goods:
        if use_scheduling:
            last = min(g.arrival + instance.buffer - 1, horizon)
        else:
            last = g.arrival
        windows.append(range(g.arrival, last + 1))
    space_bound = prod(n * len(w) for w in windows) if m else 1

    # after good k, rounds arrival(k) .. arrival(k+1)-1 have no pending
    # arrivals left, so their prefixes are final and safe to check
    span_after: list[tuple[int, int] | None] = [None] * m
    for k in range(m):
        here = goods[k].arrival
        if k + 1 == m:
            span_after[k] = (here, horizon)
        elif goods[k + 1].arrival > here:
            span_after[k] = (here, goods[k + 1].arrival - 1)

    rows = {
        i: tuple(instance.value(i, g.id) for g in goods)
        for i in instance.agents
    }
    owner: dict[str, int] = {}
    placed: dict[str, int] = {}
    nodes = 0

    def prefix_ok(t: int) -> bool:
        bundles = [
            frozenset(g for g, r in placed.items() if r <= t and owner[g] == i)
            for i in instance.agents
        ]
        return prefix_violation(instance, bundles, concept, cap=share_cap) is None

    def spans_ok(k: int) -> bool:
        span = span_after[k]
        if span is None:
            return True
        lo, hi = span
        landed = set(placed.values())
        return all(prefix_ok(t) for t in range(lo, hi + 1) if t in landed)

    def descend(k: int) -> bool:
        nonlocal nodes
        if k == m:
            return True
        gid = goods[k].id
        occupied = set(owner.values())
        for t in windows[k]:
            seen_rows = set()
            for i in instance.agents:
                if i not in occupied:
                    if rows[i] in seen_rows:
                        continue
                    seen_rows.add(rows[i])
                nodes += 1
                owner[gid] = i
                placed[gid] = t
                if spans_ok(k) and descend(k + 1):
                    return True
                del owner[gid]
                del placed[gid]
        return False

    if descend(0):
        witness = TemporalAllocation(
            owner=dict(owner), schedule=Schedule(placement=dict(placed))
        )
        return SearchOutcome(True, witness, nodes, space_bound)
    return SearchOutcome(False, None, nodes, space_bound)
