"""Core data model for temporal fair division instances.

Goods arrive over a horizon of ``T`` rounds.  Every good carries one value
per agent (exact rationals throughout; floats are rejected at the JSON
boundary).  A schedule maps each good to the round it is actually handed
out, which defaults to its arrival round and may be pushed back by at most
``buffer - 1`` rounds.  An allocation pairs a schedule with an owner map.

Agents are indexed 1..n in the public API.  Internally bundles are kept as
tuples indexed 0..n-1; helpers here do the translation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import BufferViolation, ValidationError

Rational = Fraction


def good_key(good_id: str) -> tuple[int, str]:
    """Sort key for good ids: length first, then lexicographic.

    Makes ``g2`` sort before ``g10`` without requiring numeric suffixes.
    """
    return (len(good_id), good_id)


def parse_rational(text) -> Fraction:
    """Parse a rational from a string like '3' or '2/7'.

    Ints pass through.  Floats are rejected: exactness is load-bearing for
    every checker in this package.
    """
    if isinstance(text, bool):
        raise ValidationError(f"not a rational value: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise ValidationError(
            f"float value {text!r} rejected; use a string like '1/3'"
        )
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad rational literal {text!r}") from exc
    raise ValidationError(f"not a rational value: {text!r}")


@dataclass(frozen=True)
class Good:
    """One indivisible good: an id, an arrival round, and per-agent values."""

    id: str
    arrival: int
    values: tuple[Fraction, ...]


@dataclass(frozen=True)
class TemporalInstance:
    """An arrival sequence of goods plus the number of agents and the buffer.

    ``buffer`` is the width of the placement window: a good arriving at
    round t may be handed out at any round in [t, t + buffer - 1] that does
    not exceed the horizon.  ``buffer == 1`` means goods are handed out on
    arrival, which is the plain (unscheduled) model.
    """

    n_agents: int
    horizon: int
    goods: tuple[Good, ...]
    buffer: int = 1

    def __post_init__(self):
        if self.n_agents < 1:
            raise ValidationError("need at least one agent")
        if self.horizon < 1:
            raise ValidationError("horizon must be at least 1")
        if self.buffer < 1:
            raise ValidationError("buffer must be at least 1")
        seen = set()
        for g in self.goods:
            if g.id in seen:
                raise ValidationError(f"duplicate good id {g.id!r}")
            seen.add(g.id)
            if not 1 <= g.arrival <= self.horizon:
                raise ValidationError(
                    f"good {g.id!r} arrives at round {g.arrival}, "
                    f"outside 1..{self.horizon}"
                )
            if len(g.values) != self.n_agents:
                raise ValidationError(
                    f"good {g.id!r} has {len(g.values)} values for "
                    f"{self.n_agents} agents"
                )
            for v in g.values:
                if not isinstance(v, Fraction):
                    raise ValidationError(
                        f"good {g.id!r} has non-Fraction value {v!r}"
                    )
                if v < 0:
                    raise ValidationError(f"good {g.id!r} has negative value")

    @property
    def agents(self) -> range:
        """Agent indices, 1-based."""
        return range(1, self.n_agents + 1)

    @cached_property
    def goods_by_id(self) -> dict[str, Good]:
        return {g.id: g for g in self.goods}

    @cached_property
    def rounds(self) -> tuple[tuple[str, ...], ...]:
        """Good ids grouped by arrival round, each group in canonical order."""
        buckets: list[list[str]] = [[] for _ in range(self.horizon)]
        for g in self.goods:
            buckets[g.arrival - 1].append(g.id)
        return tuple(tuple(sorted(b, key=good_key)) for b in buckets)

    @cached_property
    def value_table(self) -> dict[int, dict[str, Fraction]]:
        """Per-agent value lookup, keyed by 1-based agent then good id."""
        return {
            i: {g.id: g.values[i - 1] for g in self.goods}
            for i in self.agents
        }

    def value(self, agent: int, good_id: str) -> Fraction:
        """Value of one good to one agent (agent is 1-based)."""
        return self.goods_by_id[good_id].values[agent - 1]

    def bundle_value(self, agent: int, bundle: Iterable[str]) -> Fraction:
        return sum(
            (self.value(agent, gid) for gid in bundle), start=Fraction(0)
        )

    @classmethod
    def from_value_rounds(
        cls,
        value_rounds: Sequence[Sequence[Sequence]],
        buffer: int = 1,
    ) -> "TemporalInstance":
        """Build an instance from per-round lists of per-agent value vectors.

        ``value_rounds[t][k]`` is the value vector of the k-th good arriving
        at round t+1.  Ids are generated as g1, g2, ... zero-padded so the
        canonical good order matches creation order.
        """
        total = sum(len(r) for r in value_rounds)
        width = len(str(total)) if total else 1
        n = None
        goods = []
        counter = 0
        for t, round_goods in enumerate(value_rounds, start=1):
            for vec in round_goods:
                if n is None:
                    n = len(vec)
                counter += 1
                goods.append(
                    Good(
                        id=f"g{counter:0{width}d}",
                        arrival=t,
                        values=tuple(
                            v if isinstance(v, Fraction) else Fraction(v)
                            for v in vec
                        ),
                    )
                )
        if n is None:
            raise ValidationError("instance has no goods")
        return cls(
            n_agents=n,
            horizon=len(value_rounds),
            goods=tuple(goods),
            buffer=buffer,
        )


@dataclass(frozen=True)
class Schedule:
    """Maps each good id to the round it is handed out."""

    placement: Mapping[str, int]

    @classmethod
    def at_arrival(cls, instance: TemporalInstance) -> "Schedule":
        return cls({g.id: g.arrival for g in instance.goods})

    def round_of(self, good_id: str) -> int:
        return self.placement[good_id]


def apply_delay(
    instance: TemporalInstance,
    schedule: Schedule,
    good_id: str,
    shift: int,
) -> Schedule:
    """Return a schedule with one good moved to arrival + shift - 1.

    ``shift`` ranges over 1..buffer; shift == 1 keeps the arrival round.
    The target round must not pass the horizon.
    """
    good = instance.goods_by_id.get(good_id)
    if good is None:
        raise ValidationError(f"unknown good {good_id!r}")
    if shift < 1:
        raise BufferViolation(f"shift {shift} below 1")
    if shift > instance.buffer:
        raise BufferViolation(
            f"shift {shift} exceeds buffer {instance.buffer}"
        )
    target = good.arrival + shift - 1
    if target > instance.horizon:
        raise BufferViolation(
            f"good {good_id!r} would be placed at round {target}, "
            f"past horizon {instance.horizon}"
        )
    new_placement = dict(schedule.placement)
    new_placement[good_id] = target
    return Schedule(new_placement)


@dataclass(frozen=True)
class TemporalAllocation:
    """A full outcome: when each good is handed out and to whom.

    ``owner`` maps good id to a 1-based agent index.
    """

    schedule: Schedule
    owner: Mapping[str, int]

    def bundles_at(
        self, instance: TemporalInstance, t: int
    ) -> tuple[frozenset[str], ...]:
        return prefix(instance, self, t)

    def final_bundles(
        self, instance: TemporalInstance
    ) -> tuple[frozenset[str], ...]:
        return prefix(instance, self, instance.horizon)


def prefix(
    instance: TemporalInstance,
    allocation: TemporalAllocation,
    t: int,
) -> tuple[frozenset[str], ...]:
    """Per-agent bundles of goods handed out in rounds 1..t.

    t = 0 gives empty bundles.  Index i-1 of the result is agent i's bundle.
    """
    if not 0 <= t <= instance.horizon:
        raise ValidationError(
            f"round {t} outside 0..{instance.horizon}"
        )
    bundles: list[set[str]] = [set() for _ in range(instance.n_agents)]
    for gid, agent in allocation.owner.items():
        if allocation.schedule.round_of(gid) <= t:
            bundles[agent - 1].add(gid)
    return tuple(frozenset(b) for b in bundles)


def validate(instance: TemporalInstance, allocation: TemporalAllocation) -> None:
    """Check an allocation against the instance; raise on any defect.

    Every good must be owned by a valid agent and placed inside its delay
    window, no later than the horizon.
    """
    owned = set(allocation.owner)
    all_ids = set(instance.goods_by_id)
    missing = all_ids - owned
    if missing:
        raise ValidationError(f"goods never allocated: {sorted(missing, key=good_key)}")
    extra = owned - all_ids
    if extra:
        raise ValidationError(f"unknown goods in allocation: {sorted(extra, key=good_key)}")
    for gid, agent in allocation.owner.items():
        if not 1 <= agent <= instance.n_agents:
            raise ValidationError(f"good {gid!r} owned by invalid agent {agent}")
        placed = allocation.schedule.placement.get(gid)
        if placed is None:
            raise ValidationError(f"good {gid!r} has no placement round")
        arrival = instance.goods_by_id[gid].arrival
        if placed < arrival:
            raise BufferViolation(
                f"good {gid!r} placed at round {placed} before arrival {arrival}"
            )
        if placed > arrival + instance.buffer - 1:
            raise BufferViolation(
                f"good {gid!r} placed at round {placed}, window ends at "
                f"{arrival + instance.buffer - 1}"
            )
        if placed > instance.horizon:
            raise BufferViolation(
                f"good {gid!r} placed past horizon at round {placed}"
            )


@dataclass(frozen=True)
class SettingClass:
    """Which structured valuation classes an instance belongs to.

    ``generalized_binary_level`` is the positive level b when values all lie
    in {0, b}; an all-zero instance is generalized binary with level None.
    ``bi_valued_levels`` is the (low, high) pair when all values are positive
    and take at most two distinct levels; a single positive level means
    low == high.
    """

    identical_days: bool
    generalized_binary: bool
    generalized_binary_level: Fraction | None
    bi_valued: bool
    bi_valued_levels: tuple[Fraction, Fraction] | None
    identical_valuation: bool
    house_allocation: bool

    def flags(self) -> dict[str, bool]:
        return {
            "identical_days": self.identical_days,
            "generalized_binary": self.generalized_binary,
            "bi_valued": self.bi_valued,
            "identical_valuation": self.identical_valuation,
            "house_allocation": self.house_allocation,
        }


def classify(instance: TemporalInstance) -> SettingClass:
    """Detect which structured classes an instance falls into.

    Identical days compares the multiset of value vectors round by round.
    House shape means exactly n goods arrive each round.
    """
    day_multisets = []
    for round_ids in instance.rounds:
        vecs = sorted(instance.goods_by_id[gid].values for gid in round_ids)
        day_multisets.append(vecs)
    identical_days = all(m == day_multisets[0] for m in day_multisets[1:])

    distinct = {v for g in instance.goods for v in g.values}
    positive = sorted(v for v in distinct if v > 0)
    gen_binary = len(positive) <= 1
    gen_binary_level = positive[0] if (gen_binary and positive) else None
    bi_valued = 0 not in distinct and len(distinct) >= 1 and len(positive) <= 2
    if bi_valued and positive:
        levels = (positive[0], positive[-1])
    else:
        levels = None
    if not instance.goods:
        bi_valued = False
        levels = None

    identical_valuation = all(
        len(set(g.values)) == 1 for g in instance.goods
    )
    house = all(
        len(round_ids) == instance.n_agents for round_ids in instance.rounds
    )
    return SettingClass(
        identical_days=identical_days,
        generalized_binary=gen_binary,
        generalized_binary_level=gen_binary_level,
        bi_valued=bi_valued,
        bi_valued_levels=levels,
        identical_valuation=identical_valuation,
        house_allocation=house,
    )


# --- JSON round-tripping ---------------------------------------------------

def instance_to_json(instance: TemporalInstance) -> dict:
    return {
        "agents": instance.n_agents,
        "buffer": instance.buffer,
        "rounds": [list(r) for r in instance.rounds],
        "values": {
            g.id: [str(v) for v in g.values] for g in instance.goods
        },
    }


def instance_from_json(data: dict) -> TemporalInstance:
    try:
        n = data["agents"]
        rounds = data["rounds"]
        values = data["values"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"instance JSON missing field: {exc}") from exc
    if not isinstance(n, int):
        raise ValidationError("'agents' must be an integer")
    buffer = data.get("buffer", 1)
    if not isinstance(buffer, int):
        raise ValidationError("'buffer' must be an integer")
    goods = []
    seen = set()
    for t, round_ids in enumerate(rounds, start=1):
        if not isinstance(round_ids, list):
            raise ValidationError(f"round {t} is not a list of good ids")
        for gid in round_ids:
            if not isinstance(gid, str):
                raise ValidationError(f"good id {gid!r} is not a string")
            if gid not in values:
                raise ValidationError(f"good {gid!r} has no value vector")
            vec = values[gid]
            goods.append(
                Good(
                    id=gid,
                    arrival=t,
                    values=tuple(parse_rational(v) for v in vec),
                )
            )
            seen.add(gid)
    orphans = set(values) - seen
    if orphans:
        raise ValidationError(
            f"value vectors for goods not in any round: {sorted(orphans, key=good_key)}"
        )
    return TemporalInstance(
        n_agents=n, horizon=len(rounds), goods=tuple(goods), buffer=buffer
    )


def allocation_to_json(allocation: TemporalAllocation) -> dict:
    return {
        "placement": dict(sorted(
            allocation.schedule.placement.items(), key=lambda kv: good_key(kv[0])
        )),
        "owner": dict(sorted(
            allocation.owner.items(), key=lambda kv: good_key(kv[0])
        )),
    }


def allocation_from_json(data: dict) -> TemporalAllocation:
    try:
        placement = data["placement"]
        owner = data["owner"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"allocation JSON missing field: {exc}") from exc
    for gid, t in placement.items():
        if not isinstance(t, int):
            raise ValidationError(f"placement of {gid!r} is not an integer")
    for gid, agent in owner.items():
        if not isinstance(agent, int):
            raise ValidationError(f"owner of {gid!r} is not an integer")
    if set(placement) != set(owner):
        raise ValidationError("placement and owner cover different goods")
    return TemporalAllocation(schedule=Schedule(dict(placement)), owner=dict(owner))


def load_instance(path) -> TemporalInstance:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"bad JSON in {path}: {exc}") from exc
    return instance_from_json(data)


def load_allocation(path) -> TemporalAllocation:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"bad JSON in {path}: {exc}") from exc
    return allocation_from_json(data)
