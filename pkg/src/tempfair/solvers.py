"""Allocation algorithms for temporal instances, one per supported setting.

Every solver takes a validated TemporalInstance and returns a
TemporalAllocation whose ownership is total and whose placements respect
the buffer.  Solvers refuse instances outside their setting instead of
producing best-effort output; the registry records, per solver, which
fairness concepts the output is certified against (the property tests
re-check every one).

Only the last two solvers in the registry actually move goods to later
rounds; the rest hand everything out on arrival.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import PreconditionError, SolverFailure
from .fairness import Concept, mms_share
from .model import (
    Schedule,
    TemporalAllocation,
    TemporalInstance,
    classify,
    good_key,
    validate,
)
from .single_round import (
    envy_cycle_elimination,
    envy_ordered_pick_rounds,
    round_robin,
)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise PreconditionError(message)


def _allocation(instance, owner, placement=None):
    if placement is None:
        schedule = Schedule.at_arrival(instance)
    else:
        schedule = Schedule(dict(placement))
    alloc = TemporalAllocation(schedule=schedule, owner=dict(owner))
    validate(instance, alloc)
    return alloc


def _owners_from_bundles(bundles: dict[int, list[str]]) -> dict[str, int]:
    owner = {}
    for agent, bundle in bundles.items():
        for g in bundle:
            owner[g] = agent
    return owner


def _day_slots(instance, day_ids: Sequence[str]) -> dict[str, tuple]:
    """Copy-slot key for each good of one day.

    Goods of a day that share a value vector are interchangeable copies;
    when a vector repeats within the day, its occurrences are numbered so
    that each slot appears exactly once per day.  Slot keys are therefore
    comparable across days of an identical-days instance.
    """
    groups: dict[tuple, list[str]] = {}
    for gid in sorted(day_ids, key=good_key):
        groups.setdefault(instance.goods_by_id[gid].values, []).append(gid)
    slots = {}
    for vec, members in groups.items():
        for idx, gid in enumerate(members):
            slots[gid] = (vec, idx)
    return slots


def _pool_slots(instance, days: Sequence[Sequence[str]]) -> dict[str, tuple]:
    slots = {}
    for day in days:
        slots.update(_day_slots(instance, day))
    return slots


# --- house shape, three rounds ----------------------------------------------

def solve_tef1_house_t3(instance: TemporalInstance, trace=None) -> TemporalAllocation:
    """Identical days, n goods per round, exactly three rounds, no delays.

    Rounds 1 and 2 are solved as one pooled round robin; a 2-coloring of
    the graph whose edges pair each agent's two picks and each good with
    its other-round copy decides which pick is realized in round 1 (as the
    copy that actually arrived then) and which in round 2.  Round 3 is a
    round robin in reversed agent order, which keeps the cumulative
    allocation envy-free up to one good.
    """
    setting = classify(instance)
    _require(setting.house_allocation, "needs exactly n goods per round")
    _require(setting.identical_days, "needs identical days")
    _require(instance.horizon == 3, "needs a horizon of exactly 3 rounds")
    n = instance.n_agents
    values = instance.value_table
    day1, day2, day3 = instance.rounds

    pooled = round_robin(
        list(day1) + list(day2), values, order=list(instance.agents), trace=trace
    )
    picked_by = _owners_from_bundles(pooled)

    # pair each round-1 good with its value-identical round-2 copy
    slots1 = _day_slots(instance, day1)
    slots2 = _day_slots(instance, day2)
    partner = {}
    by_slot2 = {slot: gid for gid, slot in slots2.items()}
    pairs = []
    for gid, slot in slots1.items():
        other = by_slot2[slot]
        partner[gid] = other
        partner[other] = gid
        pairs.append((gid, other))

    edges: set[frozenset] = set()
    for bundle in pooled.values():
        assert len(bundle) == 2, "2n goods over n agents give 2 picks each"
        edges.add(frozenset(bundle))
    for o1, o2 in pairs:
        edges.add(frozenset((o1, o2)))

    adjacency: dict[str, set[str]] = {g: set() for g in partner}
    for edge in edges:
        a, b = tuple(edge)
        adjacency[a].add(b)
        adjacency[b].add(a)
    color: dict[str, int] = {}
    for start in sorted(adjacency, key=good_key):
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop(0)
            for v in sorted(adjacency[u], key=good_key):
                if v not in color:
                    color[v] = 1 - color[u]
                    queue.append(v)
                else:
                    assert color[v] != color[u], "pair/pick graph must be bipartite"

    owner = {}
    placement = {}
    for o1, o2 in pairs:
        early, late = (o1, o2) if color[o1] == 0 else (o2, o1)
        # whoever picked the early-colored copy takes the round-1 arrival
        owner[o1] = picked_by[early]
        placement[o1] = 1
        owner[o2] = picked_by[late]
        placement[o2] = 2

    final = round_robin(
        day3, values, order=list(reversed(list(instance.agents))), trace=trace
    )
    for agent, bundle in final.items():
        for g in bundle:
            owner[g] = agent
            placement[g] = 3
    return _allocation(instance, owner, placement)


# --- generalized binary ------------------------------------------------------

def _support(instance, gid):
    return tuple(
        i for i in instance.agents if instance.value(i, gid) > 0
    )


def solve_tefx_genbinary_two(instance: TemporalInstance, trace=None) -> TemporalAllocation:
    """Two agents, all values in {0, b}: exclusives go to their fan, shared
    goods alternate, worthless goods go to the designated laggard.

    The alternation starts with the agent whose first exclusive good
    arrives later; goods worth zero to both go to the other agent.
    """
    setting = classify(instance)
    _require(instance.n_agents == 2, "needs exactly two agents")
    _require(setting.generalized_binary, "needs all values in {0, b}")

    first_exclusive = {1: instance.horizon + 1, 2: instance.horizon + 1}
    for t, round_ids in enumerate(instance.rounds, start=1):
        for gid in round_ids:
            support = _support(instance, gid)
            if len(support) == 1 and first_exclusive[support[0]] > t:
                first_exclusive[support[0]] = t
    # start shared goods with whoever waits longer for an exclusive
    j = 2 if first_exclusive[1] < first_exclusive[2] else 1
    laggard = 3 - j

    owner = {}
    for round_ids in instance.rounds:
        for gid in round_ids:
            support = _support(instance, gid)
            if len(support) == 1:
                owner[gid] = support[0]
            elif len(support) == 2:
                owner[gid] = j
                j = 3 - j
            else:
                owner[gid] = laggard
            if trace is not None:
                trace.append({
                    "step": len(trace) + 1, "agent": owner[gid],
                    "good": gid, "rule": "binary-split",
                })
    return _allocation(instance, owner)


def solve_tefx_genbinary_identical(instance: TemporalInstance, trace=None) -> TemporalAllocation:
    """All agents value goods identically at 0 or b: cycle the positive
    goods through agents 1..n and park every zero good with agent n."""
    setting = classify(instance)
    _require(setting.generalized_binary, "needs all values in {0, b}")
    _require(setting.identical_valuation, "needs identical valuations")
    n = instance.n_agents
    owner = {}
    positive_seen = 0
    for round_ids in instance.rounds:
        for gid in round_ids:
            if instance.value(1, gid) > 0:
                owner[gid] = positive_seen % n + 1
                positive_seen += 1
            else:
                owner[gid] = n
    return _allocation(instance, owner)


def solve_half_tefx_genbinary(instance: TemporalInstance, trace=None) -> TemporalAllocation:
    """Any number of agents, values in {0, b}: route each good so every
    round prefix stays half-envy-free up to any good.

    Goods are routed in arrival order with backtracking.  A wanted good
    tries wanting agents that still have nothing of value, scarcest future
    supply first, then the poorest wanting agent, then anyone else as a
    parking spot; a worthless good tries agents with nothing first.  At
    each round boundary the exact pairwise conditions are enforced, so a
    returned allocation is fair by construction; if every routing dead
    ends, SolverFailure is raised rather than returning a bad allocation.

    With a single positive level b, the condition for agent i against
    bundle A_j reduces to counting goods i values: the count of i's own
    bundle, doubled, must reach the count of A_j, minus one only if A_j
    carries nothing i finds worthless.
    """
    setting = classify(instance)
    _require(setting.generalized_binary, "needs all values in {0, b}")
    agents = list(instance.agents)
    n = instance.n_agents
    order = [g for round_ids in instance.rounds for g in round_ids]
    round_end = {}  # index into order of each round's last good
    pos = 0
    for t, round_ids in enumerate(instance.rounds, start=1):
        pos += len(round_ids)
        if round_ids:
            round_end[pos - 1] = t
    positive_for = {
        g: frozenset(_support(instance, g)) for g in order
    }
    # future supply of wanted goods per agent, excluding the current good
    supply_after = []
    running = {i: 0 for i in agents}
    for g in reversed(order):
        supply_after.append(dict(running))
        for i in positive_for[g]:
            running[i] += 1
    supply_after.reverse()

    # counts[i][j]: goods in j's bundle that i values; zeroed[i][j]: j's
    # bundle holds a good i values at nothing
    counts = [[0] * (n + 1) for _ in range(n + 1)]
    zeroed = [[False] * (n + 1) for _ in range(n + 1)]
    owner: dict[str, int] = {}
    failed: set[tuple] = set()

    def ok_at_round_end() -> bool:
        for i in agents:
            roof = 2 * counts[i][i]
            for j in agents:
                if i == j:
                    continue
                if counts[i][j] > roof + (0 if zeroed[i][j] else 1):
                    return False
        return True

    def state_key() -> tuple:
        return (
            tuple(tuple(row[1:]) for row in counts[1:]),
            tuple(tuple(row[1:]) for row in zeroed[1:]),
        )

    def candidates(k: int) -> list[int]:
        support = positive_for[order[k]]
        if support:
            hungry = sorted(
                (i for i in support if counts[i][i] == 0),
                key=lambda i: (supply_after[k][i], i),
            )
            fed = sorted(
                (i for i in support if counts[i][i] > 0),
                key=lambda i: (counts[i][i], i),
            )
            rest = [i for i in agents if i not in support]
            return hungry + fed + rest
        return sorted(agents, key=lambda i: (counts[i][i] != 0, -i))

    round_start = {0} | {k + 1 for k in round_end if k + 1 < len(order)}

    def route(k: int) -> bool:
        if k == len(order):
            return True
        if k in round_start and (k, state_key()) in failed:
            return False
        g = order[k]
        support = positive_for[g]
        for receiver in candidates(k):
            flipped = []
            for i in agents:
                if i in support:
                    counts[i][receiver] += 1
                elif not zeroed[i][receiver]:
                    zeroed[i][receiver] = True
                    flipped.append(i)
            if (k not in round_end or ok_at_round_end()) and route(k + 1):
                owner[g] = receiver
                return True
            for i in agents:
                if i in support:
                    counts[i][receiver] -= 1
            for i in flipped:
                zeroed[i][receiver] = False
        if k in round_start:
            failed.add((k, state_key()))
        return False

    if not route(0):
        raise SolverFailure(
            "no routing keeps every prefix half-envy-free up to any good"
        )
    if trace is not None:
        for g in order:
            trace.append({
                "step": len(trace) + 1, "agent": owner[g],
                "good": g, "rule": "half-route",
            })
    return _allocation(instance, owner)


# --- strictly positive values ------------------------------------------------

def solve_alpha_tefx_positive(instance: TemporalInstance, trace=None) -> TemporalAllocation:
    """Every agent values every good positively and every round carries at
    least n goods: clear each round independently and accumulate.

    Each round runs envy-cycle elimination from scratch with the receiver
    taking their best remaining good.  With all values positive, agents
    holding nothing envy everyone holding anything, so each round seeds
    every agent with one good before anyone gets a second; each agent's
    per-round haul is then at least their cheapest good, which is what the
    advertised per-agent ratio rests on.  Rounds thinner than n would
    leave someone empty-handed in that round and sink the ratio, so they
    are refused.
    """
    for g in instance.goods:
        _require(all(v > 0 for v in g.values), "needs strictly positive values")
    for t, round_ids in enumerate(instance.rounds, start=1):
        _require(
            len(round_ids) >= instance.n_agents,
            f"round {t} has fewer goods than agents",
        )
    values = instance.value_table
    agents = list(instance.agents)
    bundles: dict[int, list[str]] = {i: [] for i in agents}
    for round_ids in instance.rounds:
        piece = envy_cycle_elimination(
            round_ids, values, agents, pick_rule="max", trace=trace
        )
        for i in agents:
            bundles[i].extend(piece[i])
    return _allocation(instance, _owners_from_bundles(bundles))


def alpha_positive_bounds(instance: TemporalInstance) -> tuple[Fraction, ...]:
    """Per-agent certified ratio for the positive-values solver.

    With m_i and M_i the extreme good values for agent i, the ratio is
    m_i / (2 m_i + M_i); all goods equal gives 1/3.
    """
    bounds = []
    for i in instance.agents:
        vals = [instance.value(i, g.id) for g in instance.goods]
        lo, hi = min(vals), max(vals)
        if lo <= 0:
            raise PreconditionError("needs strictly positive values")
        bounds.append(lo / (2 * lo + hi))
    return tuple(bounds)


# --- identical days, two agents, no scheduling --------------------------------

def solve_half_tefx_identical_days_two(instance: TemporalInstance, trace=None) -> TemporalAllocation:
    """Two agents, identical days: split each day under one agent's values
    and let the other agent choose their half, alternating the roles.

    Odd rounds are split by envy-cycle elimination as if both agents had
    agent 1's valuation; agent 2 then takes whichever half they weakly
    prefer.  Even rounds swap the roles.
    """
    setting = classify(instance)
    _require(instance.n_agents == 2, "needs exactly two agents")
    _require(setting.identical_days, "needs identical days")
    values = instance.value_table
    owner = {}
    for t, round_ids in enumerate(instance.rounds, start=1):
        cutter = 1 if t % 2 == 1 else 2
        chooser = 3 - cutter
        mirrored = {1: values[cutter], 2: values[cutter]}
        halves = envy_cycle_elimination(
            round_ids, mirrored, [1, 2], pick_rule="max"
        )
        first, second = halves[1], halves[2]
        worth_first = sum((values[chooser][g] for g in first), start=Fraction(0))
        worth_second = sum((values[chooser][g] for g in second), start=Fraction(0))
        if worth_first >= worth_second:
            taken, left = first, second
        else:
            taken, left = second, first
        for g in taken:
            owner[g] = chooser
        for g in left:
            owner[g] = cutter
        if trace is not None:
            for g in sorted(round_ids, key=good_key):
                trace.append({
                    "step": len(trace) + 1, "agent": owner[g],
                    "good": g, "rule": "cut-and-choose",
                })
    return _allocation(instance, owner)


# --- identical valuations ------------------------------------------------------

def solve_alpha_tefx_identical_valuation(instance: TemporalInstance, trace=None) -> TemporalAllocation:
    """All agents share one valuation: every positive good goes to whoever
    currently has least; zero goods go to agent n."""
    setting = classify(instance)
    _require(setting.identical_valuation, "needs identical valuations")
    totals = {i: Fraction(0) for i in instance.agents}
    owner = {}
    for round_ids in instance.rounds:
        for gid in round_ids:
            v = instance.value(1, gid)
            if v > 0:
                receiver = min(instance.agents, key=lambda i: (totals[i], i))
                totals[receiver] += v
            else:
                receiver = instance.n_agents
            owner[gid] = receiver
    return _allocation(instance, owner)


def alpha_identical_bound(instance: TemporalInstance) -> Fraction:
    """Certified ratio min+ / (max + min+); 1 when nothing has value."""
    positives = [v for g in instance.goods for v in (g.values[0],) if v > 0]
    if not positives:
        return Fraction(1)
    top = max(g.values[0] for g in instance.goods)
    low = min(positives)
    return low / (top + low)


# --- bi-valued ----------------------------------------------------------------

def solve_rr_bivalued(instance: TemporalInstance, trace=None) -> TemporalAllocation:
    """Two positive value levels: one global round robin, the pointer
    carrying over from round to round, each picker taking their best good
    still available in the current round."""
    setting = classify(instance)
    _require(setting.bi_valued, "needs exactly two positive value levels")
    values = instance.value_table
    n = instance.n_agents
    owner = {}
    pointer = 0
    for round_ids in instance.rounds:
        pool = set(round_ids)
        while pool:
            agent = pointer % n + 1
            top = max(values[agent][g] for g in pool)
            g = min(
                (g for g in pool if values[agent][g] == top), key=good_key
            )
            owner[g] = agent
            pool.discard(g)
            pointer += 1
            if trace is not None:
                trace.append({
                    "step": len(trace) + 1, "agent": agent,
                    "good": g, "rule": "rr-global",
                })
    return _allocation(instance, owner)


def bivalued_bound(instance: TemporalInstance) -> Fraction:
    low, high = classify(instance).bi_valued_levels
    return low / high


# --- identical days with scheduling -------------------------------------------

def solve_tef1_identical_days_scheduled(instance: TemporalInstance, trace=None) -> TemporalAllocation:
    """Identical days with a buffer of at least half the agent count: work
    in blocks of n rounds that end with everyone holding one full day copy.

    In each block, the first ceil(n/2) days are delayed to a shared mid
    round and dealt out class by class in envy order, so nobody holds two
    copies of a slot; the remaining days are delayed to the block's last
    round and complete every agent to exactly one copy of every slot,
    wiping all envy at the boundary.  A leftover partial block is squeezed
    into two pooled rounds: a round robin, then another in reversed order.
    """
    setting = classify(instance)
    _require(setting.identical_days, "needs identical days")
    n = instance.n_agents
    half_up = (n + 1) // 2
    _require(
        instance.buffer >= half_up,
        f"needs buffer >= {half_up} for {n} agents",
    )
    values = instance.value_table
    agents = list(instance.agents)
    T = instance.horizon
    owner: dict[str, int] = {}
    placement: dict[str, int] = {}

    full_blocks = T // n
    for k in range(full_blocks):
        base = k * n
        mid_round = base + half_up
        phase1_days = [instance.rounds[base + d] for d in range(half_up)]
        phase1_pool = [g for day in phase1_days for g in day]
        slots = _pool_slots(instance, phase1_days)
        picked = envy_ordered_pick_rounds(
            phase1_pool, slots, values, agents, trace=trace
        )
        slot_owners: dict[tuple, set[int]] = {}
        for agent, bundle in picked.items():
            for g in bundle:
                owner[g] = agent
                placement[g] = mid_round
                slot_owners.setdefault(slots[g], set()).add(agent)

        phase2_days = [instance.rounds[base + d] for d in range(half_up, n)]
        phase2_slots = _pool_slots(instance, phase2_days)
        by_slot: dict[tuple, list[str]] = {}
        for g, slot in phase2_slots.items():
            by_slot.setdefault(slot, []).append(g)
        end_round = base + n
        for slot, copies in by_slot.items():
            lacking = sorted(set(agents) - slot_owners.get(slot, set()))
            copies = sorted(copies, key=good_key)
            assert len(lacking) == len(copies), "completion counts must match"
            for g, agent in zip(copies, lacking):
                owner[g] = agent
                placement[g] = end_round
                if trace is not None:
                    trace.append({
                        "step": len(trace) + 1, "agent": agent,
                        "good": g, "rule": "complete-copy",
                    })

    remainder = T - full_blocks * n
    if remainder:
        base = full_blocks * n
        head = (remainder + 1) // 2
        first_pool = [
            g for d in range(head) for g in instance.rounds[base + d]
        ]
        first_round = base + head
        bundles = round_robin(first_pool, values, order=agents, trace=trace)
        for agent, bundle in bundles.items():
            for g in bundle:
                owner[g] = agent
                placement[g] = first_round
        if remainder > head:
            second_pool = [
                g for d in range(head, remainder)
                for g in instance.rounds[base + d]
            ]
            second_round = base + remainder
            bundles = round_robin(
                second_pool, values, order=list(reversed(agents)), trace=trace
            )
            for agent, bundle in bundles.items():
                for g in bundle:
                    owner[g] = agent
                    placement[g] = second_round
    return _allocation(instance, owner, placement)


def solve_tefx_identical_days_scheduled_two(instance: TemporalInstance, trace=None) -> TemporalAllocation:
    """Two agents, identical days, buffer >= 2 (or a horizon of at most 2):
    pool days in pairs and search the splits.

    An even horizon pairs consecutive days, and handing each agent one copy
    of every slot keeps the agents exactly equal at every pooled round.  An
    odd horizon leaves day one on its own, so bundle values differ from
    round 1 on; the per-pool splits are then found by depth-first search
    over subsets, pruning any split that breaks envy-freeness up to any
    good or the maximin share test at its round, with failed states
    memoized.  A two-round horizon with no buffer keeps both days separate
    and searches the same way.
    """
    setting = classify(instance)
    _require(instance.n_agents == 2, "needs exactly two agents")
    _require(setting.identical_days, "needs identical days")
    T = instance.horizon
    _require(
        T <= 2 or instance.buffer >= 2,
        "needs buffer >= 2 beyond two rounds",
    )
    owner: dict[str, int] = {}
    placement: dict[str, int] = {}

    if T % 2 == 0 and (T > 2 or instance.buffer >= 2):
        # pairs of identical days split one copy per agent: exact equality
        for k in range(T // 2):
            days = [instance.rounds[2 * k], instance.rounds[2 * k + 1]]
            slots = _pool_slots(instance, days)
            target = 2 * k + 2
            by_slot: dict[tuple, list[str]] = {}
            for g, slot in slots.items():
                by_slot.setdefault(slot, []).append(g)
            for slot, copies in sorted(
                by_slot.items(), key=lambda kv: good_key(kv[1][0])
            ):
                copies = sorted(copies, key=good_key)
                assert len(copies) == 2
                owner[copies[0]] = 1
                owner[copies[1]] = 2
                placement[copies[0]] = target
                placement[copies[1]] = target
        return _allocation(instance, owner, placement)

    if T == 1:
        pools = [(list(instance.rounds[0]), 1)]
    elif T == 2:  # buffer == 1 here: keep both days at arrival
        pools = [(list(instance.rounds[0]), 1), (list(instance.rounds[1]), 2)]
    else:  # odd horizon: lone first day, then pairs landing on odd rounds
        pools = [(list(instance.rounds[0]), 1)]
        for k in range((T - 1) // 2):
            pool = list(instance.rounds[2 * k + 1]) + list(instance.rounds[2 * k + 2])
            pools.append((pool, 2 * k + 3))

    split = _search_pool_splits(instance, pools)
    if split is None:
        raise SolverFailure(
            "no split sequence satisfies the prefix checks; "
            f"pools at rounds {[r for _, r in pools]}"
        )
    for (pool, target), mask in zip(pools, split):
        ordered = sorted(pool, key=good_key)
        for idx, g in enumerate(ordered):
            owner[g] = 1 if mask >> idx & 1 else 2
            placement[g] = target
            if trace is not None:
                trace.append({
                    "step": len(trace) + 1, "agent": owner[g],
                    "good": g, "rule": "pool-split",
                })
    return _allocation(instance, owner, placement)


def _search_pool_splits(instance, pools):
    """Depth-first split search over pooled rounds for two agents.

    State per depth: both agents' values of agent 1's pile plus the
    cheapest good each agent sees in the other's pile (what the
    any-good-removal check depends on).  Prunes splits failing envy or
    share checks at their pool's round; memoizes failed states.
    """
    INF = Fraction(10) ** 30
    v1 = {g: instance.value(1, g) for g in instance.goods_by_id}
    v2 = {g: instance.value(2, g) for g in instance.goods_by_id}
    ordered_pools = [sorted(pool, key=good_key) for pool, _ in pools]

    cum1 = []
    cum2 = []
    share1 = []
    share2 = []
    seen: list[str] = []
    for pool in ordered_pools:
        seen.extend(pool)
        cum1.append(sum((v1[g] for g in seen), start=Fraction(0)))
        cum2.append(sum((v2[g] for g in seen), start=Fraction(0)))
        share1.append(mms_share([v1[g] for g in seen], 2, cap=None))
        share2.append(mms_share([v2[g] for g in seen], 2, cap=None))

    failed: set[tuple] = set()

    def feasible(p, a1v1, a1v2, min2_in_a1, min1_in_a2):
        # mins stay at INF while the other pile is empty, which voids the
        # removal test exactly when no envy is possible anyway
        a2v1 = cum1[p] - a1v1
        a2v2 = cum2[p] - a1v2
        if a1v1 < a2v1 - min1_in_a2:
            return False
        if a2v2 < a1v2 - min2_in_a1:
            return False
        return a1v1 >= share1[p] and a2v2 >= share2[p]

    def walk(p, a1v1, a1v2, min2_in_a1, min1_in_a2):
        if p == len(ordered_pools):
            return []
        state = (p, a1v1, a1v2, min2_in_a1, min1_in_a2)
        if state in failed:
            return None
        pool = ordered_pools[p]
        tried = set()
        for mask in range(1 << len(pool)):
            n1v1 = a1v1
            n1v2 = a1v2
            nmin2 = min2_in_a1
            nmin1 = min1_in_a2
            for idx, g in enumerate(pool):
                if mask >> idx & 1:
                    n1v1 += v1[g]
                    n1v2 += v2[g]
                    nmin2 = min(nmin2, v2[g])
                else:
                    nmin1 = min(nmin1, v1[g])
            key = (n1v1, n1v2, nmin2, nmin1)
            if key in tried:
                continue
            tried.add(key)
            if not feasible(p, *key):
                continue
            tail = walk(p + 1, *key)
            if tail is not None:
                return [mask] + tail
        failed.add(state)
        return None

    return walk(0, Fraction(0), Fraction(0), INF, INF)


# --- registry -----------------------------------------------------------------

@dataclass(frozen=True)
class SolverEntry:
    """One registered algorithm with its certification contract."""

    name: str
    run: Callable
    summary: str
    uses_scheduling: bool
    concepts: Callable  # instance -> list[Concept]


def _fixed(*concepts):
    return lambda instance: list(concepts)


SOLVERS: dict[str, SolverEntry] = {
    entry.name: entry
    for entry in [
        SolverEntry(
            name="tef1-house-t3",
            run=solve_tef1_house_t3,
            summary="identical days, n goods per round, T=3; envy-free up to one good",
            uses_scheduling=False,
            concepts=_fixed(Concept("tef1")),
        ),
        SolverEntry(
            name="tefx-genbinary-two",
            run=solve_tefx_genbinary_two,
            summary="2 agents, values in {0,b}; envy-free up to any good and maximin-share fair",
            uses_scheduling=False,
            concepts=_fixed(Concept("tefx"), Concept("tmms")),
        ),
        SolverEntry(
            name="tefx-genbinary-identical",
            run=solve_tefx_genbinary_identical,
            summary="identical {0,b} valuations; envy-free up to any good",
            uses_scheduling=False,
            concepts=_fixed(Concept("tefx")),
        ),
        SolverEntry(
            name="half-tefx-genbinary",
            run=solve_half_tefx_genbinary,
            summary="values in {0,b}, any n; 1/2-scaled envy-free up to any good",
            uses_scheduling=False,
            concepts=_fixed(Concept("atefx", Fraction(1, 2))),
        ),
        SolverEntry(
            name="alpha-tefx-positive",
            run=solve_alpha_tefx_positive,
            summary="strictly positive values, rounds of n+ goods; per-agent scaled envy bound",
            uses_scheduling=False,
            concepts=lambda inst: [Concept("atefx", alpha_positive_bounds(inst))],
        ),
        SolverEntry(
            name="half-tefx-identical-days-two",
            run=solve_half_tefx_identical_days_two,
            summary="2 agents, identical days; 1/2-scaled envy-free up to any good",
            uses_scheduling=False,
            concepts=_fixed(Concept("atefx", Fraction(1, 2))),
        ),
        SolverEntry(
            name="alpha-tefx-identical-valuation",
            run=solve_alpha_tefx_identical_valuation,
            summary="one shared valuation; scaled envy bound from the value spread",
            uses_scheduling=False,
            concepts=lambda inst: [Concept("atefx", alpha_identical_bound(inst))],
        ),
        SolverEntry(
            name="rr-bivalued",
            run=solve_rr_bivalued,
            summary="two positive value levels a<=b; a/b-scaled envy bound via round robin",
            uses_scheduling=False,
            concepts=lambda inst: [Concept("atefx", bivalued_bound(inst))],
        ),
        SolverEntry(
            name="tef1-identical-days-scheduled",
            run=solve_tef1_identical_days_scheduled,
            summary="identical days, buffer >= ceil(n/2); envy-free up to one good, exact equality each block",
            uses_scheduling=True,
            concepts=_fixed(Concept("tef1")),
        ),
        SolverEntry(
            name="tefx-identical-days-scheduled-two",
            run=solve_tefx_identical_days_scheduled_two,
            summary="2 agents, identical days, buffer >= 2; envy-free up to any good and maximin-share fair",
            uses_scheduling=True,
            concepts=_fixed(Concept("tefx"), Concept("tmms")),
        ),
    ]
}
