"""One-shot allocation subroutines the temporal algorithms compose.

Everything here works on a plain pool: a collection of good ids plus a
value table ``values[agent][good_id]`` with 1-based agent keys.  Bundles
come back as ``dict[int, list[str]]`` in pick order.  Ties always break
toward the smallest good id (length-then-lexicographic) and the smallest
agent index, so every routine is deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import SolverFailure, ValidationError
from .model import good_key

ValueTable = Mapping[int, Mapping[str, Fraction]]


def _bundle_value(values: ValueTable, agent: int, bundle: Iterable[str]) -> Fraction:
    return sum((values[agent][g] for g in bundle), start=Fraction(0))


def _best_good(values: ValueTable, agent: int, pool: Iterable[str]) -> str:
    """Max-valued good for an agent, smallest id on ties."""
    pool = list(pool)
    top = max(values[agent][g] for g in pool)
    return min((g for g in pool if values[agent][g] == top), key=good_key)


def round_robin(
    goods: Iterable[str],
    values: ValueTable,
    order: Sequence[int],
    trace: list | None = None,
    bundles: dict[int, list[str]] | None = None,
) -> dict[int, list[str]]:
    """Agents pick in cyclic order; each takes their best remaining good.

    ``order`` fixes the cycle (it need not be sorted; reversing it gives the
    mirrored pass used by the two-pool schedulers).  Passing ``bundles``
    continues an existing partial allocation in place.
    """
    if bundles is None:
        bundles = {i: [] for i in order}
    remaining = set(goods)
    step = 0
    while remaining:
        agent = order[step % len(order)]
        g = _best_good(values, agent, remaining)
        bundles.setdefault(agent, []).append(g)
        remaining.discard(g)
        if trace is not None:
            trace.append({"step": len(trace) + 1, "agent": agent, "good": g, "rule": "rr"})
        step += 1
    return bundles


def _envy_edges(values: ValueTable, bundles: dict[int, list[str]], agents: Sequence[int]):
    """Strict envy digraph as sorted (envious, envied) pairs."""
    val = {i: _bundle_value(values, i, bundles[i]) for i in agents}
    edges = []
    for i in agents:
        for j in agents:
            if i != j and val[i] < _bundle_value(values, i, bundles[j]):
                edges.append((i, j))
    return edges


def _find_cycle(edges, agents):
    """Lexicographically first envy cycle by DFS from the smallest agent."""
    adj: dict[int, list[int]] = {i: [] for i in agents}
    for i, j in edges:
        adj[i].append(j)
    for i in agents:
        adj[i].sort()
    color: dict[int, int] = {}
    cycle = None

    def dfs(u, stack):
        nonlocal cycle
        color[u] = 1
        stack.append(u)
        for v in adj[u]:
            if cycle is not None:
                return
            if color.get(v) == 1:
                cycle = stack[stack.index(v):]
                return
            if v not in color:
                dfs(v, stack)
        if cycle is None:
            color[u] = 2
            stack.pop()

    for s in agents:
        if s not in color and cycle is None:
            dfs(s, [])
    return cycle


def _rotate_cycle(bundles: dict[int, list[str]], cycle: Sequence[int]) -> None:
    """Each cycle member takes the bundle of the agent they envy."""
    shifted = [bundles[cycle[(k + 1) % len(cycle)]] for k in range(len(cycle))]
    for agent, bundle in zip(cycle, shifted):
        bundles[agent] = bundle


def _decycle(values: ValueTable, bundles: dict[int, list[str]], agents: Sequence[int]) -> None:
    """Rotate bundles along envy cycles until the envy graph is acyclic.

    Each rotation strictly raises the total utility sum, which bounds the
    loop; the assert guards against a rotation that fails to.
    """
    while True:
        edges = _envy_edges(values, bundles, agents)
        cycle = _find_cycle(edges, agents)
        if cycle is None:
            return
        before = sum(_bundle_value(values, i, bundles[i]) for i in agents)
        _rotate_cycle(bundles, cycle)
        after = sum(_bundle_value(values, i, bundles[i]) for i in agents)
        assert after > before, "envy cycle rotation must increase total utility"


def envy_cycle_elimination(
    goods: Iterable[str],
    values: ValueTable,
    agents: Sequence[int],
    pick_rule: str = "sequence",
    trace: list | None = None,
    bundles: dict[int, list[str]] | None = None,
) -> dict[int, list[str]]:
    """Give each next good to an agent nobody envies, rotating cycles away.

    With ``pick_rule="sequence"`` goods are handed out in canonical id
    order.  With ``pick_rule="max"`` the receiving agent takes their own
    best remaining good instead (the variant that makes the two-identical-
    agents case envy-free up to any good).  Receivers are the smallest
    unenvied agent index; the envy graph is rebuilt after every change.
    """
    if pick_rule not in ("sequence", "max"):
        raise ValidationError(f"unknown pick rule {pick_rule!r}")
    if bundles is None:
        bundles = {i: [] for i in agents}
    remaining = sorted(goods, key=good_key)
    while remaining:
        _decycle(values, bundles, agents)
        edges = _envy_edges(values, bundles, agents)
        envied = {j for _, j in edges}
        receiver = min(i for i in agents if i not in envied)
        if pick_rule == "max":
            g = _best_good(values, receiver, remaining)
        else:
            g = remaining[0]
        remaining.remove(g)
        bundles[receiver].append(g)
        if trace is not None:
            trace.append({
                "step": len(trace) + 1,
                "agent": receiver,
                "good": g,
                "rule": f"ece-{pick_rule}",
            })
    _decycle(values, bundles, agents)
    return bundles


def _completion_exists(
    supply: dict, owned: dict[int, set], quota: dict[int, int], agents: Sequence[int]
) -> bool:
    """Can the remaining copies fill the remaining pick slots?

    Each agent still needs ``quota[i]`` goods, one per class at most, from
    classes they do not own yet.  Existence of such an assignment reduces to
    a Hall condition over agent subsets (n is small here).
    """
    need_total = sum(quota.values())
    have_total = sum(supply.values())
    if need_total != have_total:
        return False
    agents = list(agents)
    n = len(agents)
    for mask in range(1, 1 << n):
        subset = [agents[k] for k in range(n) if mask >> k & 1]
        need = sum(quota[i] for i in subset)
        cover = 0
        for cls, count in supply.items():
            if count == 0:
                continue
            takers = sum(1 for i in subset if cls not in owned[i])
            cover += min(count, takers)
        if need > cover:
            return False
    return True


def constrained_round_robin(
    goods: Iterable[str],
    copy_class: Mapping[str, object],
    values: ValueTable,
    order: Sequence[int],
    trace: list | None = None,
) -> dict[int, list[str]]:
    """Round robin where nobody may take two goods of the same copy class.

    Each agent in cyclic order picks their best remaining good among the
    classes they do not own yet, skipping choices that would strand the
    remaining picks without a completion (checked by a Hall condition on
    the leftover supply).  Raises when no completion exists at all.
    """
    goods = sorted(goods, key=good_key)
    by_class: dict[object, list[str]] = {}
    for g in goods:
        by_class.setdefault(copy_class[g], []).append(g)
    supply = {cls: len(members) for cls, members in by_class.items()}
    next_copy = {cls: 0 for cls in by_class}
    owned: dict[int, set] = {i: set() for i in order}
    bundles: dict[int, list[str]] = {i: [] for i in order}
    m = len(goods)
    n = len(order)
    quota = {i: 0 for i in order}
    for step in range(m):
        quota[order[step % n]] += 1

    for step in range(m):
        agent = order[step % n]
        quota[agent] -= 1
        candidates = sorted(
            (cls for cls in supply if supply[cls] > 0 and cls not in owned[agent]),
            key=lambda cls: (
                -values[agent][by_class[cls][0]],
                good_key(by_class[cls][0]),
            ),
        )
        chosen = None
        for cls in candidates:
            supply[cls] -= 1
            owned[agent].add(cls)
            if _completion_exists(supply, owned, quota, order):
                chosen = cls
                break
            supply[cls] += 1
            owned[agent].remove(cls)
        if chosen is None:
            raise SolverFailure(
                f"no completion after {step} picks; supply {supply}, "
                f"owned {dict(owned)}"
            )
        g = by_class[chosen][next_copy[chosen]]
        next_copy[chosen] += 1
        bundles[agent].append(g)
        if trace is not None:
            trace.append({"step": len(trace) + 1, "agent": agent, "good": g, "rule": "rr-distinct"})
    return bundles


def envy_ordered_pick_rounds(
    goods: Iterable[str],
    copy_class: Mapping[str, object],
    values: ValueTable,
    agents: Sequence[int],
    trace: list | None = None,
) -> dict[int, list[str]]:
    """Allocate identical copies class by class in envy order.

    One class at a time: rotate envy cycles away, then let agents pick in a
    topological order of the envy graph (envious agents first).  The first
    ``copies`` agents in that order who value the class positively each take
    one copy; copies nobody wants go to zero-value agents.  Each class round
    preserves envy-freeness up to one good, because whenever i envies j,
    agent i picks first and picks at least as well.

    Copies of one class must carry identical value vectors; each agent ends
    with at most one copy of any class.
    """
    goods = sorted(goods, key=good_key)
    by_class: dict[object, list[str]] = {}
    for g in goods:
        by_class.setdefault(copy_class[g], []).append(g)
    for cls, members in by_class.items():
        vecs = {tuple(values[i][g] for i in agents) for g in members}
        if len(vecs) > 1:
            raise ValidationError(f"copy class {cls!r} mixes value vectors")
        if len(members) > len(agents):
            raise ValidationError(
                f"copy class {cls!r} has {len(members)} copies for "
                f"{len(agents)} agents"
            )
    class_order = sorted(by_class, key=lambda cls: good_key(by_class[cls][0]))

    bundles: dict[int, list[str]] = {i: [] for i in agents}
    for cls in class_order:
        members = by_class[cls]
        rep = members[0]
        _decycle(values, bundles, agents)
        edges = _envy_edges(values, bundles, agents)
        # Kahn topological order, smallest agent first among the ready ones
        indeg = {i: 0 for i in agents}
        succ: dict[int, list[int]] = {i: [] for i in agents}
        for i, j in edges:
            indeg[j] += 1
            succ[i].append(j)
        ready = sorted(i for i in agents if indeg[i] == 0)
        sigma = []
        while ready:
            u = ready.pop(0)
            sigma.append(u)
            for v in succ[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    ready.append(v)
            ready.sort()
        assert len(sigma) == len(agents), "envy graph still cyclic after decycle"

        takers = []
        for i in sigma:
            if len(takers) == len(members):
                break
            if values[i][rep] > 0:
                takers.append(i)
        if len(takers) < len(members):
            # copies nobody values: park them with agents that skip envy math
            for i in agents:
                if len(takers) == len(members):
                    break
                if values[i][rep] == 0 and i not in takers:
                    takers.append(i)
        assert len(takers) == len(members), "more copies than agents"
        for g, i in zip(members, takers):
            bundles[i].append(g)
            if trace is not None:
                trace.append({"step": len(trace) + 1, "agent": i, "good": g, "rule": "envy-order"})
    return bundles
