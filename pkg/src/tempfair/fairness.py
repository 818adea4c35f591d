"""Fairness checkers, both on fixed bundles and round by round.

All comparisons are exact (Fraction arithmetic).  The temporal variants
demand the property at every prefix: the bundles of goods handed out in
rounds 1..t, for each t up to the horizon.

Three envy notions on bundles, each with the removal quantified over the
envied bundle:

* up-to-one: some single removal kills the envy (the best one suffices);
* up-to-any: every single removal kills the envy, including goods the
  envious agent values at zero, so the binding removal is the cheapest;
* alpha scaled up-to-any: own value at least alpha times the envied
  bundle after the cheapest removal, for a fixed alpha in (0, 1].

The share-based notion compares each agent's bundle against their maximin
share over the pool of goods handed out so far, with empty bundles allowed
in the defining partitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import TempfairError, ValidationError
from .model import TemporalAllocation, TemporalInstance, good_key, prefix, validate

Bundles = Sequence[Iterable[str]]


class ShareCapExceeded(TempfairError):
    """Maximin share requested over a pool too large for exact search."""


@dataclass(frozen=True)
class Concept:
    """A fairness concept name plus its parameter when it has one."""

    kind: str  # "tef1" | "tefx" | "atefx" | "tmms"
    alpha: Fraction | None = None

    @classmethod
    def from_string(cls, text: str) -> "Concept":
        if text in ("tef1", "tefx", "tmms"):
            return cls(text)
        if text.startswith("atefx:"):
            try:
                parts = [Fraction(p) for p in text.split(":", 1)[1].split(",")]
            except (ValueError, ZeroDivisionError) as exc:
                raise ValidationError(f"bad alpha in {text!r}") from exc
            for alpha in parts:
                if not 0 < alpha <= 1:
                    raise ValidationError(f"alpha must be in (0, 1], got {alpha}")
            # a comma list gives one bound per agent, in agent order
            return cls("atefx", parts[0] if len(parts) == 1 else tuple(parts))
        raise ValidationError(
            f"unknown concept {text!r}; expected tef1, tefx, atefx:<alpha>, or tmms"
        )

    def __str__(self) -> str:
        if self.kind == "atefx":
            if isinstance(self.alpha, Fraction):
                return f"atefx:{self.alpha}"
            return "atefx:" + ",".join(str(a) for a in self.alpha)
        return self.kind


@dataclass(frozen=True)
class Verdict:
    """Outcome of a temporal check.

    When the property fails, ``round`` is the first prefix where it does and
    the remaining fields describe one witnessing violation.  For share-based
    failures there is no envied agent or removed good; ``shortfall`` is how
    far the envious agent's value falls below the requirement.
    """

    holds: bool
    round: int | None = None
    envious: int | None = None
    envied: int | None = None
    removed_good: str | None = None
    shortfall: Fraction | None = None

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "round": self.round,
            "envious": self.envious,
            "envied": self.envied,
            "removed_good": self.removed_good,
            "shortfall": str(self.shortfall) if self.shortfall is not None else None,
        }


def _alphas(instance: TemporalInstance, alpha) -> list[Fraction]:
    """Normalize a scalar or per-agent alpha spec to a per-agent list."""
    n = instance.n_agents
    if isinstance(alpha, (Fraction, int)):
        alphas = [Fraction(alpha)] * n
    else:
        alphas = [Fraction(a) for a in alpha]
        if len(alphas) != n:
            raise ValidationError(
                f"{len(alphas)} alpha values for {n} agents"
            )
    for a in alphas:
        if not 0 < a <= 1:
            raise ValidationError(f"alpha must be in (0, 1], got {a}")
    return alphas


def _envy_violation(instance, bundles, mode, alphas=None):
    """First (envious, envied, removed, shortfall) in index order, or None.

    mode "ef1" uses the best removal, "efx" the cheapest.  alphas scales the
    envied side (efx removal) when given.
    """
    n = instance.n_agents
    own_values = [instance.bundle_value(i, bundles[i - 1]) for i in instance.agents]
    for i in instance.agents:
        scale = alphas[i - 1] if alphas is not None else Fraction(1)
        for j in instance.agents:
            if i == j:
                continue
            other = list(bundles[j - 1])
            if not other:
                continue
            total = instance.bundle_value(i, other)
            if mode == "ef1":
                top = max(instance.value(i, g) for g in other)
                removed = min(
                    (g for g in other if instance.value(i, g) == top),
                    key=good_key,
                )
            else:
                removed = min(
                    other, key=lambda g: (instance.value(i, g), good_key(g))
                )
            rest = total - instance.value(i, removed)
            if own_values[i - 1] < scale * rest:
                return (i, j, removed, scale * rest - own_values[i - 1])
    return None


def is_ef1(instance: TemporalInstance, bundles: Bundles) -> bool:
    """Envy-free up to the removal of some one good from the envied bundle."""
    return _envy_violation(instance, bundles, "ef1") is None


def is_efx(instance: TemporalInstance, bundles: Bundles) -> bool:
    """Envy-free up to the removal of any one good from the envied bundle.

    The removal is quantified over every good of the envied bundle, zero
    valued ones included, so only the cheapest removal needs checking.
    """
    return _envy_violation(instance, bundles, "efx") is None


def is_alpha_efx(instance: TemporalInstance, bundles: Bundles, alpha) -> bool:
    """Scaled version of is_efx: own value >= alpha * (envied minus any good).

    ``alpha`` is a Fraction in (0, 1] or a per-agent sequence of them.
    """
    alphas = _alphas(instance, alpha)
    return _envy_violation(instance, bundles, "efx", alphas) is None


def mms_share(values: Sequence[Fraction], n_parts: int, cap: int | None = 16) -> Fraction:
    """Maximin share of one agent over a pool, split into n_parts bundles.

    ``values`` lists the agent's values for every good in the pool.  Parts
    may be empty.  The two-part case runs an exact subset-sum sweep with no
    size limit; three or more parts fall back to branch and bound, guarded
    by ``cap`` on the pool size (None lifts the guard).
    """
    if n_parts < 1:
        raise ValidationError("need at least one part")
    vals = [Fraction(v) for v in values]
    for v in vals:
        if v < 0:
            raise ValidationError("negative value in pool")
    if n_parts == 1:
        return sum(vals, start=Fraction(0))
    if len(vals) < n_parts:
        return Fraction(0)
    if n_parts >= 3 and cap is not None and len(vals) > cap:
        raise ShareCapExceeded(
            f"pool of {len(vals)} goods exceeds the exact-search cap {cap}"
        )
    # shares recur across prefixes and across allocations of one pool, so
    # the pure search below is memoized on the sorted pool
    return _mms_share_search(tuple(sorted(vals, reverse=True)), n_parts)


@lru_cache(maxsize=4096)
def _mms_share_search(vals: tuple[Fraction, ...], n_parts: int) -> Fraction:
    total = sum(vals, start=Fraction(0))
    if n_parts == 2:
        sums = {Fraction(0)}
        for v in vals:
            sums |= {s + v for s in sums}
        # best split is the reachable sum closest to half from below
        best = max((s for s in sums if 2 * s <= total), default=Fraction(0))
        return best
    vals = list(vals)
    best = Fraction(0)
    parts = [Fraction(0)] * n_parts
    suffix = [Fraction(0)] * (len(vals) + 1)
    for k in range(len(vals) - 1, -1, -1):
        suffix[k] = suffix[k + 1] + vals[k]

    def walk(k: int):
        nonlocal best
        if k == len(vals):
            best = max(best, min(parts))
            return
        if min(parts) + suffix[k] <= best:
            return  # even funneling everything into the min part cannot win
        seen = set()
        for p in range(n_parts):
            if parts[p] in seen:
                continue  # identical part loads are interchangeable
            seen.add(parts[p])
            parts[p] += vals[k]
            walk(k + 1)
            parts[p] -= vals[k]

    walk(0)
    return best


def _mms_violation(instance, bundles, cap=16):
    """First agent whose bundle misses their maximin share over the pool."""
    pool = sorted(
        (gid for b in bundles for gid in b), key=good_key
    )
    n = instance.n_agents
    for i in instance.agents:
        share = mms_share([instance.value(i, g) for g in pool], n, cap=cap)
        have = instance.bundle_value(i, bundles[i - 1])
        if have < share:
            return (i, share - have)
    return None


def is_mms(instance: TemporalInstance, bundles: Bundles, cap: int | None = 16) -> bool:
    """Each agent's bundle is worth at least their maximin share of the pool.

    The pool is the union of the given bundles.
    """
    return _mms_violation(instance, bundles, cap=cap) is None


def prefix_violation(instance, bundles, concept: Concept, cap: int | None = 16):
    """Violation tuple for one prefix, or None; shared by checker and search."""
    if concept.kind == "tef1":
        return _envy_violation(instance, bundles, "ef1")
    if concept.kind == "tefx":
        return _envy_violation(instance, bundles, "efx")
    if concept.kind == "atefx":
        alphas = _alphas(instance, concept.alpha)
        return _envy_violation(instance, bundles, "efx", alphas)
    if concept.kind == "tmms":
        hit = _mms_violation(instance, bundles, cap=cap)
        if hit is None:
            return None
        i, shortfall = hit
        return (i, None, None, shortfall)
    raise ValidationError(f"unknown concept kind {concept.kind!r}")


def check_temporal(
    instance: TemporalInstance,
    allocation: TemporalAllocation,
    concept: Concept,
    cap: int | None = 16,
) -> Verdict:
    """Check a fairness concept at every round prefix of an allocation.

    The allocation is validated first (ownership, placement windows).
    Returns the first failing round with a witness, or a holding verdict.
    Prefixes only change on rounds where something is handed out, so only
    those need examining.
    """
    validate(instance, allocation)
    change_rounds = sorted(set(allocation.schedule.placement.values()))
    for t in change_rounds:
        bundles = prefix(instance, allocation, t)
        hit = prefix_violation(instance, bundles, concept, cap=cap)
        if hit is not None:
            envious, envied, removed, shortfall = hit
            return Verdict(
                holds=False,
                round=t,
                envious=envious,
                envied=envied,
                removed_good=removed,
                shortfall=shortfall,
            )
    return Verdict(holds=True)
