"""Fairness checkers against brute-force definitional oracles.

The oracles below re-state each fairness notion directly from its
definition with no shared code: plain loops over agents, goods, and
removals, and full partition enumeration for shares.  The checkers must
agree with them on exhaustively enumerated small allocations.
"""

import itertools
import random
from fractions import Fraction as F

import pytest

from tempfair.errors import ValidationError
from tempfair.fairness import (
    Concept,
    ShareCapExceeded,
    Verdict,
    check_temporal,
    is_alpha_efx,
    is_ef1,
    is_efx,
    is_mms,
    mms_share,
    prefix_violation,
)
from tempfair.model import Schedule, TemporalAllocation, TemporalInstance, prefix

from oracles import (
    naive_alpha_efx,
    naive_ef1,
    naive_efx,
    naive_mms_share,
    naive_tmms,
)


def make_instance(value_rounds, buffer=1):
    return TemporalInstance.from_value_rounds(value_rounds, buffer=buffer)


def enumerate_allocations(goods, n_agents):
    for assignment in itertools.product(range(1, n_agents + 1), repeat=len(goods)):
        bundles = {i: [] for i in range(1, n_agents + 1)}
        for g, a in zip(goods, assignment):
            bundles[a].append(g)
        yield bundles


def random_values(rng, goods, n_agents, cap=6):
    return {
        i: {g: rng.randint(0, cap) for g in goods}
        for i in range(1, n_agents + 1)
    }


def single_round_instance(values, goods, n_agents):
    """All goods arriving at round 1 with the given integer values."""
    vecs = [[tuple(values[i][g] for i in range(1, n_agents + 1))] for g in goods]
    return TemporalInstance.from_value_rounds([[v[0] for v in vecs]])


def as_frozensets(inst, bundles):
    ordered = sorted(inst.goods_by_id)
    remap = dict(zip(sorted(bundles_keys_goods(bundles)), ordered))
    return tuple(
        frozenset(remap[g] for g in bundles.get(i, []))
        for i in range(1, inst.n_agents + 1)
    )


def bundles_keys_goods(bundles):
    return [g for b in bundles.values() for g in b]


# --- checker vs oracle, exhaustive on small cases ------------------------------

@pytest.mark.parametrize("n_agents,n_goods", [(2, 3), (2, 4), (3, 3)])
def test_ef1_efx_match_oracles(n_agents, n_goods):
    rng = random.Random(100 * n_agents + n_goods)
    goods = [chr(ord("a") + k) for k in range(n_goods)]
    for _ in range(25):
        values = random_values(rng, goods, n_agents)
        inst = single_round_instance(values, goods, n_agents)
        for bundles in enumerate_allocations(goods, n_agents):
            packed = as_frozensets(inst, bundles)
            assert is_ef1(inst, packed) == naive_ef1(values, bundles)
            assert is_efx(inst, packed) == naive_efx(values, bundles)


@pytest.mark.parametrize("alpha", [F(1, 2), F(1, 3), F(1)])
def test_alpha_efx_matches_oracle(alpha):
    rng = random.Random(int(alpha * 1000))
    goods = ["a", "b", "c", "d"]
    for _ in range(25):
        values = random_values(rng, goods, 2)
        inst = single_round_instance(values, goods, 2)
        for bundles in enumerate_allocations(goods, 2):
            packed = as_frozensets(inst, bundles)
            assert is_alpha_efx(inst, packed, alpha) == naive_alpha_efx(
                values, bundles, [alpha, alpha]
            )


def test_alpha_efx_per_agent_bounds():
    # goods g1..g3 all worth (2, 4, 4) to agent 1 and (1, 1, 1) to agent 2
    values = {1: {"a": 2, "b": 4, "c": 4}, 2: {"a": 1, "b": 1, "c": 1}}
    inst = single_round_instance(values, ["a", "b", "c"], 2)
    packed = (frozenset({"g1"}), frozenset({"g2", "g3"}))
    # agent 1 sees 2 against 8: removal leaves 4, so only alpha <= 1/2 holds
    assert is_alpha_efx(inst, packed, [F(1, 2), F(1)])
    assert not is_alpha_efx(inst, packed, [F(2, 3), F(1)])


def test_alpha_validation():
    values = {1: {"a": 1}, 2: {"a": 1}}
    inst = single_round_instance(values, ["a"], 2)
    packed = (frozenset({"a"}), frozenset())
    with pytest.raises(ValidationError):
        is_alpha_efx(inst, packed, F(0))
    with pytest.raises(ValidationError):
        is_alpha_efx(inst, packed, F(3, 2))
    with pytest.raises(ValidationError):
        is_alpha_efx(inst, packed, [F(1, 2)])  # wrong length


def test_tmms_matches_oracle():
    rng = random.Random(11)
    for n_agents, n_goods in [(2, 4), (3, 4)]:
        goods = [chr(ord("a") + k) for k in range(n_goods)]
        for _ in range(10):
            values = random_values(rng, goods, n_agents)
            inst = single_round_instance(values, goods, n_agents)
            for bundles in enumerate_allocations(goods, n_agents):
                packed = as_frozensets(inst, bundles)
                assert is_mms(inst, packed) == naive_tmms(
                    values, bundles, n_agents
                ), (values, bundles)


# --- maximin shares -----------------------------------------------------------

class TestMmsShare:
    def test_known_two_agent_examples(self):
        assert mms_share([F(1), F(3), F(10)], 2) == F(4)
        assert mms_share([F(1), F(1), F(2)], 2) == F(2)

    def test_single_part_takes_everything(self):
        assert mms_share([F(2), F(5)], 1) == F(7)

    def test_fewer_goods_than_parts(self):
        assert mms_share([F(9)], 3) == F(0)

    def test_three_parts_example(self):
        # 3+3, 2+4, 1+5: perfect split of 1..5 plus a 3 into thirds of 6
        assert mms_share([F(v) for v in (1, 2, 3, 3, 4, 5)], 3) == F(6)

    def test_matches_bruteforce(self):
        rng = random.Random(5)
        for _ in range(60):
            n_parts = rng.randint(2, 3)
            vals = [rng.randint(0, 8) for _ in range(rng.randint(1, 6))]
            assert mms_share([F(v) for v in vals], n_parts) == F(
                naive_mms_share(vals, n_parts)
            )

    def test_cap_guard(self):
        vals = [F(1)] * 17
        with pytest.raises(ShareCapExceeded):
            mms_share(vals, 3, cap=16)
        # two parts never hit the cap
        assert mms_share(vals, 2, cap=16) == F(8)
        # and the cap can be lifted
        assert mms_share(vals, 3, cap=None) == F(5)

    def test_rejects_negative(self):
        with pytest.raises(ValidationError):
            mms_share([F(-1)], 2)

    def test_rejects_zero_parts(self):
        with pytest.raises(ValidationError):
            mms_share([F(1)], 0)


# --- concept parsing ------------------------------------------------------------

class TestConcept:
    @pytest.mark.parametrize("text", ["tef1", "tefx", "tmms"])
    def test_plain_kinds(self, text):
        assert str(Concept.from_string(text)) == text

    def test_alpha_parses_fractions(self):
        c = Concept.from_string("atefx:1/2")
        assert c.kind == "atefx"
        assert c.alpha == F(1, 2)
        assert str(c) == "atefx:1/2"

    def test_alpha_list(self):
        c = Concept.from_string("atefx:1/2,2/3")
        assert c.alpha == (F(1, 2), F(2, 3))
        assert str(c) == "atefx:1/2,2/3"

    @pytest.mark.parametrize(
        "bad", ["atefx:0", "atefx:3/2", "atefx:x", "atefx:", "efx", "tef2"]
    )
    def test_rejects_bad_text(self, bad):
        with pytest.raises(ValidationError):
            Concept.from_string(bad)


# --- temporal checking ----------------------------------------------------------

class TestCheckTemporal:
    def test_reports_first_failing_round(self):
        # round 1 splits evenly, round 2 tips agent 2 into envy beyond one good
        inst = make_instance([
            [(1, 2), (3, 1)],
            [(2, 2)],
        ])
        alloc = TemporalAllocation(
            schedule=Schedule.at_arrival(inst),
            owner={"g1": 1, "g2": 2, "g3": 1},
        )
        verdict = check_temporal(inst, alloc, Concept("tef1"))
        assert not verdict.holds
        assert verdict.round == 2
        assert verdict.envious == 2
        assert verdict.envied == 1
        assert verdict.removed_good == "g1"
        assert verdict.shortfall == F(1)

    def test_holds_overall(self):
        inst = make_instance([[(1, 2), (3, 1)]])
        alloc = TemporalAllocation(
            schedule=Schedule.at_arrival(inst),
            owner={"g1": 2, "g2": 1},
        )
        verdict = check_temporal(inst, alloc, Concept("tef1"))
        assert verdict.holds
        assert verdict.round is None

    def test_checks_only_placement_rounds(self):
        # violation visible at round 1 if checked, but nothing is placed
        # until round 2, so the prefix at round 1 is all-empty
        inst = make_instance([[(5, 5)], [(5, 5)]], buffer=2)
        alloc = TemporalAllocation(
            schedule=Schedule({"g1": 2, "g2": 2}),
            owner={"g1": 1, "g2": 2},
        )
        verdict = check_temporal(inst, alloc, Concept("tefx"))
        assert verdict.holds

    def test_scheduling_can_rescue_strong_envy(self):
        # same ownership, at-arrival placement fails but a delay repairs it
        inst = make_instance([[(2, 2), (2, 2)], [(4, 4)]], buffer=2)
        owner = {"g1": 1, "g2": 1, "g3": 2}
        at_arrival = TemporalAllocation(
            schedule=Schedule.at_arrival(inst), owner=owner
        )
        assert not check_temporal(inst, at_arrival, Concept("tefx")).holds
        delayed = TemporalAllocation(
            schedule=Schedule({"g1": 1, "g2": 2, "g3": 2}), owner=owner
        )
        assert check_temporal(inst, delayed, Concept("tefx")).holds

    def test_tmms_verdict(self):
        inst = make_instance([[(3, 3), (3, 3)]])
        alloc = TemporalAllocation(
            schedule=Schedule.at_arrival(inst),
            owner={"g1": 1, "g2": 1},
        )
        verdict = check_temporal(inst, alloc, Concept("tmms"))
        assert not verdict.holds
        assert verdict.envious == 2
        assert verdict.envied is None
        assert verdict.shortfall == F(3)

    def test_alpha_concept(self):
        inst = make_instance([[(1, 1), (1, 1), (4, 4)]])
        alloc = TemporalAllocation(
            schedule=Schedule.at_arrival(inst),
            owner={"g1": 1, "g2": 2, "g3": 2},
        )
        # agent 1 holds 1 against 5; dropping the cheap good leaves 4
        assert check_temporal(inst, alloc, Concept("atefx", F(1, 4))).holds
        assert not check_temporal(inst, alloc, Concept("atefx", F(1))).holds

    def test_rejects_invalid_allocation(self):
        inst = make_instance([[(1, 1), (2, 2)]])
        alloc = TemporalAllocation(
            schedule=Schedule({"g1": 1}),
            owner={"g1": 1},
        )
        with pytest.raises(ValidationError):
            check_temporal(inst, alloc, Concept("tef1"))

    def test_random_agreement_with_per_round_oracle(self):
        rng = random.Random(23)
        for _ in range(150):
            n_agents = rng.randint(2, 3)
            horizon = rng.randint(1, 3)
            rounds = [
                [
                    tuple(rng.randint(0, 5) for _ in range(n_agents))
                    for _ in range(rng.randint(1, 2))
                ]
                for _ in range(horizon)
            ]
            inst = make_instance(rounds)
            owner = {
                g.id: rng.randint(1, n_agents) for g in inst.goods
            }
            alloc = TemporalAllocation(
                schedule=Schedule.at_arrival(inst), owner=owner
            )
            concept = rng.choice(
                [Concept("tef1"), Concept("tefx"), Concept("atefx", F(1, 2))]
            )
            values = {
                i: {g.id: inst.value(i, g.id) for g in inst.goods}
                for i in inst.agents
            }

            def oracle_at(t):
                packed = prefix(inst, alloc, t)
                bundles = {
                    i: sorted(packed[i - 1]) for i in inst.agents
                }
                if concept.kind == "tef1":
                    return naive_ef1(values, bundles)
                if concept.kind == "tefx":
                    return naive_efx(values, bundles)
                return naive_alpha_efx(
                    values, bundles, [concept.alpha] * n_agents
                )

            expected = all(oracle_at(t) for t in range(1, horizon + 1))
            verdict = check_temporal(inst, alloc, concept)
            assert verdict.holds == expected
            if not verdict.holds:
                # reported round is the first failing one
                assert not oracle_at(verdict.round)
                assert all(oracle_at(t) for t in range(1, verdict.round))


def test_verdict_json():
    verdict = Verdict(
        holds=False, round=2, envious=1, envied=2,
        removed_good="g1", shortfall=F(1, 2),
    )
    data = verdict.to_json()
    assert data["holds"] is False
    assert data["shortfall"] == "1/2"
    ok = Verdict(holds=True)
    assert ok.to_json()["holds"] is True


def test_prefix_violation_dispatch():
    # one valuable and one worthless good, both held by agent 1:
    # dropping the valuable one settles the up-to-one-good check, but the
    # worthless removal does not settle the up-to-any-good check
    values = {1: {"a": 1, "b": 0}, 2: {"a": 1, "b": 0}}
    inst = single_round_instance(values, ["a", "b"], 2)
    packed = (frozenset({"g1", "g2"}), frozenset())
    assert prefix_violation(inst, packed, Concept("tef1")) is None
    assert prefix_violation(inst, packed, Concept("tefx")) is not None
    # equal positive goods split evenly: shares are met; hoarded: they fail
    even = single_round_instance({1: {"a": 1, "b": 1}, 2: {"a": 1, "b": 1}}, ["a", "b"], 2)
    assert prefix_violation(even, (frozenset({"g1"}), frozenset({"g2"})), Concept("tmms")) is None
    assert prefix_violation(even, (frozenset({"g1", "g2"}), frozenset()), Concept("tmms")) is not None
