"""Winner-side margins: greedy Copeland, bounded cuts, exact searches."""

import pytest

from movtk.core import (
    BudgetExceededError,
    Tournament,
    Weighting,
    apply_reversals,
    generate_tight_destructive,
    generate_uniform,
    generate_uniform_weights,
)
from movtk.destructive import (
    exact_mov_winner,
    mov_banks_winner,
    mov_copeland_winner,
    mov_kkings_winner,
)
from movtk.oracle import brute_force_mov
from movtk.solutions import BANKS, COPELAND, UNCOVERED, is_member, kings

from conftest import all_tournaments, chain, cycle3

A, B, C, D, E, F = range(6)


def assert_valid_destructive(t, w, x, sol, result):
    assert is_member(t, sol, x)
    assert result.value > 0
    assert result.value == result.witness.cost
    assert not is_member(apply_reversals(t, result.witness), sol, x)


class TestCopelandWinner:
    def test_sample_top(self, sample6):
        w = Weighting.ones(sample6)
        res = mov_copeland_winner(sample6, w, F)
        assert res.value == 1
        assert len(res.witness.edges) == 1
        assert_valid_destructive(sample6, w, F, COPELAND, res)

    def test_ties_cost_one_reversal(self):
        # whenever the Copeland set has several members, each has margin 1
        for seed in range(60):
            t = generate_uniform(6, seed)
            from movtk.solutions import copeland_set

            winners = copeland_set(t)
            if len(winners) < 2:
                continue
            w = Weighting.ones(t)
            for x in winners:
                assert mov_copeland_winner(t, w, x).value == 1

    def test_tight_family(self):
        t, x = generate_tight_destructive(4)
        res = mov_copeland_winner(t, Weighting.ones(t), x)
        assert res.value == 2

    def test_non_winner_rejected(self, sample6):
        with pytest.raises(ValueError, match="not a Copeland winner"):
            mov_copeland_winner(sample6, Weighting.ones(sample6), A)

    def test_two_alternatives(self):
        t = Tournament(2, (0b10, 0))
        res = mov_copeland_winner(t, Weighting.ones(t), 0)
        assert res.value == 1 and res.witness.edges == {(0, 1)}

    def test_matches_oracle_weighted(self):
        for seed in range(40):
            t = generate_uniform(5, seed)
            w = generate_uniform_weights(t, seed + 500)
            from movtk.solutions import copeland_set

            for x in copeland_set(t):
                res = mov_copeland_winner(t, w, x)
                assert res.value == brute_force_mov(t, x, COPELAND, w).mov
                assert_valid_destructive(t, w, x, COPELAND, res)


class TestKKingsWinner:
    def test_sample_uncovered_top(self, sample6):
        w = Weighting.ones(sample6)
        res = mov_kkings_winner(sample6, w, F, 2)
        assert res.value == 2
        assert_valid_destructive(sample6, w, F, UNCOVERED, res)

    def test_sample_uncovered_narrow_winner(self, sample6):
        w = Weighting.ones(sample6)
        res = mov_kkings_winner(sample6, w, C, 2)
        assert res.value == 1
        assert res.witness.edges == {(C, F)}

    def test_sample_top_cycle(self, sample6):
        w = Weighting.ones(sample6)
        res = mov_kkings_winner(sample6, w, B, 5)
        oracle = brute_force_mov(sample6, B, kings(5))
        assert res.value == oracle.mov
        assert 1 <= res.value <= 3

    def test_non_king_rejected(self, sample6):
        with pytest.raises(ValueError, match="not a 2-king"):
            mov_kkings_winner(sample6, Weighting.ones(sample6), A, 2)

    def test_witness_is_simultaneously_cut_and_reversal_set(self, sample6):
        # the returned edges both block short paths when removed and stop
        # x being a king when reversed
        from movtk.optim import _has_short_path
        from movtk.core import bits

        w = Weighting.ones(sample6)
        res = mov_kkings_winner(sample6, w, F, 2)
        succ = tuple(tuple(bits(row)) for row in sample6.rows)
        blocked = frozenset(res.witness.edges)
        assert any(
            not _has_short_path(succ, F, y, 2, blocked) for y in range(6) if y != F
        )

    def test_matches_oracle_all_k(self):
        for seed in range(25):
            t = generate_uniform(5, seed)
            w = Weighting.ones(t)
            for k in (2, 3, 4):
                sol = UNCOVERED if k == 2 else kings(k)
                for x in range(5):
                    if not is_member(t, sol, x):
                        continue
                    res = mov_kkings_winner(t, w, x, k)
                    assert res.value == brute_force_mov(t, x, sol).mov
                    assert_valid_destructive(t, w, x, sol, res)


class TestBanksWinner:
    def test_tight_family_even(self):
        t, x = generate_tight_destructive(4)
        assert mov_banks_winner(t, Weighting.ones(t), x).value == 2

    def test_tight_family_odd(self):
        t, x = generate_tight_destructive(5)
        assert mov_banks_winner(t, Weighting.ones(t), x).value == 2

    def test_three_cycle(self):
        t = cycle3()
        w = Weighting.ones(t)
        for x in range(3):
            res = mov_banks_winner(t, w, x)
            assert res.value == 1
            assert_valid_destructive(t, w, x, BANKS, res)

    def test_matches_oracle(self):
        for seed in range(20):
            t = generate_uniform(5, seed)
            w = Weighting.ones(t)
            for x in range(5):
                if is_member(t, BANKS, x):
                    assert mov_banks_winner(t, w, x).value == brute_force_mov(t, x, BANKS).mov


class TestExactWinner:
    def test_two_alternatives(self):
        t = Tournament(2, (0b10, 0))
        res = exact_mov_winner(t, Weighting.ones(t), 0, COPELAND)
        assert res.value == 1

    def test_matches_copeland_greedy_exhaustively(self):
        for t in all_tournaments(4):
            w = Weighting.ones(t)
            for x in range(4):
                if is_member(t, COPELAND, x):
                    assert (
                        exact_mov_winner(t, w, x, COPELAND).value
                        == mov_copeland_winner(t, w, x).value
                    )

    def test_matches_cut_reduction_exhaustively(self):
        for t in all_tournaments(4):
            w = Weighting.ones(t)
            for x in range(4):
                if is_member(t, UNCOVERED, x):
                    assert (
                        exact_mov_winner(t, w, x, UNCOVERED).value
                        == mov_kkings_winner(t, w, x, 2).value
                    )

    def test_budget_enforced(self):
        t, x = generate_tight_destructive(8)  # margin 4: the search has to dig
        with pytest.raises(BudgetExceededError):
            exact_mov_winner(t, Weighting.ones(t), x, COPELAND, budget=10)

    def test_weight_scaling_invariance(self):
        for seed in range(10):
            t = generate_uniform(5, seed)
            w = generate_uniform_weights(t, seed + 900)
            scaled = Weighting(tuple(tuple(3 * v for v in row) for row in w.matrix))
            for x in range(5):
                if not is_member(t, UNCOVERED, x):
                    continue
                base = mov_kkings_winner(t, w, x, 2)
                big = mov_kkings_winner(t, scaled, x, 2)
                assert big.value == 3 * base.value
