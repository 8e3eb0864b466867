from fractions import Fraction

import pytest

from dcs import equilibria, gadgets, settings
from dcs.errors import BudgetExceededError, InvalidInputError, UnsupportedError
from dcs.games import NormalFormGame


@pytest.fixture
def prisoners():
    return NormalFormGame([[[3, 3], [0, 5]], [[5, 0], [1, 1]]])


@pytest.fixture
def pennies():
    return NormalFormGame([[[1, -1], [-1, 1]], [[-1, 1], [1, -1]]])


def test_best_responses(two_by_two):
    game = two_by_two.game
    assert equilibria.best_responses(game, (0, 0), 0) == {0}
    assert equilibria.best_responses(game, (1, 0), 0) == {0}
    assert equilibria.best_responses(game, (0, 1), 0) == {1}


@pytest.mark.parametrize(
    "payoffs,expected",
    [
        ([[1], [2]], {1}),
        ([[1.0], [1.0 + 1e-12]], {0, 1}),
        ([[1.0], [1.1]], {1}),
        (
            NormalFormGame.from_function((2,), lambda p: (Fraction(1, 3),)).payoffs,
            {0, 1},
        ),
    ],
)
def test_best_responses_ties(payoffs, expected):
    game = NormalFormGame(payoffs)
    assert equilibria.best_responses(game, (0,), 0) == expected


def test_is_nash(two_by_two):
    game = two_by_two.game
    assert equilibria.is_nash(game, (0, 0))
    assert equilibria.is_nash(game, (1, 1))
    assert not equilibria.is_nash(game, (0, 1))


def test_deviate():
    assert equilibria.deviate((0, 0, 0), {2: 1, 0: 1}) == (1, 0, 1)


def test_prisoners_dilemma_is_not_two_strong(prisoners):
    assert equilibria.is_k_strong(prisoners, (1, 1), 1)
    assert not equilibria.is_k_strong(prisoners, (1, 1), 2)
    assert equilibria.strength(prisoners, (1, 1)) == 1


def test_strength(two_by_two):
    game = two_by_two.game
    assert equilibria.strength(game, (1, 1)) == 2
    assert equilibria.strength(game, (0, 0)) == 1
    assert equilibria.strength(game, (0, 1)) == 0
    assert equilibria.strength(game, (1, 1), k_max=1) == 1


def test_non_equilibrium_is_never_strong(pennies):
    for profile in pennies.profiles():
        assert not equilibria.is_k_strong(pennies, profile, 1)
        assert equilibria.strength(pennies, profile) == 0


def test_nash_is_one_strong(two_by_two, prisoners):
    for game in (two_by_two.game, prisoners):
        for profile in game.profiles():
            assert equilibria.is_nash(game, profile) == equilibria.is_k_strong(
                game, profile, 1
            )


@pytest.mark.parametrize("n,m", [(4, 1), (5, 2), (4, 2)])
def test_tight_strong_strength(n, m):
    instance = gadgets.gadget_tight_strong(n, m)

    assert equilibria.is_k_strong(instance.game, instance.target, n - m)
    assert equilibria.strength(instance.game, instance.target) == n - m


@pytest.mark.parametrize("k", [0, 3])
def test_coalition_size_out_of_range(two_by_two, k):
    with pytest.raises(InvalidInputError):
        equilibria.is_k_strong(two_by_two.game, (1, 1), k)


def test_strong_check_budget(two_by_two, monkeypatch):
    monkeypatch.setattr(settings, "STRONG_NASH_BUDGET", 5)

    assert equilibria.is_k_strong(two_by_two.game, (1, 1), 1)
    with pytest.raises(BudgetExceededError):
        equilibria.is_k_strong(two_by_two.game, (1, 1), 2)


def test_is_weakly_dominant(prisoners, two_by_two):
    assert equilibria.is_weakly_dominant(prisoners, (1, 1))
    assert not equilibria.is_weakly_dominant(prisoners, (0, 0))
    assert not equilibria.is_weakly_dominant(two_by_two.game, (1, 1))


def test_is_constant_sum(pennies, prisoners):
    assert equilibria.is_constant_sum(pennies)
    assert not equilibria.is_constant_sum(prisoners)

    with pytest.raises(UnsupportedError):
        equilibria.is_constant_sum(gadgets.gadget_non_monotone().game)
