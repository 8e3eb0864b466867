from fractions import Fraction

import numpy as np
import pytest

from dcs.errors import BudgetExceededError, InvalidInputError
from dcs.games import NormalFormGame, StructureTag


@pytest.fixture
def prisoners():
    # 0 cooperates, 1 defects
    return NormalFormGame([[[3, 3], [0, 5]], [[5, 0], [1, 1]]])


def test_utility(prisoners):
    assert prisoners.utility((0, 1), 0) == 0
    assert prisoners.utility((0, 1), 1) == 5
    assert isinstance(prisoners.utility((1, 1), 0), int)


def test_utility_counts_oracle_calls(prisoners):
    prisoners.utility((0, 0), 0)
    prisoners.utility((0, 0), 1)
    assert prisoners.oracle_calls == 2


@pytest.mark.parametrize("profile", [(0,), (0, 2), (-1, 0), (0, 0, 0)])
def test_utility_rejects_bad_profile(prisoners, profile):
    with pytest.raises(InvalidInputError):
        prisoners.utility(profile, 0)


@pytest.mark.parametrize("profile", [(0.0, 1), (1.7, 0), (True, 0), ("1", 0)])
def test_profile_entries_must_be_integers(prisoners, profile):
    with pytest.raises(InvalidInputError, match="not an integer"):
        prisoners.validate_profile(profile)


def test_numpy_integers_are_accepted(prisoners):
    profile = prisoners.validate_profile((np.int64(1), np.int8(0)))

    assert profile == (1, 0)
    assert all(type(x) is int for x in profile)


def test_payoff_array_is_copied():
    payoffs = np.zeros((2, 2, 2))
    game = NormalFormGame(payoffs)

    payoffs[1, 1] = [4, 4]

    assert payoffs.flags.writeable
    assert game.utility((1, 1), 0) == 0


@pytest.mark.parametrize("player", [-1, 2, 0.5])
def test_utility_rejects_bad_player(prisoners, player):
    with pytest.raises(InvalidInputError):
        prisoners.utility((0, 0), player)


def test_table_shape_must_match_players():
    with pytest.raises(InvalidInputError):
        NormalFormGame(np.zeros((2, 2, 3)))


def test_from_function_with_fractions():
    game = NormalFormGame.from_function((2, 3), lambda p: (Fraction(p[0], 3), p[1]))

    assert game.strategy_counts == (2, 3)
    assert game.utility((1, 2), 0) == Fraction(1, 3)
    assert game.utility((1, 2), 1) == 2


def test_table_size_is_capped(monkeypatch):
    monkeypatch.setattr("dcs.settings.TABLE_MAX_PROFILES", 8)

    with pytest.raises(BudgetExceededError, match="Normal-form payoff table"):
        NormalFormGame.from_function((3, 3), lambda p: pytest.fail("tabulated"))
    with pytest.raises(BudgetExceededError):
        NormalFormGame(np.zeros((3, 3, 2)))

    assert NormalFormGame(np.zeros((2, 2, 2, 3))).n_players == 3


def test_profiles(prisoners):
    assert list(prisoners.profiles()) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert prisoners.profile_space_size() == 4

    with pytest.raises(BudgetExceededError):
        prisoners.profiles(budget=3)


def test_normal_form_has_no_declared_structure(prisoners):
    assert prisoners.influencers() is None
    assert prisoners.structure_tag is StructureTag.NORMAL_FORM
    assert prisoners.describe() == "normal-form game with 2 players"


def test_players_need_strategies():
    with pytest.raises(InvalidInputError):
        NormalFormGame(np.zeros((2, 0, 2)))
