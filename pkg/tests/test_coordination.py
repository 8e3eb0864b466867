import math

import networkx as nx
import pytest

from dcs import control, coordination, generators, settings, solvers, utils
from dcs.coordination import CoordinationGame
from dcs.errors import BudgetExceededError, InternalError, InvalidInputError, UnsupportedError
from dcs.models import DcsInstance


def star_instance(leaves=3, prestige=None):
    graph = nx.star_graph(leaves)
    n = leaves + 1
    game = CoordinationGame(graph, [[0, 1]] * n, prestige)
    return DcsInstance(game, (1,) * n, (0,) * n)


def test_coordination_utility():
    game = CoordinationGame(nx.path_graph(3), [[0, 1]] * 3, {0: 2, 1: 1})

    assert coordination.coordination_utility(game, (0, 0, 1), 0) == 2
    assert coordination.coordination_utility(game, (0, 0, 1), 1) == 2
    assert coordination.coordination_utility(game, (0, 0, 1), 2) == 0


def test_colours_are_validated():
    with pytest.raises(InvalidInputError):
        CoordinationGame(nx.path_graph(2), [[1, 2], [0, 1]])
    with pytest.raises(InvalidInputError):
        CoordinationGame(nx.path_graph(2), [[0, 0], [0, 1]])
    with pytest.raises(InvalidInputError):
        CoordinationGame(nx.path_graph(2), [[0, 1], [0, 1]], {0: -1})


def test_min_neighbors_for_zero():
    game = star_instance(4).game
    assert coordination.min_neighbors_for_zero(game, (1,) * 5, 0) == 2
    assert coordination.min_neighbors_for_zero(game, (1,) * 5, 1) == 1

    weighted = star_instance(3, {0: 2, 1: 1}).game
    assert coordination.min_neighbors_for_zero(weighted, (1,) * 4, 0) == 1
    assert coordination.min_neighbors_for_zero(weighted, (1, 0, 1, 1), 0) == 0
    assert coordination.min_neighbors_for_zero(weighted, (1, 0, 0, 1), 0) == 0


def test_min_neighbors_needs_binary_colours():
    game = CoordinationGame(nx.path_graph(2), [[0, 1, 2], [0, 1]])

    with pytest.raises(UnsupportedError):
        coordination.min_neighbors_for_zero(game, (1, 1), 0)


def test_reduction_pads_low_requirements():
    kd = coordination.coordination_to_kdom(star_instance(3))

    assert kd.requirements == (2, 1, 1, 1)
    assert kd.k == 2
    assert len(kd.padding) == 3
    assert all(kd.weights[v] == 0 for v in kd.padding)
    assert kd.graph.number_of_nodes() == 7


def test_reduction_without_padding():
    game = CoordinationGame(nx.complete_graph(3), [[0, 1]] * 3)
    kd = coordination.coordination_to_kdom(DcsInstance(game, (1, 1, 1), (0, 0, 0)))

    assert kd.k == 1
    assert kd.padding == frozenset()


def test_back_map_and_lift():
    kd = coordination.coordination_to_kdom(star_instance(3))
    lifted = kd.lift({0})

    assert kd.back_map(lifted) == {0}
    assert kd.is_k_dominating(lifted)
    assert not kd.is_k_dominating(kd.lift(set()))


def test_reduction_needs_all_zero_target():
    game = CoordinationGame(nx.path_graph(2), [[0, 1]] * 2)
    instance = DcsInstance(game, (0, 0), (1, 1))

    with pytest.raises(UnsupportedError):
        coordination.coordination_to_kdom(instance)


def test_reduction_rejects_unhappy_zero_player():
    game = CoordinationGame(nx.star_graph(2), [[0, 1]] * 3)
    instance = DcsInstance(game, (0, 1, 1), (0, 0, 0))

    with pytest.raises(UnsupportedError):
        coordination.coordination_to_kdom(instance)


def test_star_needs_its_centre():
    report = coordination.coordination_min_dcs(star_instance(3))

    assert report.solution.sorted() == [0]
    assert report.stats.notes["k"] == 2


@pytest.mark.parametrize("seed", range(10))
def test_exact_matches_brute_force(seed):
    instance = generators.random_instance("coordination", 7, seed, weighted=True)
    report = coordination.coordination_min_dcs(instance, exact=True)

    assert report.stats.exhaustive
    assert report.weight == solvers.brute_force_min_dcs(instance).weight


@pytest.mark.parametrize("seed", range(10))
def test_greedy_within_log_degree_bound(seed):
    instance = generators.random_instance("coordination", 7, seed, weighted=True)
    kd = coordination.coordination_to_kdom(instance)
    greedy = coordination.coordination_min_dcs(instance, exact=False)
    optimum = solvers.brute_force_min_dcs(instance)
    degree = max((d for _, d in kd.graph.degree), default=0)

    assert not greedy.stats.exhaustive
    assert greedy.feasible
    assert greedy.weight <= (1 + math.log(degree + 1)) * optimum.weight + settings.TOLERANCE


def test_greedy_result_is_k_dominating():
    kd = coordination.coordination_to_kdom(star_instance(5))
    chosen = coordination.greedy_k_dominating(kd)

    assert kd.is_k_dominating(chosen)
    assert kd.back_map(chosen) == {0}


def test_exact_cap(monkeypatch):
    monkeypatch.setattr(settings, "EXACT_COVER_MAX", 2)
    kd = coordination.coordination_to_kdom(star_instance(3))

    with pytest.raises(BudgetExceededError):
        coordination.exact_k_dominating(kd)


@pytest.mark.parametrize("n", [5, 8, 10])
@pytest.mark.parametrize("seed", range(4))
def test_k_domination_matches_direct_control(n, seed):
    instance = generators.random_instance("coordination", n, seed)
    kd = coordination.coordination_to_kdom(instance)

    for subset in utils.subsets_of(instance.players):
        is_dcs = control.is_direct_control_set(instance, subset)
        assert kd.is_k_dominating(kd.lift(subset)) == is_dcs
        if kd.is_k_dominating(subset):
            assert is_dcs
        assert kd.back_map(kd.lift(subset)) == subset


def test_reduction_mismatch_is_internal_error(mocker):
    mocker.patch.object(control, "is_direct_control_set", return_value=False)

    with pytest.raises(InternalError, match="disagrees"):
        coordination.coordination_to_kdom(star_instance(3))


def test_reduction_check_skipped_above_cap(mocker, monkeypatch):
    monkeypatch.setattr(settings, "CERTIFY_MAX_PLAYERS", 3)
    check = mocker.patch.object(control, "is_direct_control_set")

    kd = coordination.coordination_to_kdom(star_instance(3))

    assert kd.n_original == 4
    check.assert_not_called()
