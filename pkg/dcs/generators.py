"""
Seeded random instances.

The same (kind, n, seed, params) and ``settings.GENERATOR_RECIPE`` always give
the same instance.
"""
import networkx as nx
import numpy as np
import structlog

from dcs import congestion, equilibria, settings
from dcs.coordination import CoordinationGame
from dcs.errors import BudgetExceededError, InvalidInputError
from dcs.games import NormalFormGame
from dcs.models import DcsInstance
from dcs.tree_dp import GraphicalGame, PairwiseGraphicalGame


logger = structlog.get_logger(__name__)

# Profile spaces up to this size are searched for equilibria directly.
SMALL_SPACE = 4096
ATTEMPTS = 200


def enumerate_nash(game, budget=None):
    """All pure Nash equilibria in lexicographic order"""
    budget = settings.NASH_BUDGET if budget is None else budget
    return [p for p in game.profiles(budget=budget) if equilibria.is_nash(game, p)]


def best_response_dynamics(game, start, max_steps=None):
    """
    Let the lowest indexed player with a strictly improving move switch to its
    lowest indexed best response, until nobody wants to move.
    """
    profile = list(game.validate_profile(start))
    max_steps = 1000 * game.n_players if max_steps is None else max_steps
    for step in range(max_steps + 1):
        for i in game.players:
            best = equilibria.best_responses(game, profile, i)
            if profile[i] not in best:
                profile[i] = min(best)
                break
        else:
            logger.debug("best response dynamics converged", steps=step)
            return tuple(profile)
    raise BudgetExceededError(
        what="Best response dynamics", needed=f"more than {max_steps} steps", cap=max_steps
    )


def _random_tree(rng, n):
    if n == 1:
        return nx.empty_graph(1)
    if n == 2:
        return nx.path_graph(2)
    return nx.from_prufer_sequence([int(v) for v in rng.integers(0, n, size=n - 2)])


def _random_graph(rng, n, edge_prob):
    return nx.gnp_random_graph(n, edge_prob, seed=int(rng.integers(2**31)))


def _weights(rng, n, weighted):
    if not weighted:
        return (1,) * n
    return tuple(int(w) for w in rng.integers(1, 10, size=n))


def _pick_pair(rng, equilibria_found, game):
    """(start, target) from the equilibria found, falling back to a random start"""
    target = equilibria_found[int(rng.integers(len(equilibria_found)))]
    others = [p for p in equilibria_found if p != target]
    if others:
        return others[int(rng.integers(len(others)))], target
    start = tuple(int(rng.integers(c)) for c in game.strategy_counts)
    return start, target


def _random_profile(rng, counts):
    return tuple(int(rng.integers(c)) for c in counts)


def _normal_form(rng, n, strategies=2):
    counts = tuple(int(c) for c in rng.integers(1, strategies + 1, size=n))
    payoffs = rng.integers(0, 10, size=counts + (n,))
    game = NormalFormGame(payoffs)
    found = enumerate_nash(game, budget=SMALL_SPACE) if game.profile_space_size() <= SMALL_SPACE else []
    if len(found) >= 2:
        return game, *_pick_pair(rng, found, game)

    # Plant equilibria: nothing beats the start and target cells.
    start = _random_profile(rng, counts)
    target = _random_profile(rng, counts)
    top = payoffs.max() + 1
    payoffs[start] = top
    payoffs[target] = top
    return NormalFormGame(payoffs), start, target


def _planted_tables(rng, graph, counts, start, target):
    tables = []
    for i in sorted(graph.nodes):
        scope = tuple(sorted(set(graph[i]) | {i}))
        table = rng.integers(0, 10, size=tuple(counts[j] for j in scope))
        top = table.max() + 1
        table[tuple(start[j] for j in scope)] = top
        table[tuple(target[j] for j in scope)] = top
        tables.append(table)
    return tables


def _graphical(rng, n, graph, strategies=2):
    counts = tuple(int(c) for c in rng.integers(1, strategies + 1, size=n))
    start = _random_profile(rng, counts)
    target = _random_profile(rng, counts)
    tables = _planted_tables(rng, graph, counts, start, target)
    return GraphicalGame(graph, counts, tables), start, target


def _pairwise(rng, n, graph, strategies=2):
    counts = tuple(int(c) for c in rng.integers(1, strategies + 1, size=n))
    for _ in range(ATTEMPTS):
        own = [rng.integers(0, 4, size=c) for c in counts]
        terms = {}
        for u, v in graph.edges:
            terms[u, v] = rng.integers(-2, 4, size=(counts[u], counts[v]))
            terms[v, u] = rng.integers(-2, 4, size=(counts[v], counts[u]))
        game = PairwiseGraphicalGame(graph, counts, own, terms)
        found = enumerate_nash(game)
        if found:
            return game, *_pick_pair(rng, found, game)
    raise BudgetExceededError(
        what="Drawing a pairwise game with an equilibrium", needed="more attempts", cap=ATTEMPTS
    )


def _monotone(rng, n, graph):
    """
    Linear threshold game: playing 1 pays the summed weight of neighbours on 1,
    playing 0 pays a fixed threshold. Adding players on 1 only helps, so
    control is monotone for every player.
    """
    own, terms = [], {}
    for u, v in graph.edges:
        terms[u, v] = np.array([[0, 0], [0, int(rng.integers(1, 5))]])
        terms[v, u] = np.array([[0, 0], [0, int(rng.integers(1, 5))]])
    for i in range(n):
        total = sum(int(terms[i, j][1, 1]) for j in graph[i])
        own.append(np.array([int(rng.integers(0, total + 1)), 0]))
    game = PairwiseGraphicalGame(graph, [2] * n, own, terms)
    return game, (0,) * n, (1,) * n


def _singleton_costs(rng, n, m, general_position):
    if general_position:
        values = rng.choice(np.arange(1, 10 * n * m + 1), size=(m, n), replace=False)
        return [sorted(int(v) for v in row) for row in values]
    steps = rng.integers(0, 3, size=(m, n))
    return [[int(v) for v in np.cumsum(row) + 1] for row in steps]


def _singleton(rng, n, resources=3, general_position=True):
    for _ in range(ATTEMPTS):
        game = congestion.SingletonCongestionGame.full_choice(
            n, _singleton_costs(rng, n, resources, general_position)
        )
        target = best_response_dynamics(game, _random_profile(rng, game.strategy_counts))
        start = best_response_dynamics(game, _random_profile(rng, game.strategy_counts))
        if start == target:
            continue
        if general_position and not congestion.load_condition_check(game, target):
            continue
        return game, start, target
    raise BudgetExceededError(
        what="Drawing a singleton congestion instance", needed="more attempts", cap=ATTEMPTS
    )


def _symmetric_decreasing(rng, n, resources=2):
    if resources < 2 or n < 2:
        raise InvalidInputError("Need at least two players and two resources")
    costs = []
    for _ in range(resources):
        floor = int(rng.integers(1, 5))
        steps = rng.integers(4, 9, size=n - 1)
        costs.append([floor + int(steps[x - 1 :].sum()) for x in range(1, n + 1)])
    game = congestion.SingletonCongestionGame.full_choice(n, costs)
    return game, (0,) * n, (1,) * n


def _coordination(rng, n, graph):
    prestige = {0: int(rng.integers(1, 4)), 1: int(rng.integers(1, 4))}
    game = CoordinationGame(graph, [[0, 1]] * n, prestige)
    target = (0,) * n
    found = enumerate_nash(game) if 2**n <= SMALL_SPACE else []
    starts = [p for p in found if p != target]
    start = starts[int(rng.integers(len(starts)))] if starts else (1,) * n
    return game, start, target


KINDS = (
    "normal-form",
    "graphical",
    "tree",
    "pairwise-tree",
    "monotone-graphical",
    "singleton-congestion",
    "symmetric-decreasing",
    "coordination",
)


def _draw(rng, kind, n, edge_prob, params):
    if kind == "normal-form":
        return (*_normal_form(rng, n, **params), False)
    if kind == "graphical":
        return (*_graphical(rng, n, _random_graph(rng, n, edge_prob), **params), False)
    if kind == "tree":
        return (*_graphical(rng, n, _random_tree(rng, n), **params), False)
    if kind == "pairwise-tree":
        return (*_pairwise(rng, n, _random_tree(rng, n), **params), False)
    if kind == "monotone-graphical":
        return (*_monotone(rng, n, _random_graph(rng, n, edge_prob), **params), True)
    if kind == "singleton-congestion":
        return (*_singleton(rng, n, **params), False)
    if kind == "symmetric-decreasing":
        return (*_symmetric_decreasing(rng, n, **params), False)
    return (*_coordination(rng, n, _random_graph(rng, n, edge_prob), **params), True)


def random_instance(kind, n, seed, weighted=False, edge_prob=0.4, **params):
    """
    Draw a random instance of ``kind`` with ``n`` players.

    Target and start are equilibria found by enumeration (small games), by best
    response dynamics (congestion) or planted into the payoff tables.
    """
    if kind not in KINDS:
        raise InvalidInputError(f"Unknown instance kind {kind!r}, expected one of {KINDS}")
    if n < 2:
        raise InvalidInputError("Need at least two players")

    rng = np.random.default_rng(seed)
    try:
        game, start, target, monotone = _draw(rng, kind, n, edge_prob, params)
    except TypeError as exc:
        raise InvalidInputError(f"Bad parameters for {kind!r}: {exc}")

    provenance = {
        "kind": kind,
        "n": n,
        "seed": seed,
        "recipe": settings.GENERATOR_RECIPE,
        "weighted": weighted,
        "edge_prob": edge_prob,
        **params,
    }
    return DcsInstance(
        game,
        start,
        target,
        weights=_weights(rng, n, weighted),
        monotone=monotone,
        provenance=provenance,
    )
